// Linear-chain averaged-perceptron POS tagger with Viterbi decoding, plus
// optional per-feature morphological classifiers sharing the same feature
// templates. Training is deterministic given the seed.
#ifndef CLASSICA_TAGGER_HPP
#define CLASSICA_TAGGER_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "classica/corpus.hpp"
#include "classica/tagset.hpp"

namespace classica {

struct TaggerConfig {
  uint32_t seed = 42;
  int epochs = 20;
  int patience = 6;
  double threshold = 0.001;  // absolute dev-accuracy improvement
  int restarts = 5;
};

// Stops when the dev score has improved by less than the threshold for
// `patience` consecutive evaluations.
class EarlyStopping {
public:
  EarlyStopping(double threshold, int patience)
      : threshold_(threshold), patience_(patience) {}

  // Feeds one evaluation; returns true when training should stop now.
  bool observe(double score);

  double best() const { return best_; }
  int stale() const { return stale_; }
  int evaluations() const { return evaluations_; }

private:
  double threshold_;
  int patience_;
  double best_ = -1e300;
  int stale_ = 0;
  int evaluations_ = 0;
};

// Feature templates shared by the tagger and the morphological classifiers:
// the form, its lowercased form, suffixes of length 1-4, prefixes of length
// 1-3, digit/hyphen/capitalization flags and the surrounding forms in a ±2
// window. Tag history enters through the transition weights.
std::vector<std::string> token_features(const std::vector<std::string>& forms,
                                        size_t i);

// First-order Viterbi over explicit score matrices. emissions is [n][tags];
// transitions is (tags+1) rows by tags columns, row 0 scoring the sentence-
// initial tag. Ties resolve to the sequence whose first differing position
// carries the lower tag index.
std::vector<int> viterbi_path(const std::vector<std::vector<double>>& emissions,
                              const std::vector<double>& transitions, int tags);

// --- Morphological classifiers -----------------------------------------------------

class MorphClassifiers {
public:
  static MorphClassifiers train(const Corpus& train, const TaggerConfig& config,
                                std::vector<std::string>* warnings = nullptr);

  // Predicted bundle for position i, given the (predicted or gold) POS.
  MorphBundle predict(const std::vector<std::string>& forms, size_t i,
                      const std::string& pos) const;

  bool empty() const { return fields_.empty(); }
  size_t field_count() const { return fields_.size(); }
  std::vector<std::string> field_names() const;
  const std::vector<std::string>* labels_of(const std::string& field) const;

  void save(std::ostream& out) const;
  static MorphClassifiers load(std::istream& in, const std::string& name);

private:
  struct FieldClassifier {
    std::string field;                 // mode|tense|person|number|gender|case
    std::vector<std::string> labels;   // canonical order; ties take the first
    std::map<std::string, std::vector<double>> weights;  // feature -> per label

    int classify(const std::vector<std::string>& features) const;
  };

  std::vector<FieldClassifier> fields_;
};

// --- Tagger model -----------------------------------------------------------------

struct TrainLog {
  std::vector<double> dev_accuracy;  // winning restart, one entry per epoch
  int epochs_run = 0;                // winning restart
  uint32_t winning_seed = 0;
  double best_dev = 0.0;
  std::vector<std::string> warnings;
};

class TaggerModel {
public:
  TaggerModel() = default;

  const std::vector<std::string>& tags() const { return tags_; }
  const TaggerConfig& config() const { return config_; }

  // Viterbi decode; empty input yields empty output.
  std::vector<std::string> decode(const std::vector<std::string>& forms) const;

  bool has_aux() const { return aux_.has_value(); }
  const MorphClassifiers& aux() const { return *aux_; }
  void set_aux(MorphClassifiers aux) { aux_ = std::move(aux); }

  void save(const std::string& path) const;
  static TaggerModel load(const std::string& path);

  // Builds a model from explicit weights (decoder tests, toy models).
  // transitions has (tags+1)*tags entries, row 0 = sentence start.
  static TaggerModel from_weights(
      std::vector<std::string> tags,
      std::map<std::string, std::vector<double>> feature_weights,
      std::vector<double> transitions);

private:
  friend TaggerModel train_tagger(const Corpus&, const Corpus&,
                                  const TaggerConfig&, TrainLog*);

  std::vector<std::string> tags_;
  std::map<std::string, std::vector<double>> weights_;  // feature -> per tag
  std::vector<double> transitions_;                     // (tags+1) x tags
  TaggerConfig config_;
  std::optional<MorphClassifiers> aux_;
};

// Averaged-perceptron training with per-epoch dev evaluation, early stopping
// (threshold/patience from the config) and `restarts` runs with seeds
// seed..seed+restarts-1; the model with the best dev accuracy wins, earlier
// seeds winning ties. With an empty dev set a single run of fixed length is
// performed. Throws on an empty training corpus.
TaggerModel train_tagger(const Corpus& train, const Corpus& dev,
                         const TaggerConfig& config, TrainLog* log = nullptr);

std::vector<std::string> viterbi_decode(const TaggerModel& model,
                                        const std::vector<std::string>& forms);

// Auxiliary morphological classifiers trained on the same corpus, with the
// gold POS as an extra feature. Fields without supervision are omitted.
MorphClassifiers train_morph_aux(const Corpus& train, const TaggerConfig& config,
                                 std::vector<std::string>* warnings = nullptr);

}  // namespace classica

#endif
