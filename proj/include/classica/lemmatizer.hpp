// Lexicon- and suffix-rule-based lemmatizer. Training extracts suffix
// rewrites from (form, lemma) pairs; prediction goes name list, lexicon,
// longest suffix rule, identity, in that order.
#ifndef CLASSICA_LEMMATIZER_HPP
#define CLASSICA_LEMMATIZER_HPP

#include <map>
#include <string>
#include <vector>

#include "classica/corpus.hpp"
#include "classica/lexicon.hpp"

namespace classica {

struct LemmatizerConfig {
  size_t max_suffix = 6;  // code points
};

class LemmatizerModel {
public:
  LemmatizerModel() = default;

  static LemmatizerModel train(const Corpus& train,
                               const LemmatizerConfig& config = {});

  // The lexicon (with its name list) is attached at load time and never
  // serialized with the model.
  void attach_lexicon(const Lexicon* lexicon) { lexicon_ = lexicon; }
  const Lexicon* lexicon() const { return lexicon_; }

  // 1. NOMpro tokens resolve against the name list.
  // 2. Lexicon analyses filtered by the POS-mapped category: a unique
  //    candidate lemma wins; several candidates go to the most frequent
  //    lemma of the training data, ties lexicographic.
  // 3. Longest matching learned suffix rule for this POS.
  // 4. Identity on the lowercased form (raw form for NOMpro).
  std::string lemmatize(const std::string& form, const std::string& pos) const;

  void save(const std::string& path) const;
  static LemmatizerModel load(const std::string& path);

  long lemma_count(const std::string& lemma) const;
  size_t rule_count() const { return rules_.size(); }
  // Replacement and frequency for an exact (suffix, pos) key, best candidate
  // first. Exposed for inspection and tests.
  std::vector<std::pair<std::string, long>> rules_for(const std::string& suffix,
                                                      const std::string& pos) const;

private:
  struct Key {
    std::string suffix;
    std::string pos;
    bool operator<(const Key& o) const {
      return suffix != o.suffix ? suffix < o.suffix : pos < o.pos;
    }
  };

  // (suffix, pos) -> replacement -> frequency
  std::map<Key, std::map<std::string, long>> rules_;
  std::map<std::string, long> lemma_counts_;
  LemmatizerConfig config_;
  const Lexicon* lexicon_ = nullptr;
};

}  // namespace classica

#endif
