#include "classica/tagger.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>

#include "classica/errors.hpp"
#include "classica/text.hpp"

namespace classica {

// --- Early stopping -----------------------------------------------------------

bool EarlyStopping::observe(double score) {
  ++evaluations_;
  double improvement = score - best_;
  if (score > best_) best_ = score;
  if (improvement < threshold_) {
    ++stale_;
    return stale_ >= patience_;
  }
  stale_ = 0;
  return false;
}

// --- Feature templates ----------------------------------------------------------

std::vector<std::string> token_features(const std::vector<std::string>& forms,
                                        size_t i) {
  std::vector<std::string> feats;
  feats.reserve(16);
  const std::string& w = forms[i];
  feats.push_back("w0=" + w);
  std::string low = lowercase(w);
  feats.push_back("low=" + low);

  std::u32string low_cps = decode_utf8(low);
  for (size_t k = 1; k <= 4 && k <= low_cps.size(); ++k)
    feats.push_back("suf" + std::to_string(k) + "=" +
                    encode_utf8(low_cps.substr(low_cps.size() - k)));
  for (size_t k = 1; k <= 3 && k <= low_cps.size(); ++k)
    feats.push_back("pre" + std::to_string(k) + "=" +
                    encode_utf8(low_cps.substr(0, k)));

  bool digit = false, hyphen = false;
  for (char c : w) {
    if (c >= '0' && c <= '9') digit = true;
    if (c == '-') hyphen = true;
  }
  if (digit) feats.push_back("digit");
  if (hyphen) feats.push_back("hyph");

  std::u32string raw_cps = decode_utf8(w);
  if (!raw_cps.empty() && fold_lower(raw_cps[0]) != raw_cps[0])
    feats.push_back("cap");
  bool allcaps = !raw_cps.empty();
  for (char32_t c : raw_cps)
    if (!is_letter(c) || fold_lower(c) == c) { allcaps = false; break; }
  if (allcaps) feats.push_back("allcaps");

  size_t n = forms.size();
  feats.push_back("w-1=" + (i >= 1 ? forms[i - 1] : std::string("<s>")));
  feats.push_back("w-2=" + (i >= 2 ? forms[i - 2] : std::string("<s>")));
  feats.push_back("w+1=" + (i + 1 < n ? forms[i + 1] : std::string("</s>")));
  feats.push_back("w+2=" + (i + 2 < n ? forms[i + 2] : std::string("</s>")));
  return feats;
}

// --- Viterbi ----------------------------------------------------------------------

std::vector<int> viterbi_path(const std::vector<std::vector<double>>& emissions,
                              const std::vector<double>& transitions, int tags) {
  const size_t n = emissions.size();
  if (n == 0) return {};
  const int T = tags;
  const double kNegInf = -std::numeric_limits<double>::infinity();
  auto trans = [&](int prev, int cur) {
    return transitions[size_t(prev + 1) * size_t(T) + size_t(cur)];
  };

  // Suffix-best scores with forward pointers. Keeping the first maximum at
  // every choice, plus the first maximum over the initial tag, makes ties
  // resolve to the sequence with the lower tag index at the first position
  // where the candidates differ.
  std::vector<std::vector<double>> best_from(n, std::vector<double>(size_t(T)));
  std::vector<std::vector<int>> next(n - 1, std::vector<int>(size_t(T), 0));
  for (int t = 0; t < T; ++t) best_from[n - 1][size_t(t)] = emissions[n - 1][size_t(t)];
  for (size_t i = n - 1; i-- > 0;) {
    for (int t = 0; t < T; ++t) {
      double best = kNegInf;
      int arg = 0;
      for (int u = 0; u < T; ++u) {
        double s = trans(t, u) + best_from[i + 1][size_t(u)];
        if (s > best) { best = s; arg = u; }
      }
      best_from[i][size_t(t)] = emissions[i][size_t(t)] + best;
      next[i][size_t(t)] = arg;
    }
  }

  double best = kNegInf;
  int first = 0;
  for (int t = 0; t < T; ++t) {
    double s = trans(-1, t) + best_from[0][size_t(t)];
    if (s > best) { best = s; first = t; }
  }

  std::vector<int> path(n);
  path[0] = first;
  for (size_t i = 1; i < n; ++i) path[i] = next[i - 1][size_t(path[i - 1])];
  return path;
}

// --- Shared helpers ---------------------------------------------------------------

namespace {

std::string hex_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

double parse_double(const std::string& s, const std::string& source) {
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    throw parse_error(source + ": bad number '" + s + "'");
  return v;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  size_t start = 0;
  while (true) {
    size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return fields;
}

std::string next_line(std::istream& in, const std::string& source) {
  std::string line;
  if (!std::getline(in, line))
    throw parse_error(source + ": unexpected end of file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

long expect_count(const std::string& line, const std::string& keyword,
                  const std::string& source) {
  auto fields = split_tabs(line);
  std::istringstream ss(line);
  std::string word;
  long value = -1;
  if (!(ss >> word >> value) || word != keyword || value < 0)
    throw parse_error(source + ": expected '" + keyword + " <count>', got '" +
                      line + "'");
  return value;
}

// Deterministic Fisher-Yates (std::shuffle is implementation-defined).
void shuffle_indices(std::vector<int>& idx, std::mt19937& rng) {
  for (size_t i = idx.size(); i > 1; --i)
    std::swap(idx[i - 1], idx[rng() % i]);
}

// Lazily averaged weight vector: current weights plus accumulated history.
struct AveragedVec {
  std::vector<double> w;
  std::vector<double> acc;
  std::vector<long long> last;

  explicit AveragedVec(size_t n) : w(n, 0.0), acc(n, 0.0), last(n, 0) {}

  void update(size_t i, double delta, long long step) {
    acc[i] += double(step - last[i]) * w[i];
    last[i] = step;
    w[i] += delta;
  }
  double averaged(size_t i, long long steps) const {
    if (steps == 0) return 0.0;
    return (acc[i] + double(steps - last[i]) * w[i]) / double(steps);
  }
};

struct Interner {
  std::unordered_map<std::string, int> ids;
  std::vector<std::string> names;

  int intern(const std::string& s) {
    auto it = ids.find(s);
    if (it != ids.end()) return it->second;
    int id = int(names.size());
    ids.emplace(s, id);
    names.push_back(s);
    return id;
  }
  int find(const std::string& s) const {
    auto it = ids.find(s);
    return it == ids.end() ? -1 : it->second;
  }
};

}  // namespace

// --- Morph classifiers ----------------------------------------------------------

namespace {

const char* kMorphFields[] = {"mode", "tense", "person", "number", "gender", "case"};

std::string field_label(const MorphBundle& b, const std::string& field) {
  auto nz = [](std::string_view s) {
    return s.empty() ? std::string("none") : std::string(s);
  };
  MorphBundle tmp;
  if (field == "mode") {
    tmp.mode = b.mode;
    std::string s = serialize_morph(tmp);
    return s == "_" ? "none" : s.substr(5);  // strip "MODE="
  }
  if (field == "tense") {
    tmp.tense = b.tense;
    std::string s = serialize_morph(tmp);
    return s == "_" ? "none" : s.substr(6);
  }
  if (field == "person") {
    tmp.person = b.person;
    std::string s = serialize_morph(tmp);
    return s == "_" ? "none" : s.substr(6);
  }
  if (field == "number") {
    tmp.number = b.number;
    std::string s = serialize_morph(tmp);
    return s == "_" ? "none" : s.substr(6);
  }
  if (field == "gender") {
    tmp.gender = b.gender;
    std::string s = serialize_morph(tmp);
    return s == "_" ? "none" : s.substr(6);
  }
  return nz(b.case_code);
}

void apply_field_label(MorphBundle& b, const std::string& field,
                       const std::string& label) {
  if (label == "none") return;
  if (field == "case") {
    b.case_code = label;
    return;
  }
  MorphBundle parsed;
  if (field == "mode") parsed = parse_morph_bundle("MODE=" + label);
  else if (field == "tense") parsed = parse_morph_bundle("TEMPS=" + label);
  else if (field == "person") parsed = parse_morph_bundle("PERS.=" + label);
  else if (field == "number") parsed = parse_morph_bundle("NOMB.=" + label);
  else if (field == "gender") parsed = parse_morph_bundle("GENRE=" + label);
  b.mode = field == "mode" ? parsed.mode : b.mode;
  b.tense = field == "tense" ? parsed.tense : b.tense;
  b.person = field == "person" ? parsed.person : b.person;
  b.number = field == "number" ? parsed.number : b.number;
  b.gender = field == "gender" ? parsed.gender : b.gender;
}

}  // namespace

int MorphClassifiers::FieldClassifier::classify(
    const std::vector<std::string>& features) const {
  if (labels.size() == 1) return 0;
  std::vector<double> scores(labels.size(), 0.0);
  for (const auto& f : features) {
    auto it = weights.find(f);
    if (it == weights.end()) continue;
    for (size_t l = 0; l < scores.size(); ++l) scores[l] += it->second[l];
  }
  size_t best = 0;
  for (size_t l = 1; l < scores.size(); ++l)
    if (scores[l] > scores[best]) best = l;
  return int(best);
}

MorphClassifiers MorphClassifiers::train(const Corpus& train,
                                         const TaggerConfig& config,
                                         std::vector<std::string>* warnings) {
  MorphClassifiers result;

  // Supervised tokens: those carrying a morph bundle (the unknown marker is
  // skipped). Features are shared with the tagger plus the gold POS.
  struct Sample {
    std::vector<std::string> features;
    const MorphBundle* bundle;
  };
  std::vector<Sample> samples;
  for (const auto& sentence : train.sentences) {
    std::vector<std::string> forms;
    forms.reserve(sentence.size());
    for (const auto& t : sentence) forms.push_back(t.form);
    for (size_t i = 0; i < sentence.size(); ++i) {
      if (!sentence[i].morph.has_value()) continue;
      Sample s;
      s.features = token_features(forms, i);
      s.features.push_back("pos=" + sentence[i].pos);
      s.bundle = &*sentence[i].morph;
      samples.push_back(std::move(s));
    }
  }
  if (samples.empty()) {
    if (warnings)
      warnings->push_back("no morphology supervision: all classifiers omitted");
    return result;
  }

  for (const char* field : kMorphFields) {
    std::vector<std::string> gold;
    gold.reserve(samples.size());
    std::set<std::string> label_set;
    for (const auto& s : samples) {
      gold.push_back(field_label(*s.bundle, field));
      label_set.insert(gold.back());
    }

    FieldClassifier fc;
    fc.field = field;
    fc.labels.assign(label_set.begin(), label_set.end());
    if (fc.labels.size() == 1) {
      if (warnings)
        warnings->push_back(std::string("morph field '") + field +
                            "' has a single observed label '" + fc.labels[0] +
                            "': constant classifier");
      result.fields_.push_back(std::move(fc));
      continue;
    }

    const size_t L = fc.labels.size();
    std::unordered_map<std::string, size_t> label_index;
    for (size_t l = 0; l < L; ++l) label_index.emplace(fc.labels[l], l);

    Interner feats;
    std::vector<std::vector<int>> sample_feats(samples.size());
    for (size_t s = 0; s < samples.size(); ++s)
      for (const auto& f : samples[s].features)
        sample_feats[s].push_back(feats.intern(f));

    std::vector<AveragedVec> weights(feats.names.size(), AveragedVec(L));
    std::mt19937 rng(config.seed);
    std::vector<int> order(samples.size());
    for (size_t s = 0; s < order.size(); ++s) order[s] = int(s);

    long long step = 0;
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
      shuffle_indices(order, rng);
      for (int s : order) {
        ++step;
        std::vector<double> scores(L, 0.0);
        for (int f : sample_feats[size_t(s)])
          for (size_t l = 0; l < L; ++l) scores[l] += weights[size_t(f)].w[l];
        size_t pred = 0;
        for (size_t l = 1; l < L; ++l)
          if (scores[l] > scores[pred]) pred = l;
        size_t truth = label_index[gold[size_t(s)]];
        if (pred != truth) {
          for (int f : sample_feats[size_t(s)]) {
            weights[size_t(f)].update(truth, +1.0, step);
            weights[size_t(f)].update(pred, -1.0, step);
          }
        }
      }
    }

    for (size_t f = 0; f < weights.size(); ++f) {
      std::vector<double> row(L);
      bool nonzero = false;
      for (size_t l = 0; l < L; ++l) {
        row[l] = weights[f].averaged(l, step);
        if (row[l] != 0.0) nonzero = true;
      }
      if (nonzero) fc.weights.emplace(feats.names[f], std::move(row));
    }
    result.fields_.push_back(std::move(fc));
  }
  return result;
}

MorphBundle MorphClassifiers::predict(const std::vector<std::string>& forms,
                                      size_t i, const std::string& pos) const {
  MorphBundle bundle;
  if (fields_.empty()) return bundle;
  std::vector<std::string> features = token_features(forms, i);
  features.push_back("pos=" + pos);
  for (const auto& fc : fields_) {
    int label = fc.classify(features);
    apply_field_label(bundle, fc.field, fc.labels[size_t(label)]);
  }
  return bundle;
}

std::vector<std::string> MorphClassifiers::field_names() const {
  std::vector<std::string> names;
  for (const auto& f : fields_) names.push_back(f.field);
  return names;
}

const std::vector<std::string>* MorphClassifiers::labels_of(
    const std::string& field) const {
  for (const auto& f : fields_)
    if (f.field == field) return &f.labels;
  return nullptr;
}

void MorphClassifiers::save(std::ostream& out) const {
  out << "classica-aux 1\n";
  out << "fields " << fields_.size() << '\n';
  for (const auto& fc : fields_) {
    out << "field " << fc.field << '\n';
    out << "labels " << fc.labels.size() << '\n';
    for (const auto& l : fc.labels) out << l << '\n';
    out << "features " << fc.weights.size() << '\n';
    for (const auto& [feat, row] : fc.weights) {
      out << feat;
      for (double v : row) out << '\t' << hex_double(v);
      out << '\n';
    }
  }
}

MorphClassifiers MorphClassifiers::load(std::istream& in, const std::string& name) {
  MorphClassifiers result;
  if (next_line(in, name) != "classica-aux 1")
    throw parse_error(name + ": bad auxiliary-classifier header");
  long nfields = expect_count(next_line(in, name), "fields", name);
  for (long f = 0; f < nfields; ++f) {
    std::string line = next_line(in, name);
    if (line.rfind("field ", 0) != 0)
      throw parse_error(name + ": expected 'field <name>'");
    FieldClassifier fc;
    fc.field = line.substr(6);
    long nlabels = expect_count(next_line(in, name), "labels", name);
    for (long l = 0; l < nlabels; ++l) fc.labels.push_back(next_line(in, name));
    long nfeats = expect_count(next_line(in, name), "features", name);
    for (long i = 0; i < nfeats; ++i) {
      auto fields = split_tabs(next_line(in, name));
      if (fields.size() != size_t(nlabels) + 1)
        throw parse_error(name + ": bad weight row");
      std::vector<double> row;
      for (size_t k = 1; k < fields.size(); ++k)
        row.push_back(parse_double(fields[k], name));
      fc.weights.emplace(fields[0], std::move(row));
    }
    result.fields_.push_back(std::move(fc));
  }
  return result;
}

// --- Tagger model ----------------------------------------------------------------

std::vector<std::string> TaggerModel::decode(
    const std::vector<std::string>& forms) const {
  if (forms.empty()) return {};
  const int T = int(tags_.size());
  std::vector<std::vector<double>> emissions(forms.size(),
                                             std::vector<double>(size_t(T), 0.0));
  for (size_t i = 0; i < forms.size(); ++i) {
    for (const auto& f : token_features(forms, i)) {
      auto it = weights_.find(f);
      if (it == weights_.end()) continue;
      for (int t = 0; t < T; ++t) emissions[i][size_t(t)] += it->second[size_t(t)];
    }
  }
  std::vector<int> path = viterbi_path(emissions, transitions_, T);
  std::vector<std::string> out;
  out.reserve(path.size());
  for (int t : path) out.push_back(tags_[size_t(t)]);
  return out;
}

std::vector<std::string> viterbi_decode(const TaggerModel& model,
                                        const std::vector<std::string>& forms) {
  return model.decode(forms);
}

TaggerModel TaggerModel::from_weights(
    std::vector<std::string> tags,
    std::map<std::string, std::vector<double>> feature_weights,
    std::vector<double> transitions) {
  const size_t T = tags.size();
  if (transitions.size() != (T + 1) * T)
    throw error("transition matrix must be (tags+1) x tags");
  for (const auto& [f, row] : feature_weights)
    if (row.size() != T) throw error("feature weight row size mismatch at '" + f + "'");
  TaggerModel m;
  m.tags_ = std::move(tags);
  m.weights_ = std::move(feature_weights);
  m.transitions_ = std::move(transitions);
  return m;
}

void TaggerModel::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw error("cannot write model: " + path);
  out << "classica-tagger 1\n";
  out << "seed " << config_.seed << '\n';
  out << "epochs " << config_.epochs << '\n';
  out << "patience " << config_.patience << '\n';
  out << "threshold " << hex_double(config_.threshold) << '\n';
  out << "restarts " << config_.restarts << '\n';
  out << "tags " << tags_.size() << '\n';
  for (const auto& t : tags_) out << t << '\n';
  out << "transitions\n";
  const size_t T = tags_.size();
  for (size_t row = 0; row <= T; ++row) {
    for (size_t col = 0; col < T; ++col) {
      if (col) out << '\t';
      out << hex_double(transitions_[row * T + col]);
    }
    out << '\n';
  }
  out << "features " << weights_.size() << '\n';
  for (const auto& [feat, row] : weights_) {
    out << feat;
    for (double v : row) out << '\t' << hex_double(v);
    out << '\n';
  }
  out << "aux " << (aux_ ? 1 : 0) << '\n';
  if (aux_) aux_->save(out);
}

TaggerModel TaggerModel::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot open model: " + path);
  TaggerModel m;
  if (next_line(in, path) != "classica-tagger 1")
    throw parse_error(path + ": not a tagger model (bad header)");

  auto read_kv = [&](const char* key) {
    std::string line = next_line(in, path);
    std::istringstream ss(line);
    std::string word, value;
    if (!(ss >> word >> value) || word != key)
      throw parse_error(path + ": expected '" + key + "', got '" + line + "'");
    return value;
  };
  m.config_.seed = uint32_t(std::stoul(read_kv("seed")));
  m.config_.epochs = std::stoi(read_kv("epochs"));
  m.config_.patience = std::stoi(read_kv("patience"));
  m.config_.threshold = parse_double(read_kv("threshold"), path);
  m.config_.restarts = std::stoi(read_kv("restarts"));

  long ntags = expect_count(next_line(in, path), "tags", path);
  for (long t = 0; t < ntags; ++t) m.tags_.push_back(next_line(in, path));
  if (next_line(in, path) != "transitions")
    throw parse_error(path + ": expected 'transitions'");
  const size_t T = size_t(ntags);
  m.transitions_.resize((T + 1) * T);
  for (size_t row = 0; row <= T; ++row) {
    auto fields = split_tabs(next_line(in, path));
    if (fields.size() != T) throw parse_error(path + ": bad transition row");
    for (size_t col = 0; col < T; ++col)
      m.transitions_[row * T + col] = parse_double(fields[col], path);
  }
  long nfeats = expect_count(next_line(in, path), "features", path);
  for (long i = 0; i < nfeats; ++i) {
    auto fields = split_tabs(next_line(in, path));
    if (fields.size() != T + 1) throw parse_error(path + ": bad feature row");
    std::vector<double> row;
    for (size_t k = 1; k < fields.size(); ++k)
      row.push_back(parse_double(fields[k], path));
    m.weights_.emplace(fields[0], std::move(row));
  }
  std::string aux_line = next_line(in, path);
  if (aux_line == "aux 1")
    m.aux_ = MorphClassifiers::load(in, path);
  else if (aux_line != "aux 0")
    throw parse_error(path + ": expected 'aux 0|1'");
  return m;
}

// --- Training ---------------------------------------------------------------------

namespace {

struct PreparedSentence {
  std::vector<std::vector<int>> features;  // per position
  std::vector<int> gold;                   // tag ids; -1 = outside inventory
};

struct RunResult {
  // Averaged snapshot of the best epoch.
  std::vector<std::vector<double>> weights;  // [feature id][tag]
  std::vector<double> transitions;
  std::vector<double> dev_accuracy;
  int epochs_run = 0;
  double best_dev = 0.0;
};

std::vector<std::vector<double>> emissions_for(
    const PreparedSentence& s, const std::vector<std::vector<double>>& weights,
    int T) {
  std::vector<std::vector<double>> e(s.features.size(),
                                     std::vector<double>(size_t(T), 0.0));
  for (size_t i = 0; i < s.features.size(); ++i)
    for (int f : s.features[i]) {
      if (f < 0) continue;
      const auto& row = weights[size_t(f)];
      for (int t = 0; t < T; ++t) e[i][size_t(t)] += row[size_t(t)];
    }
  return e;
}

RunResult run_training(const std::vector<PreparedSentence>& train,
                       const std::vector<PreparedSentence>& dev, int T,
                       size_t feature_count, uint32_t seed,
                       const TaggerConfig& config) {
  std::vector<AveragedVec> weights(feature_count, AveragedVec(size_t(T)));
  AveragedVec transitions((size_t(T) + 1) * size_t(T));
  std::mt19937 rng(seed);
  std::vector<int> order(train.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = int(i);

  size_t dev_tokens = 0;
  for (const auto& s : dev) dev_tokens += s.gold.size();

  RunResult result;
  EarlyStopping stopping(config.threshold, config.patience);
  double best_snapshot = -1.0;
  long long step = 0;

  // Raw (non-averaged) weights drive the updates.
  std::vector<std::vector<double>> raw(feature_count,
                                       std::vector<double>(size_t(T), 0.0));
  std::vector<double> raw_trans((size_t(T) + 1) * size_t(T), 0.0);

  auto sync_raw_feature = [&](int f) {
    const auto& av = weights[size_t(f)];
    for (int t = 0; t < T; ++t) raw[size_t(f)][size_t(t)] = av.w[size_t(t)];
  };

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    shuffle_indices(order, rng);
    for (int si : order) {
      const PreparedSentence& s = train[size_t(si)];
      ++step;
      auto emissions = emissions_for(s, raw, T);
      std::vector<int> pred = viterbi_path(emissions, raw_trans, T);
      for (size_t i = 0; i < s.gold.size(); ++i) {
        int g = s.gold[i];
        int p = pred[i];
        if (g != p) {
          for (int f : s.features[i]) {
            weights[size_t(f)].update(size_t(g), +1.0, step);
            weights[size_t(f)].update(size_t(p), -1.0, step);
            sync_raw_feature(f);
          }
        }
        int pg = i > 0 ? s.gold[i - 1] : -1;
        int pp = i > 0 ? pred[i - 1] : -1;
        if (pg != pp || g != p) {
          size_t gi = size_t(pg + 1) * size_t(T) + size_t(g);
          size_t pi = size_t(pp + 1) * size_t(T) + size_t(p);
          transitions.update(gi, +1.0, step);
          transitions.update(pi, -1.0, step);
          raw_trans[gi] = transitions.w[gi];
          raw_trans[pi] = transitions.w[pi];
        }
      }
    }
    result.epochs_run = epoch + 1;

    if (dev_tokens == 0) continue;

    // Dev accuracy of the averaged model.
    std::vector<std::vector<double>> averaged(feature_count,
                                              std::vector<double>(size_t(T)));
    for (size_t f = 0; f < feature_count; ++f)
      for (int t = 0; t < T; ++t)
        averaged[f][size_t(t)] = weights[f].averaged(size_t(t), step);
    std::vector<double> averaged_trans((size_t(T) + 1) * size_t(T));
    for (size_t i = 0; i < averaged_trans.size(); ++i)
      averaged_trans[i] = transitions.averaged(i, step);

    size_t correct = 0;
    for (const auto& s : dev) {
      auto emissions = emissions_for(s, averaged, T);
      std::vector<int> pred = viterbi_path(emissions, averaged_trans, T);
      for (size_t i = 0; i < s.gold.size(); ++i)
        if (s.gold[i] >= 0 && pred[i] == s.gold[i]) ++correct;
    }
    double acc = double(correct) / double(dev_tokens);
    result.dev_accuracy.push_back(acc);

    if (acc > best_snapshot) {
      best_snapshot = acc;
      result.weights = std::move(averaged);
      result.transitions = std::move(averaged_trans);
      result.best_dev = acc;
    }
    if (stopping.observe(acc)) break;
  }

  if (dev_tokens == 0) {
    // No dev set: the final averaged weights are the model.
    result.weights.assign(feature_count, std::vector<double>(size_t(T)));
    for (size_t f = 0; f < feature_count; ++f)
      for (int t = 0; t < T; ++t)
        result.weights[f][size_t(t)] = weights[f].averaged(size_t(t), step);
    result.transitions.resize((size_t(T) + 1) * size_t(T));
    for (size_t i = 0; i < result.transitions.size(); ++i)
      result.transitions[i] = transitions.averaged(i, step);
    result.best_dev = 0.0;
  }
  return result;
}

}  // namespace

TaggerModel train_tagger(const Corpus& train, const Corpus& dev,
                         const TaggerConfig& config, TrainLog* log) {
  if (train.token_count() == 0) throw error("empty training corpus");
  if (config.epochs <= 0) throw error("epochs must be positive");
  if (config.restarts <= 0) throw error("restarts must be positive");

  // Tag inventory: sorted unique gold tags of the training data.
  std::set<std::string> tag_set;
  for (const auto& s : train.sentences)
    for (const auto& t : s) {
      if (t.pos.empty())
        throw error("training token '" + t.form + "' has no POS tag");
      tag_set.insert(t.pos);
    }
  std::vector<std::string> tags(tag_set.begin(), tag_set.end());
  std::unordered_map<std::string, int> tag_ids;
  for (size_t i = 0; i < tags.size(); ++i) tag_ids.emplace(tags[i], int(i));
  const int T = int(tags.size());

  std::vector<std::string> warnings;
  for (const auto& s : dev.sentences)
    for (const auto& t : s)
      if (!t.pos.empty() && !tag_set.count(t.pos)) {
        std::string w = "dev tag '" + t.pos + "' absent from the training inventory: scored as always wrong";
        if (std::find(warnings.begin(), warnings.end(), w) == warnings.end())
          warnings.push_back(w);
      }

  // Features are interned over train then dev, in file order.
  Interner features;
  auto prepare = [&](const Corpus& corpus) {
    std::vector<PreparedSentence> prepared;
    for (const auto& sentence : corpus.sentences) {
      if (sentence.empty()) continue;
      std::vector<std::string> forms;
      forms.reserve(sentence.size());
      for (const auto& t : sentence) forms.push_back(t.form);
      PreparedSentence ps;
      ps.features.resize(sentence.size());
      ps.gold.resize(sentence.size());
      for (size_t i = 0; i < sentence.size(); ++i) {
        for (const auto& f : token_features(forms, i))
          ps.features[i].push_back(features.intern(f));
        auto it = tag_ids.find(sentence[i].pos);
        ps.gold[i] = it == tag_ids.end() ? -1 : it->second;
      }
      prepared.push_back(std::move(ps));
    }
    return prepared;
  };
  std::vector<PreparedSentence> train_prepared = prepare(train);
  std::vector<PreparedSentence> dev_prepared = prepare(dev);

  bool have_dev = false;
  for (const auto& s : dev_prepared)
    if (!s.gold.empty()) have_dev = true;

  int restarts = config.restarts;
  if (!have_dev && restarts > 1) {
    warnings.push_back("no dev set: restarts reduced to a single run");
    restarts = 1;
  }

  RunResult best;
  uint32_t best_seed = config.seed;
  bool have_best = false;
  std::vector<RunResult> all_runs;
  for (int r = 0; r < restarts; ++r) {
    uint32_t seed = config.seed + uint32_t(r);
    RunResult run = run_training(train_prepared, dev_prepared, T,
                                 features.names.size(), seed, config);
    if (!have_best || run.best_dev > best.best_dev) {
      best = std::move(run);
      best_seed = seed;
      have_best = true;
    }
  }

  TaggerModel model;
  model.tags_ = tags;
  model.transitions_ = best.transitions;
  model.config_ = config;
  model.config_.seed = best_seed;
  for (size_t f = 0; f < features.names.size(); ++f) {
    bool nonzero = false;
    for (int t = 0; t < T; ++t)
      if (best.weights[f][size_t(t)] != 0.0) { nonzero = true; break; }
    if (nonzero) model.weights_.emplace(features.names[f], best.weights[f]);
  }

  if (log) {
    log->dev_accuracy = best.dev_accuracy;
    log->epochs_run = best.epochs_run;
    log->winning_seed = best_seed;
    log->best_dev = best.best_dev;
    log->warnings = warnings;
  }
  return model;
}

MorphClassifiers train_morph_aux(const Corpus& train, const TaggerConfig& config,
                                 std::vector<std::string>* warnings) {
  return MorphClassifiers::train(train, config, warnings);
}

}  // namespace classica
