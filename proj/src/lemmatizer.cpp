#include "classica/lemmatizer.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "classica/errors.hpp"
#include "classica/text.hpp"

namespace classica {

namespace {

size_t common_prefix(const std::u32string& a, const std::u32string& b) {
  size_t n = std::min(a.size(), b.size());
  size_t i = 0;
  while (i < n && a[i] == b[i]) ++i;
  return i;
}

}  // namespace

LemmatizerModel LemmatizerModel::train(const Corpus& train,
                                       const LemmatizerConfig& config) {
  LemmatizerModel model;
  model.config_ = config;

  for (const auto& sentence : train.sentences) {
    for (const auto& token : sentence) {
      if (token.lemma.empty()) continue;
      ++model.lemma_counts_[token.lemma];

      // Proper names are served by the name list, not by suffix rules.
      if (token.pos == "NOMpro") continue;

      std::u32string form = decode_utf8(token.form);
      for (char32_t& c : form) c = fold_lower(c);
      std::u32string lemma = decode_utf8(token.lemma);

      size_t lcp = common_prefix(form, lemma);
      size_t tail = form.size() - lcp;  // code points rewritten
      if (tail > config.max_suffix) continue;
      std::u32string lemma_tail = lemma.substr(lcp);

      size_t k_min = std::max<size_t>(1, tail);
      size_t k_max = std::min(config.max_suffix, form.size());
      for (size_t k = k_min; k <= k_max; ++k) {
        Key key{encode_utf8(form.substr(form.size() - k)), token.pos};
        // Replacement: the unchanged part of the key plus the lemma's tail.
        std::u32string repl =
            form.substr(form.size() - k, k - tail) + lemma_tail;
        ++model.rules_[key][encode_utf8(repl)];
      }
    }
  }
  return model;
}

std::string LemmatizerModel::lemmatize(const std::string& form,
                                       const std::string& pos) const {
  // 1. Proper names against the authority list.
  if (pos == "NOMpro" && lexicon_) {
    if (auto name = lexicon_->resolve_name(form)) return *name;
  }

  // 2. Lexicon analyses filtered by the POS-mapped category.
  if (lexicon_ && pos != "NOMpro" && !pos.empty() && PosTag::known(pos)) {
    const TagMaps& maps = TagMaps::builtin();
    PosTag tag = PosTag::parse(pos);
    if (maps.has_category_mapping(tag)) {
      MorphalouCategory wanted = maps.cattex_to_morphalou(tag);
      std::set<std::string> candidates;
      for (const auto* e : lexicon_->lookup(form, true))
        if (e->category == wanted) candidates.insert(e->lemma);
      if (candidates.size() == 1) return *candidates.begin();
      if (candidates.size() > 1) {
        // Most frequent training lemma, ties lexicographic (the set is
        // already in lexicographic order).
        std::string best;
        long best_count = -1;
        for (const auto& lemma : candidates) {
          long count = lemma_count(lemma);
          if (count > best_count) {
            best = lemma;
            best_count = count;
          }
        }
        return best;
      }
    }
  }

  // 3. Longest matching suffix rule for this POS; within a suffix the most
  //    frequent replacement wins, ties lexicographic.
  std::u32string low = decode_utf8(form);
  for (char32_t& c : low) c = fold_lower(c);
  for (size_t k = std::min(config_.max_suffix, low.size()); k >= 1; --k) {
    Key key{encode_utf8(low.substr(low.size() - k)), pos};
    auto it = rules_.find(key);
    if (it == rules_.end()) continue;
    std::string best;
    long best_count = -1;
    for (const auto& [repl, count] : it->second) {
      if (count > best_count) {
        best = repl;
        best_count = count;
      }
    }
    return encode_utf8(low.substr(0, low.size() - k)) + best;
  }

  // 4. Identity fallback, lowercased except for proper names.
  if (pos == "NOMpro") return form;
  return encode_utf8(low);
}

long LemmatizerModel::lemma_count(const std::string& lemma) const {
  auto it = lemma_counts_.find(lemma);
  return it == lemma_counts_.end() ? 0 : it->second;
}

std::vector<std::pair<std::string, long>> LemmatizerModel::rules_for(
    const std::string& suffix, const std::string& pos) const {
  std::vector<std::pair<std::string, long>> out;
  auto it = rules_.find(Key{suffix, pos});
  if (it == rules_.end()) return out;
  out.assign(it->second.begin(), it->second.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  return out;
}

void LemmatizerModel::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw error("cannot write model: " + path);
  out << "classica-lemmatizer 1\n";
  out << "max_suffix " << config_.max_suffix << '\n';
  out << "lemmas " << lemma_counts_.size() << '\n';
  for (const auto& [lemma, count] : lemma_counts_)
    out << lemma << '\t' << count << '\n';
  size_t rule_rows = 0;
  for (const auto& [key, repls] : rules_) rule_rows += repls.size();
  out << "rules " << rule_rows << '\n';
  for (const auto& [key, repls] : rules_)
    for (const auto& [repl, count] : repls)
      out << key.suffix << '\t' << key.pos << '\t' << repl << '\t' << count << '\n';
}

namespace {

std::string next_line(std::istream& in, const std::string& source) {
  std::string line;
  if (!std::getline(in, line))
    throw parse_error(source + ": unexpected end of file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

long expect_count(const std::string& line, const std::string& keyword,
                  const std::string& source) {
  std::istringstream ss(line);
  std::string word;
  long value = -1;
  if (!(ss >> word >> value) || word != keyword || value < 0)
    throw parse_error(source + ": expected '" + keyword + " <count>'");
  return value;
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

}  // namespace

LemmatizerModel LemmatizerModel::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot open model: " + path);
  if (next_line(in, path) != "classica-lemmatizer 1")
    throw parse_error(path + ": not a lemmatizer model (bad header)");
  LemmatizerModel m;
  m.config_.max_suffix =
      size_t(expect_count(next_line(in, path), "max_suffix", path));
  long nlemmas = expect_count(next_line(in, path), "lemmas", path);
  for (long i = 0; i < nlemmas; ++i) {
    auto fields = split_tabs(next_line(in, path));
    if (fields.size() != 2) throw parse_error(path + ": bad lemma row");
    m.lemma_counts_.emplace(fields[0], std::stol(fields[1]));
  }
  long nrules = expect_count(next_line(in, path), "rules", path);
  for (long i = 0; i < nrules; ++i) {
    auto fields = split_tabs(next_line(in, path));
    if (fields.size() != 4) throw parse_error(path + ": bad rule row");
    m.rules_[Key{fields[0], fields[1]}][fields[2]] = std::stol(fields[3]);
  }
  return m;
}

}  // namespace classica
