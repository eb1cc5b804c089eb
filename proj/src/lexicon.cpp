#include "classica/lexicon.hpp"

#include <fstream>

#include "classica/errors.hpp"
#include "classica/text.hpp"

namespace classica {

namespace {

std::vector<std::string> split_char(const std::string& s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t p = s.find(sep, start);
    if (p == std::string::npos) {
      out.push_back(s.substr(start));
      break;
    }
    out.push_back(s.substr(start, p - start));
    start = p + 1;
  }
  return out;
}

}  // namespace

void Lexicon::add(LexiconEntry entry) {
  // Identical rows collapse; distinct analyses of the same form accumulate
  // in insertion order.
  auto it = exact_index_.find(entry.form);
  if (it != exact_index_.end()) {
    for (size_t i : it->second)
      if (entries_[i] == entry) return;
  }
  size_t index = entries_.size();
  exact_index_[entry.form].push_back(index);
  lower_index_[lowercase(entry.form)].push_back(index);
  entries_.push_back(std::move(entry));
}

Lexicon Lexicon::load(const std::string& path, const TagMaps& maps) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot open lexicon: " + path);
  Lexicon lex;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_char(line, '\t');
    if (fields.size() != 4)
      throw parse_error(path, lineno,
                        "expected 4 tab-separated columns, got " +
                            std::to_string(fields.size()));
    if (fields[0].empty())
      throw parse_error(path, lineno, "empty form");
    if (fields[1].empty())
      throw parse_error(path, lineno, "empty lemma");
    auto cat = category_from_name(fields[2]);
    if (!cat)
      throw parse_error(path, lineno,
                        "unknown Morphalou category '" + fields[2] + "'");
    LexiconEntry entry;
    entry.form = fields[0];
    entry.lemma = fields[1];
    entry.category = *cat;
    if (!fields[3].empty()) {
      for (auto& v : split_char(fields[3], ';')) {
        if (v.empty())
          throw parse_error(path, lineno, "empty flexion value");
        if (!maps.acceptable_flexion_value(v))
          throw parse_error(path, lineno, "unknown flexion value '" + v + "'");
        entry.flexion_values.push_back(std::move(v));
      }
    }
    lex.add(std::move(entry));
  }
  return lex;
}

void Lexicon::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw error("cannot write lexicon: " + path);
  for (const auto& e : entries_) {
    out << e.form << '\t' << e.lemma << '\t' << category_name(e.category) << '\t';
    for (size_t i = 0; i < e.flexion_values.size(); ++i) {
      if (i) out << ';';
      out << e.flexion_values[i];
    }
    out << '\n';
  }
}

std::vector<const LexiconEntry*> Lexicon::lookup(const std::string& form,
                                                 bool fallback_lowercase) const {
  std::vector<const LexiconEntry*> out;
  auto it = exact_index_.find(form);
  if (it != exact_index_.end()) {
    for (size_t i : it->second) out.push_back(&entries_[i]);
    return out;
  }
  if (fallback_lowercase) {
    auto low = lower_index_.find(lowercase(form));
    if (low != lower_index_.end())
      for (size_t i : low->second) out.push_back(&entries_[i]);
  }
  return out;
}

void Lexicon::load_names(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot open name list: " + path);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    add_name(line);
  }
}

void Lexicon::add_name(const std::string& lemma) {
  if (name_exact_.count(lemma)) return;
  size_t index = names_.size();
  names_.push_back(lemma);
  name_exact_.emplace(lemma, index);
  name_lower_.emplace(lowercase(lemma), index);  // first spelling wins
}

bool Lexicon::has_name(const std::string& lemma) const {
  return name_exact_.count(lemma) != 0;
}

std::optional<std::string> Lexicon::resolve_name(const std::string& form) const {
  auto it = name_exact_.find(form);
  if (it != name_exact_.end()) return names_[it->second];
  auto low = name_lower_.find(lowercase(form));
  if (low != name_lower_.end()) return names_[low->second];
  return std::nullopt;
}

}  // namespace classica
