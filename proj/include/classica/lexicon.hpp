// Morphalou-style inflected-form lexicon plus the proper-name authority list.
// Lexicon file: 4-column TSV (form, lemma, category, semicolon-joined flexion
// values), "#" comments allowed. Name list: one lemma per line.
#ifndef CLASSICA_LEXICON_HPP
#define CLASSICA_LEXICON_HPP

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "classica/tagset.hpp"

namespace classica {

struct LexiconEntry {
  std::string form;
  std::string lemma;
  MorphalouCategory category;
  std::vector<std::string> flexion_values;  // raw Morphalou values

  bool operator==(const LexiconEntry& o) const = default;
};

class Lexicon {
public:
  Lexicon() = default;

  static Lexicon load(const std::string& path,
                      const TagMaps& maps = TagMaps::builtin());
  void save(const std::string& path) const;

  void add(LexiconEntry entry);  // dedups identical rows, keeps order per form

  // Exact-case matches; with the fallback enabled and no exact hit, matches
  // on the lowercased form. Entries come back in file order.
  std::vector<const LexiconEntry*> lookup(const std::string& form,
                                          bool fallback_lowercase = true) const;

  size_t size() const { return entries_.size(); }
  const std::vector<LexiconEntry>& entries() const { return entries_; }

  // Proper-name authority list.
  void load_names(const std::string& path);
  void add_name(const std::string& lemma);
  bool has_name(const std::string& lemma) const;
  // Exact hit first, then case-insensitive; returns the list's spelling.
  std::optional<std::string> resolve_name(const std::string& form) const;
  const std::vector<std::string>& names() const { return names_; }

private:
  std::vector<LexiconEntry> entries_;
  std::unordered_map<std::string, std::vector<size_t>> exact_index_;
  std::unordered_map<std::string, std::vector<size_t>> lower_index_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, size_t> name_exact_;
  std::unordered_map<std::string, size_t> name_lower_;
};

}  // namespace classica

#endif
