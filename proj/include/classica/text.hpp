// Character-level text handling: UTF-8 codec, French-oriented case folding,
// character normalization (ligatures, apostrophes, combining diacritics) and
// the tokenizer used for play ingestion.
#ifndef CLASSICA_TEXT_HPP
#define CLASSICA_TEXT_HPP

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace classica {

// --- UTF-8 -----------------------------------------------------------------

bool valid_utf8(std::string_view s);

// Throws parse_error on malformed input.
std::u32string decode_utf8(std::string_view s);
std::string encode_utf8(std::u32string_view s);
std::string encode_utf8(char32_t c);

// Lowercasing for ASCII, Latin-1 supplement and the Latin Extended-A pairs
// used by French (Œ, Ÿ). Everything else passes through unchanged.
char32_t fold_lower(char32_t c);
std::string lowercase(std::string_view s);

bool is_letter(char32_t c);

// --- Character normalization -------------------------------------------------

// Policy applied before tokenization. All three steps are on by default:
//   * ligature composition rewrites "oe" to "œ", but only inside words listed
//     in the ligature word list (so "moelle" and friends are left alone);
//   * apostrophe unification maps U+2019 to U+0027;
//   * diacritic composition replaces base letter + combining mark sequences
//     by their precomposed characters.
// Case is never altered.
class NormalizationPolicy {
public:
  NormalizationPolicy();  // built-in œ word list, all steps enabled

  bool compose_ligatures = true;
  bool unify_apostrophes = true;
  bool compose_diacritics = true;

  // Replaces the ligature lexicon. Each entry is a full word containing œ.
  void set_ligature_words(const std::vector<std::string>& words);
  static std::vector<std::string> load_wordlist(const std::string& path);
  static const std::vector<std::string>& builtin_ligature_words();

  // Composed form of a word if the lexicon knows it, case preserved.
  // Returns false when the word is not listed.
  bool compose_word(const std::u32string& word, std::u32string& out) const;

private:
  // lowercase decomposed form -> lowercase composed form
  std::unordered_map<std::string, std::u32string> ligature_index_;
};

std::string normalize_chars(std::string_view text, const NormalizationPolicy& policy);

// --- Tokenization -------------------------------------------------------------

// Splits on whitespace, detaches punctuation marks (.,;:!?«»"()—…-) as
// standalone tokens and cuts elided forms after the apostrophe, keeping the
// apostrophe on the left token (l'amour -> l' + amour). Never changes case.
// Concatenating the tokens reproduces the input minus its whitespace.
std::vector<std::string> tokenize(std::string_view text);

}  // namespace classica

#endif
