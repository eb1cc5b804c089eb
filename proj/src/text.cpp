#include "classica/text.hpp"

#include <array>
#include <fstream>

#include "classica/errors.hpp"

namespace classica {

// --- UTF-8 -------------------------------------------------------------------

namespace {

// Returns the length of the sequence starting at s[i], or 0 if malformed.
size_t sequence_length(std::string_view s, size_t i) {
  unsigned char b = static_cast<unsigned char>(s[i]);
  size_t len;
  char32_t min_cp;
  if (b < 0x80) return 1;
  if ((b & 0xE0) == 0xC0) { len = 2; min_cp = 0x80; }
  else if ((b & 0xF0) == 0xE0) { len = 3; min_cp = 0x800; }
  else if ((b & 0xF8) == 0xF0) { len = 4; min_cp = 0x10000; }
  else return 0;
  if (i + len > s.size()) return 0;
  char32_t cp = b & (0xFF >> (len + 1));
  for (size_t k = 1; k < len; ++k) {
    unsigned char c = static_cast<unsigned char>(s[i + k]);
    if ((c & 0xC0) != 0x80) return 0;
    cp = (cp << 6) | (c & 0x3F);
  }
  if (cp < min_cp || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return 0;
  return len;
}

char32_t decode_at(std::string_view s, size_t i, size_t len) {
  unsigned char b = static_cast<unsigned char>(s[i]);
  if (len == 1) return b;
  char32_t cp = b & (0xFF >> (len + 1));
  for (size_t k = 1; k < len; ++k)
    cp = (cp << 6) | (static_cast<unsigned char>(s[i + k]) & 0x3F);
  return cp;
}

}  // namespace

bool valid_utf8(std::string_view s) {
  for (size_t i = 0; i < s.size();) {
    size_t len = sequence_length(s, i);
    if (len == 0) return false;
    i += len;
  }
  return true;
}

std::u32string decode_utf8(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  for (size_t i = 0; i < s.size();) {
    size_t len = sequence_length(s, i);
    if (len == 0)
      throw parse_error("invalid UTF-8 at byte offset " + std::to_string(i));
    out.push_back(decode_at(s, i, len));
    i += len;
  }
  return out;
}

std::string encode_utf8(char32_t c) {
  std::string out;
  if (c < 0x80) {
    out.push_back(static_cast<char>(c));
  } else if (c < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (c >> 6)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else if (c < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (c >> 12)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (c >> 18)));
    out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  }
  return out;
}

std::string encode_utf8(std::u32string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char32_t c : s) out += encode_utf8(c);
  return out;
}

char32_t fold_lower(char32_t c) {
  if (c >= U'A' && c <= U'Z') return c + 0x20;
  // Latin-1 capitals À..Þ except the multiplication sign.
  if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 0x20;
  if (c == 0x152) return 0x153;  // Œ -> œ
  if (c == 0x178) return 0xFF;   // Ÿ -> ÿ
  return c;
}

std::string lowercase(std::string_view s) {
  std::u32string cps = decode_utf8(s);
  for (char32_t& c : cps) c = fold_lower(c);
  return encode_utf8(cps);
}

bool is_letter(char32_t c) {
  if ((c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z')) return true;
  if (c >= 0xC0 && c <= 0x17F && c != 0xD7 && c != 0xF7) return true;
  return false;
}

// --- Normalization -------------------------------------------------------------

namespace {

constexpr char32_t kRightSingleQuote = 0x2019;
constexpr char32_t kApostrophe = 0x27;

// (base, combining mark) -> precomposed. Covers the sequences that occur in
// French editions; anything else is left untouched.
struct Composition {
  char32_t base;
  char32_t mark;
  char32_t composed;
};

constexpr std::array<Composition, 42> kCompositions{{
    // grave U+0300
    {U'a', 0x300, 0xE0}, {U'e', 0x300, 0xE8}, {U'i', 0x300, 0xEC},
    {U'o', 0x300, 0xF2}, {U'u', 0x300, 0xF9},
    {U'A', 0x300, 0xC0}, {U'E', 0x300, 0xC8}, {U'I', 0x300, 0xCC},
    {U'O', 0x300, 0xD2}, {U'U', 0x300, 0xD9},
    // acute U+0301
    {U'a', 0x301, 0xE1}, {U'e', 0x301, 0xE9}, {U'i', 0x301, 0xED},
    {U'o', 0x301, 0xF3}, {U'u', 0x301, 0xFA}, {U'y', 0x301, 0xFD},
    {U'A', 0x301, 0xC1}, {U'E', 0x301, 0xC9}, {U'I', 0x301, 0xCD},
    {U'O', 0x301, 0xD3}, {U'U', 0x301, 0xDA}, {U'Y', 0x301, 0xDD},
    // circumflex U+0302
    {U'a', 0x302, 0xE2}, {U'e', 0x302, 0xEA}, {U'i', 0x302, 0xEE},
    {U'o', 0x302, 0xF4}, {U'u', 0x302, 0xFB},
    {U'A', 0x302, 0xC2}, {U'E', 0x302, 0xCA}, {U'I', 0x302, 0xCE},
    {U'O', 0x302, 0xD4}, {U'U', 0x302, 0xDB},
    // diaeresis U+0308
    {U'a', 0x308, 0xE4}, {U'e', 0x308, 0xEB}, {U'i', 0x308, 0xEF},
    {U'o', 0x308, 0xF6}, {U'u', 0x308, 0xFC}, {U'y', 0x308, 0xFF},
    {U'E', 0x308, 0xCB}, {U'I', 0x308, 0xCF}, {U'U', 0x308, 0xDC},
    // cedilla U+0327
    {U'c', 0x327, 0xE7},
}};

char32_t compose_pair(char32_t base, char32_t mark) {
  if (base == U'C' && mark == 0x327) return 0xC7;
  for (const auto& c : kCompositions)
    if (c.base == base && c.mark == mark) return c.composed;
  return 0;
}

const char* kBuiltinOeWords[] = {
    "bœuf", "bœufs", "chœur", "chœurs", "cœur", "cœurs",
    "désœuvré", "désœuvrée", "désœuvrées", "désœuvrés", "désœuvrement",
    "écœure", "écœurent", "écœurer", "écœuré", "écœurée", "écœurement",
    "manœuvre", "manœuvres", "manœuvrer", "manœuvrait", "manœuvrant",
    "mœurs", "nœud", "nœuds",
    "œcuménique", "œdème", "œil", "œillade", "œillades", "œillet",
    "œillets", "œillère", "œillères", "œsophage",
    "œuf", "œufs", "œuvre", "œuvres", "œuvrer", "œuvré",
    "rancœur", "rancœurs", "sœur", "sœurs", "vœu", "vœux",
};

std::u32string decompose_oe(const std::u32string& word) {
  std::u32string out;
  for (char32_t c : word) {
    if (c == 0x153) { out += U"oe"; }
    else if (c == 0x152) { out += U"OE"; }
    else out.push_back(c);
  }
  return out;
}

}  // namespace

const std::vector<std::string>& NormalizationPolicy::builtin_ligature_words() {
  static const std::vector<std::string> words(std::begin(kBuiltinOeWords),
                                              std::end(kBuiltinOeWords));
  return words;
}

NormalizationPolicy::NormalizationPolicy() {
  set_ligature_words(builtin_ligature_words());
}

void NormalizationPolicy::set_ligature_words(const std::vector<std::string>& words) {
  ligature_index_.clear();
  for (const auto& w : words) {
    std::u32string cps = decode_utf8(w);
    for (char32_t& c : cps) c = fold_lower(c);
    std::u32string key32 = decompose_oe(cps);
    ligature_index_[encode_utf8(key32)] = cps;
  }
}

std::vector<std::string> NormalizationPolicy::load_wordlist(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open word list: " + path);
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    words.push_back(line);
  }
  return words;
}

bool NormalizationPolicy::compose_word(const std::u32string& word,
                                       std::u32string& out) const {
  std::u32string lower = word;
  for (char32_t& c : lower) c = fold_lower(c);
  auto it = ligature_index_.find(encode_utf8(lower));
  if (it == ligature_index_.end()) return false;

  // Rebuild from the composed template, taking case from the original
  // characters as they are consumed.
  const std::u32string& tmpl = it->second;
  out.clear();
  size_t pos = 0;
  for (char32_t t : tmpl) {
    if (t == 0x153) {
      bool upper = pos < word.size() && fold_lower(word[pos]) != word[pos];
      out.push_back(upper ? char32_t(0x152) : char32_t(0x153));
      pos += 2;  // consumed "oe"
    } else {
      out.push_back(word[pos]);
      pos += 1;
    }
  }
  return true;
}

std::string normalize_chars(std::string_view text, const NormalizationPolicy& policy) {
  std::u32string cps = decode_utf8(text);

  if (policy.unify_apostrophes) {
    for (char32_t& c : cps)
      if (c == kRightSingleQuote) c = kApostrophe;
  }

  if (policy.compose_diacritics) {
    std::u32string composed;
    composed.reserve(cps.size());
    for (char32_t c : cps) {
      if (!composed.empty()) {
        char32_t merged = compose_pair(composed.back(), c);
        if (merged != 0) {
          composed.back() = merged;
          continue;
        }
      }
      composed.push_back(c);
    }
    cps.swap(composed);
  }

  if (policy.compose_ligatures) {
    std::u32string out;
    out.reserve(cps.size());
    size_t i = 0;
    while (i < cps.size()) {
      if (!is_letter(cps[i])) {
        out.push_back(cps[i++]);
        continue;
      }
      size_t j = i;
      while (j < cps.size() && is_letter(cps[j])) ++j;
      std::u32string word = cps.substr(i, j - i);
      std::u32string composed;
      if (policy.compose_word(word, composed))
        out += composed;
      else
        out += word;
      i = j;
    }
    cps.swap(out);
  }

  return encode_utf8(cps);
}

// --- Tokenization ---------------------------------------------------------------

namespace {

bool is_space_cp(char32_t c) {
  return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == U'\f' ||
         c == U'\v' || c == 0xA0;
}

bool is_detached_punct(char32_t c) {
  switch (c) {
    case U'.': case U',': case U';': case U':': case U'!': case U'?':
    case 0xAB:    // «
    case 0xBB:    // »
    case U'"': case U'(': case U')':
    case 0x2014:  // —
    case 0x2026:  // …
    case U'-':
      return true;
    default:
      return false;
  }
}

bool is_apostrophe(char32_t c) { return c == 0x27 || c == 0x2019; }

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::u32string cps = decode_utf8(text);
  std::vector<std::string> tokens;
  std::u32string current;
  auto flush = [&] {
    if (!current.empty()) {
      tokens.push_back(encode_utf8(current));
      current.clear();
    }
  };
  for (char32_t c : cps) {
    if (is_space_cp(c)) {
      flush();
    } else if (is_detached_punct(c)) {
      flush();
      tokens.push_back(encode_utf8(c));
    } else if (is_apostrophe(c)) {
      // Elision: the apostrophe closes the left token (l' + amour).
      current.push_back(c);
      flush();
    } else {
      current.push_back(c);
    }
  }
  flush();
  return tokens;
}

}  // namespace classica
