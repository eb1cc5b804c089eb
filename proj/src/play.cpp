#include "classica/play.hpp"

#include <fstream>
#include <sstream>

#include "classica/errors.hpp"

namespace classica {

int century_of(int year) { return (year - 1) / 100 + 1; }

std::string_view channel_name(Channel c) {
  switch (c) {
    case Channel::theatre: return "theatre";
    case Channel::other: return "other";
    case Channel::unset: return "";
  }
  return "";
}

std::string_view author_gender_name(AuthorGender g) {
  switch (g) {
    case AuthorGender::male: return "male";
    case AuthorGender::female: return "female";
    case AuthorGender::unknown: return "unknown";
  }
  return "";
}

// --- Markup parsing -------------------------------------------------------------

namespace {

bool is_name_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == ':';
}

bool is_name_char(char c) {
  return is_name_start(c) || (c >= '0' && c <= '9') || c == '-' || c == '.';
}

bool is_xml_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r';
}

// Character-level scanner with line/column tracking.
class Scanner {
public:
  explicit Scanner(std::string_view s) : s_(s) {}

  bool eof() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  bool starts_with(std::string_view prefix) const {
    return s_.compare(pos_, prefix.size(), prefix) == 0;
  }

  char advance() {
    char c = s_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip(size_t n) {
    for (size_t i = 0; i < n && !eof(); ++i) advance();
  }

  // Advances past `end`, or fails.
  void skip_until(std::string_view end, const char* what) {
    while (!eof()) {
      if (starts_with(end)) {
        skip(end.size());
        return;
      }
      advance();
    }
    fail(std::string("unterminated ") + what);
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw parse_error("document", line_, col_, msg);
  }

  size_t line() const { return line_; }
  size_t col() const { return col_; }

private:
  std::string_view s_;
  size_t pos_ = 0;
  size_t line_ = 1;
  size_t col_ = 1;
};

std::string decode_entity(Scanner& sc) {
  // Called after consuming '&'.
  std::string name;
  while (!sc.eof() && sc.peek() != ';') {
    name.push_back(sc.advance());
    if (name.size() > 10) sc.fail("unterminated entity reference");
  }
  if (sc.eof()) sc.fail("unterminated entity reference");
  sc.advance();  // ';'
  if (name == "amp") return "&";
  if (name == "lt") return "<";
  if (name == "gt") return ">";
  if (name == "apos") return "'";
  if (name == "quot") return "\"";
  if (!name.empty() && name[0] == '#') {
    char32_t cp = 0;
    bool ok = name.size() > 1;
    if (name.size() > 2 && (name[1] == 'x' || name[1] == 'X')) {
      for (size_t i = 2; i < name.size(); ++i) {
        char c = name[i];
        int d = (c >= '0' && c <= '9')   ? c - '0'
                : (c >= 'a' && c <= 'f') ? c - 'a' + 10
                : (c >= 'A' && c <= 'F') ? c - 'A' + 10
                                         : -1;
        if (d < 0) { ok = false; break; }
        cp = cp * 16 + char32_t(d);
      }
    } else {
      for (size_t i = 1; i < name.size(); ++i) {
        if (name[i] < '0' || name[i] > '9') { ok = false; break; }
        cp = cp * 10 + char32_t(name[i] - '0');
      }
    }
    if (!ok || cp == 0 || cp > 0x10FFFF)
      sc.fail("bad character reference '&" + name + ";'");
    return encode_utf8(cp);
  }
  sc.fail("unknown entity '&" + name + ";'");
}

std::string read_name(Scanner& sc) {
  if (sc.eof() || !is_name_start(sc.peek())) sc.fail("expected element name");
  std::string name;
  while (!sc.eof() && is_name_char(sc.peek())) name.push_back(sc.advance());
  return name;
}

// Local name: strip any namespace prefix so "tei:sp" matches "sp".
std::string local_name(const std::string& name) {
  size_t colon = name.rfind(':');
  return colon == std::string::npos ? name : name.substr(colon + 1);
}

struct Attribute {
  std::string name;
  std::string value;
};

std::vector<Attribute> read_attributes(Scanner& sc) {
  std::vector<Attribute> attrs;
  while (true) {
    while (!sc.eof() && is_xml_space(sc.peek())) sc.advance();
    if (sc.eof()) sc.fail("unterminated start tag");
    char c = sc.peek();
    if (c == '>' || c == '/') return attrs;
    Attribute attr;
    attr.name = read_name(sc);
    while (!sc.eof() && is_xml_space(sc.peek())) sc.advance();
    if (sc.eof() || sc.peek() != '=') sc.fail("expected '=' after attribute name");
    sc.advance();
    while (!sc.eof() && is_xml_space(sc.peek())) sc.advance();
    if (sc.eof() || (sc.peek() != '"' && sc.peek() != '\''))
      sc.fail("expected quoted attribute value");
    char quote = sc.advance();
    while (!sc.eof() && sc.peek() != quote) {
      if (sc.peek() == '&') {
        sc.advance();
        attr.value += decode_entity(sc);
      } else {
        attr.value.push_back(sc.advance());
      }
    }
    if (sc.eof()) sc.fail("unterminated attribute value");
    sc.advance();  // closing quote
    attrs.push_back(std::move(attr));
  }
}

std::string collapse_whitespace(const std::string& text) {
  std::string out;
  bool in_space = true;  // drop leading space
  for (char c : text) {
    if (is_xml_space(c)) {
      if (!in_space) out.push_back(' ');
      in_space = true;
    } else {
      out.push_back(c);
      in_space = false;
    }
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

}  // namespace

Play parse_play(std::string_view document, const IngestConfig& config) {
  if (!valid_utf8(document)) throw parse_error("document is not valid UTF-8");

  Scanner sc(document);
  Play play;

  std::vector<std::string> stack;  // local element names
  int speech_depth = 0;
  int excluded_depth = 0;
  bool seen_root = false;
  size_t speech_elements_seen = 0;
  std::string current;

  auto begin_speech = [&] { current.clear(); };
  auto end_speech = [&] {
    std::string text = collapse_whitespace(current);
    current.clear();
    if (!text.empty()) play.speeches.push_back(std::move(text));
  };

  while (!sc.eof()) {
    char c = sc.peek();
    if (c == '<') {
      if (sc.starts_with("<!--")) {
        sc.skip(4);
        sc.skip_until("-->", "comment");
        continue;
      }
      if (sc.starts_with("<![CDATA[")) {
        sc.skip(9);
        std::string text;
        while (!sc.eof() && !sc.starts_with("]]>")) text.push_back(sc.advance());
        if (sc.eof()) sc.fail("unterminated CDATA section");
        sc.skip(3);
        if (speech_depth > 0 && excluded_depth == 0) current += text;
        continue;
      }
      if (sc.starts_with("<?")) {
        sc.skip(2);
        sc.skip_until("?>", "processing instruction");
        continue;
      }
      if (sc.starts_with("<!")) {
        // DOCTYPE (possibly with an internal subset).
        sc.skip(2);
        bool in_subset = false;
        while (!sc.eof()) {
          char d = sc.advance();
          if (d == '[') in_subset = true;
          else if (d == ']') in_subset = false;
          else if (d == '>' && !in_subset) break;
        }
        continue;
      }
      if (sc.starts_with("</")) {
        sc.skip(2);
        std::string name = local_name(read_name(sc));
        while (!sc.eof() && is_xml_space(sc.peek())) sc.advance();
        if (sc.eof() || sc.peek() != '>') sc.fail("malformed end tag");
        sc.advance();
        if (stack.empty())
          sc.fail("unexpected end tag </" + name + ">");
        if (stack.back() != name)
          sc.fail("mismatched end tag </" + name + ">, expected </" +
                  stack.back() + ">");
        stack.pop_back();
        if (config.excluded_elements.count(name)) --excluded_depth;
        if (config.speech_elements.count(name)) {
          --speech_depth;
          if (speech_depth == 0) end_speech();
        }
        continue;
      }
      // Start tag.
      sc.advance();  // '<'
      std::string name = local_name(read_name(sc));
      auto attrs = read_attributes(sc);
      bool self_closing = false;
      if (sc.peek() == '/') {
        sc.advance();
        self_closing = true;
      }
      if (sc.eof() || sc.peek() != '>') sc.fail("malformed start tag");
      sc.advance();

      if (!seen_root) {
        seen_root = true;
        for (const auto& a : attrs)
          if (a.name == "xml:id" || a.name == "id") play.id = a.value;
      }

      bool is_speech = config.speech_elements.count(name) != 0;
      bool is_excluded = config.excluded_elements.count(name) != 0;
      if (is_speech) ++speech_elements_seen;
      if (self_closing) continue;
      stack.push_back(name);
      if (is_excluded) ++excluded_depth;
      if (is_speech) {
        ++speech_depth;
        if (speech_depth == 1) begin_speech();
      }
    } else if (c == '&') {
      sc.advance();
      std::string decoded = decode_entity(sc);
      if (speech_depth > 0 && excluded_depth == 0) current += decoded;
    } else {
      sc.advance();
      if (speech_depth > 0 && excluded_depth == 0) current.push_back(c);
      // Text outside any element is tolerated and ignored.
    }
  }

  if (!stack.empty())
    sc.fail("unclosed element <" + stack.back() + "> at end of document");
  if (speech_elements_seen == 0)
    throw empty_play_error("document contains no speech elements");
  if (play.speeches.empty())
    throw empty_play_error("document contains no character speech");
  return play;
}

std::vector<PlayToken> play_tokens(const Play& play,
                                   const NormalizationPolicy& policy) {
  std::vector<PlayToken> tokens;
  size_t position = 0;
  for (size_t s = 0; s < play.speeches.size(); ++s) {
    std::string normalized = normalize_chars(play.speeches[s], policy);
    for (auto& text : tokenize(normalized)) {
      tokens.push_back({std::move(text), position, s});
      ++position;
    }
  }
  return tokens;
}

// --- Metadata CSV ------------------------------------------------------------------

namespace {

// RFC-style CSV: comma separated, fields quotable with "" escapes.
std::vector<std::string> parse_csv_line(const std::string& line,
                                        const std::string& source, size_t lineno) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          i += 2;
          continue;
        }
        quoted = false;
        ++i;
        continue;
      }
      field.push_back(c);
      ++i;
    } else if (c == '"') {
      if (!field.empty())
        throw parse_error(source, lineno, "stray quote inside unquoted field");
      quoted = true;
      ++i;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
      ++i;
    } else {
      field.push_back(c);
      ++i;
    }
  }
  if (quoted) throw parse_error(source, lineno, "unterminated quoted field");
  fields.push_back(std::move(field));
  return fields;
}

int parse_year(const std::string& s, const std::string& source, size_t lineno,
               const char* what) {
  if (s.empty()) return 0;
  int value = 0;
  for (char c : s) {
    if (c < '0' || c > '9')
      throw parse_error(source, lineno, std::string("bad ") + what + " '" + s + "'");
    value = value * 10 + (c - '0');
  }
  if (value == 0)
    throw parse_error(source, lineno, std::string("bad ") + what + " '" + s + "'");
  return value;
}

}  // namespace

std::map<std::string, PlayMetadata> read_metadata_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot open metadata CSV: " + path);

  static const char* kHeader =
      "id,author,title,date,genre,verse_or_prose,period,century,channel,author_gender";

  std::string line;
  size_t lineno = 0;
  if (!std::getline(in, line)) throw parse_error(path, 1, "missing header row");
  ++lineno;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader)
    throw parse_error(path, 1, std::string("expected header '") + kHeader + "'");

  std::map<std::string, PlayMetadata> result;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = parse_csv_line(line, path, lineno);
    if (fields.size() != 10)
      throw parse_error(path, lineno, "expected 10 columns, got " +
                                          std::to_string(fields.size()));
    const std::string& id = fields[0];
    if (id.empty()) throw parse_error(path, lineno, "empty id");
    if (result.count(id)) throw parse_error(path, lineno, "duplicate id '" + id + "'");

    PlayMetadata m;
    m.author = fields[1];
    m.title = fields[2];
    m.date = parse_year(fields[3], path, lineno, "date");
    m.genre = fields[4];
    if (fields[5] == "verse") m.verse_or_prose = VerseProse::verse;
    else if (fields[5] == "prose") m.verse_or_prose = VerseProse::prose;
    else if (fields[5] == "mixed") m.verse_or_prose = VerseProse::mixed;
    else if (!fields[5].empty())
      throw parse_error(path, lineno, "bad verse_or_prose '" + fields[5] + "'");
    m.period = fields[6];
    int century = parse_year(fields[7], path, lineno, "century");
    if (m.date != 0) {
      int derived = century_of(m.date);
      if (century != 0 && century != derived)
        throw parse_error(path, lineno,
                          "century " + std::to_string(century) +
                              " does not match date " + std::to_string(m.date) +
                              " (century " + std::to_string(derived) + ")");
      m.century = derived;
    } else {
      m.century = century;
    }
    if (fields[8] == "theatre") m.channel = Channel::theatre;
    else if (fields[8] == "other") m.channel = Channel::other;
    else if (!fields[8].empty())
      throw parse_error(path, lineno, "bad channel '" + fields[8] + "'");
    if (fields[9] == "male") m.author_gender = AuthorGender::male;
    else if (fields[9] == "female") m.author_gender = AuthorGender::female;
    else if (fields[9] == "unknown" || fields[9].empty())
      m.author_gender = AuthorGender::unknown;
    else
      throw parse_error(path, lineno, "bad author_gender '" + fields[9] + "'");

    result.emplace(id, std::move(m));
  }
  return result;
}

}  // namespace classica
