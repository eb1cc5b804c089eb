#include "classica/corpus.hpp"

#include <fstream>
#include <sstream>

#include "classica/errors.hpp"

namespace classica {

size_t Corpus::token_count() const {
  size_t n = 0;
  for (const auto& s : sentences) n += s.size();
  return n;
}

std::vector<const AnnotatedToken*> Corpus::tokens() const {
  std::vector<const AnnotatedToken*> out;
  out.reserve(token_count());
  for (const auto& s : sentences)
    for (const auto& t : s) out.push_back(&t);
  return out;
}

namespace {

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

std::string placeholder(const std::string& value) {
  return value.empty() ? "_" : value;
}

}  // namespace

Corpus read_corpus(std::istream& in, const std::string& name) {
  Corpus corpus;
  std::string line;
  size_t lineno = 0;

  if (!std::getline(in, line))
    throw parse_error(name, 1, "missing header line");
  ++lineno;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCorpusHeader)
    throw parse_error(name, 1,
                      "expected header '" + std::string(kCorpusHeader) + "'");

  Sentence current;
  auto flush = [&] {
    if (!current.empty()) {
      corpus.sentences.push_back(std::move(current));
      current.clear();
    }
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      flush();
      continue;
    }
    auto fields = split_tabs(line);
    if (fields.size() != 4)
      throw parse_error(name, lineno,
                        "expected 4 tab-separated columns, got " +
                            std::to_string(fields.size()));
    AnnotatedToken tok;
    tok.form = fields[0];
    if (tok.form.empty() || tok.form == "_")
      throw parse_error(name, lineno, "empty form");
    tok.lemma = fields[1] == "_" ? "" : fields[1];
    if (fields[2] != "_") {
      if (!PosTag::known(fields[2]))
        throw parse_error(name, lineno, "unknown POS tag '" + fields[2] + "'");
      tok.pos = fields[2];
    }
    try {
      tok.morph = morph_from_string(fields[3]);
    } catch (const parse_error& e) {
      throw parse_error(name, lineno, e.what());
    }
    current.push_back(std::move(tok));
  }
  flush();
  return corpus;
}

Corpus read_corpus(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot open corpus: " + path);
  return read_corpus(in, path);
}

void write_corpus(const Corpus& corpus, std::ostream& out) {
  out << kCorpusHeader << '\n';
  bool first = true;
  for (const auto& sentence : corpus.sentences) {
    if (sentence.empty()) continue;
    if (!first) out << '\n';
    first = false;
    for (const auto& tok : sentence) {
      out << tok.form << '\t' << placeholder(tok.lemma) << '\t'
          << placeholder(tok.pos) << '\t' << morph_to_string(tok.morph) << '\n';
    }
  }
}

void write_corpus(const Corpus& corpus, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw error("cannot write corpus: " + path);
  write_corpus(corpus, out);
}

std::string corpus_to_string(const Corpus& corpus) {
  std::ostringstream out;
  write_corpus(corpus, out);
  return out.str();
}

}  // namespace classica
