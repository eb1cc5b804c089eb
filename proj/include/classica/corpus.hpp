// The annotation TSV format shared by every stage of the pipeline:
// form<TAB>lemma<TAB>POS<TAB>morph, one token per line, a mandatory header
// and blank lines as segment boundaries. "_" stands for an empty lemma or
// POS; the morph column additionally knows the "unknown" marker.
#ifndef CLASSICA_CORPUS_HPP
#define CLASSICA_CORPUS_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "classica/tagset.hpp"

namespace classica {

struct AnnotatedToken {
  std::string form;
  std::string lemma;  // empty = not set ("_")
  std::string pos;    // validated CATTEX code, or empty = not set ("_")
  Morph morph;        // bundle or unknown marker

  bool operator==(const AnnotatedToken& o) const = default;
};

using Sentence = std::vector<AnnotatedToken>;

struct Corpus {
  std::vector<Sentence> sentences;

  size_t token_count() const;
  std::vector<const AnnotatedToken*> tokens() const;  // flattened, in order
  bool operator==(const Corpus& o) const = default;
};

inline constexpr std::string_view kCorpusHeader = "form\tlemma\tPOS\tmorph";

Corpus read_corpus(const std::string& path);
Corpus read_corpus(std::istream& in, const std::string& name);
void write_corpus(const Corpus& corpus, const std::string& path);
void write_corpus(const Corpus& corpus, std::ostream& out);
std::string corpus_to_string(const Corpus& corpus);

}  // namespace classica

#endif
