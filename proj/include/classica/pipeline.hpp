// The text annotation pipeline shared by the tag subcommand and the HTTP
// service: normalize, tokenize, segment, tag, lemmatize, project morphology.
#ifndef CLASSICA_PIPELINE_HPP
#define CLASSICA_PIPELINE_HPP

#include <string_view>
#include <vector>

#include "classica/annotate.hpp"
#include "classica/corpus.hpp"
#include "classica/lemmatizer.hpp"
#include "classica/lexicon.hpp"
#include "classica/tagger.hpp"
#include "classica/text.hpp"

namespace classica {

// Splits normalized text into tagging segments: paragraph breaks at blank
// lines, and a segment ends after strong punctuation (. ! ? …).
std::vector<std::vector<std::string>> segment_text(std::string_view text,
                                                   const NormalizationPolicy& policy);

struct AnnotationPipeline {
  const TaggerModel* tagger = nullptr;
  const LemmatizerModel* lemmatizer = nullptr;
  const Lexicon* lexicon = nullptr;  // morphology projection + name list
  const TagMaps* maps = &TagMaps::builtin();
  NormalizationPolicy normalization;
  // Take morphology from the tagger's auxiliary classifiers instead of
  // projecting it from the lexicon.
  bool morph_from_aux = false;

  Corpus annotate_text(std::string_view text) const;
};

}  // namespace classica

#endif
