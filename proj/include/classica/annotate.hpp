// Morphology projection from the lexicon onto POS-annotated tokens, and the
// ordered lemma-normalization rule engine.
#ifndef CLASSICA_ANNOTATE_HPP
#define CLASSICA_ANNOTATE_HPP

#include <string>
#include <vector>

#include "classica/corpus.hpp"
#include "classica/lexicon.hpp"
#include "classica/tagset.hpp"

namespace classica {

// --- Morphology projection ----------------------------------------------------

struct ProjectionNote {
  std::string form;
  std::string message;
};

// Fills in each token's morph from the lexicon, using the token's POS to
// filter ambiguous analyses. Forms, lemmas and POS are never altered.
// Special cases first: punctuation tags and NOMpro get an empty bundle
// (proper names are additionally checked against the name list, producing
// notes); PRE.DETdef gets the determiner component's number and gender.
// Otherwise: a unique lexicon analysis is taken as is; several analyses are
// filtered by the POS-mapped category; several survivors are merged field by
// field (disagreeing fields dropped); no survivor means the unknown marker.
Morph project_token_morph(const AnnotatedToken& token, const Lexicon& lexicon,
                          const TagMaps& maps = TagMaps::builtin(),
                          std::vector<ProjectionNote>* notes = nullptr);

Corpus project_morphology(Corpus corpus, const Lexicon& lexicon,
                          const TagMaps& maps = TagMaps::builtin(),
                          std::vector<ProjectionNote>* notes = nullptr);

// --- Lemma rules -----------------------------------------------------------------

// One rewrite rule. Unused match fields stay empty; a token matches when
// every present field matches (forms and POS allow alternatives).
struct LemmaRule {
  std::string id;
  std::vector<std::string> forms;   // empty = any
  std::vector<std::string> lemmas;  // empty = any
  std::vector<std::string> pos;     // empty = any
  std::string replacement;

  bool matches(const AnnotatedToken& token) const;
};

class LemmaRuleSet {
public:
  // Rule file: TSV with columns rule_id, match_form, match_lemma, match_pos,
  // replacement_lemma; "*" marks an unused match column; alternatives are
  // comma-separated; "#" comments allowed.
  static LemmaRuleSet load(const std::string& path);
  static LemmaRuleSet parse(std::string_view text, const std::string& name);
  // The shipped rule set: subject-pronoun collapses, possessive and feminine
  // lemma alignment, contracted preposition-article lemmas.
  static const LemmaRuleSet& defaults();
  static std::string_view defaults_text();

  // First matching rule rewrites the lemma; at most one rewrite per pass.
  AnnotatedToken apply(AnnotatedToken token) const;
  Corpus apply(Corpus corpus) const;

  size_t size() const { return rules_.size(); }
  const std::vector<LemmaRule>& rules() const { return rules_; }

private:
  std::vector<LemmaRule> rules_;
};

}  // namespace classica

#endif
