#include "classica/annotate.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "classica/errors.hpp"
#include "classica/text.hpp"

namespace classica {

// --- Morphology projection ----------------------------------------------------

namespace {

// Contracted preposition+article forms: the determiner component's number
// and gender. "aux"/"des" cover both genders, so gender stays unset.
struct ContractedForm {
  const char* form;
  Number number;
  Gender gender;
};

const ContractedForm kContractedForms[] = {
    {"au", Number::s, Gender::m},
    {"aux", Number::p, Gender::none},
    {"du", Number::s, Gender::m},
    {"des", Number::p, Gender::none},
};

MorphBundle merge_bundles(const std::vector<MorphBundle>& bundles) {
  MorphBundle merged = bundles.front();
  for (size_t i = 1; i < bundles.size(); ++i) {
    const MorphBundle& b = bundles[i];
    if (b.mode != merged.mode) merged.mode = Mode::none;
    if (b.tense != merged.tense) merged.tense = Tense::none;
    if (b.person != merged.person) merged.person = Person::none;
    if (b.number != merged.number) merged.number = Number::none;
    if (b.gender != merged.gender) merged.gender = Gender::none;
    if (b.case_code != merged.case_code) merged.case_code.clear();
    if (b.invariable != merged.invariable) merged.invariable = false;
    if (b.error != merged.error) merged.error = false;
  }
  if (merged.error) {
    MorphBundle e;
    e.error = true;
    return e;
  }
  if (merged.invariable) {
    MorphBundle i;
    i.invariable = true;
    return i;
  }
  return merged;
}

}  // namespace

Morph project_token_morph(const AnnotatedToken& token, const Lexicon& lexicon,
                          const TagMaps& maps,
                          std::vector<ProjectionNote>* notes) {
  const std::string& pos = token.pos;

  if (pos.rfind("PON", 0) == 0) return MorphBundle{};

  if (pos == "NOMpro") {
    const std::string& name = token.lemma.empty() ? token.form : token.lemma;
    if (notes && !lexicon.resolve_name(name))
      notes->push_back({token.form, "proper name '" + name + "' not in the name list"});
    return MorphBundle{};
  }

  if (pos == "PRE.DETdef") {
    std::string low = lowercase(token.form);
    for (const auto& c : kContractedForms) {
      if (low == c.form) {
        MorphBundle b;
        b.number = c.number;
        b.gender = c.gender;
        return b;
      }
    }
    return std::nullopt;
  }

  auto entries = lexicon.lookup(token.form, true);
  if (entries.empty()) return std::nullopt;
  if (entries.size() == 1)
    return maps.bundle_from_flexion(entries.front()->flexion_values);

  // Ambiguous form: keep the analyses whose category matches the corrected POS.
  std::vector<const LexiconEntry*> survivors;
  if (!pos.empty() && PosTag::known(pos)) {
    PosTag tag = PosTag::parse(pos);
    if (maps.has_category_mapping(tag)) {
      MorphalouCategory wanted = maps.cattex_to_morphalou(tag);
      for (const auto* e : entries)
        if (e->category == wanted) survivors.push_back(e);
    }
  }
  if (survivors.empty()) return std::nullopt;
  if (survivors.size() == 1)
    return maps.bundle_from_flexion(survivors.front()->flexion_values);

  std::vector<MorphBundle> bundles;
  bundles.reserve(survivors.size());
  for (const auto* e : survivors)
    bundles.push_back(maps.bundle_from_flexion(e->flexion_values));
  return merge_bundles(bundles);
}

Corpus project_morphology(Corpus corpus, const Lexicon& lexicon,
                          const TagMaps& maps,
                          std::vector<ProjectionNote>* notes) {
  for (auto& sentence : corpus.sentences)
    for (auto& token : sentence)
      token.morph = project_token_morph(token, lexicon, maps, notes);
  return corpus;
}

// --- Lemma rules -----------------------------------------------------------------

bool LemmaRule::matches(const AnnotatedToken& token) const {
  if (!forms.empty() &&
      std::find(forms.begin(), forms.end(), token.form) == forms.end())
    return false;
  if (!lemmas.empty() &&
      std::find(lemmas.begin(), lemmas.end(), token.lemma) == lemmas.end())
    return false;
  if (!pos.empty() && std::find(pos.begin(), pos.end(), token.pos) == pos.end())
    return false;
  return true;
}

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

std::vector<std::string> parse_match_field(const std::string& field,
                                           const std::string& name, size_t lineno,
                                           const std::string& source) {
  if (field == "*") return {};
  if (field.empty())
    throw parse_error(source, lineno, "empty match field (use '*' for any)");
  auto values = split_char(field, ',');
  for (const auto& v : values)
    if (v.empty())
      throw parse_error(source, lineno, "empty alternative in " + name);
  return values;
}

// Subject-pronoun collapses, possessive and feminine-noun lemma alignment,
// contracted preposition-article lemmas and a handful of sporadic fixes.
// First match wins; the engine applies at most one rewrite per token per pass.
constexpr std::string_view kDefaultRules = R"(# Default lemma normalization rules.
# columns: rule_id	match_form	match_lemma	match_pos	replacement_lemma

# Demonstratives and indefinites that older data collapsed onto il / un.
celui-fix	celui,celle,ceux,celles,Celui,Celle,Ceux,Celles	il	*	celui
cela-fix	cela,Cela,ça,Ça	il	*	cela
chacun-fix	chacun,chacune,Chacun,Chacune	un	*	chacun
aucun-fix	aucun,aucune,Aucun,Aucune	un	*	aucun

# Personal pronouns to the subject masculine singular lemma.
je-group	*	me,m',M',moi,Moi	PROper	je
il-group	*	ils,elle,elles,le,la,les,lui,leur,eux,Ils,Lui,Elle,Elles	PROper	il

# Determiners to the masculine singular lemma.
la-det	*	la	DETdef	le
poss-det	*	sa,ses	DETpos	son

# Possessive pronouns to the masculine lemma.
mien-group	*	mienne	PROpos	mien
tien-group	*	tienne	PROpos	tien
sien-group	*	sienne	PROpos	sien

# Feminine nouns aligned to the masculine singular lemma.
hote-noun	*	hôtesse	NOMcom	hôte
ami-noun	*	amie	NOMcom	ami
veuf-noun	*	veuve	NOMcom	veuf
captif-noun	*	captive	NOMcom	captif
baron-noun	*	baronne	NOMcom	baron

# Contracted preposition + article, and the indefinite plural article.
au-lemma	au,aux,Au,Aux	*	PRE.DETdef	a+le
du-lemma	du,des,Du,Des	*	PRE.DETdef	de+le
des-article	des,Des	*	DETndf	un

# Sporadic fixes.
saurer-fix	*	saurer	*	savoir
defaire-verb	*	défaite	VERcjg,VERinf,VERppe,VERppa	défaire
defaite-noun	*	défaire	NOMcom	défaite
)";

}  // namespace

LemmaRuleSet LemmaRuleSet::parse(std::string_view text, const std::string& name) {
  LemmaRuleSet set;
  std::istringstream in{std::string(text)};
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_char(line, '\t');
    if (fields.size() != 5)
      throw parse_error(name, lineno,
                        "expected 5 tab-separated columns, got " +
                            std::to_string(fields.size()));
    LemmaRule rule;
    rule.id = fields[0];
    if (rule.id.empty()) throw parse_error(name, lineno, "empty rule id");
    rule.forms = parse_match_field(fields[1], "match_form", lineno, name);
    rule.lemmas = parse_match_field(fields[2], "match_lemma", lineno, name);
    rule.pos = parse_match_field(fields[3], "match_pos", lineno, name);
    for (const auto& p : rule.pos)
      if (!PosTag::known(p))
        throw parse_error(name, lineno, "unknown POS tag '" + p + "' in match_pos");
    rule.replacement = fields[4];
    if (rule.replacement.empty())
      throw parse_error(name, lineno, "empty replacement lemma");
    if (rule.forms.empty() && rule.lemmas.empty() && rule.pos.empty())
      throw parse_error(name, lineno, "rule matches nothing: all fields are '*'");
    set.rules_.push_back(std::move(rule));
  }
  return set;
}

LemmaRuleSet LemmaRuleSet::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot open rule file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path);
}

std::string_view LemmaRuleSet::defaults_text() { return kDefaultRules; }

const LemmaRuleSet& LemmaRuleSet::defaults() {
  static const LemmaRuleSet set = parse(kDefaultRules, "<builtin rules>");
  return set;
}

AnnotatedToken LemmaRuleSet::apply(AnnotatedToken token) const {
  for (const auto& rule : rules_) {
    if (rule.matches(token)) {
      token.lemma = rule.replacement;
      break;  // one rewrite per token per pass
    }
  }
  return token;
}

Corpus LemmaRuleSet::apply(Corpus corpus) const {
  for (auto& sentence : corpus.sentences)
    for (auto& token : sentence) token = apply(std::move(token));
  return corpus;
}

}  // namespace classica
