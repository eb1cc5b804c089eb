// CATTEX POS inventory, CATTEX morphology codes and the two mapping tables
// between CATTEX and Morphalou. The tables ship as built-in defaults and can
// be reloaded from TSV files without recompiling.
#ifndef CLASSICA_TAGSET_HPP
#define CLASSICA_TAGSET_HPP

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace classica {

// --- POS tags -----------------------------------------------------------------

class PosTag {
public:
  // Throws parse_error for codes outside the CATTEX09 inventory.
  static PosTag parse(std::string_view code);
  static bool known(std::string_view code);
  static const std::vector<std::string>& inventory();

  const std::string& code() const { return code_; }
  bool is_punctuation() const { return code_.rfind("PON", 0) == 0; }
  bool operator==(const PosTag& o) const { return code_ == o.code_; }

private:
  explicit PosTag(std::string code) : code_(std::move(code)) {}
  std::string code_;
};

// --- Morphalou categories --------------------------------------------------------

enum class MorphalouCategory {
  Interjection,
  Adverbe,
  Conjonction,
  Verbe,
  Preposition,
  Determinant,
  Pronom,
  NomCommun,
  AdjectifQualificatif,
  Nombre,
};

// The French spelling used in data files ("Nom commun", "Préposition", ...).
std::string_view category_name(MorphalouCategory c);
std::optional<MorphalouCategory> category_from_name(std::string_view name);

// --- Morphology bundles -----------------------------------------------------------

enum class Mode { ind, imp, con, sub, none };
enum class Tense { pst, ipf, fut, psp, none };
enum class Person { p1, p2, p3, none };
enum class Number { s, p, none };
enum class Gender { m, f, n, none };

struct MorphBundle {
  Mode mode = Mode::none;
  Tense tense = Tense::none;
  Person person = Person::none;
  Number number = Number::none;
  Gender gender = Gender::none;
  std::string case_code;     // open value set; empty = none
  bool invariable = false;   // excludes all inflection fields
  bool error = false;        // excludes everything else

  bool all_none() const;
  bool operator==(const MorphBundle& o) const = default;
};

// A token's morphology: a bundle, or the unknown marker used when the
// lexicon offered nothing.
using Morph = std::optional<MorphBundle>;
inline constexpr std::string_view kUnknownMorph = "unknown";

// Canonical serialization: "MODE=…|TEMPS=…|PERS.=…|NOMB.=…|GENRE=…|CAS=…"
// with none-valued fields omitted; "_" for the all-none bundle; "MORPH=inv"
// for invariables and "MORPH=err" for the error marker.
std::string serialize_morph(const MorphBundle& bundle);
MorphBundle parse_morph_bundle(std::string_view text);  // exact inverse

// Same, with the unknown marker handled ("unknown").
std::string morph_to_string(const Morph& morph);
Morph morph_from_string(std::string_view text);

// --- Flexion value translation ------------------------------------------------------

// What a single Morphalou flexion value contributes to a bundle.
struct FlexionCode {
  enum class Field { mode, tense, person, number, gender, none, invariable, error };
  Field field = Field::none;
  std::string code;  // CATTEX code when field is an inflection field

  bool operator==(const FlexionCode& o) const = default;
};

// --- Mapping tables ------------------------------------------------------------------

class TagMaps {
public:
  static const TagMaps& builtin();
  // Two-column TSVs, "#" comments allowed: cattex<TAB>morphalou and
  // morphalou<TAB>cattex (flexion value to code, "-" for empty mappings).
  static TagMaps load(const std::string& pos_map_path,
                      const std::string& flexion_map_path);

  // Table-1 lookup. Throws no_mapping_error for tags handled on the
  // special-case path (NOMpro, punctuation, PRE.DETdef, ...).
  MorphalouCategory cattex_to_morphalou(const PosTag& pos) const;
  bool has_category_mapping(const PosTag& pos) const;

  // Table-2 lookup. Total: named values map to their code, anything
  // unrecognized maps to the ERROR marker.
  FlexionCode flexion_to_cattex(std::string_view value) const;

  // A value a lexicon may legitimately carry: either a named Table-2 value
  // or a bare numeric identifier (those map to ERROR but are kept so corpus
  // audits can count them).
  bool acceptable_flexion_value(std::string_view value) const;

  // Applies a list of flexion values to an empty bundle.
  MorphBundle bundle_from_flexion(const std::vector<std::string>& values) const;

  const std::vector<std::pair<std::string, MorphalouCategory>>& pos_rows() const {
    return pos_rows_;
  }
  const std::vector<std::pair<std::string, FlexionCode>>& flexion_rows() const {
    return flexion_rows_;
  }

private:
  TagMaps() = default;
  void index();

  std::vector<std::pair<std::string, MorphalouCategory>> pos_rows_;
  std::vector<std::pair<std::string, FlexionCode>> flexion_rows_;
  std::unordered_map<std::string, MorphalouCategory> pos_index_;
  std::unordered_map<std::string, FlexionCode> flexion_index_;
};

}  // namespace classica

#endif
