#include "classica/tagset.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "classica/errors.hpp"

namespace classica {

// --- POS inventory ----------------------------------------------------------

namespace {

// CATTEX09: the 38 tags with a Morphalou category plus the codes handled on
// dedicated paths (proper names, punctuation, the combined PRE.DETdef label)
// and the residual classes of the reference manual.
const char* kPosInventory[] = {
    "ABR",
    "ADJcar", "ADJind", "ADJord", "ADJpos", "ADJqua",
    "ADVgen", "ADVint", "ADVneg", "ADVsub",
    "CONcoo", "CONsub",
    "DETcar", "DETcom", "DETdef", "DETdem", "DETind", "DETint", "DETndf",
    "DETpos", "DETrel",
    "ETR", "INJ",
    "NOMcom", "NOMpro",
    "OUT",
    "PONfbl", "PONfrt", "PONpga", "PONpdr",
    "PRE", "PRE.DETdef",
    "PROadv", "PROcar", "PROcom", "PROdem", "PROimp", "PROind", "PROint",
    "PROord", "PROper", "PROpos", "PROrel",
    "VERcjg", "VERinf", "VERppa", "VERppe",
};

}  // namespace

const std::vector<std::string>& PosTag::inventory() {
  static const std::vector<std::string> inv(std::begin(kPosInventory),
                                            std::end(kPosInventory));
  return inv;
}

bool PosTag::known(std::string_view code) {
  const auto& inv = inventory();
  return std::binary_search(inv.begin(), inv.end(), code);
}

PosTag PosTag::parse(std::string_view code) {
  if (!known(code))
    throw parse_error("unknown CATTEX POS tag: '" + std::string(code) + "'");
  return PosTag(std::string(code));
}

// --- Categories ------------------------------------------------------------

std::string_view category_name(MorphalouCategory c) {
  switch (c) {
    case MorphalouCategory::Interjection: return "Interjection";
    case MorphalouCategory::Adverbe: return "Adverbe";
    case MorphalouCategory::Conjonction: return "Conjonction";
    case MorphalouCategory::Verbe: return "Verbe";
    case MorphalouCategory::Preposition: return "Préposition";
    case MorphalouCategory::Determinant: return "Déterminant";
    case MorphalouCategory::Pronom: return "Pronom";
    case MorphalouCategory::NomCommun: return "Nom commun";
    case MorphalouCategory::AdjectifQualificatif: return "Adjectif qualificatif";
    case MorphalouCategory::Nombre: return "Nombre";
  }
  return "";
}

std::optional<MorphalouCategory> category_from_name(std::string_view name) {
  static const std::pair<std::string_view, MorphalouCategory> names[] = {
      {"Interjection", MorphalouCategory::Interjection},
      {"Adverbe", MorphalouCategory::Adverbe},
      {"Conjonction", MorphalouCategory::Conjonction},
      {"Verbe", MorphalouCategory::Verbe},
      {"Préposition", MorphalouCategory::Preposition},
      {"Déterminant", MorphalouCategory::Determinant},
      {"Pronom", MorphalouCategory::Pronom},
      {"Nom commun", MorphalouCategory::NomCommun},
      {"Adjectif qualificatif", MorphalouCategory::AdjectifQualificatif},
      {"Nombre", MorphalouCategory::Nombre},
  };
  for (const auto& [n, c] : names)
    if (n == name) return c;
  return std::nullopt;
}

// --- Morph bundles ------------------------------------------------------------

namespace {

std::string_view mode_code(Mode m) {
  switch (m) {
    case Mode::ind: return "ind";
    case Mode::imp: return "imp";
    case Mode::con: return "con";
    case Mode::sub: return "sub";
    case Mode::none: return "";
  }
  return "";
}

std::string_view tense_code(Tense t) {
  switch (t) {
    case Tense::pst: return "pst";
    case Tense::ipf: return "ipf";
    case Tense::fut: return "fut";
    case Tense::psp: return "psp";
    case Tense::none: return "";
  }
  return "";
}

std::string_view person_code(Person p) {
  switch (p) {
    case Person::p1: return "1";
    case Person::p2: return "2";
    case Person::p3: return "3";
    case Person::none: return "";
  }
  return "";
}

std::string_view number_code(Number n) {
  switch (n) {
    case Number::s: return "s";
    case Number::p: return "p";
    case Number::none: return "";
  }
  return "";
}

std::string_view gender_code(Gender g) {
  switch (g) {
    case Gender::m: return "m";
    case Gender::f: return "f";
    case Gender::n: return "n";
    case Gender::none: return "";
  }
  return "";
}

template <typename Enum>
Enum code_to_enum(std::string_view code,
                  std::initializer_list<std::pair<std::string_view, Enum>> table,
                  std::string_view key) {
  for (const auto& [c, e] : table)
    if (c == code) return e;
  throw parse_error("unknown morph code '" + std::string(code) + "' for " +
                    std::string(key));
}

}  // namespace

bool MorphBundle::all_none() const {
  return mode == Mode::none && tense == Tense::none && person == Person::none &&
         number == Number::none && gender == Gender::none && case_code.empty() &&
         !invariable && !error;
}

std::string serialize_morph(const MorphBundle& b) {
  if (b.error) return "MORPH=err";
  if (b.invariable) return "MORPH=inv";
  std::string out;
  auto add = [&](std::string_view key, std::string_view value) {
    if (value.empty()) return;
    if (!out.empty()) out += '|';
    out += key;
    out += '=';
    out += value;
  };
  add("MODE", mode_code(b.mode));
  add("TEMPS", tense_code(b.tense));
  add("PERS.", person_code(b.person));
  add("NOMB.", number_code(b.number));
  add("GENRE", gender_code(b.gender));
  add("CAS", b.case_code);
  if (out.empty()) return "_";
  return out;
}

MorphBundle parse_morph_bundle(std::string_view text) {
  MorphBundle b;
  if (text == "_") return b;
  if (text == "MORPH=inv") { b.invariable = true; return b; }
  if (text == "MORPH=err") { b.error = true; return b; }

  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('|', start);
    std::string_view field = text.substr(
        start, end == std::string_view::npos ? std::string_view::npos : end - start);
    size_t eq = field.find('=');
    if (eq == std::string_view::npos)
      throw parse_error("malformed morph field: '" + std::string(field) + "'");
    std::string_view key = field.substr(0, eq);
    std::string_view value = field.substr(eq + 1);
    if (value.empty())
      throw parse_error("empty morph value for key '" + std::string(key) + "'");
    if (key == "MODE") {
      b.mode = code_to_enum<Mode>(value,
                                  {{"ind", Mode::ind}, {"imp", Mode::imp},
                                   {"con", Mode::con}, {"sub", Mode::sub}},
                                  key);
    } else if (key == "TEMPS") {
      b.tense = code_to_enum<Tense>(value,
                                    {{"pst", Tense::pst}, {"ipf", Tense::ipf},
                                     {"fut", Tense::fut}, {"psp", Tense::psp}},
                                    key);
    } else if (key == "PERS.") {
      b.person = code_to_enum<Person>(
          value, {{"1", Person::p1}, {"2", Person::p2}, {"3", Person::p3}}, key);
    } else if (key == "NOMB.") {
      b.number = code_to_enum<Number>(value, {{"s", Number::s}, {"p", Number::p}},
                                      key);
    } else if (key == "GENRE") {
      b.gender = code_to_enum<Gender>(
          value, {{"m", Gender::m}, {"f", Gender::f}, {"n", Gender::n}}, key);
    } else if (key == "CAS") {
      b.case_code = std::string(value);
    } else {
      throw parse_error("unknown morph key: '" + std::string(key) + "'");
    }
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return b;
}

std::string morph_to_string(const Morph& morph) {
  if (!morph.has_value()) return std::string(kUnknownMorph);
  return serialize_morph(*morph);
}

Morph morph_from_string(std::string_view text) {
  if (text == kUnknownMorph) return std::nullopt;
  return parse_morph_bundle(text);
}

// --- Mapping tables --------------------------------------------------------------

namespace {

struct PosRow { const char* cattex; const char* morphalou; };

// Table: CATTEX POS tag -> Morphalou category.
const PosRow kPosMap[] = {
    {"INJ", "Interjection"},
    {"ADVgen", "Adverbe"},
    {"ADVneg", "Adverbe"},
    {"ADVint", "Adverbe"},
    {"ADVsub", "Adverbe"},
    {"CONcoo", "Conjonction"},
    {"CONsub", "Conjonction"},
    {"VERcjg", "Verbe"},
    {"VERinf", "Verbe"},
    {"VERppe", "Verbe"},
    {"VERppa", "Verbe"},
    {"PRE", "Préposition"},
    {"DETdef", "Déterminant"},
    {"DETndf", "Déterminant"},
    {"DETdem", "Déterminant"},
    {"DETpos", "Déterminant"},
    {"DETind", "Déterminant"},
    {"DETrel", "Déterminant"},
    {"DETint", "Déterminant"},
    {"DETcom", "Déterminant"},
    {"PROper", "Pronom"},
    {"PROimp", "Pronom"},
    {"PROadv", "Pronom"},
    {"PROpos", "Pronom"},
    {"PROdem", "Pronom"},
    {"PROind", "Pronom"},
    {"PROord", "Nom commun"},
    {"PROrel", "Pronom"},
    {"PROint", "Pronom"},
    {"PROcom", "Déterminant"},
    {"ADJqua", "Adjectif qualificatif"},
    {"ADJind", "Adjectif qualificatif"},
    {"ADJord", "Adjectif qualificatif"},
    {"ADJpos", "Adjectif qualificatif"},
    {"NOMcom", "Nom commun"},
    {"ADJcar", "Nombre"},
    {"DETcar", "Nombre"},
    {"PROcar", "Nombre"},
};

struct FlexionRow { const char* morphalou; FlexionCode::Field field; const char* code; };

// Table: Morphalou flexion value -> CATTEX code.
const FlexionRow kFlexionMap[] = {
    {"indicative", FlexionCode::Field::mode, "ind"},
    {"imperative", FlexionCode::Field::mode, "imp"},
    {"conditional", FlexionCode::Field::mode, "con"},
    {"subjunctive", FlexionCode::Field::mode, "sub"},
    {"infinitive", FlexionCode::Field::none, ""},
    {"past", FlexionCode::Field::none, ""},
    {"participle", FlexionCode::Field::none, ""},
    {"present", FlexionCode::Field::tense, "pst"},
    {"imperfect", FlexionCode::Field::tense, "ipf"},
    {"future", FlexionCode::Field::tense, "fut"},
    {"simplePast", FlexionCode::Field::tense, "psp"},
    {"firstPerson", FlexionCode::Field::person, "1"},
    {"secondPerson", FlexionCode::Field::person, "2"},
    {"thirdPerson", FlexionCode::Field::person, "3"},
    {"singular", FlexionCode::Field::number, "s"},
    {"plural", FlexionCode::Field::number, "p"},
    {"masculine", FlexionCode::Field::gender, "m"},
    {"feminine", FlexionCode::Field::gender, "f"},
    {"neuter", FlexionCode::Field::gender, "n"},
    {"-", FlexionCode::Field::none, ""},
    {"invariable", FlexionCode::Field::invariable, "x"},
};

FlexionCode::Field field_for_code(std::string_view code) {
  // Used when loading the flexion map from file: the CATTEX code determines
  // the target field.
  if (code == "ind" || code == "imp" || code == "con" || code == "sub")
    return FlexionCode::Field::mode;
  if (code == "pst" || code == "ipf" || code == "fut" || code == "psp")
    return FlexionCode::Field::tense;
  if (code == "1" || code == "2" || code == "3") return FlexionCode::Field::person;
  if (code == "s" || code == "p") return FlexionCode::Field::number;
  if (code == "m" || code == "f" || code == "n") return FlexionCode::Field::gender;
  if (code == "x") return FlexionCode::Field::invariable;
  if (code == "-" || code.empty()) return FlexionCode::Field::none;
  if (code == "ERROR") return FlexionCode::Field::error;
  throw parse_error("unknown CATTEX flexion code: '" + std::string(code) + "'");
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

std::vector<std::string> split_tsv_line(const std::string& line) {
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

}  // namespace

void TagMaps::index() {
  pos_index_.clear();
  flexion_index_.clear();
  for (const auto& [tag, cat] : pos_rows_) pos_index_.emplace(tag, cat);
  for (const auto& [value, code] : flexion_rows_) flexion_index_.emplace(value, code);
}

const TagMaps& TagMaps::builtin() {
  static const TagMaps maps = [] {
    TagMaps m;
    for (const auto& row : kPosMap) {
      auto cat = category_from_name(row.morphalou);
      m.pos_rows_.emplace_back(row.cattex, *cat);
    }
    for (const auto& row : kFlexionMap)
      m.flexion_rows_.emplace_back(row.morphalou,
                                   FlexionCode{row.field, row.code});
    m.index();
    return m;
  }();
  return maps;
}

TagMaps TagMaps::load(const std::string& pos_map_path,
                      const std::string& flexion_map_path) {
  TagMaps m;

  std::ifstream pos_in(pos_map_path);
  if (!pos_in) throw error("cannot open POS map: " + pos_map_path);
  std::string line;
  size_t lineno = 0;
  while (std::getline(pos_in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_tsv_line(line);
    if (fields.size() != 2)
      throw parse_error(pos_map_path, lineno, "expected 2 tab-separated columns");
    if (!PosTag::known(fields[0]))
      throw parse_error(pos_map_path, lineno, "unknown CATTEX tag '" + fields[0] + "'");
    auto cat = category_from_name(fields[1]);
    if (!cat)
      throw parse_error(pos_map_path, lineno,
                        "unknown Morphalou category '" + fields[1] + "'");
    m.pos_rows_.emplace_back(fields[0], *cat);
  }

  std::ifstream flex_in(flexion_map_path);
  if (!flex_in) throw error("cannot open flexion map: " + flexion_map_path);
  lineno = 0;
  while (std::getline(flex_in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_tsv_line(line);
    if (fields.size() != 2)
      throw parse_error(flexion_map_path, lineno, "expected 2 tab-separated columns");
    FlexionCode code;
    code.field = field_for_code(fields[1]);
    if (code.field != FlexionCode::Field::none &&
        code.field != FlexionCode::Field::error)
      code.code = fields[1] == "x" ? "x" : fields[1];
    if (code.field == FlexionCode::Field::invariable) code.code = "x";
    m.flexion_rows_.emplace_back(fields[0], code);
  }

  m.index();
  return m;
}

MorphalouCategory TagMaps::cattex_to_morphalou(const PosTag& pos) const {
  auto it = pos_index_.find(pos.code());
  if (it == pos_index_.end())
    throw no_mapping_error("no Morphalou category for tag '" + pos.code() +
                           "' (handled on the special-case path)");
  return it->second;
}

bool TagMaps::has_category_mapping(const PosTag& pos) const {
  return pos_index_.count(pos.code()) != 0;
}

FlexionCode TagMaps::flexion_to_cattex(std::string_view value) const {
  auto it = flexion_index_.find(std::string(value));
  if (it != flexion_index_.end()) return it->second;
  return FlexionCode{FlexionCode::Field::error, ""};
}

bool TagMaps::acceptable_flexion_value(std::string_view value) const {
  if (flexion_index_.count(std::string(value))) return true;
  return all_digits(value);
}

MorphBundle TagMaps::bundle_from_flexion(const std::vector<std::string>& values) const {
  MorphBundle b;
  for (const auto& v : values) {
    FlexionCode fc = flexion_to_cattex(v);
    switch (fc.field) {
      case FlexionCode::Field::mode:
        b.mode = fc.code == "ind"   ? Mode::ind
                 : fc.code == "imp" ? Mode::imp
                 : fc.code == "con" ? Mode::con
                                    : Mode::sub;
        break;
      case FlexionCode::Field::tense:
        b.tense = fc.code == "pst"   ? Tense::pst
                  : fc.code == "ipf" ? Tense::ipf
                  : fc.code == "fut" ? Tense::fut
                                     : Tense::psp;
        break;
      case FlexionCode::Field::person:
        b.person = fc.code == "1" ? Person::p1 : fc.code == "2" ? Person::p2
                                                                : Person::p3;
        break;
      case FlexionCode::Field::number:
        b.number = fc.code == "s" ? Number::s : Number::p;
        break;
      case FlexionCode::Field::gender:
        b.gender = fc.code == "m"   ? Gender::m
                   : fc.code == "f" ? Gender::f
                                    : Gender::n;
        break;
      case FlexionCode::Field::invariable:
        b.invariable = true;
        break;
      case FlexionCode::Field::error:
        b.error = true;
        break;
      case FlexionCode::Field::none:
        break;
    }
  }
  // Bundle invariants: error wipes everything, invariable wipes inflection.
  if (b.error) {
    MorphBundle e;
    e.error = true;
    return e;
  }
  if (b.invariable) {
    MorphBundle i;
    i.invariable = true;
    return i;
  }
  return b;
}

}  // namespace classica
