// Play documents: TEI-style speech extraction, play metadata and the
// metadata sidecar CSV.
#ifndef CLASSICA_PLAY_HPP
#define CLASSICA_PLAY_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "classica/text.hpp"

namespace classica {

enum class VerseProse { verse, prose, mixed, unset };
enum class Channel { theatre, other, unset };
enum class AuthorGender { male, female, unknown };

struct PlayMetadata {
  std::string author;
  std::string title;
  int date = 0;  // year; 0 = unknown
  std::string genre;
  std::string structure;
  VerseProse verse_or_prose = VerseProse::unset;
  std::string period;
  int century = 0;  // 0 = unknown
  Channel channel = Channel::unset;
  AuthorGender author_gender = AuthorGender::unknown;
};

// Century from a year: 1650 -> 17.
int century_of(int year);

struct Play {
  std::string id;
  PlayMetadata metadata;
  std::vector<std::string> speeches;  // one per character turn, markup-free
};

struct IngestConfig {
  // Elements whose character data is speech; everything inside the excluded
  // elements (speaker labels, stage directions, headings, notes) is dropped
  // even when nested in a speech element.
  std::set<std::string> speech_elements = {"sp"};
  std::set<std::string> excluded_elements = {"speaker", "stage", "head", "note"};
};

// Parses a TEI-style document and keeps only the character speech, in
// document order. Malformed markup raises parse_error with line/column; a
// document without any speech raises empty_play_error. The play id is taken
// from the root element's xml:id when present.
Play parse_play(std::string_view document, const IngestConfig& config = {});

// Normalizes and tokenizes all speeches. Tokens are grouped per speech;
// positions run 0..N-1 across the whole play.
struct PlayToken {
  std::string text;
  size_t position = 0;
  size_t speech = 0;  // index of the speech the token came from
};
std::vector<PlayToken> play_tokens(const Play& play,
                                   const NormalizationPolicy& policy);

// Metadata CSV: header id,author,title,date,genre,verse_or_prose,period,
// century,channel,author_gender. The century is derived from the date when
// the column is empty, and cross-checked when both are present.
std::map<std::string, PlayMetadata> read_metadata_csv(const std::string& path);

std::string_view channel_name(Channel c);
std::string_view author_gender_name(AuthorGender g);

}  // namespace classica

#endif
