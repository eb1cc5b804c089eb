// Evaluation machinery: token-class accuracies (all / unknown tokens /
// ambiguous tokens / unknown targets), century-by-channel grids, improvement
// deltas and confusion listings. Accuracies are percentages rounded half-up
// to two decimals, computed with integer arithmetic.
#ifndef CLASSICA_EVAL_HPP
#define CLASSICA_EVAL_HPP

#include <array>
#include <map>
#include <string>
#include <vector>

#include "classica/corpus.hpp"
#include "classica/play.hpp"

namespace classica {

enum class Task { lemma, pos, morph };

std::string_view task_name(Task t);
Task task_from_name(std::string_view name);

// The value a task evaluates on a token ("_" for unset lemma/POS).
std::string task_target(const AnnotatedToken& token, Task task);

// Exact half-up rounding of 100 * correct / support to hundredths.
int accuracy_cents(long correct, long support);
std::string format_cents(int cents);        // "99.09"
std::string format_delta(int cents);        // "+0.30", "-0.12", "+0.00"

// --- Token classes ------------------------------------------------------------

struct TokenClass {
  bool unknown_form = false;    // form never seen in training (case-sensitive)
  bool ambiguous = false;       // form trained with >= 2 distinct targets
  bool unknown_target = false;  // gold target never seen in training
};

struct TokenClassIndex {
  Task task = Task::lemma;
  std::vector<TokenClass> flags;  // aligned with the flattened gold corpus
};

// Derived solely from the training set and the gold data.
TokenClassIndex classify_tokens(const Corpus& train, const Corpus& gold, Task task);

// --- Class report --------------------------------------------------------------

struct ClassStats {
  long support = 0;
  long correct = 0;

  bool applicable() const { return support > 0; }
  int cents() const { return accuracy_cents(correct, support); }
};

struct EvalReport {
  Task task = Task::lemma;
  ClassStats all;
  ClassStats unknown_tokens;
  ClassStats ambiguous_tokens;
  ClassStats unknown_targets;
};

// Gold and pred must align token for token (same forms in the same order);
// a mismatch raises alignment_error naming the position and both forms.
EvalReport accuracy_report(const Corpus& gold, const Corpus& pred,
                           const TokenClassIndex& classes, Task task);

// --- Grouped (out-of-domain) report ------------------------------------------------

struct GroupedSample {
  std::string id;
  Corpus gold;
  Corpus pred;
  int century = 0;
  Channel channel = Channel::unset;
};

struct GroupedCell {
  long support = 0;
  long correct = 0;
  int cents() const { return accuracy_cents(correct, support); }
};

// Rows: theatre / not theatre / both; columns: one per century plus the
// pooled "All cent." column. Aggregates are micro-averages over tokens.
class GroupedReport {
public:
  static constexpr int kTheatre = 0;
  static constexpr int kOther = 1;
  static constexpr int kBoth = 2;

  Task task = Task::lemma;

  const std::vector<int>& centuries() const { return centuries_; }
  // century == 0 selects the pooled All-centuries column.
  GroupedCell cell(int row, int century = 0) const;

  friend GroupedReport grouped_report(const std::vector<GroupedSample>&, Task);

private:
  std::vector<int> centuries_;                          // sorted
  std::map<int, std::array<GroupedCell, 2>> by_century_;  // theatre, other
};

GroupedReport grouped_report(const std::vector<GroupedSample>& samples, Task task);

// --- Deltas -----------------------------------------------------------------------

// Cellwise improvement of b over a, on the rounded percentages.
struct DeltaReport {
  Task task = Task::lemma;
  std::vector<int> centuries;
  // delta_cents[row][column]; last column = All cent.
  std::array<std::vector<int>, 3> delta_cents;
};

DeltaReport delta_report(const GroupedReport& a, const GroupedReport& b);

// --- Confusions -------------------------------------------------------------------

struct ConfusionEntry {
  std::string expected;
  long total_errors = 0;
  std::vector<std::pair<std::string, long>> predictions;  // count desc
};

// Erroneous tokens only, grouped by expected value, sorted by total errors
// descending (ties lexicographic on the expected value) and truncated to the
// top_k expected values (0 = no truncation).
std::vector<ConfusionEntry> confusion_matrix(const Corpus& gold, const Corpus& pred,
                                             Task task, size_t top_k);

// --- Rendering ---------------------------------------------------------------------

std::string render_report(const EvalReport& report);
std::string render_grouped(const GroupedReport& report);
std::string render_delta(const DeltaReport& report);
std::string render_confusions(const std::vector<ConfusionEntry>& entries, Task task);

// Machine-readable records, one JSON object per line.
std::string report_records(const EvalReport& report);
std::string grouped_records(const GroupedReport& report);
std::string delta_records(const DeltaReport& report);
std::string confusion_records(const std::vector<ConfusionEntry>& entries, Task task);

}  // namespace classica

#endif
