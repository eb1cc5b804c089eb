#include "classica/eval.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "classica/errors.hpp"

namespace classica {

std::string_view task_name(Task t) {
  switch (t) {
    case Task::lemma: return "lemma";
    case Task::pos: return "pos";
    case Task::morph: return "morph";
  }
  return "";
}

Task task_from_name(std::string_view name) {
  if (name == "lemma") return Task::lemma;
  if (name == "pos") return Task::pos;
  if (name == "morph") return Task::morph;
  throw error("unknown task '" + std::string(name) + "' (expected lemma|pos|morph)");
}

std::string task_target(const AnnotatedToken& token, Task task) {
  switch (task) {
    case Task::lemma: return token.lemma.empty() ? "_" : token.lemma;
    case Task::pos: return token.pos.empty() ? "_" : token.pos;
    case Task::morph: return morph_to_string(token.morph);
  }
  return "";
}

int accuracy_cents(long correct, long support) {
  if (support <= 0) return 0;
  long long scaled = static_cast<long long>(correct) * 10000;
  long long q = scaled / support;
  long long r = scaled % support;
  if (2 * r >= support) ++q;  // half-up
  return int(q);
}

std::string format_cents(int cents) {
  char buf[32];
  int whole = cents / 100;
  int frac = cents % 100;
  if (cents < 0) {
    whole = -cents / 100;
    frac = -cents % 100;
    std::snprintf(buf, sizeof buf, "-%d.%02d", whole, frac);
  } else {
    std::snprintf(buf, sizeof buf, "%d.%02d", whole, frac);
  }
  return buf;
}

std::string format_delta(int cents) {
  if (cents < 0) return format_cents(cents);
  return "+" + format_cents(cents);
}

// --- Token classes ------------------------------------------------------------

TokenClassIndex classify_tokens(const Corpus& train, const Corpus& gold, Task task) {
  std::unordered_map<std::string, std::unordered_set<std::string>> form_targets;
  std::unordered_set<std::string> targets;
  for (const auto& sentence : train.sentences) {
    for (const auto& token : sentence) {
      std::string target = task_target(token, task);
      form_targets[token.form].insert(target);
      targets.insert(std::move(target));
    }
  }

  TokenClassIndex index;
  index.task = task;
  index.flags.reserve(gold.token_count());
  for (const auto& sentence : gold.sentences) {
    for (const auto& token : sentence) {
      TokenClass c;
      auto it = form_targets.find(token.form);
      c.unknown_form = it == form_targets.end();
      c.ambiguous = it != form_targets.end() && it->second.size() >= 2;
      c.unknown_target = targets.count(task_target(token, task)) == 0;
      index.flags.push_back(c);
    }
  }
  return index;
}

// --- Alignment ---------------------------------------------------------------

namespace {

void check_alignment(const std::vector<const AnnotatedToken*>& gold,
                     const std::vector<const AnnotatedToken*>& pred) {
  if (gold.size() != pred.size())
    throw alignment_error("gold has " + std::to_string(gold.size()) +
                          " tokens but pred has " + std::to_string(pred.size()));
  for (size_t i = 0; i < gold.size(); ++i) {
    if (gold[i]->form != pred[i]->form)
      throw alignment_error("corpora diverge at position " + std::to_string(i) +
                            ": gold form '" + gold[i]->form + "' vs pred form '" +
                            pred[i]->form + "'");
  }
}

}  // namespace

EvalReport accuracy_report(const Corpus& gold, const Corpus& pred,
                           const TokenClassIndex& classes, Task task) {
  auto gold_tokens = gold.tokens();
  auto pred_tokens = pred.tokens();
  check_alignment(gold_tokens, pred_tokens);
  if (classes.flags.size() != gold_tokens.size())
    throw error("token class index does not cover the gold corpus");
  if (classes.task != task)
    throw error("token class index was built for another task");

  EvalReport report;
  report.task = task;
  for (size_t i = 0; i < gold_tokens.size(); ++i) {
    bool correct = task_target(*gold_tokens[i], task) ==
                   task_target(*pred_tokens[i], task);
    const TokenClass& c = classes.flags[i];
    ++report.all.support;
    if (correct) ++report.all.correct;
    if (c.unknown_form) {
      ++report.unknown_tokens.support;
      if (correct) ++report.unknown_tokens.correct;
    }
    if (c.ambiguous) {
      ++report.ambiguous_tokens.support;
      if (correct) ++report.ambiguous_tokens.correct;
    }
    if (c.unknown_target) {
      ++report.unknown_targets.support;
      if (correct) ++report.unknown_targets.correct;
    }
  }
  return report;
}

// --- Grouped report ---------------------------------------------------------------

GroupedCell GroupedReport::cell(int row, int century) const {
  GroupedCell out;
  auto accumulate = [&](const std::array<GroupedCell, 2>& cells) {
    if (row == kTheatre || row == kBoth) {
      out.support += cells[0].support;
      out.correct += cells[0].correct;
    }
    if (row == kOther || row == kBoth) {
      out.support += cells[1].support;
      out.correct += cells[1].correct;
    }
  };
  if (century == 0) {
    for (const auto& [c, cells] : by_century_) accumulate(cells);
  } else {
    auto it = by_century_.find(century);
    if (it == by_century_.end())
      throw error("no data for century " + std::to_string(century));
    accumulate(it->second);
  }
  return out;
}

GroupedReport grouped_report(const std::vector<GroupedSample>& samples, Task task) {
  GroupedReport report;
  report.task = task;
  for (const auto& sample : samples) {
    if (sample.century == 0)
      throw error("sample '" + sample.id + "' has no century");
    if (sample.channel == Channel::unset)
      throw error("sample '" + sample.id + "' has no channel");
    auto gold_tokens = sample.gold.tokens();
    auto pred_tokens = sample.pred.tokens();
    try {
      check_alignment(gold_tokens, pred_tokens);
    } catch (const alignment_error& e) {
      throw alignment_error("sample '" + sample.id + "': " + e.what());
    }
    GroupedCell& cell =
        report.by_century_[sample.century]
                          [sample.channel == Channel::theatre ? 0 : 1];
    for (size_t i = 0; i < gold_tokens.size(); ++i) {
      ++cell.support;
      if (task_target(*gold_tokens[i], task) == task_target(*pred_tokens[i], task))
        ++cell.correct;
    }
  }
  for (const auto& [century, cells] : report.by_century_)
    report.centuries_.push_back(century);
  return report;
}

// --- Deltas -----------------------------------------------------------------------

DeltaReport delta_report(const GroupedReport& a, const GroupedReport& b) {
  if (a.task != b.task) throw error("delta: reports evaluate different tasks");
  if (a.centuries() != b.centuries()) {
    std::string msg = "delta: century axes differ (";
    for (int c : a.centuries()) msg += std::to_string(c) + " ";
    msg += "vs ";
    for (int c : b.centuries()) msg += std::to_string(c) + " ";
    msg += ")";
    throw error(msg);
  }
  DeltaReport delta;
  delta.task = a.task;
  delta.centuries = a.centuries();
  for (int row = 0; row < 3; ++row) {
    for (int century : delta.centuries)
      delta.delta_cents[size_t(row)].push_back(b.cell(row, century).cents() -
                                               a.cell(row, century).cents());
    delta.delta_cents[size_t(row)].push_back(b.cell(row).cents() -
                                             a.cell(row).cents());
  }
  return delta;
}

// --- Confusions --------------------------------------------------------------------

std::vector<ConfusionEntry> confusion_matrix(const Corpus& gold, const Corpus& pred,
                                             Task task, size_t top_k) {
  auto gold_tokens = gold.tokens();
  auto pred_tokens = pred.tokens();
  check_alignment(gold_tokens, pred_tokens);

  std::map<std::string, std::map<std::string, long>> errors;
  for (size_t i = 0; i < gold_tokens.size(); ++i) {
    std::string expected = task_target(*gold_tokens[i], task);
    std::string predicted = task_target(*pred_tokens[i], task);
    if (expected != predicted) ++errors[expected][predicted];
  }

  std::vector<ConfusionEntry> entries;
  for (const auto& [expected, preds] : errors) {
    ConfusionEntry e;
    e.expected = expected;
    for (const auto& [predicted, count] : preds) {
      e.total_errors += count;
      e.predictions.emplace_back(predicted, count);
    }
    std::stable_sort(e.predictions.begin(), e.predictions.end(),
                     [](const auto& x, const auto& y) {
                       return x.second != y.second ? x.second > y.second
                                                   : x.first < y.first;
                     });
    entries.push_back(std::move(e));
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const ConfusionEntry& x, const ConfusionEntry& y) {
                     return x.total_errors != y.total_errors
                                ? x.total_errors > y.total_errors
                                : x.expected < y.expected;
                   });
  if (top_k > 0 && entries.size() > top_k) entries.resize(top_k);
  return entries;
}

// --- Rendering ---------------------------------------------------------------------

namespace {

std::string ordinal(int n) {
  int mod100 = n % 100;
  const char* suffix = "th";
  if (mod100 < 11 || mod100 > 13) {
    switch (n % 10) {
      case 1: suffix = "st"; break;
      case 2: suffix = "nd"; break;
      case 3: suffix = "rd"; break;
    }
  }
  return std::to_string(n) + suffix;
}

const char* kRowLabels[3] = {"Theatre", "Not theatre", "Both"};
const char* kRowKeys[3] = {"theatre", "other", "both"};

std::string cell_text(const GroupedCell& cell) {
  return cell.support == 0 ? "NA" : format_cents(cell.cents());
}

}  // namespace

std::string render_report(const EvalReport& report) {
  std::ostringstream out;
  out << "task: " << task_name(report.task) << '\n';
  out << "class\taccuracy\tsupport\n";
  auto row = [&](const char* label, const ClassStats& s) {
    out << label << '\t' << (s.applicable() ? format_cents(s.cents()) : "NA")
        << '\t' << s.support << '\n';
  };
  row("all", report.all);
  row("unknown tokens", report.unknown_tokens);
  row("ambiguous tokens", report.ambiguous_tokens);
  row("unknown targets", report.unknown_targets);
  return out.str();
}

std::string render_grouped(const GroupedReport& report) {
  std::ostringstream out;
  out << "task: " << task_name(report.task) << '\n';
  out << "corpus";
  for (int c : report.centuries()) out << '\t' << ordinal(c);
  out << "\tAll cent.\n";
  for (int row = 0; row < 3; ++row) {
    out << kRowLabels[row];
    for (int c : report.centuries()) out << '\t' << cell_text(report.cell(row, c));
    out << '\t' << cell_text(report.cell(row)) << '\n';
  }
  return out.str();
}

std::string render_delta(const DeltaReport& report) {
  std::ostringstream out;
  out << "task: " << task_name(report.task) << '\n';
  out << "corpus";
  for (int c : report.centuries) out << '\t' << ordinal(c);
  out << "\tAll cent.\n";
  for (int row = 0; row < 3; ++row) {
    out << kRowLabels[row];
    for (int v : report.delta_cents[size_t(row)]) out << '\t' << format_delta(v);
    out << '\n';
  }
  return out.str();
}

std::string render_confusions(const std::vector<ConfusionEntry>& entries, Task task) {
  std::ostringstream out;
  out << "task: " << task_name(task) << '\n';
  out << "expected\ttotal_errors\tpredicted\ttimes\n";
  for (const auto& e : entries) {
    bool first = true;
    for (const auto& [predicted, count] : e.predictions) {
      if (first)
        out << e.expected << '\t' << e.total_errors;
      else
        out << '\t';
      out << '\t' << predicted << '\t' << count << '\n';
      first = false;
    }
  }
  return out.str();
}

std::string report_records(const EvalReport& report) {
  std::ostringstream out;
  auto row = [&](const char* cls, const ClassStats& s) {
    nlohmann::json j;
    j["task"] = task_name(report.task);
    j["class"] = cls;
    j["support"] = s.support;
    j["correct"] = s.correct;
    if (s.applicable())
      j["accuracy"] = format_cents(s.cents());
    else
      j["accuracy"] = nullptr;
    out << j.dump() << '\n';
  };
  row("all", report.all);
  row("unknown_tokens", report.unknown_tokens);
  row("ambiguous_tokens", report.ambiguous_tokens);
  row("unknown_targets", report.unknown_targets);
  return out.str();
}

std::string grouped_records(const GroupedReport& report) {
  std::ostringstream out;
  auto cell = [&](int row, int century) {
    GroupedCell c = report.cell(row, century);
    nlohmann::json j;
    j["task"] = task_name(report.task);
    j["channel"] = kRowKeys[row];
    if (century == 0)
      j["century"] = "all";
    else
      j["century"] = century;
    j["support"] = c.support;
    j["correct"] = c.correct;
    if (c.support > 0)
      j["accuracy"] = format_cents(c.cents());
    else
      j["accuracy"] = nullptr;
    out << j.dump() << '\n';
  };
  for (int row = 0; row < 3; ++row) {
    for (int century : report.centuries()) cell(row, century);
    cell(row, 0);
  }
  return out.str();
}

std::string delta_records(const DeltaReport& report) {
  std::ostringstream out;
  for (int row = 0; row < 3; ++row) {
    for (size_t col = 0; col <= report.centuries.size(); ++col) {
      nlohmann::json j;
      j["task"] = task_name(report.task);
      j["channel"] = kRowKeys[row];
      if (col < report.centuries.size())
        j["century"] = report.centuries[col];
      else
        j["century"] = "all";
      j["delta"] = format_delta(report.delta_cents[size_t(row)][col]);
      out << j.dump() << '\n';
    }
  }
  return out.str();
}

std::string confusion_records(const std::vector<ConfusionEntry>& entries, Task task) {
  std::ostringstream out;
  for (const auto& e : entries) {
    for (const auto& [predicted, count] : e.predictions) {
      nlohmann::json j;
      j["task"] = task_name(task);
      j["expected"] = e.expected;
      j["predicted"] = predicted;
      j["count"] = count;
      out << j.dump() << '\n';
    }
  }
  return out.str();
}

}  // namespace classica
