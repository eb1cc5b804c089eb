// Per-play three-tier train/dev/test splitting and out-of-domain corpus
// balance validation.
#ifndef CLASSICA_SAMPLING_HPP
#define CLASSICA_SAMPLING_HPP

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "classica/play.hpp"

namespace classica {

// Half-open token index range.
struct TokenRange {
  size_t begin = 0;
  size_t end = 0;

  size_t size() const { return end - begin; }
  bool overlaps(const TokenRange& o) const {
    return begin < o.end && o.begin < end;
  }
  bool operator==(const TokenRange& o) const = default;
};

struct Split {
  TokenRange train;
  TokenRange dev;
  TokenRange test;
  std::string play_id;
};

// train = [0, train_n); dev = the train-sized window centred on the play
// midpoint, starting at floor((token_count - dev_n) / 2); test = the last
// test_n tokens. Throws split_error when the ranges collide (play too
// short); with the default sizes the minimum legal length is 4100.
Split three_tier_split(size_t token_count, size_t train_n = 2000,
                       size_t dev_n = 100, size_t test_n = 100);

// --- Balance validation --------------------------------------------------------

struct BalanceSample {
  std::string id;
  PlayMetadata metadata;
  size_t token_count = 0;
};

struct BalanceViolation {
  std::string rule;  // channel_split | gender_tokens | sample_size
  int century = 0;
  double observed = 0;
  double expected = 0;
  double tolerance = 0;
  std::string detail;
};

struct BalanceOptions {
  double tau_gender = 0.25;
  double tau_size = 0.25;
  int samples_per_channel = 10;  // per century
  size_t sample_tokens = 100;
};

struct CenturyBalance {
  int theatre_samples = 0;
  int other_samples = 0;
  long male_tokens = 0;
  long female_tokens = 0;
  long unknown_gender_tokens = 0;
};

struct BalanceReport {
  std::map<int, CenturyBalance> centuries;
  std::vector<BalanceViolation> violations;

  bool ok() const { return violations.empty(); }
};

// Checks, per century: 20 samples split 10 theatre / 10 other; male and
// female token totals within the relative gender tolerance; every sample
// within the size tolerance around the nominal sample length. Samples must
// carry century, channel and author gender; otherwise throws.
BalanceReport validate_balance(const std::vector<BalanceSample>& samples,
                               const BalanceOptions& options = {});

}  // namespace classica

#endif
