#include "classica/sampling.hpp"

#include <cmath>

#include "classica/errors.hpp"

namespace classica {

namespace {

std::string describe(const char* name, const TokenRange& r) {
  return std::string(name) + " [" + std::to_string(r.begin) + "," +
         std::to_string(r.end) + ")";
}

}  // namespace

Split three_tier_split(size_t token_count, size_t train_n, size_t dev_n,
                       size_t test_n) {
  if (train_n == 0 || dev_n == 0 || test_n == 0)
    throw split_error("tier sizes must be positive");
  if (token_count < train_n + dev_n + test_n)
    throw split_error("play too short: " + std::to_string(token_count) +
                      " tokens for tiers " + std::to_string(train_n) + "+" +
                      std::to_string(dev_n) + "+" + std::to_string(test_n));

  Split split;
  split.train = {0, train_n};
  size_t dev_begin = (token_count - dev_n) / 2;
  split.dev = {dev_begin, dev_begin + dev_n};
  split.test = {token_count - test_n, token_count};

  const std::pair<const char*, TokenRange> ranges[] = {
      {"train", split.train}, {"dev", split.dev}, {"test", split.test}};
  for (size_t i = 0; i < 3; ++i) {
    for (size_t j = i + 1; j < 3; ++j) {
      if (ranges[i].second.overlaps(ranges[j].second))
        throw split_error("play too short (" + std::to_string(token_count) +
                          " tokens): " + describe(ranges[i].first, ranges[i].second) +
                          " overlaps " + describe(ranges[j].first, ranges[j].second));
    }
  }
  return split;
}

BalanceReport validate_balance(const std::vector<BalanceSample>& samples,
                               const BalanceOptions& options) {
  BalanceReport report;

  for (const auto& s : samples) {
    if (s.metadata.century == 0)
      throw error("sample '" + s.id + "' has no century");
    if (s.metadata.channel == Channel::unset)
      throw error("sample '" + s.id + "' has no channel");
    CenturyBalance& c = report.centuries[s.metadata.century];
    if (s.metadata.channel == Channel::theatre)
      ++c.theatre_samples;
    else
      ++c.other_samples;
    switch (s.metadata.author_gender) {
      case AuthorGender::male: c.male_tokens += long(s.token_count); break;
      case AuthorGender::female: c.female_tokens += long(s.token_count); break;
      case AuthorGender::unknown: c.unknown_gender_tokens += long(s.token_count); break;
    }
  }

  // Per-sample size check.
  const double lo = double(options.sample_tokens) * (1.0 - options.tau_size);
  const double hi = double(options.sample_tokens) * (1.0 + options.tau_size);
  for (const auto& s : samples) {
    double n = double(s.token_count);
    if (n < lo || n > hi) {
      report.violations.push_back(
          {"sample_size", s.metadata.century, n, double(options.sample_tokens),
           options.tau_size, "sample '" + s.id + "' has " +
               std::to_string(s.token_count) + " tokens"});
    }
  }

  for (const auto& [century, c] : report.centuries) {
    if (c.theatre_samples != options.samples_per_channel ||
        c.other_samples != options.samples_per_channel) {
      report.violations.push_back(
          {"channel_split", century, double(c.theatre_samples),
           double(options.samples_per_channel), 0.0,
           "theatre=" + std::to_string(c.theatre_samples) +
               " other=" + std::to_string(c.other_samples)});
    }
    long total = c.male_tokens + c.female_tokens;
    if (total > 0) {
      double imbalance = std::abs(double(c.male_tokens - c.female_tokens)) / double(total);
      if (imbalance > options.tau_gender) {
        report.violations.push_back(
            {"gender_tokens", century, imbalance, 0.0, options.tau_gender,
             "male=" + std::to_string(c.male_tokens) +
                 " female=" + std::to_string(c.female_tokens)});
      }
    }
  }

  return report;
}

}  // namespace classica
