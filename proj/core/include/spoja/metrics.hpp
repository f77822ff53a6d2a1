#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace spoja {

// Nearest-rank quantile: the ⌈q·N⌉-th smallest value (at least the first).
double nearest_rank(std::span<const double> values, double q);

struct Summary {
  double median = 0.0;
  double mean = 0.0;
  double q10 = 0.0;
  double q90 = 0.0;
  double success_rate = 0.0;
  std::size_t n_trials = 0;
};

// Order statistics of values plus the success share of flags (empty flags
// leave success_rate at 0). Throws empty-input.
Summary aggregate(std::span<const double> values, const std::vector<bool>& flags = {});

// Mean and standard error of exp(lᵢ) held relative to shift = max lᵢ.
struct LogMoment {
  double shift = 0.0;
  double mean = 0.0;  // mean of exp(lᵢ − shift)
  double se = 0.0;    // standard error of that mean
  std::size_t count = 0;

  double log_mean() const;
  // log(mean + z·se) + shift
  double log_upper(double z) const;
};

LogMoment log_moment(std::span<const double> logs);

// Bernoulli rate with its standard error √(p(1−p)/N).
struct Rate {
  double p = 0.0;
  double se = 0.0;
  std::size_t count = 0;
};

Rate bernoulli_rate(const std::vector<bool>& flags);

// Shortest round-trip decimal, '.' separator, independent of locale.
std::string format_double(double v);

// RFC-4180 field quoting.
std::string csv_field(std::string_view s);

struct SummaryRow {
  std::string experiment_id;
  std::string pipeline;
  std::size_t n = 0, d = 0, s = 0, k = 0;
  std::uint64_t seed_base = 0;
  std::size_t trials = 0;
  double sin2_median = 0.0, sin2_q10 = 0.0, sin2_q90 = 0.0;
  double support_recovery_rate = 0.0;
  double wall_time_ms = 0.0;
};

void write_summary_header(std::ostream& os);
void write_summary_row(std::ostream& os, const SummaryRow& row);

}  // namespace spoja
