#include "spoja/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "spoja/error.hpp"

namespace spoja {

double nearest_rank(std::span<const double> values, double q) {
  if (values.empty()) fail(ErrorKind::empty_input, "no values");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  const double raw = std::ceil(q * static_cast<double>(v.size()));
  std::size_t rank = raw < 1.0 ? 1 : static_cast<std::size_t>(raw);
  rank = std::min(rank, v.size());
  return v[rank - 1];
}

Summary aggregate(std::span<const double> values, const std::vector<bool>& flags) {
  if (values.empty()) fail(ErrorKind::empty_input, "nothing to aggregate");
  Summary s;
  s.n_trials = values.size();
  s.median = nearest_rank(values, 0.5);
  s.q10 = nearest_rank(values, 0.1);
  s.q90 = nearest_rank(values, 0.9);
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  double sum = 0.0;
  for (double v : sorted) sum += v;
  s.mean = sum / static_cast<double>(sorted.size());
  if (!flags.empty()) s.success_rate = bernoulli_rate(flags).p;
  return s;
}

double LogMoment::log_mean() const { return std::log(mean) + shift; }

double LogMoment::log_upper(double z) const { return std::log(mean + z * se) + shift; }

LogMoment log_moment(std::span<const double> logs) {
  if (logs.empty()) fail(ErrorKind::empty_input, "no samples");
  LogMoment lm;
  lm.count = logs.size();
  lm.shift = *std::max_element(logs.begin(), logs.end());
  if (!std::isfinite(lm.shift)) {
    lm.mean = lm.shift == -std::numeric_limits<double>::infinity() ? 0.0 : 1.0;
    return lm;
  }
  double sum = 0.0, sumsq = 0.0;
  for (double l : logs) {
    const double w = std::exp(l - lm.shift);
    sum += w;
    sumsq += w * w;
  }
  const double n = static_cast<double>(logs.size());
  lm.mean = sum / n;
  const double var = logs.size() > 1 ? std::max(0.0, (sumsq - n * lm.mean * lm.mean) / (n - 1.0)) : 0.0;
  lm.se = std::sqrt(var / n);
  return lm;
}

Rate bernoulli_rate(const std::vector<bool>& flags) {
  if (flags.empty()) fail(ErrorKind::empty_input, "no outcomes");
  Rate r;
  r.count = flags.size();
  std::size_t hits = 0;
  for (bool f : flags) hits += f ? 1 : 0;
  r.p = static_cast<double>(hits) / static_cast<double>(r.count);
  r.se = std::sqrt(r.p * (1.0 - r.p) / static_cast<double>(r.count));
  return r;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_summary_header(std::ostream& os) {
  os << "experiment_id,pipeline,n,d,s,k,seed_base,trials,sin2_median,sin2_q10,sin2_q90,"
        "support_recovery_rate,wall_time_ms\r\n";
}

void write_summary_row(std::ostream& os, const SummaryRow& r) {
  os << csv_field(r.experiment_id) << ',' << csv_field(r.pipeline) << ',' << r.n << ',' << r.d << ','
     << r.s << ',' << r.k << ',' << r.seed_base << ',' << r.trials << ',' << format_double(r.sin2_median)
     << ',' << format_double(r.sin2_q10) << ',' << format_double(r.sin2_q90) << ','
     << format_double(r.support_recovery_rate) << ',' << format_double(r.wall_time_ms) << "\r\n";
}

}  // namespace spoja
