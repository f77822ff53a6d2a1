#include "spoja/support.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "spoja/error.hpp"

namespace spoja {

std::string_view to_string(SupportMethod method) {
  switch (method) {
    case SupportMethod::top_k: return "top_k";
    case SupportMethod::threshold: return "threshold";
    case SupportMethod::diagonal: return "diagonal";
  }
  return "top_k";
}

std::vector<std::size_t> top_k_indices(std::span<const double> v, std::size_t k) {
  if (k < 1 || k > v.size()) fail(ErrorKind::invalid_k, "need 1 <= k <= d");
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      const double fa = std::abs(v[a]), fb = std::abs(v[b]);
                      return fa > fb || (fa == fb && a < b);
                    });
  order.resize(k);
  std::sort(order.begin(), order.end());
  return order;
}

std::vector<double> log_scores(const OjaState& state) {
  std::vector<double> sc(state.u.size());
  for (std::size_t i = 0; i < sc.size(); ++i) sc[i] = std::log(std::abs(state.u[i])) + state.b;
  return sc;
}

SupportEstimate top_k_support(const OjaState& state, std::size_t k) {
  SupportEstimate est;
  est.method = SupportMethod::top_k;
  est.indices = top_k_indices(state.u, k);
  est.scores = log_scores(state);
  est.k = k;
  return est;
}

SupportEstimate threshold_support(const OjaState& state, double log_gamma) {
  if (std::isnan(log_gamma)) fail(ErrorKind::invalid_min_entry, "threshold is NaN");
  SupportEstimate est;
  est.method = SupportMethod::threshold;
  est.scores = log_scores(state);
  est.log_gamma = log_gamma;
  for (std::size_t i = 0; i < est.scores.size(); ++i)
    if (est.scores[i] >= log_gamma) est.indices.push_back(i);
  est.k = est.indices.size();
  return est;
}

double paper_threshold(double n, double eta, double lambda1, double min_entry, double delta) {
  if (!(min_entry > 0.0)) fail(ErrorKind::invalid_min_entry, "minimum support entry must be positive");
  const double log_const = std::log(delta) - 0.5 * std::log(2.0 * std::exp(1.0));
  return log_const + std::log(min_entry) + n * std::log1p(eta * lambda1);
}

SupportMetrics support_metrics(const SupportEstimate& est, std::span<const std::size_t> truth,
                               std::span<const std::size_t> truth_hi) {
  auto contains = [&](std::size_t i) {
    return std::binary_search(est.indices.begin(), est.indices.end(), i);
  };
  SupportMetrics m;
  m.size = est.indices.size();
  for (std::size_t i : truth)
    if (contains(i)) ++m.intersection;
  m.contains_s = m.intersection == truth.size();
  m.contains_s_hi = std::all_of(truth_hi.begin(), truth_hi.end(), contains);
  m.precision = m.size == 0 ? 0.0 : static_cast<double>(m.intersection) / static_cast<double>(m.size);
  m.recall = truth.empty() ? 1.0 : static_cast<double>(m.intersection) / static_cast<double>(truth.size());
  return m;
}

}  // namespace spoja
