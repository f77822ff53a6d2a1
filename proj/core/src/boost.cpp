#include "spoja/boost.hpp"

#include <algorithm>

#include "spoja/oja.hpp"
#include "spoja/sparse_pca.hpp"

namespace spoja {

std::string_view to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::set_indicator: return "set_indicator";
    case MetricKind::projector_frobenius: return "projector_frobenius";
    case MetricKind::custom: return "custom";
  }
  return "custom";
}

double set_indicator_distance(std::span<const std::size_t> a, std::span<const std::size_t> b) {
  std::vector<std::size_t> x(a.begin(), a.end()), y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  x.erase(std::unique(x.begin(), x.end()), x.end());
  y.erase(std::unique(y.begin(), y.end()), y.end());
  return x == y ? 0.0 : 1.0;
}

double projector_distance(std::span<const double> u, std::span<const double> v) {
  (void)sin2(u, v);  // unit checks
  // 2(1 − c²) = ‖u − v‖²‖u + v‖²/2 without the cancellation in 1 − c².
  double minus = 0.0, plus = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    minus += (u[i] - v[i]) * (u[i] - v[i]);
    plus += (u[i] + v[i]) * (u[i] + v[i]);
  }
  return std::sqrt(minus * plus / 2.0);
}

MetricSpaceAdapter<std::vector<std::size_t>> set_indicator_metric() {
  return {MetricKind::set_indicator,
          [](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
            return set_indicator_distance(a, b);
          }};
}

MetricSpaceAdapter<std::vector<double>> projector_metric() {
  return {MetricKind::projector_frobenius,
          [](const std::vector<double>& a, const std::vector<double>& b) {
            return projector_distance(a, b);
          }};
}

std::size_t BoostConfig::buckets() const {
  const double raw = std::ceil(bucket_constant * std::log(1.0 / delta));
  return raw < 1.0 ? 1 : static_cast<std::size_t>(raw);
}

void BoostConfig::validate() const {
  if (!(delta > 0.0 && delta < 1.0)) fail(ErrorKind::config_error, "delta must lie in (0, 1)");
  if (!(epsilon >= 0.0)) fail(ErrorKind::config_error, "epsilon must be >= 0");
  if (!(bucket_constant > 0.0)) fail(ErrorKind::config_error, "bucket_constant must be positive");
  if (!(cluster_fraction > 0.0 && cluster_fraction <= 1.0))
    fail(ErrorKind::config_error, "cluster_fraction must lie in (0, 1]");
  if (!(cluster_radius_mult >= 0.0)) fail(ErrorKind::config_error, "cluster_radius_mult must be >= 0");
}

}  // namespace spoja
