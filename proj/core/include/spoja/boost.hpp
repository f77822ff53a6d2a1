#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "spoja/error.hpp"
#include "spoja/sampling.hpp"

namespace spoja {

enum class MetricKind { set_indicator, projector_frobenius, custom };

std::string_view to_string(MetricKind kind);

template <class Item>
struct MetricSpaceAdapter {
  MetricKind kind = MetricKind::custom;
  std::function<double(const Item&, const Item&)> distance;
};

// 0 if A and B hold the same indices (order and repeats ignored), else 1.
double set_indicator_distance(std::span<const std::size_t> a, std::span<const std::size_t> b);

// ‖uuᵀ − vvᵀ‖_F = √(2 − 2(uᵀv)²) for unit u, v; throws not-unit.
double projector_distance(std::span<const double> u, std::span<const double> v);

MetricSpaceAdapter<std::vector<std::size_t>> set_indicator_metric();
MetricSpaceAdapter<std::vector<double>> projector_metric();

struct BoostConfig {
  double delta = 0.05;
  double epsilon = 0.0;
  double bucket_constant = 30.0;
  double cluster_fraction = 0.4;
  double cluster_radius_mult = 2.0;

  // S = ⌈bucket_constant · ln(1/δ)⌉, at least 1.
  std::size_t buckets() const;
  void validate() const;
};

template <class Item>
struct BoostOutcome {
  std::optional<Item> item;  // empty means no qualifying cluster (bottom)
  std::size_t buckets = 0;
  std::size_t bucket_size = 0;
  std::optional<std::size_t> chosen;
  std::size_t cluster_size = 0;
  std::vector<Item> candidates;
};

// Runs the oracle on S consecutive disjoint buckets of B = ⌊n/S⌋ samples and
// returns the first candidate whose radius-(mult·ε) cluster holds at least a
// cluster_fraction share of all candidates. The oracle is called as
// oracle(bucket_stream, bucket_index) and must consume the whole bucket.
template <class Item, class Oracle>
BoostOutcome<Item> success_boost(SampleStream& data, Oracle&& oracle, const BoostConfig& cfg,
                                 const MetricSpaceAdapter<Item>& metric) {
  cfg.validate();
  const std::size_t S = cfg.buckets();
  const std::size_t n = data.remaining();
  if (n < S) fail(ErrorKind::insufficient_data, "need at least one sample per bucket");
  const std::size_t B = n / S;

  BoostOutcome<Item> out;
  out.buckets = S;
  out.bucket_size = B;
  out.candidates.reserve(S);
  for (std::size_t t = 0; t < S; ++t) {
    SampleStream bucket = data.take(B);
    out.candidates.push_back(oracle(bucket, t));
  }

  std::vector<double> dist(S * S, 0.0);
  for (std::size_t a = 0; a < S; ++a)
    for (std::size_t b = a + 1; b < S; ++b)
      dist[a * S + b] = dist[b * S + a] = metric.distance(out.candidates[a], out.candidates[b]);

  const double radius = cfg.cluster_radius_mult * cfg.epsilon;
  for (std::size_t a = 0; a < S; ++a) {
    std::size_t members = 0;
    for (std::size_t b = 0; b < S; ++b)
      if (dist[a * S + b] <= radius) ++members;
    if (static_cast<double>(members) >= cfg.cluster_fraction * static_cast<double>(S)) {
      out.item = out.candidates[a];
      out.chosen = a;
      out.cluster_size = members;
      break;
    }
  }
  return out;
}

}  // namespace spoja
