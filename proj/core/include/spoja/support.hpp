#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "spoja/oja.hpp"

namespace spoja {

enum class SupportMethod { top_k, threshold, diagonal };

std::string_view to_string(SupportMethod method);

// Estimated support Ŝ (ascending, 0-based) with the scores it was cut from.
// top_k and threshold scores are log|u(i)| + b = log|eᵢᵀBₙu₀|; diagonal scores
// are the empirical variances Σ̂ᵢᵢ.
struct SupportEstimate {
  std::vector<std::size_t> indices;
  SupportMethod method = SupportMethod::top_k;
  std::vector<double> scores;
  std::size_t k = 0;
  double log_gamma = 0.0;
};

// Indices of the k largest |v(i)|, ties broken by lower index, returned ascending.
std::vector<std::size_t> top_k_indices(std::span<const double> v, std::size_t k);

std::vector<double> log_scores(const OjaState& state);

SupportEstimate top_k_support(const OjaState& state, std::size_t k);
SupportEstimate threshold_support(const OjaState& state, double log_gamma);

// log(δ/√(2e)) + log(min_entry) + n·log(1 + ηλ₁). δ = 3/4 gives log γₙ for
// the thresholded estimator; passing δ and min over S gives log τₙ.
double paper_threshold(double n, double eta, double lambda1, double min_entry, double delta = 0.75);

struct SupportMetrics {
  bool contains_s = false;
  bool contains_s_hi = false;
  std::size_t intersection = 0;
  double precision = 0.0;  // 0 when Ŝ is empty
  double recall = 0.0;     // 1 when S is empty
  std::size_t size = 0;
};

SupportMetrics support_metrics(const SupportEstimate& est, std::span<const std::size_t> truth,
                               std::span<const std::size_t> truth_hi);

}  // namespace spoja
