#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "spoja/cov_models.hpp"

namespace spoja {

// Dense Bₙ = (I + ηXₙXₙᵀ)⋯(I + ηX₁X₁ᵀ) kept as exp(log_scale)·M with M
// rescaled to unit max-entry after every step. Small d only (≤ 64).
class DenseProduct {
 public:
  DenseProduct(std::size_t d, double eta);

  void step(std::span<const double> x);

  std::size_t dim() const noexcept { return d_; }
  std::size_t steps() const noexcept { return t_; }
  // Row-major scaled matrix M and its log scale.
  const std::vector<double>& scaled() const noexcept { return m_; }
  double log_scale() const noexcept { return log_scale_; }

  // log ‖BₙBₙᵀ‖₂ = 2 log σ_max(Bₙ).
  double log_norm_bbt() const;
  // log(vᵀBₙBₙᵀv).
  double log_quadratic(std::span<const double> v) const;
  // Bₙu, unscaled; may overflow for long products.
  std::vector<double> apply(std::span<const double> u) const;

 private:
  std::size_t d_;
  double eta_;
  std::size_t t_ = 0;
  double log_scale_ = 0.0;
  std::vector<double> m_;
  std::vector<double> row_;
};

inline constexpr std::size_t kMaxDenseDim = 64;

struct GrowthRow {
  std::size_t n = 0;
  double log_norm_mean = 0.0;  // log‖E[BₙBₙᵀ]‖ with the expectation taken over trials
  double log_norm_bbt = 0.0;   // mean over trials of log‖BₙBₙᵀ‖
  double log_v1_moment = 0.0;  // log of the trial mean of v₁ᵀBₙBₙᵀv₁
  double bound_log = 0.0;      // second-moment envelope with U = I
  double naive_bound_log = 0.0;
};

// Dense-product growth curves at the checkpoints (ascending). Throws
// dim-too-large past kMaxDenseDim.
std::vector<GrowthRow> product_growth(const CovModel& m, double eta, std::span<const std::size_t> checkpoints,
                                      std::size_t trials, std::uint64_t seed, double L = 1.0,
                                      double sigma = 1.0);

struct ScoreSnapshot {
  std::size_t n = 0;
  // trials × d row-major log|eᵢᵀBₙu₀|
  std::vector<double> scores;
};

// Oja log-magnitudes at each checkpoint; each trial draws its own u₀ and data.
std::vector<ScoreSnapshot> score_trajectories(const CovModel& m, double eta,
                                              std::span<const std::size_t> checkpoints,
                                              std::size_t trials, std::uint64_t seed);

struct SeparationRow {
  std::size_t n = 0;
  double in_median = 0.0;  // median over trials and i ∈ S
  double out_q90 = 0.0;    // 90th percentile over trials and i ∉ S
  bool separated = false;
};

std::vector<SeparationRow> score_separation(const CovModel& m, const std::vector<ScoreSnapshot>& snaps);

}  // namespace spoja
