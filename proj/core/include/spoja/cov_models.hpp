#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace spoja {

class NormalSource;

enum class ModelKind { single_spike, multi_spike, counterexample, general };

std::string_view to_string(ModelKind kind);

enum class SampleFamily { gaussian, scaled_rademacher };

std::string_view to_string(SampleFamily family);

// A sparse rank-one term weight * v vᵀ with unit v stored as (index, value) pairs.
struct Spike {
  double weight = 0.0;
  std::vector<std::size_t> indices;
  std::vector<double> values;
};

// Population covariance with known eigenstructure.
//
// Structured models hold Σ = Σⱼ weightⱼ vⱼvⱼᵀ + iso·I with mutually orthogonal
// sparse vⱼ; products and sampling touch only the spike entries plus a
// diagonal, so nothing of size d×d is ever formed. General models hold a dense
// column-major eigenbasis and are meant for small d.
class CovModel {
 public:
  ModelKind kind() const noexcept { return kind_; }
  std::size_t dim() const noexcept { return d_; }
  bool structured() const noexcept { return dense_vecs_.empty(); }

  // All d eigenvalues, descending.
  const std::vector<double>& eigvals() const noexcept { return eigvals_; }
  double lambda1() const noexcept { return eigvals_[0]; }
  // λ₂ is taken as 0 for a one-dimensional model.
  double lambda2() const noexcept { return eigvals_.size() > 1 ? eigvals_[1] : 0.0; }
  double gap() const noexcept { return lambda1() - lambda2(); }
  double trace() const noexcept { return trace_; }

  const std::vector<double>& v1() const noexcept { return v1_; }
  // Indices with nonzero v1 entries, ascending, 0-based.
  const std::vector<std::size_t>& support() const noexcept { return support_; }
  std::size_t s() const noexcept { return support_.size(); }

  const std::vector<Spike>& spikes() const noexcept { return spikes_; }
  double iso() const noexcept { return iso_; }

  // j-th eigenvector as a dense vector. For structured models only the spike
  // directions are addressable (j < number of spikes).
  std::vector<double> eigvec(std::size_t j) const;

  double sigma_ii(std::size_t i) const;
  void matvec(std::span<const double> x, std::span<double> out) const;
  // Dense Σ, row-major; intended for small d.
  std::vector<double> dense_sigma() const;

  // One draw of X with E[XXᵀ] = Σ. Gaussian: X = Σⱼ √wⱼ ξⱼ vⱼ + √iso ξ with ξ
  // standard normal (general models: X = V diag(√λ) ξ). Scaled-Rademacher uses
  // the same linear map with ξ uniform on {±1}.
  void sample(NormalSource& rng, SampleFamily family, std::span<double> out) const;

  friend CovModel make_single_spike(std::size_t, std::size_t, double,
                                    std::optional<std::vector<double>>);
  friend CovModel make_multi_spike(std::size_t, std::vector<Spike>, double);
  friend CovModel make_counterexample(std::size_t, std::size_t);
  friend CovModel make_general(std::vector<double>, std::vector<double>);

 private:
  CovModel() = default;
  void finish_structured();

  ModelKind kind_ = ModelKind::general;
  std::size_t d_ = 0;
  std::vector<double> eigvals_;
  std::vector<double> v1_;
  std::vector<std::size_t> support_;
  double trace_ = 0.0;
  std::vector<Spike> spikes_;
  double iso_ = 0.0;
  std::vector<double> diag_;
  std::vector<double> dense_vecs_;  // column-major d×d
};

// Σ = ν v₁v₁ᵀ + I_d with v₁ supported on the first s coordinates; entries
// 1/√s unless support_values (a unit vector of length s) is given.
CovModel make_single_spike(std::size_t d, std::size_t s, double nu,
                           std::optional<std::vector<double>> support_values = std::nullopt);

// Σ = Σⱼ weightⱼ vⱼvⱼᵀ + iso·I for orthonormal sparse spikes.
CovModel make_multi_spike(std::size_t d, std::vector<Spike> spikes, double iso = 1.0);

// Four disjoint spikes plus I/2 on which diagonal thresholding picks the wrong
// support: weights 1/2, 1/4, 1/4.2, 1/4.4; v₁ = 1/√s on the first s indices and
// the others √(3/s) on consecutive blocks of s/3 indices after that.
CovModel make_counterexample(std::size_t s, std::size_t d);

// eigvecs is column-major d×d with column j the j-th eigenvector.
CovModel make_general(std::vector<double> eigvals, std::vector<double> eigvecs);

struct AssumptionCheck {
  double n = 0.0;
  double c = 0.0;
  bool trace_condition = false;  // max{1, λ₂/gap}·Tr(Λ₂)/gap ≤ c·n/log n
  bool ratio_condition = false;  // λ₁/gap ≤ c·√(n/log²n)
};

struct ModelStats {
  double eff_rank = 0.0;
  double gap = 0.0;
  double ratio = 0.0;
  double tr_lambda2 = 0.0;
  double min_support_entry = 0.0;
  std::optional<AssumptionCheck> assumption;
};

ModelStats model_stats(const CovModel& m);
ModelStats model_stats(const CovModel& m, double n, double c);

// {i ∈ S : |v₁(i)| ≥ √(ln d / n)}.
std::vector<std::size_t> high_support(const CovModel& m, double n);

}  // namespace spoja
