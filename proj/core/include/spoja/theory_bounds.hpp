#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "spoja/cov_models.hpp"

namespace spoja {

struct Mat2 {
  double a11 = 0.0, a12 = 0.0, a21 = 0.0, a22 = 0.0;

  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  double trace() const noexcept { return a11 + a22; }
  double det() const noexcept { return a11 * a22 - a12 * a21; }
};

Mat2 operator*(const Mat2& x, const Mat2& y);

// Pⁿ by n − 1 successive products.
Mat2 repeated_power(const Mat2& p, std::uint64_t n);

// Pⁿ = aₙP − bₙI with aₙ = (λ₁ⁿ − λ₂ⁿ)/(λ₁ − λ₂) and bₙ = λ₁λ₂aₙ₋₁, where
// λ₁,₂ = T/2 ± √(T²/4 − D). Scalar matrices are handled exactly; otherwise
// throws near-degenerate-eigenvalues when T²/4 − D ≤ 1e-14·T².
Mat2 two_by_two_power(const Mat2& p, std::uint64_t n);

// Eigenvalues of a 2×2 matrix with real spectrum, larger first.
void eigenvalues(const Mat2& p, double& l1, double& l2);

// αₙ ≤ (1 + c₁ηλ₁ + c₂η²λ₁²)αₙ₋₁ + c₃η²λ₁λ₂βₙ₋₁
// βₙ ≤ c₅η²λ₁Tr(Σ)αₙ₋₁ + (1 + c₁ηλ₂ + c₄η²λ₂Tr(Σ))βₙ₋₁
struct RecursionSystem {
  double c1 = 0.0, c2 = 0.0, c3 = 0.0, c4 = 0.0, c5 = 0.0;
  double eta = 0.0, lambda1 = 0.0, lambda2 = 0.0, trace_sigma = 0.0;
  double theta = 0.0;

  // Fills theta from c₁(1−θ)gap + c₂ηλ₁² = c₄ηλ₂Tr(Σ); throws no-valid-theta
  // when the root is outside (1/2, 1).
  void solve_theta();
  Mat2 matrix() const;
};

// Initial masses α₀ = v₁ᵀUUᵀv₁ and β₀ = Tr(V⊥ᵀUUᵀV⊥).
struct InitialMass {
  double alpha0 = 0.0;
  double beta0 = 0.0;

  static InitialMass basis(const CovModel& m, std::size_t i);  // U = eᵢ
  static InitialMass support(const CovModel& m);              // U = I_S
  static InitialMass identity(const CovModel& m);             // U = I_d
  static InitialMass custom(double alpha0, double beta0) { return {alpha0, beta0}; }
};

enum class EnvelopeKind { second_moment, fourth_moment, recursion };

// Closed-form moment bounds, all evaluated in natural-log scale.
struct BoundEnvelope {
  EnvelopeKind kind = EnvelopeKind::second_moment;
  double theta = 0.0;
  double gamma1 = 0.0;  // per-step growth of the v₁ part (μ₁ for fourth moments)
  double gamma2 = 0.0;  // per-step growth of the V⊥ part (μ₂ for fourth moments)
  double alpha0 = 0.0, beta0 = 0.0;
  double alpha_bracket = 0.0;  // multiplies gamma1ⁿ in the α bound
  double beta_cross = 0.0;     // multiplies gamma1ⁿ in the β bound

  // log of the bound on E[v₁ᵀBₙUUᵀBₙᵀv₁] (squared quantity for fourth moments).
  double alpha_bound_log(double n) const;
  // log of the bound on E[Tr(V⊥ᵀBₙUUᵀBₙᵀV⊥)] (squared quantity for fourth moments).
  double beta_bound_log(double n) const;
};

// γ₁ = 1 + 2ηλ₁ + 8L⁴σ⁴η²λ₁², γ₂ = 1 + 2ηλ₂ + 4L⁴σ⁴η²(λ₁² + λ₂Tr(Σ)), θ from
// (1−θ)gap + 2L⁴σ⁴ηλ₁² = 2L⁴σ⁴ηλ₂Tr(Σ), and
//   α ≤ γ₁ⁿ[α₀ + ηλ₁(2λ₁/(θ gap))(β₀ + α₀(1−θ)/θ)]
//   β ≤ β₀γ₂ⁿ + ηλ₁(2λ₁/(θ gap))(α₀Tr(Σ)/λ₁ + β₀(1−θ)/θ)γ₁ⁿ
BoundEnvelope second_moment_envelope(const CovModel& m, double eta, double L, double sigma,
                                     InitialMass init);

// Same brackets with μ₁ = 1 + 2ηλ₁ + 50L⁴σ⁴η²λ₁²/θ and
// μ₂ = 1 + 2ηλ₂ + 50L⁴σ⁴η²(λ₂Tr(Σ) + λ₁²(1−θ)/θ), θ from
// 2(1−θ)gap + 50L⁴σ⁴ηλ₁² = 50L⁴σ⁴ηλ₂Tr(Σ); the α bound is μ₁²ⁿ[bracket]² and
// the β bound (β₀μ₂ⁿ + cross·μ₁ⁿ)².
BoundEnvelope fourth_moment_envelope(const CovModel& m, double eta, double L, double sigma,
                                     InitialMass init);

// Envelope from an arbitrary coefficient set using the exact eigenvalues of
// its 2×2 recursion matrix.
BoundEnvelope recursion_envelope(const RecursionSystem& sys, InitialMass init);

// log of exp(2nηλ₁ + nη²𝒱), 𝒱 = 2L⁴σ⁴λ₁Tr(Σ) + λ₁².
double naive_bound_log(const CovModel& m, double eta, double L, double sigma, double n);

struct TailBounds {
  std::vector<double> p_in_support;  // per index of S, in support order
  double p_out_support = 0.0;
  double tau_log = 0.0;
};

// p_in(i) = C_H[ηλ₁ ln n + ηλ₁(λ₁/gap)/v₁(i)²]
// p_out   = C_T η²λ₁²(λ₁/gap)²(1/(δ² min_{S_hi} v₁²))²
// log τₙ  = log(δ/√(2e)) + log min_S|v₁| + n log(1 + ηλ₁)
TailBounds tail_bounds(const CovModel& m, double eta, double n, double delta, double c_h = 1.0,
                       double c_t = 1.0);

// P((v₁ᵀz)² ≥ β) ≥ 1 − √(eβ) for z ~ N(0, I).
double anti_concentration_floor(double beta);

}  // namespace spoja
