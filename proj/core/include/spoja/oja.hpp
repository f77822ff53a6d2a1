#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "spoja/cov_models.hpp"
#include "spoja/sampling.hpp"

namespace spoja {

// Step size for step number t = 1, 2, ...: either a constant η or the
// inverse-time form c0 / (gap·(t + t0)).
struct EtaSchedule {
  enum class Kind { constant, inverse_time };

  Kind kind = Kind::constant;
  double eta = 0.0;
  double c0 = 0.0;
  double t0 = 0.0;
  double gap = 0.0;

  static EtaSchedule constant(double eta);
  static EtaSchedule inverse_time(double c0, double t0, double gap);

  double at(std::size_t step) const noexcept {
    return kind == Kind::constant ? eta : c0 / (gap * (static_cast<double>(step) + t0));
  }
};

struct OptimalSchedule {
  double c0 = 5.0;
  double t0 = 20.0;
};

// Streaming state: the direction u (unit), the log-magnitude b of the
// unnormalized iterate, and the step count, so exp(b)·u = Bₜu₀. Nothing in
// here grows with t.
struct OjaState {
  std::vector<double> u;
  double b = 0.0;
  std::size_t t = 0;
  EtaSchedule schedule;
};

// u = u0/‖u0‖, b = log‖u0‖, t = 0.
OjaState make_oja_state(std::span<const double> u0, EtaSchedule schedule);

// y = u + η(xᵀu)x; u ← y/‖y‖; b += log‖y‖; t += 1. Leaves the state untouched
// and throws nonfinite-input if x has a NaN or infinity.
void oja_step(OjaState& state, std::span<const double> x);

// Folds oja_step over every remaining sample of the source.
void run_oja(OjaState& state, SampleSource& source);
OjaState run_oja(SampleSource& source, std::span<const double> u0, double eta);

OjaState optimal_oja(SampleSource& source, std::span<const double> u0, OptimalSchedule schedule,
                     double gap);

// 3 ln(n) / (n·gap).
double default_learning_rate(double n, double gap);

struct RateReport {
  double eta = 0.0;
  double big_c = 0.0;
  double claim_lhs[4] = {};
  double claim_rhs[4] = {};
  bool claims[4] = {};
  bool theta_found = false;
  double theta = 0.0;
  bool all_hold() const noexcept { return claims[0] && claims[1] && claims[2] && claims[3]; }
};

// Evaluates the four learning-rate claims at η = κ ln(n)/(n·gap) with
// C = 100(L⁴σ⁴ + L²σ²) + 16:
//   (1) η ≤ gap / (C λ₂ Tr(Λ₂))
//   (2) Cη ≤ ¼ min{1/λ₁, 1/Tr(Λ₂), 1/√(λ₁Tr(Λ₂))}
//   (3) Cη²nλ₁² ≤ ¼
//   (4) exp(−r n η gap) ≤ ηλ₁
// and solves (1−θ)gap + 50L⁴σ⁴ηλ₁² = 50L⁴σ⁴ ln(n) ηλ₂Tr(Σ) for θ, which is
// reported only when it lands in (1/2, 1).
RateReport check_rate_conditions(const CovModel& m, double n, double kappa = 3.0, double L = 1.0,
                                 double sigma = 1.0, double r = 0.5);

// xᵀy; compensated (Neumaier) summation once the length reaches 10⁵.
double dot(std::span<const double> x, std::span<const double> y);
double norm2(std::span<const double> x);

}  // namespace spoja
