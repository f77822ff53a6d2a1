#include "spoja/theory_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spoja/error.hpp"

namespace spoja {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_or_neg_inf(double x) { return x > 0.0 ? std::log(x) : kNegInf; }

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b), lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

double solve_theta(double c1, double c2, double c4, double eta, double l1, double l2, double tr) {
  const double gap = l1 - l2;
  const double theta = 1.0 - (c4 * eta * l2 * tr - c2 * eta * l1 * l1) / (c1 * gap);
  if (!(theta > 0.5 && theta < 1.0))
    fail(ErrorKind::no_valid_theta, "theta = " + std::to_string(theta) + " is outside (0.5, 1)");
  return theta;
}

}  // namespace

Mat2 operator*(const Mat2& x, const Mat2& y) {
  return {x.a11 * y.a11 + x.a12 * y.a21, x.a11 * y.a12 + x.a12 * y.a22,
          x.a21 * y.a11 + x.a22 * y.a21, x.a21 * y.a12 + x.a22 * y.a22};
}

Mat2 repeated_power(const Mat2& p, std::uint64_t n) {
  Mat2 acc = Mat2::identity();
  for (std::uint64_t i = 0; i < n; ++i) acc = acc * p;
  return acc;
}

void eigenvalues(const Mat2& p, double& l1, double& l2) {
  const double half_t = 0.5 * p.trace();
  const double disc = half_t * half_t - p.det();
  if (disc < 0.0) fail(ErrorKind::near_degenerate_eigenvalues, "complex eigenvalues");
  const double root = std::sqrt(disc);
  // Larger-magnitude root first, the other from the determinant to avoid cancellation.
  const double big = half_t >= 0.0 ? half_t + root : half_t - root;
  const double other = big != 0.0 ? p.det() / big : half_t - root;
  l1 = std::max(big, other);
  l2 = std::min(big, other);
}

Mat2 two_by_two_power(const Mat2& p, std::uint64_t n) {
  if (n == 0) return Mat2::identity();
  if (p.a12 == 0.0 && p.a21 == 0.0 && p.a11 == p.a22) {
    const double c = std::pow(p.a11, static_cast<double>(n));
    return {c, 0.0, 0.0, c};
  }
  const double t = p.trace();
  const double disc = 0.25 * t * t - p.det();
  if (disc <= 1e-14 * t * t)
    fail(ErrorKind::near_degenerate_eigenvalues, "discriminant too small for the closed form");
  double l1, l2;
  eigenvalues(p, l1, l2);
  const double nd = static_cast<double>(n);
  const double an = (std::pow(l1, nd) - std::pow(l2, nd)) / (l1 - l2);
  const double an1 = (std::pow(l1, nd - 1.0) - std::pow(l2, nd - 1.0)) / (l1 - l2);
  const double bn = l1 * l2 * an1;
  return {an * p.a11 - bn, an * p.a12, an * p.a21, an * p.a22 - bn};
}

void RecursionSystem::solve_theta() {
  theta = spoja::solve_theta(c1, c2, c4, eta, lambda1, lambda2, trace_sigma);
}

Mat2 RecursionSystem::matrix() const {
  const double e2 = eta * eta;
  return {1.0 + c1 * eta * lambda1 + c2 * e2 * lambda1 * lambda1, c3 * e2 * lambda1 * lambda2,
          c5 * e2 * lambda1 * trace_sigma, 1.0 + c1 * eta * lambda2 + c4 * e2 * lambda2 * trace_sigma};
}

InitialMass InitialMass::basis(const CovModel& m, std::size_t i) {
  if (i >= m.dim()) fail(ErrorKind::invalid_dims, "basis index out of range");
  const double a = m.v1()[i] * m.v1()[i];
  return {a, 1.0 - a};
}

InitialMass InitialMass::support(const CovModel& m) {
  double a = 0.0;
  for (std::size_t i : m.support()) a += m.v1()[i] * m.v1()[i];
  return {a, static_cast<double>(m.s()) - a};
}

InitialMass InitialMass::identity(const CovModel& m) {
  return {1.0, static_cast<double>(m.dim()) - 1.0};
}

double BoundEnvelope::alpha_bound_log(double n) const {
  const double base = log_or_neg_inf(alpha_bracket) + n * std::log(gamma1);
  return kind == EnvelopeKind::fourth_moment ? 2.0 * base : base;
}

double BoundEnvelope::beta_bound_log(double n) const {
  const double own = log_or_neg_inf(beta0) + n * std::log(gamma2);
  const double cross = log_or_neg_inf(beta_cross) + n * std::log(gamma1);
  const double base = log_add(own, cross);
  return kind == EnvelopeKind::fourth_moment ? 2.0 * base : base;
}

namespace {

BoundEnvelope brackets(const CovModel& m, double eta, double theta, InitialMass init) {
  BoundEnvelope env;
  const double l1 = m.lambda1(), gap = m.gap();
  const double r = (1.0 - theta) / theta;
  const double lead = eta * l1 * (2.0 * l1 / (theta * gap));
  env.theta = theta;
  env.alpha0 = init.alpha0;
  env.beta0 = init.beta0;
  env.alpha_bracket = init.alpha0 + lead * (init.beta0 + init.alpha0 * r);
  env.beta_cross = lead * (init.alpha0 * m.trace() / l1 + init.beta0 * r);
  return env;
}

}  // namespace

BoundEnvelope second_moment_envelope(const CovModel& m, double eta, double L, double sigma,
                                     InitialMass init) {
  const double k4 = std::pow(L * sigma, 4);
  const double l1 = m.lambda1(), l2 = m.lambda2(), tr = m.trace();
  const double theta = solve_theta(2.0, 4.0 * k4, 4.0 * k4, eta, l1, l2, tr);
  BoundEnvelope env = brackets(m, eta, theta, init);
  env.kind = EnvelopeKind::second_moment;
  env.gamma1 = 1.0 + 2.0 * eta * l1 + 8.0 * k4 * eta * eta * l1 * l1;
  env.gamma2 = 1.0 + 2.0 * eta * l2 + 4.0 * k4 * eta * eta * (l1 * l1 + l2 * tr);
  return env;
}

BoundEnvelope fourth_moment_envelope(const CovModel& m, double eta, double L, double sigma,
                                     InitialMass init) {
  const double k4 = std::pow(L * sigma, 4);
  const double l1 = m.lambda1(), l2 = m.lambda2(), tr = m.trace();
  const double theta = solve_theta(2.0, 50.0 * k4, 50.0 * k4, eta, l1, l2, tr);
  BoundEnvelope env = brackets(m, eta, theta, init);
  env.kind = EnvelopeKind::fourth_moment;
  const double e2 = eta * eta;
  env.gamma1 = 1.0 + 2.0 * eta * l1 + 50.0 * k4 * e2 * l1 * l1 / theta;
  env.gamma2 = 1.0 + 2.0 * eta * l2 + 50.0 * k4 * e2 * (l2 * tr + l1 * l1 * (1.0 - theta) / theta);
  return env;
}

BoundEnvelope recursion_envelope(const RecursionSystem& sys, InitialMass init) {
  RecursionSystem s = sys;
  s.solve_theta();
  double p1, p2;
  eigenvalues(s.matrix(), p1, p2);
  const double gap = s.lambda1 - s.lambda2;
  const double r = (1.0 - s.theta) / s.theta;
  BoundEnvelope env;
  env.kind = EnvelopeKind::recursion;
  env.theta = s.theta;
  env.gamma1 = p1;
  env.gamma2 = p2;
  env.alpha0 = init.alpha0;
  env.beta0 = init.beta0;
  const double base = s.eta * s.lambda1 * 2.0 * s.lambda1 / (s.c1 * s.theta * gap);
  env.alpha_bracket = init.alpha0 + base * s.c3 * (init.beta0 + init.alpha0 * (s.c5 / s.c4) * r);
  env.beta_cross =
      base * s.c5 * (init.alpha0 * s.trace_sigma / s.lambda1 + init.beta0 * (s.c3 / s.c4) * r);
  return env;
}

double naive_bound_log(const CovModel& m, double eta, double L, double sigma, double n) {
  const double k4 = std::pow(L * sigma, 4);
  const double l1 = m.lambda1();
  const double v = 2.0 * k4 * l1 * m.trace() + l1 * l1;
  return 2.0 * n * eta * l1 + n * eta * eta * v;
}

TailBounds tail_bounds(const CovModel& m, double eta, double n, double delta, double c_h, double c_t) {
  const double l1 = m.lambda1(), gap = m.gap();
  if (m.support().empty()) fail(ErrorKind::invalid_min_entry, "empty support");
  TailBounds tb;
  double min_s = std::numeric_limits<double>::infinity();
  for (std::size_t i : m.support()) {
    const double v2 = m.v1()[i] * m.v1()[i];
    if (!(v2 > 0.0)) fail(ErrorKind::invalid_min_entry, "zero support entry");
    min_s = std::min(min_s, std::sqrt(v2));
    tb.p_in_support.push_back(c_h * (eta * l1 * std::log(n) + eta * l1 * (l1 / gap) / v2));
  }
  auto hi = high_support(m, n);
  double min_hi2 = std::numeric_limits<double>::infinity();
  for (std::size_t i : hi) min_hi2 = std::min(min_hi2, m.v1()[i] * m.v1()[i]);
  if (hi.empty()) min_hi2 = min_s * min_s;
  const double inner = 1.0 / (delta * delta * min_hi2);
  tb.p_out_support = c_t * eta * eta * l1 * l1 * (l1 / gap) * (l1 / gap) * inner * inner;
  tb.tau_log = std::log(delta) - 0.5 * std::log(2.0 * std::exp(1.0)) + std::log(min_s) +
               n * std::log1p(eta * l1);
  return tb;
}

double anti_concentration_floor(double beta) {
  return std::max(0.0, 1.0 - std::sqrt(std::exp(1.0) * beta));
}

}  // namespace spoja
