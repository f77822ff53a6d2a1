#include "spoja/oja.hpp"

#include <algorithm>
#include <cmath>

#include "spoja/error.hpp"

namespace spoja {

namespace {

constexpr std::size_t kCompensateFrom = 100000;

double neumaier_dot(std::span<const double> x, std::span<const double> y) {
  double sum = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double term = x[i] * y[i];
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term))
      comp += (sum - t) + term;
    else
      comp += (term - t) + sum;
    sum = t;
  }
  return sum + comp;
}

}  // namespace

double dot(std::span<const double> x, std::span<const double> y) {
  if (x.size() >= kCompensateFrom) return neumaier_dot(x, y);
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
  return acc;
}

double norm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

EtaSchedule EtaSchedule::constant(double eta) {
  if (!(eta >= 0.0) || !std::isfinite(eta)) fail(ErrorKind::invalid_schedule, "eta must be finite and >= 0");
  EtaSchedule s;
  s.kind = Kind::constant;
  s.eta = eta;
  return s;
}

EtaSchedule EtaSchedule::inverse_time(double c0, double t0, double gap) {
  if (!(c0 > 0.0) || !(t0 > 0.0) || !std::isfinite(c0) || !std::isfinite(t0))
    fail(ErrorKind::invalid_schedule, "c0 and t0 must be positive");
  if (!(gap > 0.0)) fail(ErrorKind::invalid_gap, "gap must be positive");
  EtaSchedule s;
  s.kind = Kind::inverse_time;
  s.c0 = c0;
  s.t0 = t0;
  s.gap = gap;
  return s;
}

OjaState make_oja_state(std::span<const double> u0, EtaSchedule schedule) {
  if (u0.empty()) fail(ErrorKind::invalid_dims, "empty initial vector");
  const double nrm = norm2(u0);
  if (!std::isfinite(nrm)) fail(ErrorKind::nonfinite_input, "initial vector is not finite");
  if (nrm == 0.0) fail(ErrorKind::zero_after_truncation, "initial vector is zero");
  OjaState st;
  st.u.assign(u0.begin(), u0.end());
  for (double& v : st.u) v /= nrm;
  st.b = std::log(nrm);
  st.schedule = schedule;
  return st;
}

void oja_step(OjaState& state, std::span<const double> x) {
  auto& u = state.u;
  if (x.size() != u.size()) fail(ErrorKind::invalid_dims, "sample dimension mismatch");
  const double proj = dot(x, u);
  if (!std::isfinite(proj)) fail(ErrorKind::nonfinite_input, "sample contains NaN or infinity");
  const double c = state.schedule.at(state.t + 1) * proj;
  for (std::size_t i = 0; i < u.size(); ++i) u[i] += c * x[i];
  const double nrm = norm2(u);
  for (double& v : u) v /= nrm;
  state.b += std::log(nrm);
  ++state.t;
}

void run_oja(OjaState& state, SampleSource& source) {
  if (source.dim() != state.u.size()) fail(ErrorKind::invalid_dims, "source dimension mismatch");
  std::vector<double> x(source.dim());
  while (source.remaining() > 0) {
    source.next(x);
    oja_step(state, x);
  }
}

OjaState run_oja(SampleSource& source, std::span<const double> u0, double eta) {
  OjaState st = make_oja_state(u0, EtaSchedule::constant(eta));
  run_oja(st, source);
  return st;
}

OjaState optimal_oja(SampleSource& source, std::span<const double> u0, OptimalSchedule schedule,
                     double gap) {
  OjaState st = make_oja_state(u0, EtaSchedule::inverse_time(schedule.c0, schedule.t0, gap));
  run_oja(st, source);
  return st;
}

double default_learning_rate(double n, double gap) {
  if (!(gap > 0.0) || !std::isfinite(gap)) fail(ErrorKind::invalid_gap, "gap must be positive");
  if (!(n >= 2.0)) fail(ErrorKind::invalid_dims, "need n >= 2");
  return 3.0 * std::log(n) / (n * gap);
}

RateReport check_rate_conditions(const CovModel& m, double n, double kappa, double L, double sigma,
                                 double r) {
  RateReport rep;
  const double gap = m.gap();
  const double l1 = m.lambda1(), l2 = m.lambda2();
  const double tr = m.trace();
  const double tr2 = tr - l1;
  const double ls2 = L * L * sigma * sigma;
  const double ls4 = ls2 * ls2;
  const double eta = kappa * std::log(n) / (n * gap);
  const double big_c = 100.0 * (ls4 + ls2) + 16.0;
  rep.eta = eta;
  rep.big_c = big_c;

  rep.claim_lhs[0] = eta;
  rep.claim_rhs[0] = gap / (big_c * l2 * tr2);
  rep.claim_lhs[1] = big_c * eta;
  rep.claim_rhs[1] = 0.25 * std::min({1.0 / l1, 1.0 / tr2, 1.0 / std::sqrt(l1 * tr2)});
  rep.claim_lhs[2] = big_c * eta * eta * n * l1 * l1;
  rep.claim_rhs[2] = 0.25;
  rep.claim_lhs[3] = std::exp(-r * n * eta * gap);
  rep.claim_rhs[3] = eta * l1;
  for (int j = 0; j < 4; ++j) rep.claims[j] = rep.claim_lhs[j] <= rep.claim_rhs[j];

  const double theta = 1.0 - 50.0 * ls4 * eta * (std::log(n) * l2 * tr - l1 * l1) / gap;
  rep.theta = theta;
  rep.theta_found = theta > 0.5 && theta < 1.0;
  return rep;
}

}  // namespace spoja
