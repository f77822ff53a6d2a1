#include "spoja/sparse_pca.hpp"

#include <chrono>
#include <cmath>

#include "spoja/error.hpp"
#include "spoja/rng.hpp"

namespace spoja {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Consumes the support half of the stream and returns its top-k estimate.
SupportEstimate support_pass(SampleStream& data, std::size_t k, double eta, std::uint64_t init_seed) {
  SampleStream first = data.take(support_half(data.remaining()));
  const auto y0 = gaussian_unit_init(data.dim(), init_seed);
  OjaState st = run_oja(first, y0, eta);
  return top_k_support(st, k);
}

void check_args(const SampleStream& data, std::size_t k) {
  if (data.remaining() < 2) fail(ErrorKind::insufficient_data, "need at least 2 samples");
  if (k < 1 || k > data.dim()) fail(ErrorKind::invalid_k, "need 1 <= k <= d");
}

}  // namespace

std::string_view to_string(Pipeline p) {
  switch (p) {
    case Pipeline::trunc_vec: return "trunc_vec";
    case Pipeline::trunc_data: return "trunc_data";
    case Pipeline::plain_oja: return "plain_oja";
    case Pipeline::diag_thresh: return "diag_thresh";
  }
  return "trunc_vec";
}

PipelineSeeds PipelineSeeds::from_trial(std::uint64_t trial_seed) {
  return {derive_seed(trial_seed, 1), derive_seed(trial_seed, 2)};
}

std::vector<double> truncate_renormalize(std::span<const double> v, std::span<const std::size_t> S) {
  std::vector<double> out(v.size(), 0.0);
  double nrm2 = 0.0;
  for (std::size_t i : S) {
    if (i >= v.size()) fail(ErrorKind::invalid_dims, "support index out of range");
    out[i] = v[i];
    nrm2 += v[i] * v[i];
  }
  if (nrm2 == 0.0) fail(ErrorKind::zero_after_truncation, "vector vanishes on the support");
  const double nrm = std::sqrt(nrm2);
  for (double& x : out) x /= nrm;
  return out;
}

double sin2(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) fail(ErrorKind::invalid_dims, "length mismatch");
  if (std::abs(norm2(u) - 1.0) > 1e-9 || std::abs(norm2(v) - 1.0) > 1e-9)
    fail(ErrorKind::not_unit, "sin2 needs unit vectors");
  const double c = dot(u, v);
  return std::clamp(1.0 - c * c, 0.0, 1.0);
}

std::size_t support_half(std::size_t n) { return (n + 1) / 2; }

SparsePcaResult pipeline_trunc_vec(SampleStream& data, std::size_t k, double eta, PipelineSeeds seeds) {
  check_args(data, k);
  const auto start = Clock::now();
  SparsePcaResult res;
  res.pipeline = Pipeline::trunc_vec;
  res.n_used = data.remaining();
  res.seed = data.seed();
  res.eta = eta;
  res.support = support_pass(data, k, eta, seeds.support_init);

  SampleStream second = data.take(data.remaining());
  const auto w0 = gaussian_unit_init(data.dim(), seeds.estimate_init);
  OjaState st = run_oja(second, w0, eta);
  res.v_hat = truncate_renormalize(st.u, res.support.indices);
  res.sin2 = sin2(res.v_hat, data.model().v1());
  res.wall_time_ms = elapsed_ms(start);
  return res;
}

SparsePcaResult pipeline_trunc_data(SampleStream& data, std::size_t k, double eta,
                                    OptimalSchedule schedule, PipelineSeeds seeds) {
  check_args(data, k);
  const auto start = Clock::now();
  SparsePcaResult res;
  res.pipeline = Pipeline::trunc_data;
  res.n_used = data.remaining();
  res.seed = data.seed();
  res.eta = eta;
  res.support = support_pass(data, k, eta, seeds.support_init);

  SampleStream second = data.take(data.remaining());
  RestrictedSource restricted(second, res.support.indices);
  const auto w0 = gaussian_unit_init(k, seeds.estimate_init);
  OjaState st = optimal_oja(restricted, w0, schedule, data.model().gap());
  res.v_hat.assign(data.dim(), 0.0);
  for (std::size_t a = 0; a < k; ++a) res.v_hat[res.support.indices[a]] = st.u[a];
  res.sin2 = sin2(res.v_hat, data.model().v1());
  res.wall_time_ms = elapsed_ms(start);
  return res;
}

SparsePcaResult pipeline_plain_oja(SampleStream& data, std::size_t k, double eta, PipelineSeeds seeds) {
  check_args(data, k);
  const auto start = Clock::now();
  SparsePcaResult res;
  res.pipeline = Pipeline::plain_oja;
  res.n_used = data.remaining();
  res.seed = data.seed();
  res.eta = eta;
  SampleStream all = data.take(data.remaining());
  const auto y0 = gaussian_unit_init(data.dim(), seeds.support_init);
  OjaState st = run_oja(all, y0, eta);
  res.support = top_k_support(st, k);
  res.v_hat = st.u;
  res.sin2 = sin2(res.v_hat, data.model().v1());
  res.wall_time_ms = elapsed_ms(start);
  return res;
}

}  // namespace spoja
