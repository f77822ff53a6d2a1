#include "spoja/baselines.hpp"

#include <chrono>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "spoja/error.hpp"
#include "spoja/oja.hpp"
#include "spoja/rng.hpp"

namespace spoja {

std::vector<double> empirical_diagonal(SampleSource& source) {
  const std::size_t n = source.remaining();
  if (n == 0) fail(ErrorKind::empty_input, "no samples");
  std::vector<double> diag(source.dim(), 0.0), x(source.dim());
  while (source.remaining() > 0) {
    source.next(x);
    for (std::size_t i = 0; i < x.size(); ++i) diag[i] += x[i] * x[i];
  }
  for (double& v : diag) v /= static_cast<double>(n);
  return diag;
}

SupportEstimate diagonal_thresholding(SampleSource& source, std::size_t s) {
  if (s < 1 || s > source.dim()) fail(ErrorKind::invalid_s, "need 1 <= s <= d");
  SupportEstimate est;
  est.method = SupportMethod::diagonal;
  est.scores = empirical_diagonal(source);
  est.indices = top_k_indices(est.scores, s);
  est.k = s;
  return est;
}

std::vector<double> top_eigvec_symmetric(std::span<const double> a, std::size_t k, PowerOptions opts) {
  if (k == 0 || a.size() != k * k) fail(ErrorKind::invalid_dims, "need a k x k matrix");
  std::vector<double> v(k), w(k);
  NormalSource rng(0x7a3f5c9d1e2b4a68ULL);
  for (double& x : v) x = 1.0 + 0.1 * rng();
  double nrm = norm2(v);
  for (double& x : v) x /= nrm;
  for (std::size_t it = 0; it < opts.max_iter; ++it) {
    for (std::size_t i = 0; i < k; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < k; ++j) acc += a[i * k + j] * v[j];
      w[i] = acc;
    }
    const double rq = dot(v, w);
    double res2 = 0.0;
    for (std::size_t i = 0; i < k; ++i) res2 += (w[i] - rq * v[i]) * (w[i] - rq * v[i]);
    if (std::sqrt(res2) <= opts.tol * std::max(1.0, std::abs(rq))) return v;
    nrm = norm2(w);
    if (nrm == 0.0) return v;
    for (std::size_t i = 0; i < k; ++i) v[i] = w[i] / nrm;
  }
  fail(ErrorKind::no_convergence, "power iteration did not reach the residual tolerance");
}

std::vector<double> offline_top_eigvec(std::span<const double> samples, std::size_t n, std::size_t d,
                                       PowerOptions opts) {
  if (d > 512) fail(ErrorKind::dim_too_large, "offline eigensolver is limited to d <= 512");
  if (n == 0) fail(ErrorKind::empty_input, "no samples");
  if (samples.size() != n * d) fail(ErrorKind::invalid_dims, "sample matrix must be n x d");
  std::vector<double> cov(d * d, 0.0);
  for (std::size_t t = 0; t < n; ++t) {
    const double* x = samples.data() + t * d;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i; j < d; ++j) cov[i * d + j] += x[i] * x[j];
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      cov[i * d + j] /= static_cast<double>(n);
      cov[j * d + i] = cov[i * d + j];
    }
  return top_eigvec_symmetric(cov, d, opts);
}

SparsePcaResult pipeline_diag_thresh(SampleStream& data, std::size_t k) {
  if (data.remaining() < 2) fail(ErrorKind::insufficient_data, "need at least 2 samples");
  if (k < 1 || k > data.dim()) fail(ErrorKind::invalid_k, "need 1 <= k <= d");
  const auto start = std::chrono::steady_clock::now();
  SparsePcaResult res;
  res.pipeline = Pipeline::diag_thresh;
  res.n_used = data.remaining();
  res.seed = data.seed();

  SampleStream first = data.take(support_half(data.remaining()));
  res.support = diagonal_thresholding(first, k);

  SampleStream second = data.take(data.remaining());
  const std::size_t m = second.remaining();
  RestrictedSource restricted(second, res.support.indices);
  std::vector<double> cov(k * k, 0.0), x(k);
  while (restricted.remaining() > 0) {
    restricted.next(x);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) cov[i * k + j] += x[i] * x[j];
  }
  for (double& c : cov) c /= static_cast<double>(m);
  Eigen::Map<const Eigen::MatrixXd> cmat(cov.data(), static_cast<Eigen::Index>(k),
                                         static_cast<Eigen::Index>(k));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cmat);
  const Eigen::VectorXd w = solver.eigenvectors().col(static_cast<Eigen::Index>(k) - 1);
  res.v_hat.assign(data.dim(), 0.0);
  for (std::size_t a = 0; a < k; ++a) res.v_hat[res.support.indices[a]] = w(static_cast<Eigen::Index>(a));
  res.sin2 = sin2(res.v_hat, data.model().v1());
  res.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return res;
}

}  // namespace spoja
