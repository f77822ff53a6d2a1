#include "spoja/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "spoja/error.hpp"
#include "spoja/metrics.hpp"
#include "spoja/oja.hpp"
#include "spoja/rng.hpp"
#include "spoja/sampling.hpp"
#include "spoja/theory_bounds.hpp"

namespace spoja {

DenseProduct::DenseProduct(std::size_t d, double eta) : d_(d), eta_(eta), m_(d * d, 0.0), row_(d) {
  if (d > kMaxDenseDim) fail(ErrorKind::dim_too_large, "dense products are limited to d <= 64");
  for (std::size_t i = 0; i < d; ++i) m_[i * d + i] = 1.0;
}

void DenseProduct::step(std::span<const double> x) {
  if (x.size() != d_) fail(ErrorKind::invalid_dims, "sample dimension mismatch");
  // M ← M + η x (xᵀM)
  std::fill(row_.begin(), row_.end(), 0.0);
  for (std::size_t i = 0; i < d_; ++i) {
    const double xi = x[i];
    if (!std::isfinite(xi)) fail(ErrorKind::nonfinite_input, "sample contains NaN or infinity");
    for (std::size_t j = 0; j < d_; ++j) row_[j] += xi * m_[i * d_ + j];
  }
  double mx = 0.0;
  for (std::size_t i = 0; i < d_; ++i) {
    const double c = eta_ * x[i];
    for (std::size_t j = 0; j < d_; ++j) {
      double& e = m_[i * d_ + j];
      e += c * row_[j];
      mx = std::max(mx, std::abs(e));
    }
  }
  for (double& e : m_) e /= mx;
  log_scale_ += std::log(mx);
  ++t_;
}

double DenseProduct::log_norm_bbt() const {
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> mat(
      m_.data(), static_cast<Eigen::Index>(d_), static_cast<Eigen::Index>(d_));
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(mat);
  return 2.0 * (log_scale_ + std::log(svd.singularValues()(0)));
}

double DenseProduct::log_quadratic(std::span<const double> v) const {
  double acc = 0.0;
  for (std::size_t j = 0; j < d_; ++j) {
    double c = 0.0;
    for (std::size_t i = 0; i < d_; ++i) c += v[i] * m_[i * d_ + j];
    acc += c * c;
  }
  return 2.0 * log_scale_ + std::log(acc);
}

std::vector<double> DenseProduct::apply(std::span<const double> u) const {
  const double scale = std::exp(log_scale_);
  std::vector<double> out(d_, 0.0);
  for (std::size_t i = 0; i < d_; ++i) {
    double c = 0.0;
    for (std::size_t j = 0; j < d_; ++j) c += m_[i * d_ + j] * u[j];
    out[i] = scale * c;
  }
  return out;
}

namespace {

// Running Σ exp(lᵢ)·Gᵢ held as exp(shift)·acc.
struct LogMatrixSum {
  double shift = -std::numeric_limits<double>::infinity();
  Eigen::MatrixXd acc;

  void add(double log_w, const Eigen::MatrixXd& g) {
    if (acc.size() == 0) acc = Eigen::MatrixXd::Zero(g.rows(), g.cols());
    if (log_w > shift) {
      if (std::isfinite(shift)) acc *= std::exp(shift - log_w);
      shift = log_w;
    }
    acc += std::exp(log_w - shift) * g;
  }
};

}  // namespace

std::vector<GrowthRow> product_growth(const CovModel& m, double eta, std::span<const std::size_t> checkpoints,
                                      std::size_t trials, std::uint64_t seed, double L, double sigma) {
  if (m.dim() > kMaxDenseDim) fail(ErrorKind::dim_too_large, "dense products are limited to d <= 64");
  if (trials == 0 || checkpoints.empty()) fail(ErrorKind::empty_input, "need trials and checkpoints");
  const std::size_t d = m.dim();
  const std::size_t last = checkpoints.back();
  std::vector<std::vector<double>> norms(checkpoints.size()), quads(checkpoints.size());
  std::vector<LogMatrixSum> sums(checkpoints.size());
  for (std::size_t t = 0; t < trials; ++t) {
    SampleStream stream(m, derive_seed(seed, t), last);
    DenseProduct prod(d, eta);
    std::size_t c = 0;
    std::vector<double> x(d);
    for (std::size_t step = 1; step <= last; ++step) {
      stream.next(x);
      prod.step(x);
      while (c < checkpoints.size() && checkpoints[c] == step) {
        norms[c].push_back(prod.log_norm_bbt());
        quads[c].push_back(prod.log_quadratic(m.v1()));
        Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> mat(
            prod.scaled().data(), static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
        sums[c].add(2.0 * prod.log_scale(), mat * mat.transpose());
        ++c;
      }
    }
  }
  BoundEnvelope env;
  bool have_env = true;
  try {
    env = second_moment_envelope(m, eta, L, sigma, InitialMass::identity(m));
  } catch (const Error&) {
    have_env = false;
  }
  std::vector<GrowthRow> rows;
  for (std::size_t c = 0; c < checkpoints.size(); ++c) {
    GrowthRow r;
    r.n = checkpoints[c];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sums[c].acc, Eigen::EigenvaluesOnly);
    r.log_norm_mean = sums[c].shift + std::log(eig.eigenvalues().maxCoeff() / static_cast<double>(trials));
    double sum = 0.0;
    for (double v : norms[c]) sum += v;
    r.log_norm_bbt = sum / static_cast<double>(trials);
    r.log_v1_moment = log_moment(quads[c]).log_mean();
    const double nd = static_cast<double>(r.n);
    r.bound_log = have_env ? env.alpha_bound_log(nd) : std::numeric_limits<double>::quiet_NaN();
    r.naive_bound_log = naive_bound_log(m, eta, L, sigma, nd);
    rows.push_back(r);
  }
  return rows;
}

std::vector<ScoreSnapshot> score_trajectories(const CovModel& m, double eta,
                                              std::span<const std::size_t> checkpoints,
                                              std::size_t trials, std::uint64_t seed) {
  if (trials == 0 || checkpoints.empty()) fail(ErrorKind::empty_input, "need trials and checkpoints");
  const std::size_t d = m.dim();
  std::vector<ScoreSnapshot> snaps(checkpoints.size());
  for (std::size_t c = 0; c < checkpoints.size(); ++c) {
    snaps[c].n = checkpoints[c];
    snaps[c].scores.resize(trials * d);
  }
  const std::size_t last = checkpoints.back();
  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t ts = derive_seed(seed, t);
    SampleStream stream(m, ts, last);
    OjaState st = make_oja_state(gaussian_unit_init(d, ts), EtaSchedule::constant(eta));
    std::vector<double> x(d);
    std::size_t c = 0;
    while (c < checkpoints.size() && checkpoints[c] == 0) {
      for (std::size_t i = 0; i < d; ++i) snaps[c].scores[t * d + i] = std::log(std::abs(st.u[i])) + st.b;
      ++c;
    }
    for (std::size_t step = 1; step <= last; ++step) {
      stream.next(x);
      oja_step(st, x);
      while (c < checkpoints.size() && checkpoints[c] == step) {
        for (std::size_t i = 0; i < d; ++i) snaps[c].scores[t * d + i] = std::log(std::abs(st.u[i])) + st.b;
        ++c;
      }
    }
  }
  return snaps;
}

std::vector<SeparationRow> score_separation(const CovModel& m, const std::vector<ScoreSnapshot>& snaps) {
  const std::size_t d = m.dim();
  std::vector<char> in_s(d, 0);
  for (std::size_t i : m.support()) in_s[i] = 1;
  std::vector<SeparationRow> rows;
  for (const auto& snap : snaps) {
    std::vector<double> in, out;
    for (std::size_t k = 0; k < snap.scores.size(); ++k)
      (in_s[k % d] ? in : out).push_back(snap.scores[k]);
    SeparationRow r;
    r.n = snap.n;
    r.in_median = nearest_rank(in, 0.5);
    r.out_q90 = out.empty() ? -std::numeric_limits<double>::infinity() : nearest_rank(out, 0.9);
    r.separated = r.in_median > r.out_q90;
    rows.push_back(r);
  }
  return rows;
}

}  // namespace spoja
