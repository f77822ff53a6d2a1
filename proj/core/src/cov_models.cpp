#include "spoja/cov_models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "spoja/error.hpp"
#include "spoja/rng.hpp"

namespace spoja {

namespace {

constexpr double kOrthoTol = 1e-10;
constexpr double kUnitTol = 1e-12;
constexpr double kSupportTol = 1e-12;

double draw(NormalSource& rng, SampleFamily family) {
  return family == SampleFamily::gaussian ? rng() : rng.sign();
}

}  // namespace

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::single_spike: return "single_spike";
    case ModelKind::multi_spike: return "multi_spike";
    case ModelKind::counterexample: return "counterexample";
    case ModelKind::general: return "general";
  }
  return "general";
}

std::string_view to_string(SampleFamily family) {
  return family == SampleFamily::gaussian ? "gaussian" : "scaled-rademacher";
}

void CovModel::finish_structured() {
  std::stable_sort(spikes_.begin(), spikes_.end(),
                   [](const Spike& a, const Spike& b) { return a.weight > b.weight; });
  eigvals_.assign(d_, iso_);
  for (std::size_t j = 0; j < spikes_.size(); ++j) eigvals_[j] = spikes_[j].weight + iso_;
  if (!(lambda1() > lambda2())) fail(ErrorKind::not_descending, "top eigenvalue is not simple");

  diag_.assign(d_, iso_);
  for (const auto& sp : spikes_)
    for (std::size_t a = 0; a < sp.indices.size(); ++a)
      diag_[sp.indices[a]] += sp.weight * sp.values[a] * sp.values[a];
  trace_ = std::accumulate(diag_.begin(), diag_.end(), 0.0);

  v1_.assign(d_, 0.0);
  const Spike& top = spikes_.front();
  for (std::size_t a = 0; a < top.indices.size(); ++a) v1_[top.indices[a]] = top.values[a];
  support_.clear();
  for (std::size_t i = 0; i < d_; ++i)
    if (std::abs(v1_[i]) > kSupportTol) support_.push_back(i);
}

std::vector<double> CovModel::eigvec(std::size_t j) const {
  if (j >= d_) fail(ErrorKind::invalid_dims, "eigenvector index out of range");
  std::vector<double> v(d_, 0.0);
  if (!structured()) {
    std::copy_n(dense_vecs_.begin() + static_cast<std::ptrdiff_t>(j * d_), d_, v.begin());
    return v;
  }
  if (j >= spikes_.size())
    fail(ErrorKind::invalid_dims, "structured model exposes spike directions only");
  const Spike& sp = spikes_[j];
  for (std::size_t a = 0; a < sp.indices.size(); ++a) v[sp.indices[a]] = sp.values[a];
  return v;
}

double CovModel::sigma_ii(std::size_t i) const {
  if (structured()) return diag_[i];
  double acc = 0.0;
  for (std::size_t j = 0; j < d_; ++j) {
    const double vij = dense_vecs_[j * d_ + i];
    acc += eigvals_[j] * vij * vij;
  }
  return acc;
}

void CovModel::matvec(std::span<const double> x, std::span<double> out) const {
  if (x.size() != d_ || out.size() != d_) fail(ErrorKind::invalid_dims, "matvec size mismatch");
  if (structured()) {
    for (std::size_t i = 0; i < d_; ++i) out[i] = iso_ * x[i];
    for (const auto& sp : spikes_) {
      double dot = 0.0;
      for (std::size_t a = 0; a < sp.indices.size(); ++a) dot += sp.values[a] * x[sp.indices[a]];
      for (std::size_t a = 0; a < sp.indices.size(); ++a)
        out[sp.indices[a]] += sp.weight * dot * sp.values[a];
    }
    return;
  }
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t j = 0; j < d_; ++j) {
    const double* col = dense_vecs_.data() + j * d_;
    double dot = 0.0;
    for (std::size_t i = 0; i < d_; ++i) dot += col[i] * x[i];
    dot *= eigvals_[j];
    for (std::size_t i = 0; i < d_; ++i) out[i] += dot * col[i];
  }
}

std::vector<double> CovModel::dense_sigma() const {
  std::vector<double> sigma(d_ * d_, 0.0);
  std::vector<double> e(d_, 0.0), col(d_);
  for (std::size_t j = 0; j < d_; ++j) {
    e[j] = 1.0;
    matvec(e, col);
    e[j] = 0.0;
    for (std::size_t i = 0; i < d_; ++i) sigma[i * d_ + j] = col[i];
  }
  return sigma;
}

void CovModel::sample(NormalSource& rng, SampleFamily family, std::span<double> out) const {
  if (out.size() != d_) fail(ErrorKind::invalid_dims, "sample buffer size mismatch");
  if (structured()) {
    const double root_iso = std::sqrt(iso_);
    for (std::size_t i = 0; i < d_; ++i) out[i] = root_iso * draw(rng, family);
    for (const auto& sp : spikes_) {
      const double z = std::sqrt(sp.weight) * draw(rng, family);
      for (std::size_t a = 0; a < sp.indices.size(); ++a) out[sp.indices[a]] += z * sp.values[a];
    }
    return;
  }
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t j = 0; j < d_; ++j) {
    const double z = std::sqrt(eigvals_[j]) * draw(rng, family);
    if (z == 0.0) continue;
    const double* col = dense_vecs_.data() + j * d_;
    for (std::size_t i = 0; i < d_; ++i) out[i] += z * col[i];
  }
}

CovModel make_single_spike(std::size_t d, std::size_t s, double nu,
                           std::optional<std::vector<double>> support_values) {
  if (d < 2 || s < 1 || s > d) fail(ErrorKind::invalid_dims, "need 1 <= s <= d and d >= 2");
  if (!(nu > 0.0) || !std::isfinite(nu)) fail(ErrorKind::invalid_spike, "spike strength must be positive");
  Spike sp;
  sp.weight = nu;
  sp.indices.resize(s);
  std::iota(sp.indices.begin(), sp.indices.end(), std::size_t{0});
  if (support_values) {
    if (support_values->size() != s) fail(ErrorKind::invalid_dims, "support_values must have length s");
    double nrm2 = 0.0;
    for (double v : *support_values) nrm2 += v * v;
    if (std::abs(std::sqrt(nrm2) - 1.0) > kUnitTol) fail(ErrorKind::not_unit, "support_values must be a unit vector");
    sp.values = *support_values;
  } else {
    sp.values.assign(s, 1.0 / std::sqrt(static_cast<double>(s)));
  }
  CovModel m;
  m.kind_ = ModelKind::single_spike;
  m.d_ = d;
  m.iso_ = 1.0;
  m.spikes_.push_back(std::move(sp));
  m.finish_structured();
  return m;
}

CovModel make_multi_spike(std::size_t d, std::vector<Spike> spikes, double iso) {
  if (d < 2 || spikes.empty() || spikes.size() > d)
    fail(ErrorKind::invalid_dims, "need d >= 2 and 1..d spikes");
  if (!(iso >= 0.0)) fail(ErrorKind::invalid_spike, "isotropic part must be nonnegative");
  for (const auto& sp : spikes) {
    if (!(sp.weight > 0.0)) fail(ErrorKind::invalid_spike, "spike weights must be positive");
    if (sp.indices.size() != sp.values.size() || sp.indices.empty())
      fail(ErrorKind::invalid_dims, "spike index/value length mismatch");
    double nrm2 = 0.0;
    for (std::size_t a = 0; a < sp.indices.size(); ++a) {
      if (sp.indices[a] >= d) fail(ErrorKind::invalid_dims, "spike index out of range");
      nrm2 += sp.values[a] * sp.values[a];
    }
    if (std::abs(nrm2 - 1.0) > kOrthoTol) fail(ErrorKind::not_orthonormal, "spike direction is not unit");
  }
  std::vector<double> dense(d);
  for (std::size_t j = 0; j < spikes.size(); ++j) {
    std::fill(dense.begin(), dense.end(), 0.0);
    for (std::size_t a = 0; a < spikes[j].indices.size(); ++a)
      dense[spikes[j].indices[a]] += spikes[j].values[a];
    for (std::size_t k = j + 1; k < spikes.size(); ++k) {
      double dot = 0.0;
      for (std::size_t a = 0; a < spikes[k].indices.size(); ++a)
        dot += dense[spikes[k].indices[a]] * spikes[k].values[a];
      if (std::abs(dot) > kOrthoTol) fail(ErrorKind::not_orthonormal, "spike directions overlap");
    }
  }
  CovModel m;
  m.kind_ = ModelKind::multi_spike;
  m.d_ = d;
  m.iso_ = iso;
  m.spikes_ = std::move(spikes);
  m.finish_structured();
  return m;
}

CovModel make_counterexample(std::size_t s, std::size_t d) {
  if (s == 0 || s % 3 != 0) fail(ErrorKind::invalid_dims, "s must be a positive multiple of 3");
  if (d <= 2 * s) fail(ErrorKind::invalid_dims, "need d > 2s");
  const double beta1 = 0.5;
  const double weights[4] = {beta1, beta1 / 2.0, beta1 / 2.1, beta1 / 2.2};
  const std::size_t third = s / 3;
  std::vector<Spike> spikes(4);
  spikes[0].weight = weights[0];
  for (std::size_t i = 0; i < s; ++i) {
    spikes[0].indices.push_back(i);
    spikes[0].values.push_back(1.0 / std::sqrt(static_cast<double>(s)));
  }
  const double block_val = std::sqrt(3.0 / static_cast<double>(s));
  for (std::size_t j = 1; j < 4; ++j) {
    spikes[j].weight = weights[j];
    const std::size_t start = s + (j - 1) * third;
    for (std::size_t i = start; i < start + third; ++i) {
      spikes[j].indices.push_back(i);
      spikes[j].values.push_back(block_val);
    }
  }
  CovModel m = make_multi_spike(d, std::move(spikes), 0.5);
  m.kind_ = ModelKind::counterexample;
  return m;
}

CovModel make_general(std::vector<double> eigvals, std::vector<double> eigvecs) {
  const std::size_t d = eigvals.size();
  if (d < 1 || eigvecs.size() != d * d) fail(ErrorKind::invalid_dims, "need d >= 1 and a d x d basis");
  for (std::size_t j = 0; j + 1 < d; ++j)
    if (eigvals[j] < eigvals[j + 1]) fail(ErrorKind::not_descending, "eigenvalues must be descending");
  if (!(eigvals[0] > (d > 1 ? eigvals[1] : 0.0))) fail(ErrorKind::not_descending, "top eigenvalue is not simple");
  if (eigvals[d - 1] < 0.0) fail(ErrorKind::not_descending, "eigenvalues must be nonnegative");
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = j; k < d; ++k) {
      double dot = 0.0;
      for (std::size_t i = 0; i < d; ++i) dot += eigvecs[j * d + i] * eigvecs[k * d + i];
      if (std::abs(dot - (j == k ? 1.0 : 0.0)) > kOrthoTol)
        fail(ErrorKind::not_orthonormal, "columns " + std::to_string(j) + "," + std::to_string(k));
    }
  CovModel m;
  m.kind_ = ModelKind::general;
  m.d_ = d;
  m.eigvals_ = std::move(eigvals);
  m.dense_vecs_ = std::move(eigvecs);
  m.trace_ = std::accumulate(m.eigvals_.begin(), m.eigvals_.end(), 0.0);
  m.v1_.assign(m.dense_vecs_.begin(), m.dense_vecs_.begin() + static_cast<std::ptrdiff_t>(d));
  for (std::size_t i = 0; i < d; ++i)
    if (std::abs(m.v1_[i]) > kSupportTol) m.support_.push_back(i);
  return m;
}

ModelStats model_stats(const CovModel& m) {
  ModelStats st;
  st.gap = m.gap();
  st.ratio = m.lambda2() > 0.0 ? m.lambda1() / m.lambda2() : std::numeric_limits<double>::infinity();
  st.eff_rank = m.trace() / m.lambda1();
  st.tr_lambda2 = m.trace() - m.lambda1();
  double mn = std::numeric_limits<double>::infinity();
  for (std::size_t i : m.support()) mn = std::min(mn, std::abs(m.v1()[i]));
  st.min_support_entry = mn;
  return st;
}

ModelStats model_stats(const CovModel& m, double n, double c) {
  ModelStats st = model_stats(m);
  AssumptionCheck chk;
  chk.n = n;
  chk.c = c;
  const double logn = std::log(n);
  const double lhs1 = std::max(1.0, m.lambda2() / st.gap) * st.tr_lambda2 / st.gap;
  chk.trace_condition = lhs1 <= c * n / logn;
  chk.ratio_condition = m.lambda1() / st.gap <= c * std::sqrt(n / (logn * logn));
  st.assumption = chk;
  return st;
}

std::vector<std::size_t> high_support(const CovModel& m, double n) {
  const double cut = std::sqrt(std::log(static_cast<double>(m.dim())) / n);
  std::vector<std::size_t> out;
  for (std::size_t i : m.support())
    if (std::abs(m.v1()[i]) >= cut) out.push_back(i);
  return out;
}

}  // namespace spoja
