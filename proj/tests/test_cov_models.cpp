#include <cmath>

#include <gtest/gtest.h>

#include <spoja/cov_models.hpp>
#include <spoja/error.hpp>

#include "oracles.hpp"

using namespace spoja;

namespace {

void expect_kind(ErrorKind kind, auto&& fn) {
  try {
    fn();
    FAIL() << "expected " << to_string(kind);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
  }
}

// Dense eigendecomposition of the reconstructed Σ must match the stored structure.
void check_against_dense(const CovModel& m) {
  const Eigen::MatrixXd sigma = test::dense_sigma(m);
  EXPECT_LE((sigma - sigma.transpose()).cwiseAbs().maxCoeff(), 1e-14);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sigma);
  const auto& ev = eig.eigenvalues();
  const Eigen::Index d = ev.size();
  EXPECT_GE(ev.minCoeff(), -1e-10);
  for (Eigen::Index j = 0; j < d; ++j) {
    const double ref = m.eigvals()[static_cast<std::size_t>(j)];
    EXPECT_NEAR(ev(d - 1 - j), ref, 1e-8 * std::max(1.0, std::abs(ref)));
  }
  EXPECT_LT(test::sin2_of(eig.eigenvectors().col(d - 1), m.v1()), 1e-8);
  double norm = 0.0;
  std::size_t nnz = 0;
  for (double v : m.v1()) {
    norm += v * v;
    if (v != 0.0) ++nnz;
  }
  EXPECT_NEAR(norm, 1.0, 1e-12);
  EXPECT_EQ(nnz, m.s());
}

}  // namespace

TEST(CovModels, SingleSpikeUniformSupport) {
  auto m = make_single_spike(4, 2, 1.0);
  EXPECT_DOUBLE_EQ(m.lambda1(), 2.0);
  EXPECT_DOUBLE_EQ(m.lambda2(), 1.0);
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(m.v1()[0], r, 1e-15);
  EXPECT_NEAR(m.v1()[1], r, 1e-15);
  EXPECT_EQ(m.v1()[2], 0.0);
  EXPECT_EQ(m.v1()[3], 0.0);
  EXPECT_EQ(m.support(), (std::vector<std::size_t>{0, 1}));
  check_against_dense(m);
}

TEST(CovModels, SingleSpikeEffectiveRank) {
  auto m = make_single_spike(3, 3, 0.5);
  // Tr(Σ) = 3 + ν = 3.5, λ₁ = 1.5.
  EXPECT_NEAR(model_stats(m).eff_rank, 3.5 / 1.5, 1e-12);
  const Eigen::MatrixXd sigma = test::dense_sigma(m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sigma);
  EXPECT_NEAR(model_stats(m).eff_rank, sigma.trace() / eig.eigenvalues().maxCoeff(), 1e-12);
}

TEST(CovModels, SingleSpikeAxisAligned) {
  auto m = make_single_spike(2, 1, 2.0, std::vector<double>{1.0});
  EXPECT_EQ(m.v1(), (std::vector<double>{1.0, 0.0}));
  EXPECT_EQ(m.eigvals(), (std::vector<double>{3.0, 1.0}));
}

TEST(CovModels, SingleSpikeErrors) {
  expect_kind(ErrorKind::invalid_dims, [] { make_single_spike(3, 4, 1.0); });
  expect_kind(ErrorKind::invalid_spike, [] { make_single_spike(3, 2, 0.0); });
  expect_kind(ErrorKind::invalid_spike, [] { make_single_spike(3, 2, -1.0); });
  expect_kind(ErrorKind::not_unit, [] { make_single_spike(3, 2, 1.0, std::vector<double>{1.0, 1.0}); });
}

TEST(CovModels, CounterexampleDiagonal) {
  auto m = make_counterexample(3, 100);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(m.sigma_ii(i), 2.0 / 3.0, 1e-14);
  EXPECT_NEAR(m.sigma_ii(3), 0.75, 1e-14);
  double max_off = 0.0;
  for (std::size_t i = 6; i < 100; ++i) max_off = std::max(max_off, m.sigma_ii(i));
  EXPECT_DOUBLE_EQ(max_off, 0.5);
  EXPECT_NEAR(m.lambda1(), 1.0, 1e-15);
  EXPECT_NEAR(model_stats(m).min_support_entry, 1.0 / std::sqrt(3.0), 1e-15);
}

TEST(CovModels, CounterexampleStrictDiagonalOrdering) {
  for (std::size_t s : {3u, 6u, 9u}) {
    auto m = make_counterexample(s, 4 * s);
    double min_mid = 1e9, max_s = 0.0, max_tail = 0.0;
    for (std::size_t i = 0; i < s; ++i) max_s = std::max(max_s, m.sigma_ii(i));
    for (std::size_t i = s; i < 2 * s; ++i) min_mid = std::min(min_mid, m.sigma_ii(i));
    for (std::size_t i = 2 * s; i < 4 * s; ++i) max_tail = std::max(max_tail, m.sigma_ii(i));
    EXPECT_GT(min_mid, max_s);
    EXPECT_GT(max_s, max_tail);
    check_against_dense(m);
  }
}

TEST(CovModels, CounterexampleErrors) {
  expect_kind(ErrorKind::invalid_dims, [] { make_counterexample(4, 100); });
  expect_kind(ErrorKind::invalid_dims, [] { make_counterexample(3, 6); });
}

TEST(CovModels, GeneralIdentityBasis) {
  auto m = make_general({2.0, 1.0}, {1.0, 0.0, 0.0, 1.0});
  EXPECT_EQ(m.v1(), (std::vector<double>{1.0, 0.0}));
  EXPECT_EQ(m.support(), (std::vector<std::size_t>{0}));
}

TEST(CovModels, GeneralRejectsZeroGapAndNonOrthonormal) {
  expect_kind(ErrorKind::not_descending, [] { make_general({1.0, 1.0}, {1.0, 0.0, 0.0, 1.0}); });
  expect_kind(ErrorKind::not_descending, [] { make_general({1.0, 2.0}, {1.0, 0.0, 0.0, 1.0}); });
  expect_kind(ErrorKind::not_orthonormal, [] { make_general({2.0, 1.0}, {1.0, 0.1, 0.0, 1.0}); });
}

TEST(CovModels, GeneralRandomRotationReconstruction) {
  const Eigen::MatrixXd v = test::random_orthonormal(3, 42);
  auto m = make_general({3.0, 2.0, 1.0}, test::column_major(v));
  const Eigen::MatrixXd ref = v * Eigen::Vector3d(3.0, 2.0, 1.0).asDiagonal() * v.transpose();
  EXPECT_LE((test::dense_sigma(m) - ref).cwiseAbs().maxCoeff(), 1e-10);
  check_against_dense(m);
}

TEST(CovModels, MultiSpikeMatchesDense) {
  const double r = 1.0 / std::sqrt(2.0);
  auto m = make_multi_spike(6, {{1.0, {2, 3}, {r, -r}}, {3.0, {0, 1}, {r, r}}}, 0.5);
  EXPECT_DOUBLE_EQ(m.lambda1(), 3.5);
  EXPECT_DOUBLE_EQ(m.lambda2(), 1.5);
  EXPECT_EQ(m.support(), (std::vector<std::size_t>{0, 1}));
  check_against_dense(m);
  expect_kind(ErrorKind::not_orthonormal,
              [&] { make_multi_spike(4, {{1.0, {0, 1}, {r, r}}, {2.0, {1, 2}, {r, r}}}); });
}

TEST(CovModels, StatsSingleSpike) {
  auto m = make_single_spike(4, 2, 1.0);
  auto st = model_stats(m);
  EXPECT_NEAR(st.eff_rank, 2.5, 1e-15);
  EXPECT_DOUBLE_EQ(st.gap, 1.0);
  EXPECT_DOUBLE_EQ(st.ratio, 2.0);
  EXPECT_NEAR(st.tr_lambda2, m.trace() - m.lambda1(), 1e-10);
  EXPECT_FALSE(st.assumption.has_value());
}

TEST(CovModels, StatsInvariantsAcrossModels) {
  std::vector<CovModel> models{make_single_spike(50, 5, 3.0), make_counterexample(6, 40),
                               make_general({3.0, 2.0, 1.0}, test::column_major(test::random_orthonormal(3, 7)))};
  for (const auto& m : models) {
    auto st = model_stats(m);
    EXPECT_GE(st.eff_rank, 1.0);
    EXPECT_LE(st.eff_rank, static_cast<double>(m.dim()));
    EXPECT_NEAR(st.tr_lambda2, m.trace() - m.lambda1(), 1e-10);
  }
}

TEST(CovModels, AssumptionReport) {
  auto m = make_single_spike(10, 2, 1.0);
  // Tr(Λ₂)/gap = 10 and λ₁/gap = 2.
  auto big = model_stats(m, 1e6, 1.0);
  ASSERT_TRUE(big.assumption.has_value());
  EXPECT_TRUE(big.assumption->trace_condition);
  EXPECT_TRUE(big.assumption->ratio_condition);
  auto small = model_stats(m, 10.0, 1.0);
  EXPECT_FALSE(small.assumption->trace_condition);
  EXPECT_FALSE(small.assumption->ratio_condition);
}

TEST(CovModels, HighSupport) {
  auto m = make_single_spike(100, 4, 1.0, std::vector<double>{0.9, 0.3, 0.3, std::sqrt(1.0 - 0.99)});
  // √(ln 100 / 100) ≈ 0.2146.
  EXPECT_EQ(high_support(m, 100.0), (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(high_support(m, 1e6), m.support());
}

TEST(CovModels, MatvecMatchesDense) {
  auto m = make_counterexample(3, 12);
  std::vector<double> x(12), out(12);
  for (std::size_t i = 0; i < 12; ++i) x[i] = std::sin(static_cast<double>(i) + 1.0);
  m.matvec(x, out);
  const Eigen::VectorXd ref = test::dense_sigma(m) * Eigen::Map<Eigen::VectorXd>(x.data(), 12);
  for (std::size_t i = 0; i < 12; ++i) EXPECT_NEAR(out[i], ref(static_cast<Eigen::Index>(i)), 1e-14);
}
