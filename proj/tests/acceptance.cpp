// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include <spoja/baselines.hpp>
#include <spoja/boost.hpp>
#include <spoja/concentration.hpp>
#include <spoja/cov_models.hpp>
#include <spoja/metrics.hpp>
#include <spoja/oja.hpp>
#include <spoja/parallel.hpp>
#include <spoja/rng.hpp>
#include <spoja/sampling.hpp>
#include <spoja/sparse_pca.hpp>
#include <spoja/support.hpp>
#include <spoja/theory_bounds.hpp>

using namespace spoja;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::size_t worker_count() { return std::max(1u, std::thread::hardware_concurrency()); }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// 1. exp(b)·u against the explicit long-double product Bₙu₀.
Verdict oracle_equivalence() {
  auto m = make_single_spike(8, 2, 1.0);
  const std::size_t n = 100;
  const double eta = default_learning_rate(n, m.gap());
  long double worst = 0.0L;
  using M = Eigen::Matrix<long double, 8, 8>;
  using V = Eigen::Matrix<long double, 8, 1>;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    SampleStream a(m, derive_seed(1, seed), n), b(m, derive_seed(1, seed), n);
    const auto u0 = gaussian_unit_init(8, derive_seed(2, seed));
    M prod = M::Identity();
    for (std::size_t t = 0; t < n; ++t) {
      auto x = a.next_sample();
      V xv;
      for (int i = 0; i < 8; ++i) xv(i) = x[static_cast<std::size_t>(i)];
      prod = (M::Identity() + static_cast<long double>(eta) * xv * xv.transpose()) * prod;
    }
    V uv;
    for (int i = 0; i < 8; ++i) uv(i) = u0[static_cast<std::size_t>(i)];
    const V ref = prod * uv;
    auto st = run_oja(b, u0, eta);
    for (int i = 0; i < 8; ++i) {
      const long double got = std::exp(static_cast<long double>(st.b)) * st.u[static_cast<std::size_t>(i)];
      worst = std::max(worst, std::abs(got - ref(i)) / std::abs(ref(i)));
    }
  }
  return {worst <= 1e-8L, fmt("max per-coordinate relative error %.3Le (limit 1e-8)", worst)};
}

// 2. Closed-form 2×2 power against repeated multiplication.
Verdict two_by_two() {
  SplitMix64 g(2);
  double worst = 0.0;
  for (int rep = 0; rep < 200; ++rep) {
    Mat2 p;
    for (;;) {
      p = {g.uniform() * 2.0 - 1.0, g.uniform() * 2.0 - 1.0, g.uniform() * 2.0 - 1.0, g.uniform() * 2.0 - 1.0};
      const double t = p.trace(), disc = t * t / 4.0 - p.det();
      if (disc > 1e-6 && disc > 1e-6 * t * t) break;
    }
    const auto n = static_cast<std::uint64_t>(1 + rep % 50);
    const Mat2 a = two_by_two_power(p, n), b = repeated_power(p, n);
    const double scale = std::max({std::abs(b.a11), std::abs(b.a12), std::abs(b.a21), std::abs(b.a22)});
    const double err = std::max({std::abs(a.a11 - b.a11), std::abs(a.a12 - b.a12), std::abs(a.a21 - b.a21),
                                 std::abs(a.a22 - b.a22)}) / scale;
    worst = std::max(worst, err);
  }
  return {worst <= 1e-10, fmt("max relative error %.3e over 200 matrices (limit 1e-10)", worst)};
}

// 3. S ⊆ Ŝ frequency for top-k recovery.
Verdict support_recovery() {
  auto m = make_single_spike(200, 5, 3.0);
  const std::size_t n = 10000;
  const double eta = default_learning_rate(n, m.gap());
  auto hits = run_trials(200, worker_count(), [&](std::size_t t) {
    SampleStream s(m, derive_seed(3, t), n);
    auto st = run_oja(s, gaussian_unit_init(200, derive_seed(33, t)), eta);
    return static_cast<char>(support_metrics(top_k_support(st, 5), m.support(), m.support()).contains_s);
  });
  const Rate r = bernoulli_rate(std::vector<bool>(hits.begin(), hits.end()));
  return {r.p >= 0.9 - 3.0 * r.se, fmt("P(S in S_hat) = %.3f, SE %.4f (need >= 0.9 - 3 SE)", r.p, r.se)};
}

// 4. Diagonal thresholding misses the support; vector truncation on the same data does not.
Verdict diagonal_failure() {
  auto m = make_counterexample(3, 120);
  const auto n = static_cast<std::size_t>(std::ceil(50.0 * 9.0 * std::log(120.0)));
  const double eta = default_learning_rate(static_cast<double>(n), m.gap());
  struct Trial {
    char missed;
    double sin2;
  };
  auto trials = run_trials(200, worker_count(), [&](std::size_t t) {
    const std::uint64_t seed = derive_seed(4, t);
    SampleStream a(m, seed, n), b(m, seed, n);
    auto est = diagonal_thresholding(a, 3);
    const bool missed = support_metrics(est, m.support(), m.support()).intersection == 0;
    return Trial{static_cast<char>(missed), pipeline_trunc_vec(b, 3, eta, PipelineSeeds::from_trial(seed)).sin2};
  });
  std::vector<bool> missed;
  std::vector<double> sin2s;
  for (const auto& t : trials) {
    missed.push_back(t.missed);
    sin2s.push_back(t.sin2);
  }
  const Rate r = bernoulli_rate(missed);
  const double med = nearest_rank(sin2s, 0.5);
  return {r.p >= 0.95 && med <= 0.2,
          fmt("n = %zu: P(|S_hat & S| = 0) = %.3f (need >= 0.95); trunc_vec median sin2 = %.4f (need <= 0.2)", n,
              r.p, med)};
}

// 5. Log-log slope of the vector-truncation median against n, plus the paired ordering.
Verdict rate_scaling() {
  auto m = make_single_spike(200, 5, 3.0);
  const std::vector<std::size_t> grid{5000, 10000, 20000, 40000};
  std::vector<double> xs, ys;
  bool ordered = true;
  std::string detail;
  for (std::size_t n : grid) {
    const double eta = default_learning_rate(static_cast<double>(n), m.gap());
    auto pairs = run_trials(100, worker_count(), [&](std::size_t t) {
      const std::uint64_t seed = derive_seed(derive_seed(5, n), t);
      SampleStream a(m, seed, n), b(m, seed, n);
      const auto seeds = PipelineSeeds::from_trial(seed);
      return std::pair{pipeline_trunc_vec(a, 5, eta, seeds).sin2, pipeline_plain_oja(b, 5, eta, seeds).sin2};
    });
    std::vector<double> tv, pl;
    for (auto [a, b] : pairs) {
      tv.push_back(a);
      pl.push_back(b);
    }
    const double mt = nearest_rank(tv, 0.5), mp = nearest_rank(pl, 0.5);
    ordered = ordered && mt <= mp;
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(std::log(mt));
    detail += fmt("n=%zu trunc %.3g plain %.3g; ", n, mt, mp);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(xs.size());
  my /= static_cast<double>(ys.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  const double slope = sxy / sxx;
  return {slope >= -1.3 && slope <= -0.7 && ordered,
          detail + fmt("slope %.3f (need [-1.3, -0.7]), trunc <= plain at every n: %s", slope, ordered ? "yes" : "no")};
}

// 6. Boosting a 2/3-success oracle.
Verdict boosting() {
  static const CovModel scalar = make_general({1.0}, {1.0});
  BoostConfig cfg;
  cfg.delta = 0.05;
  cfg.epsilon = 0.1;
  const std::size_t S = cfg.buckets();
  // Points on a line: q* = 0, the far point at 10ε.
  MetricSpaceAdapter<double> line{MetricKind::custom, [](const double& a, const double& b) { return std::abs(a - b); }};
  std::vector<bool> failed;
  for (std::size_t r = 0; r < 500; ++r) {
    SampleStream data(scalar, derive_seed(6, r), S);
    auto out = success_boost<double>(
        data,
        [&](SampleStream& bucket, std::size_t t) {
          std::vector<double> x(1);
          while (bucket.remaining() > 0) bucket.next(x);
          SplitMix64 g(derive_seed(derive_seed(66, r), t));
          return g.uniform() < 2.0 / 3.0 ? 0.0 : 10.0 * cfg.epsilon;
        },
        cfg, line);
    failed.push_back(!out.item || std::abs(*out.item) > 3.0 * cfg.epsilon);
  }
  const Rate rate = bernoulli_rate(failed);
  return {rate.p <= 0.05 + 3.0 * rate.se,
          fmt("failure rate %.4f, SE %.4f over 500 replications (need <= 0.05 + 3 SE)", rate.p, rate.se)};
}

// 7. Monte Carlo second moments against the closed-form envelopes.
Verdict moment_envelopes() {
  auto m = make_single_spike(8, 2, 1.0);
  const double eta = 0.01;
  const std::size_t n = 200, d = 8, trials = 10000;
  struct Logs {
    std::vector<double> alpha, beta;
  };
  auto per_trial = run_trials(trials, worker_count(), [&](std::size_t t) {
    std::vector<OjaState> states;
    for (std::size_t i = 0; i < d; ++i) {
      std::vector<double> e(d, 0.0);
      e[i] = 1.0;
      states.push_back(make_oja_state(e, EtaSchedule::constant(eta)));
    }
    SampleStream s(m, derive_seed(7, t), n);
    std::vector<double> x(d);
    for (std::size_t step = 0; step < n; ++step) {
      s.next(x);
      for (auto& st : states) oja_step(st, x);
    }
    Logs out;
    for (const auto& st : states) {
      const double c = dot(st.u, m.v1());
      out.alpha.push_back(2.0 * st.b + std::log(c * c));
      out.beta.push_back(2.0 * st.b + std::log1p(-c * c));
    }
    return out;
  });
  double min_slack = INFINITY;
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<double> a, b;
    for (const auto& l : per_trial) {
      a.push_back(l.alpha[i]);
      b.push_back(l.beta[i]);
    }
    auto env = second_moment_envelope(m, eta, 1.0, 1.0, InitialMass::basis(m, i));
    min_slack = std::min(min_slack, env.alpha_bound_log(static_cast<double>(n)) - log_moment(a).log_upper(5.0));
    min_slack = std::min(min_slack, env.beta_bound_log(static_cast<double>(n)) - log_moment(b).log_upper(5.0));
  }
  return {min_slack >= 0.0, fmt("min over i of log(bound) - log(MC mean + 5 SE) = %.4f (need >= 0)", min_slack)};
}

// 8. Score separation after n₀ and naive-bound domination with a growing gap.
Verdict concentration_curves() {
  constexpr std::size_t kSeparationStart = 250;  // frozen from a pilot that separated from n = 200
  auto ma = make_single_spike(100, 4, 2.0);
  std::vector<std::size_t> cps;
  for (std::size_t n = 0; n <= 1000; n += 50) cps.push_back(n);
  auto rows = score_separation(ma, score_trajectories(ma, 0.005, cps, 200, 11));
  bool sep = true;
  for (const auto& r : rows)
    if (r.n >= kSeparationStart) sep = sep && r.separated;

  auto mb = make_single_spike(16, 4, 0.5);
  std::vector<std::size_t> all;
  for (std::size_t n = 1; n <= 300; ++n) all.push_back(n);
  auto growth = product_growth(mb, 0.05, all, 200, 12);
  bool below = true;
  double min_margin = INFINITY;
  for (const auto& g : growth) {
    const double margin = g.naive_bound_log - g.log_norm_mean;
    min_margin = std::min(min_margin, margin);
    below = below && margin >= 0.0;
  }
  bool increasing = true;
  double prev = -INFINITY;
  for (std::size_t n = 25; n <= 300; n += 25) {
    const auto& g = growth[n - 1];
    const double gap = g.naive_bound_log - g.log_norm_mean;
    increasing = increasing && gap > prev;
    prev = gap;
  }
  return {sep && below && increasing,
          fmt("(a) separated for all n >= %zu: %s; (b) min margin to naive bound %.4f over n <= 300, "
              "gap increasing: %s (gap at 300: %.2f)",
              kSeparationStart, sep ? "yes" : "no", min_margin, increasing ? "yes" : "no", prev)};
}

// 9. Property suites.
Verdict properties() {
  NormalSource rng(9);
  SplitMix64 g(99);
  auto unit = [&](std::size_t d) {
    std::vector<double> v(d);
    for (auto& x : v) x = rng();
    const double nn = norm2(v);
    for (auto& x : v) x /= nn;
    return v;
  };
  auto subset = [&](std::size_t u) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < u; ++i)
      if (g.uniform() < 0.5) s.push_back(i);
    return s;
  };
  std::vector<std::string> broken;
  for (int rep = 0; rep < 1000; ++rep) {
    auto v = unit(10);
    auto S = subset(10);
    if (S.empty()) S.push_back(0);
    auto once = truncate_renormalize(v, S), twice = truncate_renormalize(once, S);
    if (std::abs(norm2(once) - 1.0) > 1e-12) broken.push_back("truncate norm");
    for (std::size_t i = 0; i < 10; ++i)
      if (std::abs(once[i] - twice[i]) > 1e-15) broken.push_back("truncate idempotence");
    auto w = unit(10);
    auto neg = v;
    for (auto& x : neg) x = -x;
    const double s = sin2(v, w);
    if (s != sin2(neg, w) || s < 0.0 || s > 1.0 || sin2(v, neg) < 0.0) broken.push_back("sin2");
    auto z = unit(10);
    const auto pm = projector_metric();
    if (pm.distance(v, v) != 0.0 || pm.distance(v, w) != pm.distance(w, v) ||
        pm.distance(v, z) > pm.distance(v, w) + pm.distance(w, z) + 1e-9)
      broken.push_back("projector metric");
    const auto sm = set_indicator_metric();
    auto a = subset(3), b = subset(3), c = subset(3);
    if (sm.distance(a, a) != 0.0 || sm.distance(a, b) != sm.distance(b, a) ||
        sm.distance(a, c) > sm.distance(a, b) + sm.distance(b, c))
      broken.push_back("set metric");
  }
  auto csv = [] {
    auto m = make_single_spike(40, 4, 2.0);
    std::vector<double> s2;
    for (std::size_t t = 0; t < 10; ++t) {
      SampleStream s(m, derive_seed(90, t), 800);
      s2.push_back(pipeline_trunc_vec(s, 4, 0.01, PipelineSeeds::from_trial(derive_seed(90, t))).sin2);
    }
    auto sum = aggregate(s2);
    std::ostringstream os;
    write_summary_header(os);
    write_summary_row(os, {"p", "trunc_vec", 800, 40, 4, 4, 90, 10, sum.median, sum.q10, sum.q90, 0.0, 0.0});
    return os.str();
  };
  if (csv() != csv()) broken.push_back("csv determinism");
  for (std::size_t d : {16u, 4096u}) {
    auto m = make_single_spike(d, 2, 1.0);
    SampleStream s(m, 1, 200);
    auto st = run_oja(s, gaussian_unit_init(d, 1), 0.001);
    if (st.u.size() != d || st.u.capacity() > d) broken.push_back("state size");
  }
  static_assert(sizeof(SampleStream) <= 8 * sizeof(void*));
  std::string detail = broken.empty() ? "all property checks hold" : "broken: " + broken.front();
  return {broken.empty(), detail};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "oracle equivalence", 5.0, oracle_equivalence},
      {2, "2x2 closed-form power", 1.0, two_by_two},
      {3, "support recovery", 60.0, support_recovery},
      {4, "diagonal thresholding failure", 120.0, diagonal_failure},
      {5, "rate-in-n scaling", 600.0, rate_scaling},
      {6, "boosting", 10.0, boosting},
      {7, "moment-envelope domination", 120.0, moment_envelopes},
      {8, "concentration curves", 120.0, concentration_curves},
      {9, "property suites", 10.0, properties},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = v.pass && in_time;
    if (!pass) ++failures;
    std::printf("[%s] criterion %d (%s): %s; %.2f s of %.0f s budget\n", pass ? "PASS" : "FAIL", c.id, c.name,
                v.detail.c_str(), secs, c.budget_s);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
