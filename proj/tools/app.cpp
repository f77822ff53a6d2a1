#include "app.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include <json.hpp>

#include <spoja/baselines.hpp>
#include <spoja/boost.hpp>
#include <spoja/concentration.hpp>
#include <spoja/cov_models.hpp>
#include <spoja/error.hpp>
#include <spoja/metrics.hpp>
#include <spoja/oja.hpp>
#include <spoja/parallel.hpp>
#include <spoja/rng.hpp>
#include <spoja/sampling.hpp>
#include <spoja/serialize.hpp>
#include <spoja/sparse_pca.hpp>
#include <spoja/support.hpp>
#include <spoja/theory_bounds.hpp>

namespace spoja::app {

using nlohmann::json;

namespace {

// Reads fields from one JSON object and records every value actually used,
// defaults included, into `resolved`.
class Section {
 public:
  Section(const json& obj, json& resolved, std::string path) : obj_(obj), resolved_(resolved), path_(std::move(path)) {
    if (!obj_.is_object()) fail(ErrorKind::config_error, path_ + ": expected an object");
  }

  bool has(const char* name) const { return obj_.contains(name); }

  template <class T>
  T get(const char* name, T fallback) {
    T value = has(name) ? convert<T>(name) : std::move(fallback);
    resolved_[name] = value;
    return value;
  }

  template <class T>
  std::optional<T> optional(const char* name) {
    if (!has(name) || obj_.at(name).is_null()) {
      resolved_[name] = nullptr;
      return std::nullopt;
    }
    T value = convert<T>(name);
    resolved_[name] = value;
    return value;
  }

  // Nested object (empty object if missing).
  Section child(const char* name) {
    static const json empty = json::object();
    if (!resolved_.contains(name)) resolved_[name] = json::object();
    return Section(has(name) ? obj_.at(name) : empty, resolved_[name], path_ + "." + name);
  }

  // Model descriptor, falling back to the given default.
  CovModel model(const char* name, const json& fallback) {
    const json& desc = has(name) ? obj_.at(name) : fallback;
    try {
      CovModel m = model_from_json(desc.dump());
      resolved_[name] = json::parse(model_to_json(m));
      return m;
    } catch (const Error& e) {
      fail(ErrorKind::config_error, path_ + "." + name + ": " + e.what());
    }
  }

  const json& raw(const char* name) const { return obj_.at(name); }
  const std::string& path() const { return path_; }
  json& resolved() { return resolved_; }

 private:
  template <class T>
  T convert(const char* name) const {
    const json& v = obj_.at(name);
    if constexpr (std::is_unsigned_v<T>) {
      if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) fail(ErrorKind::config_error, path_ + "." + name + ": expected a nonnegative integer");
    }
    try {
      return v.get<T>();
    } catch (const json::exception& e) {
      fail(ErrorKind::config_error, path_ + "." + name + ": " + e.what());
    }
  }

  const json& obj_;
  json& resolved_;
  std::string path_;
};

json single_spike_desc(std::size_t d, std::size_t s, double nu) {
  return {{"kind", "single_spike"}, {"d", d}, {"s", s}, {"params", {{"nu", nu}}}};
}

SampleFamily parse_family(const std::string& name, const std::string& path) {
  if (name == "gaussian") return SampleFamily::gaussian;
  if (name == "scaled_rademacher") return SampleFamily::scaled_rademacher;
  fail(ErrorKind::config_error, path + ".family: expected \"gaussian\" or \"scaled_rademacher\"");
}

Pipeline parse_pipeline(const std::string& name, const std::string& path) {
  for (auto p : {Pipeline::plain_oja, Pipeline::diag_thresh, Pipeline::trunc_vec, Pipeline::trunc_data})
    if (to_string(p) == name) return p;
  fail(ErrorKind::config_error, path + ".pipelines: unknown pipeline '" + name + "'");
}

std::filesystem::path output_path(const Options& opt, const std::string& name) {
  std::filesystem::create_directories(opt.out_dir);
  return std::filesystem::path(opt.out_dir) / name;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) fail(ErrorKind::config_error, "cannot write " + path.string());
  os << text;
}

// Writes either `<stem>.csv` plus `<stem>.config.json`, or `<stem>.json`
// holding both the resolved configuration and the rows.
void emit(const Options& opt, const std::string& stem, const std::string& csv, const json& rows,
          const json& resolved, std::ostream& log) {
  if (opt.format == Format::csv) {
    write_text(output_path(opt, stem + ".csv"), csv);
    write_text(output_path(opt, stem + ".config.json"), resolved.dump(2) + "\n");
    log << "wrote " << (std::filesystem::path(opt.out_dir) / (stem + ".csv")).string() << "\n";
  } else {
    json doc{{"config", resolved}, {"rows", rows}};
    write_text(output_path(opt, stem + ".json"), doc.dump(2) + "\n");
    log << "wrote " << (std::filesystem::path(opt.out_dir) / (stem + ".json")).string() << "\n";
  }
}

std::string csv_number(double v) { return std::isnan(v) ? std::string("nan") : format_double(v); }

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

// ---------------------------------------------------------------------------

int cmd_compare(const Options& opt, std::ostream& log) {
  json config = opt.config_text.empty() ? json::object() : json::parse(opt.config_text);
  json resolved = json::object();
  Section cfg(config, resolved, "config");

  const auto experiment_id = cfg.get<std::string>("experiment_id", "compare");
  const CovModel model = cfg.model("model", {{"kind", "counterexample"}, {"d", 250}, {"s", 3}, {"params", json::object()}});
  std::vector<std::size_t> n_grid;
  if (cfg.has("n") && !cfg.has("n_grid")) {
    n_grid = {cfg.get<std::size_t>("n", 0)};
  } else {
    n_grid = cfg.get<std::vector<std::size_t>>("n_grid", {250});
  }
  if (n_grid.empty()) fail(ErrorKind::empty_input, "config.n_grid: no sample sizes");
  for (auto n : n_grid)
    if (n < 2) fail(ErrorKind::config_error, "config.n_grid: every n must be at least 2");
  const auto k = cfg.get<std::size_t>("k", model.s());
  if (k < 1 || k > model.dim()) fail(ErrorKind::invalid_k, "config.k: need 1 <= k <= d");
  const auto trials = cfg.get<std::size_t>("trials", 100);
  if (trials == 0) fail(ErrorKind::empty_input, "config.trials: need at least one trial");
  const auto seed = opt.seed ? *opt.seed : cfg.get<std::uint64_t>("seed", 1);
  resolved["seed"] = seed;
  const auto family = parse_family(cfg.get<std::string>("family", "gaussian"), cfg.path());
  std::vector<Pipeline> pipelines;
  for (const auto& name : cfg.get<std::vector<std::string>>("pipelines", {"plain_oja", "diag_thresh", "trunc_vec",
                                                                            "trunc_data"}))
    pipelines.push_back(parse_pipeline(name, cfg.path()));
  if (pipelines.empty()) fail(ErrorKind::empty_input, "config.pipelines: no pipelines");
  const auto eta_override = cfg.optional<double>("eta_override");
  if (eta_override && !(*eta_override > 0.0)) fail(ErrorKind::config_error, "config.eta_override: must be positive");
  Section sched_cfg = cfg.child("schedule");
  const OptimalSchedule schedule{sched_cfg.get<double>("c0", OptimalSchedule{}.c0),
                                 sched_cfg.get<double>("t0", OptimalSchedule{}.t0)};
  EtaSchedule::inverse_time(schedule.c0, schedule.t0, model.gap());
  const bool timing = cfg.get<bool>("timing", false);
  resolved["threads"] = opt.threads;
  log << "compare configuration: " << resolved.dump() << "\n";

  std::ostringstream csv;
  write_summary_header(csv);
  json rows = json::array();
  for (std::size_t n : n_grid) {
    const double eta = eta_override ? *eta_override : default_learning_rate(static_cast<double>(n), model.gap());
    struct TrialOut {
      std::vector<double> sin2, ms;
      std::vector<char> hit;
    };
    auto per_trial = run_trials(trials, opt.threads, [&](std::size_t t) {
      const std::uint64_t trial_seed = derive_seed(seed, t);
      const auto seeds = PipelineSeeds::from_trial(trial_seed);
      TrialOut out;
      for (Pipeline p : pipelines) {
        SampleStream data(model, trial_seed, n, family);
        SparsePcaResult res;
        switch (p) {
          case Pipeline::trunc_vec: res = pipeline_trunc_vec(data, k, eta, seeds); break;
          case Pipeline::trunc_data: res = pipeline_trunc_data(data, k, eta, schedule, seeds); break;
          case Pipeline::plain_oja: res = pipeline_plain_oja(data, k, eta, seeds); break;
          case Pipeline::diag_thresh: res = pipeline_diag_thresh(data, k); break;
        }
        out.sin2.push_back(res.sin2);
        out.ms.push_back(res.wall_time_ms);
        out.hit.push_back(support_metrics(res.support, model.support(), model.support()).contains_s);
      }
      return out;
    });
    for (std::size_t pi = 0; pi < pipelines.size(); ++pi) {
      std::vector<double> s2;
      std::vector<bool> hits;
      double ms = 0.0;
      for (const auto& t : per_trial) {
        s2.push_back(t.sin2[pi]);
        hits.push_back(t.hit[pi]);
        ms += t.ms[pi];
      }
      const Summary sum = aggregate(s2, hits);
      SummaryRow row{experiment_id, std::string(to_string(pipelines[pi])), n, model.dim(), model.s(), k, seed, trials,
                     sum.median, sum.q10, sum.q90, sum.success_rate, timing ? ms / static_cast<double>(trials) : 0.0};
      write_summary_row(csv, row);
      rows.push_back({{"experiment_id", row.experiment_id}, {"pipeline", row.pipeline}, {"n", row.n}, {"d", row.d},
                      {"s", row.s}, {"k", row.k}, {"seed_base", row.seed_base}, {"trials", row.trials},
                      {"eta", pipelines[pi] == Pipeline::diag_thresh ? json(nullptr) : json(eta)},
                      {"sin2_median", row.sin2_median}, {"sin2_q10", row.sin2_q10}, {"sin2_q90", row.sin2_q90},
                      {"support_recovery_rate", row.support_recovery_rate}, {"wall_time_ms", row.wall_time_ms}});
    }
  }
  emit(opt, "compare", csv.str(), rows, resolved, log);
  return exit_ok;
}

// ---------------------------------------------------------------------------

std::vector<std::size_t> checkpoints(std::size_t first, std::size_t last, std::size_t step, const std::string& path) {
  if (step == 0) fail(ErrorKind::config_error, path + ".step: must be positive");
  std::vector<std::size_t> out;
  for (std::size_t n = first; n <= last; n += step) out.push_back(n);
  if (out.empty()) fail(ErrorKind::empty_input, path + ": no checkpoints");
  return out;
}

int cmd_concentration(const Options& opt, std::ostream& log) {
  json config = opt.config_text.empty() ? json::object() : json::parse(opt.config_text);
  json resolved = json::object();
  Section cfg(config, resolved, "config");
  const auto seed = opt.seed ? *opt.seed : cfg.get<std::uint64_t>("seed", 11);
  resolved["seed"] = seed;

  Section sc = cfg.child("scores");
  const CovModel ms = sc.model("model", single_spike_desc(100, 4, 2.0));
  const auto eta_a = sc.get<double>("eta", 0.005);
  if (!(eta_a >= 0.0)) fail(ErrorKind::config_error, "config.scores.eta: must be >= 0");
  const auto cps_a = checkpoints(0, sc.get<std::size_t>("n_max", 1000), sc.get<std::size_t>("step", 50), sc.path());
  const auto trials_a = sc.get<std::size_t>("trials", 200);
  if (trials_a == 0) fail(ErrorKind::empty_input, "config.scores.trials: need at least one trial");

  Section dn = cfg.child("dense");
  const CovModel md = dn.model("model", single_spike_desc(16, 4, 0.5));
  if (md.dim() > kMaxDenseDim)
    fail(ErrorKind::dim_too_large, "config.dense.model: dense products need d <= " + std::to_string(kMaxDenseDim));
  const auto eta_b = dn.get<double>("eta", 0.05);
  if (!(eta_b >= 0.0)) fail(ErrorKind::config_error, "config.dense.eta: must be >= 0");
  const auto step_b = dn.get<std::size_t>("step", 1);
  const auto cps_b = checkpoints(step_b, dn.get<std::size_t>("n_max", 300), step_b, dn.path());
  const auto trials_b = dn.get<std::size_t>("trials", 200);
  if (trials_b == 0) fail(ErrorKind::empty_input, "config.dense.trials: need at least one trial");
  const auto L = dn.get<double>("L", 1.0);
  const auto sigma = dn.get<double>("sigma", 1.0);
  log << "concentration configuration: " << resolved.dump() << "\n";

  const auto snaps = score_trajectories(ms, eta_a, cps_a, trials_a, seed);
  const auto sep = score_separation(ms, snaps);
  std::ostringstream a;
  a << "n,in_support_median,out_support_q90,separated,trial0_in_support_min,trial0_out_support_max\r\n";
  json rows_a = json::array();
  std::vector<bool> in_s(ms.dim(), false);
  for (auto i : ms.support()) in_s[i] = true;
  for (std::size_t c = 0; c < sep.size(); ++c) {
    double in_min = INFINITY, out_max = -INFINITY;
    for (std::size_t i = 0; i < ms.dim(); ++i) {
      const double v = snaps[c].scores[i];
      if (in_s[i])
        in_min = std::min(in_min, v);
      else
        out_max = std::max(out_max, v);
    }
    a << sep[c].n << ',' << csv_number(sep[c].in_median) << ',' << csv_number(sep[c].out_q90) << ','
      << (sep[c].separated ? 1 : 0) << ',' << csv_number(in_min) << ',' << csv_number(out_max) << "\r\n";
    rows_a.push_back({{"n", sep[c].n}, {"in_support_median", number_or_null(sep[c].in_median)},
                      {"out_support_q90", number_or_null(sep[c].out_q90)}, {"separated", sep[c].separated},
                      {"trial0_in_support_min", number_or_null(in_min)},
                      {"trial0_out_support_max", number_or_null(out_max)}});
  }

  const auto growth = product_growth(md, eta_b, cps_b, trials_b, derive_seed(seed, 1), L, sigma);
  std::ostringstream b;
  b << "n,empirical_log_moment,bound_log,naive_bound_log,mean_log_norm,log_v1_moment\r\n";
  json rows_b = json::array();
  for (const auto& g : growth) {
    b << g.n << ',' << csv_number(g.log_norm_mean) << ',' << csv_number(g.bound_log) << ','
      << csv_number(g.naive_bound_log) << ',' << csv_number(g.log_norm_bbt) << ',' << csv_number(g.log_v1_moment)
      << "\r\n";
    rows_b.push_back({{"n", g.n}, {"empirical_log_moment", number_or_null(g.log_norm_mean)},
                      {"bound_log", number_or_null(g.bound_log)}, {"naive_bound_log", number_or_null(g.naive_bound_log)},
                      {"mean_log_norm", number_or_null(g.log_norm_bbt)},
                      {"log_v1_moment", number_or_null(g.log_v1_moment)}});
  }
  emit(opt, "scores", a.str(), rows_a, resolved, log);
  emit(opt, "growth", b.str(), rows_b, resolved, log);
  return exit_ok;
}

// ---------------------------------------------------------------------------

struct Check {
  std::string fixture, kind, quantity;
  std::size_t index = 0, n = 0;
  double estimate = 0.0, bound = 0.0;
  bool holds() const { return estimate <= bound; }
};

json default_fixtures() {
  return json::array({
      {{"name", "second_moment_d8"}, {"kind", "second_moment"}, {"model", single_spike_desc(8, 2, 1.0)},
       {"eta", 0.01}, {"n", 200}, {"trials", 10000}},
      {{"name", "fourth_moment_d8"}, {"kind", "fourth_moment"}, {"model", single_spike_desc(8, 2, 1.0)},
       {"eta", 0.002}, {"n", 100}, {"trials", 10000}},
      {{"name", "tail_out_d16"}, {"kind", "tail"}, {"model", single_spike_desc(16, 4, 1.0)}, {"n", 2000},
       {"trials", 10000}, {"c_t", 1.25}},
  });
}

std::vector<Check> moment_checks(const std::string& name, const std::string& kind, const CovModel& m, double eta,
                                 std::size_t n, std::size_t trials, std::uint64_t seed, double L, double sigma,
                                 double z, std::size_t threads) {
  const bool fourth = kind == "fourth_moment";
  const std::size_t d = m.dim();
  std::vector<BoundEnvelope> envs;
  for (std::size_t i = 0; i < d; ++i) {
    const auto init = InitialMass::basis(m, i);
    envs.push_back(fourth ? fourth_moment_envelope(m, eta, L, sigma, init)
                          : second_moment_envelope(m, eta, L, sigma, init));
  }
  using Logs = std::pair<std::vector<double>, std::vector<double>>;
  auto per_trial = run_trials(trials, threads, [&](std::size_t t) {
    std::vector<OjaState> states;
    for (std::size_t i = 0; i < d; ++i) {
      std::vector<double> e(d, 0.0);
      e[i] = 1.0;
      states.push_back(make_oja_state(e, EtaSchedule::constant(eta)));
    }
    SampleStream s(m, derive_seed(seed, t), n);
    std::vector<double> x(d);
    for (std::size_t step = 0; step < n; ++step) {
      s.next(x);
      for (auto& st : states) oja_step(st, x);
    }
    Logs out;
    const double power = fourth ? 2.0 : 1.0;
    for (const auto& st : states) {
      const double c = dot(st.u, m.v1());
      out.first.push_back(power * (2.0 * st.b + std::log(c * c)));
      out.second.push_back(power * (2.0 * st.b + std::log1p(-c * c)));
    }
    return out;
  });
  std::vector<Check> checks;
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<double> a, b;
    for (const auto& l : per_trial) {
      a.push_back(l.first[i]);
      b.push_back(l.second[i]);
    }
    const double nd = static_cast<double>(n);
    checks.push_back({name, kind, "alpha", i, n, log_moment(a).log_upper(z), envs[i].alpha_bound_log(nd)});
    checks.push_back({name, kind, "beta", i, n, log_moment(b).log_upper(z), envs[i].beta_bound_log(nd)});
  }
  return checks;
}

std::vector<Check> tail_checks(const std::string& name, const CovModel& m, double eta, std::size_t n,
                               std::size_t trials, std::uint64_t seed, double delta, double c_t,
                               std::size_t threads) {
  const auto tb = tail_bounds(m, eta, static_cast<double>(n), delta, 1.0, c_t);
  const std::size_t d = m.dim();
  std::vector<bool> in_s(d, false);
  for (auto i : m.support()) in_s[i] = true;
  auto per_trial = run_trials(trials, threads, [&](std::size_t t) {
    SampleStream s(m, derive_seed(seed, t), n);
    auto st = run_oja(s, gaussian_unit_init(d, derive_seed(derive_seed(seed, t), 0x7531)), eta);
    auto sc = log_scores(st);
    std::vector<char> exceed(d, 0);
    for (std::size_t i = 0; i < d; ++i) exceed[i] = !in_s[i] && sc[i] > tb.tau_log;
    return exceed;
  });
  std::vector<Check> checks;
  for (std::size_t i = 0; i < d; ++i) {
    if (in_s[i]) continue;
    std::size_t hits = 0;
    for (const auto& e : per_trial) hits += static_cast<std::size_t>(e[i]);
    checks.push_back({name, "tail", "p_out", i, n, static_cast<double>(hits) / static_cast<double>(trials),
                      tb.p_out_support});
  }
  return checks;
}

int cmd_verify_bounds(const Options& opt, std::ostream& log) {
  json config = opt.config_text.empty() ? json::object() : json::parse(opt.config_text);
  json resolved = json::object();
  Section cfg(config, resolved, "config");
  const auto seed = opt.seed ? *opt.seed : cfg.get<std::uint64_t>("seed", 7);
  resolved["seed"] = seed;
  const json fixtures = cfg.has("fixtures") ? cfg.raw("fixtures") : default_fixtures();
  if (!fixtures.is_array()) fail(ErrorKind::config_error, "config.fixtures: expected an array");
  if (fixtures.empty()) fail(ErrorKind::empty_input, "config.fixtures: no fixtures to verify");
  resolved["fixtures"] = json::array();

  struct Job {
    std::function<std::vector<Check>()> run;
  };
  std::vector<Job> jobs;
  for (std::size_t f = 0; f < fixtures.size(); ++f) {
    resolved["fixtures"].push_back(json::object());
    Section fx(fixtures[f], resolved["fixtures"][f], "config.fixtures[" + std::to_string(f) + "]");
    const auto name = fx.get<std::string>("name", "fixture" + std::to_string(f));
    const auto kind = fx.get<std::string>("kind", "second_moment");
    const CovModel m = fx.model("model", single_spike_desc(8, 2, 1.0));
    const auto n = fx.get<std::size_t>("n", 200);
    const auto trials = fx.get<std::size_t>("trials", 10000);
    if (trials == 0) fail(ErrorKind::empty_input, fx.path() + ".trials: need at least one trial");
    const auto fseed = fx.get<std::uint64_t>("seed", derive_seed(seed, f));
    const std::size_t threads = opt.threads;
    if (kind == "second_moment" || kind == "fourth_moment") {
      const auto eta = fx.get<double>("eta", kind == "second_moment" ? 0.01 : 0.002);
      const auto L = fx.get<double>("L", 1.0);
      const auto sigma = fx.get<double>("sigma", 1.0);
      const auto z = fx.get<double>("z", 5.0);
      // Surface an invalid θ while still parsing the configuration.
      for (std::size_t i = 0; i < m.dim(); ++i) {
        try {
          const auto init = InitialMass::basis(m, i);
          if (kind == "second_moment")
            second_moment_envelope(m, eta, L, sigma, init);
          else
            fourth_moment_envelope(m, eta, L, sigma, init);
        } catch (const Error& e) {
          fail(e.kind(), fx.path() + ".eta: " + e.what());
        }
      }
      jobs.push_back({[=, model = m] {
        return moment_checks(name, kind, model, eta, n, trials, fseed, L, sigma, z, threads);
      }});
    } else if (kind == "tail") {
      const auto eta = fx.get<double>("eta", default_learning_rate(static_cast<double>(n), m.gap()));
      const auto delta = fx.get<double>("delta", 0.75);
      const auto c_t = fx.get<double>("c_t", 1.25);
      jobs.push_back({[=, model = m] { return tail_checks(name, model, eta, n, trials, fseed, delta, c_t, threads); }});
    } else {
      fail(ErrorKind::config_error, fx.path() + ".kind: expected second_moment, fourth_moment or tail");
    }
  }
  log << "verify-bounds configuration: " << resolved.dump() << "\n";

  std::vector<Check> all;
  for (const auto& job : jobs) {
    auto part = job.run();
    all.insert(all.end(), part.begin(), part.end());
  }
  std::ostringstream csv;
  csv << "fixture,kind,quantity,index,n,estimate,bound,slack,holds\r\n";
  json rows = json::array();
  const Check* first_violation = nullptr;
  for (const auto& c : all) {
    csv << csv_field(c.fixture) << ',' << c.kind << ',' << c.quantity << ',' << c.index << ',' << c.n << ','
        << csv_number(c.estimate) << ',' << csv_number(c.bound) << ',' << csv_number(c.bound - c.estimate) << ','
        << (c.holds() ? 1 : 0) << "\r\n";
    rows.push_back({{"fixture", c.fixture}, {"kind", c.kind}, {"quantity", c.quantity}, {"index", c.index},
                    {"n", c.n}, {"estimate", number_or_null(c.estimate)}, {"bound", number_or_null(c.bound)},
                    {"holds", c.holds()}});
    if (!c.holds() && !first_violation) first_violation = &c;
  }
  emit(opt, "verify_bounds", csv.str(), rows, resolved, log);
  if (first_violation) {
    log << "bound-violated: fixture " << first_violation->fixture << " " << first_violation->quantity
        << " i=" << first_violation->index << " n=" << first_violation->n << "\n";
    return exit_violation;
  }
  log << "all " << all.size() << " checks hold\n";
  return exit_ok;
}

// ---------------------------------------------------------------------------

int cmd_boost_demo(const Options& opt, std::ostream& log) {
  json config = opt.config_text.empty() ? json::object() : json::parse(opt.config_text);
  json resolved = json::object();
  Section cfg(config, resolved, "config");
  const auto seed = opt.seed ? *opt.seed : cfg.get<std::uint64_t>("seed", 5);
  resolved["seed"] = seed;
  const CovModel m = cfg.model("model", single_spike_desc(50, 3, 4.0));
  const auto k = cfg.get<std::size_t>("k", m.s());
  if (k < 1 || k > m.dim()) fail(ErrorKind::invalid_k, "config.k: need 1 <= k <= d");
  const auto replications = cfg.get<std::size_t>("replications", 300);
  if (replications == 0) fail(ErrorKind::empty_input, "config.replications: need at least one replication");
  Section bc = cfg.child("boost");
  BoostConfig boost;
  boost.delta = bc.get<double>("delta", 0.1);
  boost.bucket_constant = bc.get<double>("bucket_constant", boost.bucket_constant);
  boost.cluster_fraction = bc.get<double>("cluster_fraction", boost.cluster_fraction);
  boost.cluster_radius_mult = bc.get<double>("cluster_radius_mult", boost.cluster_radius_mult);
  bc.resolved()["epsilon"] = 0.0;
  try {
    boost.validate();
  } catch (const Error& e) {
    fail(ErrorKind::config_error, std::string("config.boost: ") + e.what());
  }
  const std::size_t S = boost.buckets();
  const auto n = cfg.get<std::size_t>("n", S * 300);
  if (n < S) fail(ErrorKind::insufficient_data, "config.n: " + std::to_string(n) + " samples for " +
                                                    std::to_string(S) + " buckets");
  const std::size_t B = n / S;
  const auto eta_override = cfg.optional<double>("eta_override");
  const double eta = eta_override ? *eta_override : default_learning_rate(std::max<double>(2.0, B), m.gap());
  resolved["eta"] = eta;
  resolved["buckets"] = S;
  log << "boost-demo configuration: " << resolved.dump() << "\n";

  struct Rep {
    char success;
    char bottom;
    std::size_t oracle_hits;
  };
  auto reps = run_trials(replications, opt.threads, [&](std::size_t r) {
    SampleStream data(m, derive_seed(seed, r), n);
    auto out = success_boost<std::vector<std::size_t>>(
        data,
        [&](SampleStream& bucket, std::size_t t) {
          auto st = run_oja(bucket, gaussian_unit_init(m.dim(), derive_seed(derive_seed(seed, r), t)), eta);
          return top_k_support(st, k).indices;
        },
        boost, set_indicator_metric());
    std::size_t hits = 0;
    for (const auto& c : out.candidates) hits += static_cast<std::size_t>(c == m.support());
    return Rep{static_cast<char>(out.item && *out.item == m.support()), static_cast<char>(!out.item), hits};
  });
  std::vector<bool> failed;
  std::size_t bottoms = 0, oracle_hits = 0;
  for (const auto& r : reps) {
    failed.push_back(!r.success);
    bottoms += static_cast<std::size_t>(r.bottom);
    oracle_hits += r.oracle_hits;
  }
  const Rate fail_rate = bernoulli_rate(failed);
  const double oracle_rate = static_cast<double>(oracle_hits) / static_cast<double>(replications * S);
  std::ostringstream csv;
  csv << "replications,buckets,bucket_size,n,delta,oracle_success_rate,boosted_failure_rate,failure_se,bottom_count\r\n";
  csv << replications << ',' << S << ',' << B << ',' << n << ',' << format_double(boost.delta) << ','
      << format_double(oracle_rate) << ',' << format_double(fail_rate.p) << ',' << format_double(fail_rate.se) << ','
      << bottoms << "\r\n";
  json rows = json::array({{{"replications", replications}, {"buckets", S}, {"bucket_size", B}, {"n", n},
                            {"delta", boost.delta}, {"oracle_success_rate", oracle_rate},
                            {"boosted_failure_rate", fail_rate.p}, {"failure_se", fail_rate.se},
                            {"bottom_count", bottoms}}});
  emit(opt, "boost_demo", csv.str(), rows, resolved, log);
  return exit_ok;
}

bool is_config_kind(ErrorKind k) {
  switch (k) {
    case ErrorKind::bound_violated:
    case ErrorKind::stream_exhausted:
    case ErrorKind::nonfinite_input:
    case ErrorKind::zero_after_truncation:
    case ErrorKind::no_convergence:
    case ErrorKind::near_degenerate_eigenvalues:
      return false;
    default:
      return true;
  }
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) fail(ErrorKind::config_error, "cannot open config file " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

int run_command(std::string_view command, const Options& options, std::ostream& log) {
  try {
    try {
      if (command == "compare") return cmd_compare(options, log);
      if (command == "concentration") return cmd_concentration(options, log);
      if (command == "verify-bounds") return cmd_verify_bounds(options, log);
      if (command == "boost-demo") return cmd_boost_demo(options, log);
    } catch (const json::exception& e) {
      fail(ErrorKind::config_error, std::string("config: ") + e.what());
    }
    fail(ErrorKind::config_error, "unknown command '" + std::string(command) + "'");
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
    if (e.kind() == ErrorKind::bound_violated) return exit_violation;
    return is_config_kind(e.kind()) ? exit_config : exit_runtime;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return exit_runtime;
  }
}

}  // namespace spoja::app
