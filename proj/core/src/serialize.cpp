#include "spoja/serialize.hpp"

#include <json.hpp>

#include "spoja/error.hpp"

namespace spoja {

using nlohmann::json;

namespace {

json support_json(const SupportEstimate& est) {
  json j;
  j["method"] = to_string(est.method);
  j["indices"] = est.indices;
  j["index_base"] = 0;
  if (est.method == SupportMethod::threshold)
    j["params"] = {{"log_gamma", est.log_gamma}};
  else
    j["params"] = {{"k", est.k}};
  return j;
}

template <class T>
T field(const json& obj, const char* name, const char* where) {
  if (!obj.contains(name)) fail(ErrorKind::config_error, std::string(where) + ": missing field '" + name + "'");
  try {
    return obj.at(name).get<T>();
  } catch (const json::exception& e) {
    fail(ErrorKind::config_error, std::string(where) + "." + name + ": " + e.what());
  }
}

}  // namespace

std::string support_to_json(const SupportEstimate& est) { return support_json(est).dump(); }

std::string result_to_json(const SparsePcaResult& res) {
  json j;
  j["pipeline"] = to_string(res.pipeline);
  j["sin2"] = res.sin2;
  j["support"] = support_json(res.support);
  j["n"] = res.n_used;
  j["seed"] = res.seed;
  j["eta"] = res.eta;
  j["wall_time_ms"] = res.wall_time_ms;
  return j.dump();
}

CovModel model_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::config_error, std::string("model: ") + e.what());
  }
  if (!j.is_object()) fail(ErrorKind::config_error, "model: expected an object");
  const auto kind = field<std::string>(j, "kind", "model");
  const json params = j.contains("params") ? j["params"] : json::object();
  if (kind == "single_spike") {
    const auto d = field<std::size_t>(j, "d", "model");
    const auto s = field<std::size_t>(j, "s", "model");
    const auto nu = field<double>(params, "nu", "model.params");
    std::optional<std::vector<double>> vals;
    if (params.contains("support_values"))
      vals = field<std::vector<double>>(params, "support_values", "model.params");
    return make_single_spike(d, s, nu, vals);
  }
  if (kind == "counterexample") {
    return make_counterexample(field<std::size_t>(j, "s", "model"), field<std::size_t>(j, "d", "model"));
  }
  if (kind == "multi_spike") {
    const auto d = field<std::size_t>(j, "d", "model");
    const double iso = params.contains("iso") ? field<double>(params, "iso", "model.params") : 1.0;
    if (!params.contains("spikes") || !params["spikes"].is_array())
      fail(ErrorKind::config_error, "model.params: missing array 'spikes'");
    std::vector<Spike> spikes;
    for (const auto& sj : params["spikes"]) {
      Spike sp;
      sp.weight = field<double>(sj, "weight", "model.params.spikes[]");
      sp.indices = field<std::vector<std::size_t>>(sj, "indices", "model.params.spikes[]");
      sp.values = field<std::vector<double>>(sj, "values", "model.params.spikes[]");
      spikes.push_back(std::move(sp));
    }
    return make_multi_spike(d, std::move(spikes), iso);
  }
  if (kind == "general") {
    auto vals = field<std::vector<double>>(params, "eigvals", "model.params");
    auto cols = field<std::vector<std::vector<double>>>(params, "eigvecs", "model.params");
    std::vector<double> flat;
    for (const auto& c : cols) {
      if (c.size() != vals.size()) fail(ErrorKind::config_error, "model.params.eigvecs: column length != d");
      flat.insert(flat.end(), c.begin(), c.end());
    }
    return make_general(std::move(vals), std::move(flat));
  }
  fail(ErrorKind::config_error, "model.kind: unknown kind '" + kind + "'");
}

std::string model_to_json(const CovModel& m) {
  json j;
  j["kind"] = to_string(m.kind());
  j["d"] = m.dim();
  j["s"] = m.s();
  json params = json::object();
  if (m.kind() == ModelKind::single_spike) {
    params["nu"] = m.spikes().front().weight;
    params["support_values"] = m.spikes().front().values;
  } else if (m.kind() == ModelKind::counterexample) {
  } else if (m.structured()) {
    params["iso"] = m.iso();
    json spikes = json::array();
    for (const auto& sp : m.spikes())
      spikes.push_back({{"weight", sp.weight}, {"indices", sp.indices}, {"values", sp.values}});
    params["spikes"] = spikes;
  } else {
    params["eigvals"] = m.eigvals();
    json cols = json::array();
    for (std::size_t j2 = 0; j2 < m.dim(); ++j2) cols.push_back(m.eigvec(j2));
    params["eigvecs"] = cols;
  }
  j["params"] = params;
  j["index_base"] = 0;
  return j.dump();
}

}  // namespace spoja
