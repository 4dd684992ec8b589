// Copyright 2026 The pathlab Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#include "pathlab/io.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace pathlab {

namespace fs = std::filesystem;

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

// Runs a parser and reports nlohmann type or key errors as invalid_argument.
template <class F>
auto parse_as(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed ") + what + " JSON: " + e.what());
  }
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(std::string("missing key '") + key + "'");
  return j.at(key);
}

json config_json(const SpinConfig& x) {
  json a = json::array();
  for (Eigen::Index i = 0; i < x.size(); ++i) a.push_back(x(i));
  return a;
}

SpinConfig config_from(const json& a) {
  if (!a.is_array()) throw std::invalid_argument("configuration must be an array");
  SpinConfig x(static_cast<Eigen::Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) x(static_cast<Eigen::Index>(i)) = a[i].get<int>();
  return x;
}

json path_json(const std::vector<PathPoint>& points) {
  json a = json::array();
  for (const auto& p : points) a.push_back({p.t, p.value});
  return a;
}

std::vector<PathPoint> path_from(const json& a) {
  if (!a.is_array()) throw std::invalid_argument("path must be an array of [t, value] pairs");
  std::vector<PathPoint> out;
  for (const auto& p : a) {
    if (!p.is_array() || p.size() != 2) throw std::invalid_argument("path point must be [t, value]");
    out.push_back({p[0].get<double>(), p[1].get<double>()});
  }
  return out;
}

template <Vartype V>
json model_json(const QuadraticModel<double, V>& m) {
  json lin = json::array();
  for (const auto& [i, h] : m.linear()) lin.push_back({i, h});
  json quad = json::array();
  for (const auto& [ij, J] : m.quadratic()) quad.push_back({ij.first, ij.second, J});
  return {{"n", m.num_variables()}, {"domain", to_string(V)}, {"linear", lin}, {"quadratic", quad}, {"offset", m.offset()}};
}

template <Vartype V>
QuadraticModel<double, V> model_from(const json& j) {
  return parse_as("model", [&] {
    const std::string domain = field(j, "domain").get<std::string>();
    if (domain != to_string(V)) {
      throw std::invalid_argument("model domain is '" + domain + "', expected '" + to_string(V) + "'");
    }
    QuadraticModel<double, V> m(field(j, "n").get<int>());
    for (const auto& e : field(j, "linear")) {
      if (!e.is_array() || e.size() != 2) throw std::invalid_argument("linear entry must be [i, bias]");
      m.add_linear(e[0].get<int>(), e[1].get<double>());
    }
    for (const auto& e : field(j, "quadratic")) {
      if (!e.is_array() || e.size() != 3) throw std::invalid_argument("quadratic entry must be [i, j, bias]");
      const int a = e[0].get<int>();
      const int b = e[1].get<int>();
      if (!(a < b)) throw std::invalid_argument("quadratic entry must satisfy i < j");
      m.add_quadratic(a, b, e[2].get<double>());
    }
    if (j.contains("offset")) m.set_offset(j.at("offset").get<double>());
    return m;
  });
}

json range_json(const WeightRange& r) { return json::array({r.lo, r.hi}); }

WeightRange range_from(const json& a) {
  if (!a.is_array() || a.size() != 2) throw std::invalid_argument("weight range must be [lo, hi]");
  return {a[0].get<double>(), a[1].get<double>()};
}

}  // namespace

json to_json(const WeightedGraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges) edges.push_back({e.u, e.v, e.w});
  json j = {{"n", g.n}, {"edges", edges}, {"vertex_weights", g.vertex_weights}};
  if (!g.edge_weighted) j["edge_weighted"] = false;
  return j;
}

WeightedGraph graph_from_json(const json& j) {
  return parse_as("graph", [&] {
    WeightedGraph g;
    g.n = field(j, "n").get<int>();
    for (const auto& e : field(j, "edges")) {
      if (!e.is_array() || (e.size() != 2 && e.size() != 3)) throw std::invalid_argument("edge must be [u, v, w]");
      g.edges.push_back({e[0].get<int>(), e[1].get<int>(), e.size() == 3 ? e[2].get<double>() : 1.0});
    }
    if (j.contains("vertex_weights")) g.vertex_weights = j.at("vertex_weights").get<std::vector<double>>();
    if (j.contains("edge_weighted")) g.edge_weighted = j.at("edge_weighted").get<bool>();
    g.validate();
    return g;
  });
}

json to_json(const IsingModel& m) { return model_json(m); }
json to_json(const QuboModel& m) { return model_json(m); }
IsingModel ising_from_json(const json& j) { return model_from<Vartype::Spin>(j); }
QuboModel qubo_from_json(const json& j) { return model_from<Vartype::Binary>(j); }

json to_json(const SchedulePlan& plan) {
  return {{"T", plan.duration()},
          {"anneal", path_json(plan.anneal.points)},
          {"hgain", plan.hgain ? path_json(plan.hgain->points) : json(nullptr)},
          {"reinitialize", plan.reinitialize}};
}

SchedulePlan schedule_from_json(const json& j, const AnnealFunctions& functions) {
  return parse_as("schedule", [&] {
    AnnealPath anneal{path_from(field(j, "anneal"))};
    std::optional<HGainPath> hgain;
    if (j.contains("hgain") && !j.at("hgain").is_null()) hgain = HGainPath{path_from(j.at("hgain"))};
    const bool reinit = j.contains("reinitialize") ? j.at("reinitialize").get<bool>() : true;
    SchedulePlan plan = make_plan(std::move(anneal), std::move(hgain), functions, reinit);
    if (j.contains("T") && j.at("T").get<double>() != plan.duration()) {
      throw std::invalid_argument("schedule T does not match the last anneal point");
    }
    return plan;
  });
}

json to_json(const SampleSet& s) {
  json records = json::array();
  for (const auto& r : s.records) records.push_back({{"config", config_json(r.config)}, {"count", r.count}, {"energy", r.energy}});
  json meta = json::object();
  for (const auto& [k, v] : s.meta) meta[k] = v;
  return {{"shots", s.shots}, {"records", records}, {"meta", meta}};
}

SampleSet samples_from_json(const json& j) {
  return parse_as("sample set", [&] {
    SampleSet s;
    for (const auto& r : field(j, "records")) {
      s.records.push_back({config_from(field(r, "config")), field(r, "count").get<std::int64_t>(),
                           field(r, "energy").get<double>()});
    }
    if (j.contains("meta")) {
      for (const auto& [k, v] : j.at("meta").items()) s.meta[k] = v.get<std::string>();
    }
    canonicalize(s);
    if (j.contains("shots") && j.at("shots").get<std::int64_t>() != s.shots) {
      throw std::invalid_argument("sample set shots do not match the record counts");
    }
    return s;
  });
}

json to_json(const OptResult& r, const SearchSpace& space) {
  json dims = json::array();
  for (const auto& d : space.dims()) dims.push_back({{"name", d.name}, {"lower", d.lower}, {"upper", d.upper}});
  json history = json::array();
  for (const auto& o : r.history) {
    json point = json::array();
    for (Eigen::Index k = 0; k < o.point.size(); ++k) point.push_back(o.point(k));
    history.push_back({{"point", point}, {"value", o.value}});
  }
  json best = json::array();
  for (Eigen::Index k = 0; k < r.best_point.size(); ++k) best.push_back(r.best_point(k));
  json j = {{"space", dims}, {"best_point", best}, {"best_value", r.best_value}, {"failures", r.failures},
            {"history", history}};
  if (r.surrogate) {
    const auto& k = r.surrogate->kernel();
    json ls = json::array();
    for (Eigen::Index d = 0; d < k.length_scales.size(); ++d) ls.push_back(k.length_scales(d));
    j["surrogate"] = {{"length_scales", ls},
                      {"signal_variance", k.signal_variance},
                      {"noise", r.surrogate->noise()},
                      {"jitter", r.surrogate->jitter()},
                      {"log_marginal_likelihood", r.surrogate->log_marginal_likelihood()}};
  }
  if (r.heatmap) j["heatmap"] = to_json(*r.heatmap);
  return j;
}

json to_json(const Heatmap& h) {
  auto vec = [](const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); };
  auto mat = [](const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
      rows.push_back(row);
    }
    return rows;
  };
  return {{"dims", {h.dim_x, h.dim_y}}, {"names", {h.name_x, h.name_y}}, {"xs", vec(h.xs)},
          {"ys", vec(h.ys)},            {"mean", mat(h.mean)},              {"variance", mat(h.variance)}};
}

Heatmap heatmap_from_json(const json& j) {
  return parse_as("heatmap", [&] {
    Heatmap h;
    const auto dims = field(j, "dims").get<std::vector<int>>();
    const auto names = field(j, "names").get<std::vector<std::string>>();
    if (dims.size() != 2 || names.size() != 2) throw std::invalid_argument("heatmap needs two dimensions");
    h.dim_x = dims[0];
    h.dim_y = dims[1];
    h.name_x = names[0];
    h.name_y = names[1];
    const auto xs = field(j, "xs").get<std::vector<double>>();
    const auto ys = field(j, "ys").get<std::vector<double>>();
    h.xs = Eigen::Map<const Eigen::VectorXd>(xs.data(), static_cast<Eigen::Index>(xs.size()));
    h.ys = Eigen::Map<const Eigen::VectorXd>(ys.data(), static_cast<Eigen::Index>(ys.size()));
    auto mat = [&](const json& rows) {
      if (rows.size() != xs.size()) throw std::invalid_argument("heatmap layer has the wrong shape");
      Eigen::MatrixXd m(xs.size(), ys.size());
      for (std::size_t i = 0; i < xs.size(); ++i) {
        if (rows[i].size() != ys.size()) throw std::invalid_argument("heatmap layer has the wrong shape");
        for (std::size_t k = 0; k < ys.size(); ++k) m(i, k) = rows[i][k].get<double>();
      }
      return m;
    };
    h.mean = mat(field(j, "mean"));
    h.variance = mat(field(j, "variance"));
    return h;
  });
}

OptHistory opt_history_from_json(const json& j) {
  return parse_as("optimizer result", [&] {
    OptHistory out;
    std::vector<Dimension> dims;
    for (const auto& d : field(j, "space")) {
      dims.push_back({field(d, "name").get<std::string>(), field(d, "lower").get<double>(),
                      field(d, "upper").get<double>()});
    }
    out.space = SearchSpace(std::move(dims));
    for (const auto& o : field(j, "history")) {
      const auto p = field(o, "point").get<std::vector<double>>();
      out.history.push_back(
          {Eigen::Map<const Eigen::VectorXd>(p.data(), static_cast<Eigen::Index>(p.size())), field(o, "value").get<double>()});
    }
    if (j.contains("heatmap")) out.heatmap = heatmap_from_json(j.at("heatmap"));
    return out;
  });
}

json to_json(const MethodParams& p) {
  return {{"alpha1", p.alpha1}, {"alpha2", p.alpha2}, {"t_mid", p.t_mid}, {"g_mid", p.g_mid},
          {"u1", p.u1},         {"u2", p.u2},         {"s_inv", p.s_inv}};
}

MethodParams params_from_json(const json& j) {
  return parse_as("parameters", [&] {
    MethodParams p;
    for (const auto& [key, value] : j.items()) {
      if (key == "alpha1") p.alpha1 = value.get<double>();
      else if (key == "alpha2") p.alpha2 = value.get<double>();
      else if (key == "t_mid") p.t_mid = value.get<double>();
      else if (key == "g_mid") p.g_mid = value.get<double>();
      else if (key == "u1") p.u1 = value.get<double>();
      else if (key == "u2") p.u2 = value.get<double>();
      else if (key == "s_inv") p.s_inv = value.get<double>();
      else throw std::invalid_argument("unknown parameter '" + key + "'");
    }
    return p;
  });
}

json to_json(const ParameterRegistry& r) {
  json j = json::object();
  for (const auto& [k, p] : r.entries()) j[k] = to_json(p);
  return j;
}

ParameterRegistry registry_from_json(const json& j) {
  return parse_as("registry", [&] {
    if (!j.is_object()) throw std::invalid_argument("registry must be an object");
    ParameterRegistry r;
    for (const auto& [k, v] : j.items()) r.entries()[k] = params_from_json(v);
    return r;
  });
}

json to_json(const Objective& o) {
  return {{"usable", o.usable}, {"value", o.usable ? json(o.value) : json(nullptr)}, {"config", config_json(o.config)}};
}

Objective objective_from_json(const json& j) {
  return parse_as("baseline", [&] {
    Objective o;
    o.usable = field(j, "usable").get<bool>();
    if (o.usable) o.value = field(j, "value").get<double>();
    o.config = config_from(field(j, "config"));
    return o;
  });
}

json to_json(const ResultRow& row) {
  json meta = json::object();
  for (const auto& [k, v] : row.meta) meta[k] = v;
  return {{"method", to_string(row.method)},
          {"T", row.anneal_T},
          {"density", row.density},
          {"mean_improvement", row.mean_improvement},
          {"values", row.values},
          {"meta", meta}};
}

ResultRow result_row_from_json(const json& j) {
  return parse_as("result row", [&] {
    ResultRow row;
    row.method = method_from_string(field(j, "method").get<std::string>());
    row.anneal_T = field(j, "T").get<double>();
    row.density = field(j, "density").get<double>();
    row.mean_improvement = field(j, "mean_improvement").get<double>();
    row.values = field(j, "values").get<std::vector<double>>();
    if (j.contains("meta")) {
      for (const auto& [k, v] : j.at("meta").items()) row.meta[k] = v.get<std::string>();
    }
    return row;
  });
}

json to_json(const ExperimentConfig& c) {
  json methods = json::array();
  for (Method m : c.methods) methods.push_back(to_string(m));
  return {{"problem", to_string(c.problem)},
          {"n", c.n},
          {"densities", c.densities},
          {"instances_per_density", c.instances_per_density},
          {"validation_instances", c.validation_instances},
          {"baseline_shots", c.baseline_shots},
          {"baseline_T", c.baseline_T},
          {"shots", c.shots},
          {"method", to_string(c.method)},
          {"methods", methods},
          {"backend", to_string(c.backend)},
          {"seed", c.seed},
          {"anneal_T", c.anneal_T},
          {"tune_T", c.tune_T},
          {"bayes",
           {{"init_points", c.bayes.init_points},
            {"n_iter", c.bayes.n_iter},
            {"noise", c.bayes.noise},
            {"kappa", c.bayes.kappa},
            {"random_starts", c.bayes.random_starts},
            {"heatmap_resolution", c.bayes.heatmap_resolution}}},
          {"dt", c.dt ? json(*c.dt) : json(nullptr)},
          {"integrator", to_string(c.integrator)},
          {"classical_sweeps", c.classical_sweeps},
          {"statevector_limit", c.statevector_limit},
          {"alpha1", c.alpha1},
          {"alpha2", c.alpha2},
          {"tune_alphas", c.tune_alphas},
          {"edge_weights", range_json(c.edge_weights)},
          {"vertex_weights", range_json(c.vertex_weights)},
          {"threads", c.threads}};
}

ExperimentConfig config_from_json(const json& j) {
  return parse_as("config", [&] {
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
    ExperimentConfig c;
    for (const auto& [key, v] : j.items()) {
      if (key == "problem") c.problem = problem_kind_from_string(v.get<std::string>());
      else if (key == "n") c.n = v.get<int>();
      else if (key == "densities") c.densities = v.get<std::vector<double>>();
      else if (key == "instances_per_density") c.instances_per_density = v.get<int>();
      else if (key == "validation_instances") c.validation_instances = v.get<int>();
      else if (key == "baseline_shots") c.baseline_shots = v.get<std::int64_t>();
      else if (key == "baseline_T") c.baseline_T = v.get<double>();
      else if (key == "shots") c.shots = v.get<std::int64_t>();
      else if (key == "method") c.method = method_from_string(v.get<std::string>());
      else if (key == "methods") {
        c.methods.clear();
        for (const auto& m : v) c.methods.push_back(method_from_string(m.get<std::string>()));
      } else if (key == "backend") c.backend = backend_from_string(v.get<std::string>());
      else if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "anneal_T") c.anneal_T = v.get<std::vector<double>>();
      else if (key == "tune_T") c.tune_T = v.get<double>();
      else if (key == "bayes") {
        for (const auto& [bk, bv] : v.items()) {
          if (bk == "init_points") c.bayes.init_points = bv.get<int>();
          else if (bk == "n_iter") c.bayes.n_iter = bv.get<int>();
          else if (bk == "noise") c.bayes.noise = bv.get<double>();
          else if (bk == "kappa") c.bayes.kappa = bv.get<double>();
          else if (bk == "random_starts") c.bayes.random_starts = bv.get<int>();
          else if (bk == "heatmap_resolution") c.bayes.heatmap_resolution = bv.get<int>();
          else throw std::invalid_argument("unknown config key 'bayes." + bk + "'");
        }
      } else if (key == "dt") {
        if (v.is_null()) c.dt.reset();
        else c.dt = v.get<double>();
      } else if (key == "integrator") c.integrator = integrator_from_string(v.get<std::string>());
      else if (key == "classical_sweeps") c.classical_sweeps = v.get<int>();
      else if (key == "statevector_limit") c.statevector_limit = v.get<int>();
      else if (key == "alpha1") c.alpha1 = v.get<double>();
      else if (key == "alpha2") c.alpha2 = v.get<double>();
      else if (key == "tune_alphas") c.tune_alphas = v.get<bool>();
      else if (key == "edge_weights") c.edge_weights = range_from(v);
      else if (key == "vertex_weights") c.vertex_weights = range_from(v);
      else if (key == "threads") c.threads = v.get<int>();
      else throw std::invalid_argument("unknown config key '" + key + "'");
    }
    c.validate();
    return c;
  });
}

std::string table_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream os;
  os << "method,T,density,mean_improvement\n";
  for (const auto& r : rows) {
    os << to_string(r.method) << ',' << format_number(r.anneal_T) << ',' << format_number(r.density) << ','
       << format_number(r.mean_improvement) << '\n';
  }
  return os.str();
}

std::string heatmap_csv(const Heatmap& h) {
  std::ostringstream os;
  os << "x,y,mean,variance\n";
  for (Eigen::Index i = 0; i < h.xs.size(); ++i) {
    for (Eigen::Index j = 0; j < h.ys.size(); ++j) {
      os << format_number(h.xs(i)) << ',' << format_number(h.ys(j)) << ',' << format_number(h.mean(i, j)) << ','
         << format_number(h.variance(i, j)) << '\n';
    }
  }
  return os.str();
}

std::string scaling_csv(const std::vector<ScalingRow>& rows) {
  std::ostringstream os;
  os << "alpha1,mean_improvement\n";
  for (const auto& r : rows) os << format_number(r.alpha1) << ',' << format_number(r.mean_improvement) << '\n';
  return os.str();
}

std::string history_csv(const OptResult& r, const SearchSpace& space) {
  std::ostringstream os;
  for (const auto& d : space.dims()) os << d.name << ',';
  os << "value\n";
  for (const auto& o : r.history) {
    for (Eigen::Index k = 0; k < o.point.size(); ++k) os << format_number(o.point(k)) << ',';
    os << format_number(o.value) << '\n';
  }
  return os.str();
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text(const std::string& path, const std::string& content) {
  const fs::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(p.parent_path(), ec);
    if (ec) throw std::runtime_error("cannot create directory '" + p.parent_path().string() + "': " + ec.message());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

json read_json(const std::string& path) {
  const std::string text = read_text(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_json(const std::string& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

}  // namespace pathlab
