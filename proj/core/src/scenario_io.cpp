#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "qwit/errors.hpp"
#include "qwit/scenario.hpp"
#include "qwit/tolerances.hpp"

namespace qwit {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, std::initializer_list<const char*> allowed, const char* where) {
  for (const auto& [key, value] : j.items()) {
    if (key.rfind("comment", 0) == 0 || key.rfind("_", 0) == 0) continue;
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw InvalidArgument(std::string("config: unknown key '") + key + "' in " + where);
  }
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("config: bad value for '") + key + "': " + e.what());
  }
}

ModelFamily parse_family(const std::string& s) {
  if (s == "heisenberg") return ModelFamily::Heisenberg;
  if (s == "annni" || s == "ising") return ModelFamily::Annni;
  if (s == "pxp") return ModelFamily::Pxp;
  throw InvalidArgument("config: unknown model family '" + s + "'");
}

Boundary parse_boundary(const std::string& s) {
  if (s == "open") return Boundary::Open;
  if (s == "periodic") return Boundary::Periodic;
  throw InvalidArgument("config: boundary must be 'open' or 'periodic', got '" + s + "'");
}

ModelSpec parse_model(const json& j) {
  if (!j.is_object()) throw InvalidArgument("config: 'model' must be an object");
  reject_unknown(j, {"family", "L", "J", "W", "eta", "kappa", "h", "h_z", "Omega", "Delta",
                     "boundary", "sector"},
                 "model");
  if (!j.contains("family")) throw InvalidArgument("config: model.family is required");
  ModelSpec m;
  m.family = parse_family(j.at("family").get<std::string>());
  m.L = get_or(j, "L", m.L);
  m.J = get_or(j, "J", m.J);
  m.W = get_or(j, "W", m.W);
  m.eta = get_or(j, "eta", m.eta);
  m.kappa = get_or(j, "kappa", m.kappa);
  m.h = get_or(j, "h", m.h);
  m.h_z = get_or(j, "h_z", m.h_z);
  m.Omega = get_or(j, "Omega", m.Omega);
  m.Delta = get_or(j, "Delta", m.Delta);
  m.boundary = parse_boundary(get_or<std::string>(j, "boundary", "open"));
  if (j.contains("sector") && !j.at("sector").is_null()) m.sector = j.at("sector").get<int>();
  return m;
}

/// Explicit `values`, a linear `start/stop/step` range, or a `log10` range
/// {start, stop, per_decade} of exponents.
std::vector<double> parse_grid(const json& j, const char* where) {
  if (j.is_array()) return j.get<std::vector<double>>();
  if (!j.is_object()) throw InvalidArgument(std::string("config: bad grid in ") + where);
  if (j.contains("values")) return j.at("values").get<std::vector<double>>();
  if (j.contains("log10")) {
    const json& g = j.at("log10");
    const double a = g.at("start").get<double>();
    const double b = g.at("stop").get<double>();
    const int per = g.at("per_decade").get<int>();
    if (per < 1 || !(b >= a)) throw InvalidArgument(std::string("config: bad log10 grid in ") + where);
    const long n = std::lround((b - a) * per) + 1;
    std::vector<double> out;
    for (long i = 0; i < n; ++i) out.push_back(std::pow(10.0, a + static_cast<double>(i) / per));
    return out;
  }
  if (j.contains("start") && j.contains("stop") && j.contains("step")) {
    const double a = j.at("start").get<double>();
    const double b = j.at("stop").get<double>();
    const double step = j.at("step").get<double>();
    if (step == 0.0 || (b - a) / step < 0.0) {
      throw InvalidArgument(std::string("config: empty start/stop/step range in ") + where);
    }
    const long n = std::lround((b - a) / step) + 1;
    std::vector<double> out;
    for (long i = 0; i < n; ++i) out.push_back(a + static_cast<double>(i) * step);
    return out;
  }
  throw InvalidArgument(std::string("config: grid in ") + where +
                        " needs 'values', 'log10' or 'start'/'stop'/'step'");
}

Scenario parse_common(const json& j, bool need_sweep) {
  if (!j.is_object()) throw InvalidArgument("config: top level must be an object");
  reject_unknown(j, {"name", "model", "state", "bipartition", "observable", "rotation", "sweep",
                     "outputs", "seed", "thresholds"},
                 "scenario");
  Scenario s;
  s.name = get_or<std::string>(j, "name", s.name);
  if (!j.contains("model")) throw InvalidArgument("config: 'model' is required");
  s.model = parse_model(j.at("model"));

  if (j.contains("state")) {
    const json& st = j.at("state");
    reject_unknown(st, {"type", "beta", "gamma", "dt", "initial"}, "state");
    const std::string type = get_or<std::string>(st, "type", "gibbs");
    if (type == "gibbs") {
      s.source = StateSource::Gibbs;
      s.beta = get_or(st, "beta", s.beta);
    } else if (type == "lindblad") {
      s.source = StateSource::Lindblad;
      s.gamma = get_or(st, "gamma", s.gamma);
      s.dt = get_or(st, "dt", s.dt);
      if (get_or<std::string>(st, "initial", "neel") != "neel") {
        throw InvalidArgument("config: lindblad initial state must be 'neel'");
      }
    } else {
      throw InvalidArgument("config: state.type must be 'gibbs' or 'lindblad'");
    }
  }

  if (j.contains("bipartition")) {
    const json& b = j.at("bipartition");
    reject_unknown(b, {"L_A"}, "bipartition");
    if (b.contains("L_A")) s.sites_a = b.at("L_A").get<int>();
  }
  if (j.contains("observable") &&
      get_or<std::string>(j, "observable", "") != "subsystem_magnetization") {
    throw InvalidArgument("config: observable must be 'subsystem_magnetization'");
  }
  if (j.contains("rotation")) {
    const json& r = j.at("rotation");
    reject_unknown(r, {"kind", "h", "k"}, "rotation");
    const std::string kind = get_or<std::string>(r, "kind", "local_x");
    if (kind == "local_x") s.rotation.kind = RotationKind::LocalX;
    else if (kind == "fourier") s.rotation.kind = RotationKind::Fourier;
    else if (kind == "quench") s.rotation.kind = RotationKind::Quench;
    else throw InvalidArgument("config: rotation.kind must be local_x, fourier or quench");
    s.rotation.h = get_or(r, "h", s.rotation.h);
    s.rotation.k = get_or(r, "k", s.rotation.k);
  }
  if (j.contains("sweep")) {
    const json& sw = j.at("sweep");
    reject_unknown(sw, {"parameter", "values", "start", "stop", "step", "log10"}, "sweep");
    if (!sw.contains("parameter")) throw InvalidArgument("config: sweep.parameter is required");
    s.sweep.parameter = sw.at("parameter").get<std::string>();
    s.sweep.values = parse_grid(sw, "sweep");
  } else if (need_sweep) {
    throw InvalidArgument("config: 'sweep' is required");
  }
  if (j.contains("outputs")) s.outputs = j.at("outputs").get<std::vector<std::string>>();
  s.seed = get_or<std::uint64_t>(j, "seed", s.seed);
  return s;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("config: JSON parse error: ") + e.what());
  }
}

std::string fmt_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

Scenario parse_scenario(const std::string& json_text, bool require_sweep) {
  try {
    Scenario s = parse_common(parse_json(json_text), require_sweep);
    if (s.sweep.values.empty()) {
      s.source = StateSource::Gibbs;
      s.sweep = {"beta", {s.beta}};
    }
    s.validate();
    return s;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("config: ") + e.what());
  }
}

Scenario load_scenario(const std::string& path, bool require_sweep) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str(), require_sweep);
}

std::string scenario_to_json(const Scenario& s) {
  json model = {{"family", to_string(s.model.family)},
                {"L", s.model.L},
                {"boundary", to_string(s.model.boundary)}};
  switch (s.model.family) {
    case ModelFamily::Heisenberg:
      model["J"] = s.model.J;
      model["W"] = s.model.W;
      model["eta"] = s.model.eta;
      model["sector"] = s.model.sector ? json(*s.model.sector) : json(nullptr);
      break;
    case ModelFamily::Annni:
      model["J"] = s.model.J;
      model["kappa"] = s.model.kappa;
      model["h"] = s.model.h;
      model["h_z"] = s.model.h_z;
      break;
    case ModelFamily::Pxp:
      model["Omega"] = s.model.Omega;
      model["Delta"] = s.model.Delta;
      break;
  }
  json state = s.source == StateSource::Gibbs
                   ? json{{"type", "gibbs"}, {"beta", s.beta}}
                   : json{{"type", "lindblad"}, {"gamma", s.gamma}, {"dt", s.dt}, {"initial", "neel"}};
  json rotation = {{"kind", to_string(s.rotation.kind)}};
  if (s.rotation.kind == RotationKind::Quench) {
    rotation["h"] = s.rotation.h;
    rotation["k"] = s.rotation.k;
  }
  json out = {{"name", s.name},
              {"model", model},
              {"state", state},
              {"bipartition", {{"L_A", s.sites_a_or_default()}}},
              {"observable", "subsystem_magnetization"},
              {"rotation", rotation},
              {"sweep", {{"parameter", s.sweep.parameter}, {"values", s.sweep.values}}},
              {"outputs", s.outputs},
              {"seed", s.seed}};
  return out.dump();
}

void write_csv(std::ostream& out, const Scenario& s, const SweepResult& r) {
  const int la = s.sites_a_or_default();
  out << "# scenario: " << s.name << '\n';
  out << "# model: " << to_string(s.model.family) << " L=" << s.model.L
      << " boundary=" << to_string(s.model.boundary) << '\n';
  out << "# bipartition: L_A=" << la << " L_B=" << s.model.L - la << '\n';
  out << "# observable: subsystem_magnetization\n";
  out << "# rotation: " << to_string(s.rotation.kind) << '\n';
  out << "# seed: " << s.seed << '\n';
  out << "# config: " << scenario_to_json(s) << '\n';

  out << r.parameter;
  for (const auto& c : s.outputs) out << ',' << c;
  out << '\n';
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const WitnessResult& w = r.rows[i];
    out << fmt_number(r.values[i]);
    for (const auto& c : s.outputs) {
      out << ',';
      std::optional<double> v;
      if (c == "C1") v = w.C1;
      else if (c == "C2") v = w.C2;
      else if (c == "pearson_O") v = w.pearson_O;
      else if (c == "pearson_Oprime") v = w.pearson_Oprime;
      else if (c == "maccone_lhs") v = w.maccone_lhs;
      else if (c == "negativity") v = w.negativity;
      if (v) out << fmt_number(*v);
    }
    out << '\n';
  }
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw InvalidArgument("cannot write '" + tmp.string() + "'");
    f << content;
    f.flush();
    if (!f) throw InvalidArgument("write failed for '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, target);
}

DensityMatrix read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open state file '" + path + "'");
  long long dim = 0;
  if (!(in >> dim) || dim < 1 || dim > 4096) {
    throw InvalidArgument("state file: first line must be a dimension in [1, 4096]");
  }
  ComplexMatrix m(dim, dim);
  for (Index r = 0; r < dim; ++r)
    for (Index c = 0; c < dim; ++c) {
      double re = 0.0, im = 0.0;
      if (!(in >> re >> im)) {
        throw InvalidArgument("state file: expected " + std::to_string(dim * dim) +
                              " 're im' pairs, stopped at entry " + std::to_string(r * dim + c));
      }
      m(r, c) = Complex(re, im);
    }
  std::string extra;
  if (in >> extra) throw InvalidArgument("state file: trailing data after the matrix");
  DensityMatrix rho(std::move(m));
  if (!rho.is_psd(kTolerances.psd)) {
    throw InvalidArgument("state file: matrix is not positive semidefinite");
  }
  return rho;
}

std::string witness_json(const WitnessResult& r) {
  json out = {{"C1", r.C1},
              {"C2", r.C2},
              {"pearson_O", optional_json(r.pearson_O)},
              {"pearson_Oprime", optional_json(r.pearson_Oprime)},
              {"maccone_lhs", optional_json(r.maccone_lhs)},
              {"negativity", r.negativity},
              {"flags",
               {{"pearson_O_zero_variance", !r.pearson_O},
                {"pearson_Oprime_zero_variance", !r.pearson_Oprime}}}};
  return out.dump(2);
}

ThresholdRequest parse_threshold_request(const std::string& json_text) {
  try {
    const json j = parse_json(json_text);
    ThresholdRequest req{parse_common(j, false), {}, {}, 1e-4};
    if (!j.contains("thresholds")) throw InvalidArgument("config: 'thresholds' is required");
    const json& t = j.at("thresholds");
    reject_unknown(t, {"beta", "h", "level"}, "thresholds");
    if (!t.contains("beta") || !t.contains("h")) {
      throw InvalidArgument("config: thresholds needs 'beta' and 'h' grids");
    }
    req.beta_grid = parse_grid(t.at("beta"), "thresholds.beta");
    req.h_grid = parse_grid(t.at("h"), "thresholds.h");
    req.level = get_or(t, "level", req.level);
    if (req.base.sweep.values.empty()) req.base.sweep = {"h", req.h_grid};
    req.base.source = StateSource::Gibbs;
    req.base.validate();
    return req;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("config: ") + e.what());
  }
}

std::string threshold_map_json(const ThresholdMap& m) {
  auto matrix = [](const Eigen::MatrixXd& g) {
    json rows = json::array();
    for (Index i = 0; i < g.rows(); ++i) {
      std::vector<double> row(g.cols());
      for (Index k = 0; k < g.cols(); ++k) row[k] = g(i, k);
      rows.push_back(row);
    }
    return rows;
  };
  json beta_th = json::array();
  for (const auto& b : m.beta_threshold_per_h) beta_th.push_back(optional_json(b));
  json out = {{"beta_grid", m.beta_grid},
              {"h_grid", m.h_grid},
              {"N_contour_level", m.level},
              {"C2_grid", matrix(m.c2_grid)},
              {"N_grid", matrix(m.n_grid)},
              {"C2_threshold_per_beta", m.c2_threshold_per_beta},
              {"beta_threshold_per_h", beta_th},
              {"mean_C2_threshold", m.mean_c2_threshold()}};
  return out.dump(2);
}

}  // namespace qwit
