#include "qwit/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

#include "qwit/errors.hpp"

namespace qwit {

namespace {

bool strictly_monotone(const std::vector<double>& v) {
  if (v.size() < 2) return true;
  const bool up = v[1] > v[0];
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (up ? !(v[i] > v[i - 1]) : !(v[i] < v[i - 1])) return false;
  }
  return true;
}

bool is_model_parameter(const std::string& name) {
  static const char* names[] = {"J", "W", "eta", "kappa", "h", "h_z", "Omega", "Delta"};
  return std::any_of(std::begin(names), std::end(names), [&](const char* n) { return name == n; });
}

bool restricted(const ModelSpec& m) {
  return m.family == ModelFamily::Pxp || (m.family == ModelFamily::Heisenberg && m.sector);
}

}  // namespace

void set_model_parameter(ModelSpec& spec, const std::string& name, double value) {
  if (name == "J") spec.J = value;
  else if (name == "W") spec.W = value;
  else if (name == "eta") spec.eta = value;
  else if (name == "kappa") spec.kappa = value;
  else if (name == "h") spec.h = value;
  else if (name == "h_z") spec.h_z = value;
  else if (name == "Omega") spec.Omega = value;
  else if (name == "Delta") spec.Delta = value;
  else throw InvalidArgument("unknown model parameter '" + name + "'");
}

void Scenario::validate() const {
  if (model.L < 2) throw InvalidArgument("scenario: L must be >= 2");
  const int la = sites_a_or_default();
  if (la < 1 || la >= model.L) {
    throw InvalidArgument("scenario: L_A = " + std::to_string(la) + " must lie in [1, L-1]");
  }
  if (sweep.values.empty()) throw InvalidArgument("scenario: sweep has no values");
  if (!strictly_monotone(sweep.values)) {
    throw InvalidArgument("scenario: sweep values must be strictly monotone");
  }
  for (const auto& c : outputs) {
    if (std::find(kWitnessColumns.begin(), kWitnessColumns.end(), c) == kWitnessColumns.end()) {
      throw InvalidArgument("scenario: unknown output column '" + c + "'");
    }
  }
  if (model.sector && model.family != ModelFamily::Heisenberg) {
    throw InvalidArgument("scenario: a magnetization sector applies to the Heisenberg model only");
  }
  if (model.sector) sector_basis(model.L, *model.sector);
  if (rotation.kind == RotationKind::Custom) {
    throw InvalidArgument("scenario: rotation must be local_x, fourier or quench");
  }
  if (rotation.kind == RotationKind::Quench) quench_time(rotation.h, rotation.k);

  if (source == StateSource::Gibbs) {
    if (sweep.parameter == "beta") {
      for (double b : sweep.values)
        if (!(b >= 0.0)) throw InvalidArgument("scenario: beta values must be >= 0");
    } else if (is_model_parameter(sweep.parameter)) {
      if (!(beta >= 0.0)) throw InvalidArgument("scenario: beta must be >= 0");
    } else {
      throw InvalidArgument("scenario: gibbs sweeps take 'beta' or a model parameter, got '" +
                            sweep.parameter + "'");
    }
  } else {
    if (sweep.parameter != "time") throw InvalidArgument("scenario: lindblad sweeps are over 'time'");
    if (model.family == ModelFamily::Pxp) {
      throw InvalidArgument("scenario: lindblad dynamics supports heisenberg and annni");
    }
    if (model.sector) throw InvalidArgument("scenario: lindblad runs in the full register");
    if (sweep.values.front() < 0.0 || (sweep.values.size() > 1 && sweep.values[1] < sweep.values[0])) {
      throw InvalidArgument("scenario: sample times must be >= 0 and increasing");
    }
    if (!(gamma >= 0.0)) throw InvalidArgument("scenario: gamma must be >= 0");
    if (!(dt > 0.0)) throw InvalidArgument("scenario: dt must be positive");
  }
}

void check_caps(const Scenario& s, const RunOptions& options) {
  const int L = s.model.L;
  std::string problem;
  if (L > 30 || (Index{1} << L) > options.caps.full_dim) {
    problem = "register dimension 2^" + std::to_string(L) + " exceeds the cap " +
              std::to_string(options.caps.full_dim);
  } else if (L > options.caps.spectrum_sites_full &&
             !(restricted(s.model) && L <= options.caps.spectrum_sites_sector)) {
    problem = "spectrum workloads are capped at L = " +
              std::to_string(options.caps.spectrum_sites_full) + " (L = " +
              std::to_string(options.caps.spectrum_sites_sector) +
              " with a sector restriction), got L = " + std::to_string(L);
  }
  if (problem.empty()) return;
  if (!options.cap_override) throw CapExceeded(problem + "; pass --cap-override to run anyway");
  if (options.warn) options.warn("cap overridden: " + problem);
}

std::pair<MubRotation, MubRotation> scenario_rotations(const Scenario& s) {
  const int la = s.sites_a_or_default();
  const int lb = s.model.L - la;
  switch (s.rotation.kind) {
    case RotationKind::LocalX: return {local_x_rotation(la), local_x_rotation(lb)};
    case RotationKind::Fourier:
      return {fourier_mub(Index{1} << la), fourier_mub(Index{1} << lb)};
    case RotationKind::Quench:
      return {quench_rotation(la, s.rotation.h, s.rotation.k),
              quench_rotation(lb, s.rotation.h, s.rotation.k)};
    case RotationKind::Custom: break;
  }
  throw InvalidArgument("scenario: unsupported rotation");
}

PreparedModel prepare_model(const ModelSpec& spec) {
  switch (spec.family) {
    case ModelFamily::Heisenberg: {
      ComplexMatrix h = build_heisenberg(spec);
      if (!spec.sector) return {std::move(h), std::nullopt};
      SectorBasis basis = sector_basis(spec.L, *spec.sector);
      return {project_to_sector(h, basis), std::move(basis)};
    }
    case ModelFamily::Annni: return {build_annni(spec), std::nullopt};
    case ModelFamily::Pxp: {
      ConstrainedHamiltonian c = build_pxp(spec);
      return {std::move(c.hamiltonian), std::move(c.basis)};
    }
  }
  throw InvalidArgument("prepare_model: unknown family");
}

DensityMatrix gibbs_state(const PreparedModel& model, const EigenDecomposition& spectrum,
                          double beta) {
  if (model.basis) return embed_state(gibbs(spectrum, beta), *model.basis);
  return gibbs(spectrum, beta);
}

void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& f) {
  if (n == 0) return;
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned count = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(n)));
  if (count == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(count);
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

SweepResult run_scenario(const Scenario& s, const RunOptions& options) {
  s.validate();
  check_caps(s, options);

  const int la = s.sites_a_or_default();
  const Bipartition part = Bipartition::qubits(la, s.model.L - la);
  const DiagonalObservable oa = subsystem_magnetization(part.sites_a());
  const DiagonalObservable ob = subsystem_magnetization(part.sites_b());
  const auto rotations = scenario_rotations(s);
  const MubRotation& ua = rotations.first;
  const MubRotation& ub = rotations.second;
  EvaluateOptions eval;
  eval.negativity = std::find(s.outputs.begin(), s.outputs.end(), "negativity") != s.outputs.end();

  SweepResult result{s.sweep.parameter, s.sweep.values, {}};
  const std::size_t n = s.sweep.values.size();
  result.rows.resize(n);
  auto evaluate = [&](std::size_t i, const DensityMatrix& rho) {
    result.rows[i] = evaluate_all(rho, part, oa, ob, ua, ub, eval);
  };

  if (s.source == StateSource::Lindblad) {
    const LindbladSpec spec{s.gamma, s.dt, s.sweep.values};
    const auto states = lindblad_evolve(neel_state(s.model.L), build_full(s.model), spec);
    parallel_for(n, options.workers, [&](std::size_t i) { evaluate(i, states[i].state); });
  } else if (s.sweep.parameter == "beta") {
    const PreparedModel model = prepare_model(s.model);
    const EigenDecomposition spectrum = eig_hermitian(model.hamiltonian);
    parallel_for(n, options.workers, [&](std::size_t i) {
      evaluate(i, gibbs_state(model, spectrum, s.sweep.values[i]));
    });
  } else {
    parallel_for(n, options.workers, [&](std::size_t i) {
      ModelSpec spec = s.model;
      set_model_parameter(spec, s.sweep.parameter, s.sweep.values[i]);
      const PreparedModel model = prepare_model(spec);
      evaluate(i, gibbs_state(model, eig_hermitian(model.hamiltonian), s.beta));
    });
  }
  return result;
}

}  // namespace qwit
