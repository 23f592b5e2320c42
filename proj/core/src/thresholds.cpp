#include <algorithm>
#include <cmath>
#include <numeric>

#include "qwit/errors.hpp"
#include "qwit/scenario.hpp"

namespace qwit {

double ThresholdMap::mean_c2_threshold() const {
  if (c2_threshold_per_beta.empty()) return 0.0;
  return std::accumulate(c2_threshold_per_beta.begin(), c2_threshold_per_beta.end(), 0.0) /
         static_cast<double>(c2_threshold_per_beta.size());
}

ThresholdMap threshold_map(const Scenario& base, const std::vector<double>& beta_grid,
                           const std::vector<double>& h_grid, double level,
                           const RunOptions& options) {
  if (beta_grid.empty() || h_grid.empty()) throw InvalidArgument("threshold_map: empty grid");
  if (base.model.family != ModelFamily::Annni) {
    throw InvalidArgument("threshold_map: the h axis is the ANNNI transverse field");
  }
  for (double b : beta_grid)
    if (!(b >= 0.0)) throw InvalidArgument("threshold_map: beta values must be >= 0");
  if (!(level > 0.0)) throw InvalidArgument("threshold_map: contour level must be positive");

  Scenario s = base;
  s.source = StateSource::Gibbs;
  s.sweep = {"h", h_grid};
  check_caps(s, options);

  const int la = s.sites_a_or_default();
  const Bipartition part = Bipartition::qubits(la, s.model.L - la);
  const DiagonalObservable oa = subsystem_magnetization(part.sites_a());
  const DiagonalObservable ob = subsystem_magnetization(part.sites_b());
  const auto rotations = scenario_rotations(s);

  ThresholdMap m;
  m.beta_grid = beta_grid;
  m.h_grid = h_grid;
  m.level = level;
  const Index nb = static_cast<Index>(beta_grid.size());
  const Index nh = static_cast<Index>(h_grid.size());
  m.c2_grid.resize(nb, nh);
  m.n_grid.resize(nb, nh);

  parallel_for(h_grid.size(), options.workers, [&](std::size_t jh) {
    ModelSpec spec = s.model;
    spec.h = h_grid[jh];
    const PreparedModel model = prepare_model(spec);
    const EigenDecomposition spectrum = eig_hermitian(model.hamiltonian);
    for (Index ib = 0; ib < nb; ++ib) {
      const DensityMatrix rho = gibbs_state(model, spectrum, beta_grid[ib]);
      const DensityMatrix rotated = rotate_state(rho, part, rotations.first, rotations.second);
      m.c2_grid(ib, static_cast<Index>(jh)) = connected_correlation(rotated, part, oa, ob);
      m.n_grid(ib, static_cast<Index>(jh)) = negativity(rho, part);
    }
  });

  m.c2_threshold_per_beta.assign(beta_grid.size(), 0.0);
  for (Index ib = 0; ib < nb; ++ib)
    for (Index jh = 0; jh < nh; ++jh)
      if (m.n_grid(ib, jh) < level) {
        m.c2_threshold_per_beta[ib] = std::max(m.c2_threshold_per_beta[ib], std::abs(m.c2_grid(ib, jh)));
      }

  std::vector<Index> order(nb);
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&](Index a, Index b) { return beta_grid[a] < beta_grid[b]; });
  m.beta_threshold_per_h.assign(h_grid.size(), std::nullopt);
  for (Index jh = 0; jh < nh; ++jh) {
    // Walk down from the largest beta while every point stays correctly classified.
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const bool exact = m.n_grid(*it, jh) >= level || std::abs(m.c2_grid(*it, jh)) <= kSeparableC2;
      if (!exact) break;
      m.beta_threshold_per_h[jh] = beta_grid[*it];
    }
  }
  return m;
}

}  // namespace qwit
