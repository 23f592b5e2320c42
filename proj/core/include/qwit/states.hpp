#pragma once

#include <optional>
#include <random>
#include <vector>

#include "qwit/linalg.hpp"
#include "qwit/models.hpp"

namespace qwit {

using Rng = std::mt19937_64;

/// Thermal state e^{-beta H}/Z, shifted by the ground energy for stability.
DensityMatrix gibbs(const ComplexMatrix& H, double beta);

/// Same, from a precomputed spectrum (reused across beta sweeps).
DensityMatrix gibbs(const EigenDecomposition& spectrum, double beta);

/// Gibbs state of a sector-restricted Hamiltonian, embedded in the full register.
DensityMatrix gibbs_in_sector(const ComplexMatrix& H_sector, const SectorBasis& basis,
                              double beta);

/// Embeds a state defined on basis.indices into the full 2^L register.
DensityMatrix embed_state(const DensityMatrix& rho_sector, const SectorBasis& basis);

/// |up down up down ...><...| on L sites.
DensityMatrix neel_state(int L);

struct LindbladSpec {
  double gamma = 0.0;               // dephasing rate, L_k = sqrt(gamma/2) sigma^z_k
  double dt = 0.01;                 // RK4 step
  std::vector<double> sample_times; // strictly increasing, >= 0

  double t_max() const { return sample_times.empty() ? 0.0 : sample_times.back(); }
};

struct TimedState {
  double time;
  DensityMatrix state;
};

/// Integrates d rho/dt = -i[H, rho] + sum_k (2 L_k rho L_k^dag - {L_k^dag L_k, rho})
/// with classical RK4 and returns the state at every sample time. Outputs are
/// re-Hermitized and trace-renormalized; a trace drift above
/// kTolerances.lindblad_abort raises IntegratorAbort.
std::vector<TimedState> lindblad_evolve(const DensityMatrix& rho0, const ComplexMatrix& H,
                                        const LindbladSpec& spec);

/// Two-qubit family (1-eps) rho_S + eps |psi><psi|, where rho_S mixes two real
/// product states with weights 1/2 and Bloch vectors (r_i, 0, sqrt(1-r_i^2)),
/// (s_i, 0, sqrt(1-s_i^2)), and |psi> = c|00> + sqrt(1-c^2)|11>.
DensityMatrix two_qubit_family(double r1, double r2, double s1, double s2, double eps, double c);

enum class SeparableFlavor { Real, ImaginaryOffdiag, FixedCharge, Generic };

const char* to_string(SeparableFlavor f);

struct ProductTerm {
  double weight;
  DensityMatrix a;
  DensityMatrix b;
};

/// Convex mixture sum_i p_i rho_i^A (x) rho_i^B.
struct SeparableEnsemble {
  SeparableFlavor flavor;
  Bipartition part;
  std::vector<ProductTerm> terms;
  std::optional<int> charge;  // FixedCharge only: total magnetization

  DensityMatrix state() const;
};

struct SeparableRequest {
  SeparableFlavor flavor = SeparableFlavor::Generic;
  Bipartition part = Bipartition::qubits(1, 1);
  int n_terms = 1;
  /// FixedCharge: total magnetization; drawn uniformly from feasible values when empty.
  std::optional<int> charge;
};

SeparableEnsemble random_separable(const SeparableRequest& request, Rng& rng);
SeparableEnsemble random_separable(const SeparableRequest& request, std::uint64_t seed);

/// Random factor generators, exposed for tests.
DensityMatrix random_real_density(Index d, Rng& rng);
DensityMatrix random_imaginary_offdiag_density(Index d, Rng& rng);
DensityMatrix random_generic_density(Index d, Rng& rng);
/// Generic state supported on the magnetization-M sector of L qubits.
DensityMatrix random_sector_density(int L, int M, Rng& rng);

}  // namespace qwit
