#pragma once

// Hamiltonians for the three spin-chain families and magnetization-sector /
// constrained-subspace bookkeeping.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "qwit/linalg.hpp"

namespace qwit {

enum class ModelFamily { Heisenberg, Annni, Pxp };
enum class Boundary { Open, Periodic };

/// Parameters of one Hamiltonian. Fields irrelevant to `family` are ignored.
///
///   Heisenberg: H = -J sum sigma_k . sigma_{k+1} + sum_k W cos(2 pi eta k) sigma^z_k
///   ANNNI:      H = -J sum s^z_k s^z_{k+1} + kappa sum s^z_k s^z_{k+2} - h sum s^x_k - h_z sum s^z_k
///   PXP:        H = sum_k (Omega P s^x_k P + Delta s^z_k), no two neighbouring up spins
struct ModelSpec {
  ModelFamily family = ModelFamily::Heisenberg;
  int L = 2;
  double J = 1.0;
  double W = 0.0;
  double eta = (std::sqrt(5.0) - 1.0) / 2.0;
  double kappa = 0.0;
  double h = 0.0;
  double h_z = 0.0;
  double Omega = 1.0;
  double Delta = 0.0;
  Boundary boundary = Boundary::Open;
  /// Total-magnetization sector used for state preparation (Heisenberg only).
  std::optional<int> sector;
};

std::string to_string(ModelFamily f);
std::string to_string(Boundary b);

/// Ascending list of full-register basis indices that satisfy a charge or
/// constraint predicate.
struct SectorBasis {
  int L = 0;
  int charge = 0;            // total magnetization M; unused when constrained
  bool constrained = false;  // PXP no-adjacent-up-spins subspace
  std::vector<Index> indices;

  Index size() const { return static_cast<Index>(indices.size()); }
};

/// Basis states with sum_k sigma^z_k = M. Throws InvalidArgument if empty.
SectorBasis sector_basis(int L, int M);

/// Basis states with no two neighbouring up spins (bit 0 = up).
SectorBasis pxp_basis(int L, Boundary boundary);

ComplexMatrix build_heisenberg(const ModelSpec& spec);
ComplexMatrix build_annni(const ModelSpec& spec);

struct ConstrainedHamiltonian {
  ComplexMatrix hamiltonian;  // in the constrained basis
  SectorBasis basis;
};
ConstrainedHamiltonian build_pxp(const ModelSpec& spec);

/// Heisenberg and ANNNI only: full 2^L matrix.
ComplexMatrix build_full(const ModelSpec& spec);

/// Rows/columns of m restricted to basis.indices.
ComplexMatrix project_to_sector(const ComplexMatrix& m, const SectorBasis& basis);

/// Zero-padded embedding of a sector matrix into the full 2^L register.
ComplexMatrix embed_from_sector(const ComplexMatrix& m, const SectorBasis& basis, int L);

/// Diagonal operator sum_k sigma^z_k on L sites.
ComplexMatrix total_sz(int L);

}  // namespace qwit
