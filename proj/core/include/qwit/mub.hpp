#pragma once

// Rotations into bases mutually unbiased with the computational basis.

#include <optional>
#include <string>
#include <vector>

#include "qwit/linalg.hpp"
#include "qwit/observable.hpp"

namespace qwit {

enum class RotationKind { LocalX, Fourier, Quench, Custom };

const char* to_string(RotationKind k);

using PhaseTable = Eigen::MatrixXi;

struct MubRotation {
  Index dim = 0;
  ComplexMatrix matrix;
  RotationKind kind = RotationKind::Custom;
  int sites = 0;  // qubit count when dim = 2^sites, else 0
  /// LocalX only: U_pq = d^{-1/2} exp(-i pi phi_pq / 2), phi_pq in [0, L].
  std::optional<PhaseTable> phase_table;

  static MubRotation from_matrix(ComplexMatrix m, RotationKind kind = RotationKind::Custom);
};

/// (e^{-i sigma^x pi/4})^{(x) L}. The phase table is the Hamming distance
/// between row and column bitstrings, cross-checked against the entry
/// arguments; a rounding deviation above kTolerances.phase_rounding throws.
MubRotation local_x_rotation(int sites);

/// U_pq = d^{-1/2} exp(2 i pi (p - 1/2) q / d), p, q = 1..d.
MubRotation fourier_mub(Index d);

/// pi/(4h) + 2 k pi. Throws InvalidArgument for h = 0.
double quench_time(double h, int k = 0);

/// Per-site e^{-i(-h sigma^x) t} at t = quench_time(h, k), tensored over L sites.
MubRotation quench_rotation(int sites, double h, int k = 0);

/// (U_A (x) U_B) rho (U_A (x) U_B)^dag, applied one tensor factor at a time.
DensityMatrix rotate_state(const DensityMatrix& rho, const Bipartition& part,
                           const MubRotation& ua, const MubRotation& ub);

/// (2/d) sum_{p=1}^{d/2} |f(p)| for an antisymmetric observable.
double imaginary_bound(const DiagonalObservable& o);

/// Phases phi_pq mod 4 read off as round(-(2/pi) arg(U_pq sqrt(d))).
/// `max_deviation` receives the largest distance to an integer.
PhaseTable extract_phases_mod4(const ComplexMatrix& u, double* max_deviation = nullptr);

struct MubReport {
  double unitarity = 0.0;     // max|U U^dag - I|
  double unbiasedness = 0.0;  // max| |U_pq|^2 - 1/d |
  bool strict_checked = false;
  double symmetry = 0.0;         // max|U - U^T|
  double phase_rounding = 0.0;   // max distance of extracted phases to integers
  long pairing_violations = 0;   // phi_pq + phi_{d-p+1,q} != L (mod 4)
  long sector_violations = 0;    // odd phi_pq - phi_pr within one magnetization sector
  long table_mismatches = 0;     // stored phase table disagrees with the entries
  std::vector<std::string> failures;

  bool pass() const { return failures.empty(); }
};

/// Unitarity and unbiasedness always; with strict_local_x also symmetry,
/// integer phases, pairing and sector evenness (needs dim = 2^L).
MubReport check_mub_properties(const MubRotation& u, bool strict_local_x);

}  // namespace qwit
