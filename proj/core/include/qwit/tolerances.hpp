#pragma once

namespace qwit {

/// Numerical tolerances shared across the library. All checks read from
/// kTolerances; nothing else hard-codes a threshold.
struct Tolerances {
  double hermiticity = 1e-12;        // DensityMatrix construction, max|rho - rho^dag|
  double unit_trace = 1e-10;         // |Tr rho - 1|
  double psd = 1e-10;                // min eigenvalue >= -psd
  double eig_input = 1e-10;          // Hermiticity required of eigensolver input
  double decomposition = 1e-10;      // observable (anti)symmetry check
  double phase_rounding = 1e-9;      // integer phase extraction
  double negativity_clip = 1e-10;    // small negative negativities report as 0
  double variance_floor = 1e-12;     // Pearson zero-variance flag
  double imaginary_residue = 1e-10;  // imaginary part discarded from real expectations
  double lindblad_abort = 1e-4;      // trace drift that aborts integration
};

inline constexpr Tolerances kTolerances{};

}  // namespace qwit
