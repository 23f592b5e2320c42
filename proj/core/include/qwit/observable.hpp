#pragma once

#include "qwit/linalg.hpp"

namespace qwit {

/// Pairing symmetry of f(j) = E_j - c1 under j -> d-j+1.
enum class Symmetry {
  Antisymmetric,  // f(j) = -f(d-j+1); witnesses real states
  Symmetric,      // f(j) = +f(d-j+1); witnesses imaginary-offdiagonal states
  None,           // no declared structure; not usable for theorem checks
};

const char* to_string(Symmetry s);

/// Observable diagonal in the computational basis, E_j = f(j) + c1.
class DiagonalObservable {
 public:
  /// For Antisymmetric, c1 is the pair mean (E_j + E_{d-j+1})/2 and `offset`
  /// is ignored. For Symmetric and None, c1 = offset. A declared symmetry is
  /// verified to kTolerances.decomposition; violations throw InvalidArgument.
  explicit DiagonalObservable(RealVector eigenvalues, Symmetry symmetry = Symmetry::None,
                              double offset = 0.0);

  Index dim() const { return e_.size(); }
  const RealVector& eigenvalues() const { return e_; }
  Symmetry symmetry() const { return sym_; }
  double offset() const { return c1_; }
  /// E - c1
  RealVector f() const { return e_.array() - c1_; }

  /// max_j |f(j) + f(d-j+1)| (antisymmetric) or |f(j) - f(d-j+1)| (symmetric).
  double decomposition_error(Symmetry s) const;

 private:
  RealVector e_;
  Symmetry sym_;
  double c1_;
};

/// sum_{i=1}^{L_sub} sigma^z_i on L_sub qubits, antisymmetric with c1 = 0.
DiagonalObservable subsystem_magnetization(int sites);

}  // namespace qwit
