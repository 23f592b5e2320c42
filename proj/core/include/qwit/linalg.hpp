#pragma once

// Dense complex linear algebra on qubit/qudit registers.
//
// Basis convention: a register of L qubits is indexed by j = 0..2^L-1, site 1
// is the most significant bit, and bit value 0 is spin up (sigma_z = +1).
// Flipping every bit maps j to 2^L-1-j, which is the index pairing
// j <-> d-j+1 in one-based notation.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>

namespace qwit {

using Complex = std::complex<double>;
using Index = Eigen::Index;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Hermitian, unit-trace matrix. Positivity is checked on demand only.
class DensityMatrix {
 public:
  /// Validates Hermiticity and unit trace against kTolerances and stores the
  /// exactly Hermitian part. Throws InvalidArgument on violation.
  explicit DensityMatrix(ComplexMatrix m);

  /// Hermitizes and divides by the trace. For states assembled numerically.
  static DensityMatrix normalized(const ComplexMatrix& m);
  static DensityMatrix pure(const ComplexVector& psi);
  static DensityMatrix maximally_mixed(Index dim);

  Index dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }
  Complex operator()(Index i, Index j) const { return m_(i, j); }

  double min_eigenvalue() const;
  bool is_psd(double tol) const;
  double purity() const;

 private:
  ComplexMatrix m_;
};

enum class Side { A, B };

/// Split of a register into A (leading factor) and B (trailing factor).
class Bipartition {
 public:
  /// L_A + L_B qubits.
  static Bipartition qubits(int sites_a, int sites_b);
  /// One qudit of dimension dim_a on A and one of dimension dim_b on B.
  static Bipartition qudits(Index dim_a, Index dim_b);

  int sites_a() const { return sites_a_; }
  int sites_b() const { return sites_b_; }
  Index dim_a() const { return dim_a_; }
  Index dim_b() const { return dim_b_; }
  Index dim() const { return dim_a_ * dim_b_; }
  bool is_qubit_register() const { return qubit_; }

  /// Throws DimensionMismatch unless dim() == d.
  void require_dim(Index d, const char* what) const;

 private:
  Bipartition(int sa, int sb, Index da, Index db, bool qubit)
      : sites_a_(sa), sites_b_(sb), dim_a_(da), dim_b_(db), qubit_(qubit) {}
  int sites_a_;
  int sites_b_;
  Index dim_a_;
  Index dim_b_;
  bool qubit_;
};

/// Bit of `site` (1-based, site 1 most significant) in basis index j of an
/// L-site register. 0 means spin up.
inline int site_bit(std::uint64_t j, int site, int sites) {
  return static_cast<int>((j >> (sites - site)) & 1U);
}

/// Eigenvalue of sum_k sigma^z_k on basis index j: L - 2 * popcount(j).
int magnetization(std::uint64_t j, int sites);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

DensityMatrix partial_trace(const DensityMatrix& rho, const Bipartition& part, Side keep);

/// Transpose on the A factor: out[(iA,iB),(jA,jB)] = rho[(jA,iB),(iA,jB)].
ComplexMatrix partial_transpose(const ComplexMatrix& rho, const Bipartition& part);
ComplexMatrix partial_transpose(const DensityMatrix& rho, const Bipartition& part);

struct EigenDecomposition {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // columns are eigenvectors
};

/// Throws NotHermitian if max|h - h^dag| exceeds kTolerances.eig_input.
EigenDecomposition eig_hermitian(const ComplexMatrix& h);

/// e^{-i h t} through the eigendecomposition of h.
ComplexMatrix expm_unitary(const ComplexMatrix& h, double t);

/// Sum of absolute eigenvalues.
double trace_norm_hermitian(const ComplexMatrix& m);

/// max_ij |m - m^dag|
double hermiticity_error(const ComplexMatrix& m);

/// max_ij |m_ij|
double max_abs(const ComplexMatrix& m);

/// Reconstructs V diag(w) V^dag.
ComplexMatrix from_spectrum(const RealVector& weights, const ComplexMatrix& vectors);

namespace pauli {
ComplexMatrix identity(Index d);
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
}  // namespace pauli

/// `op` acting on `site` (1-based) of an L-site qubit register, identity elsewhere.
ComplexMatrix site_operator(const ComplexMatrix& op, int site, int sites);

}  // namespace qwit
