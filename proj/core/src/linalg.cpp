#include "qwit/linalg.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "qwit/errors.hpp"
#include "qwit/tolerances.hpp"

namespace qwit {

namespace {

std::string dims_str(Index r, Index c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols()) {
    throw InvalidArgument("density matrix must be square and non-empty, got " +
                          dims_str(m_.rows(), m_.cols()));
  }
  const double herm = hermiticity_error(m_);
  if (herm > kTolerances.hermiticity) {
    throw InvalidArgument("density matrix not Hermitian: max|rho - rho^dag| = " +
                          std::to_string(herm));
  }
  const Complex tr = m_.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > kTolerances.unit_trace) {
    throw InvalidArgument("density matrix trace is (" + std::to_string(tr.real()) + ", " +
                          std::to_string(tr.imag()) + "), expected 1");
  }
  m_ = (0.5 * (m_ + m_.adjoint())).eval();
}

DensityMatrix DensityMatrix::normalized(const ComplexMatrix& m) {
  ComplexMatrix h = 0.5 * (m + m.adjoint());
  const double tr = h.trace().real();
  if (!(tr > 0.0)) throw InvalidArgument("cannot normalize matrix with non-positive trace");
  h /= tr;
  return DensityMatrix(std::move(h));
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
  const double n2 = psi.squaredNorm();
  if (!(n2 > 0.0)) throw InvalidArgument("pure state vector has zero norm");
  return DensityMatrix((psi * psi.adjoint()) / n2);
}

DensityMatrix DensityMatrix::maximally_mixed(Index dim) {
  if (dim < 1) throw InvalidArgument("dimension must be positive");
  return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

double DensityMatrix::min_eigenvalue() const { return eig_hermitian(m_).values(0); }

bool DensityMatrix::is_psd(double tol) const { return min_eigenvalue() >= -tol; }

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

Bipartition Bipartition::qubits(int sites_a, int sites_b) {
  if (sites_a < 1 || sites_b < 1) {
    throw InvalidArgument("bipartition needs at least one site on each side");
  }
  if (sites_a + sites_b > 30) throw InvalidArgument("register too large");
  return {sites_a, sites_b, Index{1} << sites_a, Index{1} << sites_b, true};
}

Bipartition Bipartition::qudits(Index dim_a, Index dim_b) {
  if (dim_a < 2 || dim_b < 2) throw InvalidArgument("qudit dimensions must be >= 2");
  return {1, 1, dim_a, dim_b, false};
}

void Bipartition::require_dim(Index d, const char* what) const {
  if (d != dim()) {
    throw DimensionMismatch(std::string(what) + ": operand dimension " + std::to_string(d) +
                            " does not match bipartition " + std::to_string(dim_a_) + "x" +
                            std::to_string(dim_b_));
  }
}

int magnetization(std::uint64_t j, int sites) {
  return sites - 2 * std::popcount(j);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Index rb = b.rows();
  const Index cb = b.cols();
  ComplexMatrix out(a.rows() * rb, a.cols() * cb);
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const Bipartition& part, Side keep) {
  part.require_dim(rho.dim(), "partial_trace");
  const Index da = part.dim_a();
  const Index db = part.dim_b();
  const ComplexMatrix& m = rho.matrix();
  if (keep == Side::A) {
    ComplexMatrix out = ComplexMatrix::Zero(da, da);
    for (Index a = 0; a < da; ++a)
      for (Index ap = 0; ap < da; ++ap)
        for (Index b = 0; b < db; ++b) out(a, ap) += m(a * db + b, ap * db + b);
    return DensityMatrix::normalized(out);
  }
  ComplexMatrix out = ComplexMatrix::Zero(db, db);
  for (Index a = 0; a < da; ++a) out += m.block(a * db, a * db, db, db);
  return DensityMatrix::normalized(out);
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, const Bipartition& part) {
  part.require_dim(rho.rows(), "partial_transpose");
  if (rho.rows() != rho.cols()) throw DimensionMismatch("partial_transpose: matrix not square");
  const Index da = part.dim_a();
  const Index db = part.dim_b();
  ComplexMatrix out(rho.rows(), rho.cols());
  // Block (iA, jA) of the result is block (jA, iA) of rho.
  for (Index ia = 0; ia < da; ++ia)
    for (Index ja = 0; ja < da; ++ja)
      out.block(ia * db, ja * db, db, db) = rho.block(ja * db, ia * db, db, db);
  return out;
}

ComplexMatrix partial_transpose(const DensityMatrix& rho, const Bipartition& part) {
  return partial_transpose(rho.matrix(), part);
}

double hermiticity_error(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

EigenDecomposition eig_hermitian(const ComplexMatrix& h) {
  if (h.rows() == 0 || h.rows() != h.cols()) {
    throw DimensionMismatch("eig_hermitian: matrix must be square, got " +
                            dims_str(h.rows(), h.cols()));
  }
  const double herm = hermiticity_error(h);
  if (herm > kTolerances.eig_input) {
    throw NotHermitian("eig_hermitian: max|h - h^dag| = " + std::to_string(herm));
  }
  // Householder tridiagonalization followed by implicit-shift QR sweeps.
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw LinalgFailure("eig_hermitian: no convergence");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix from_spectrum(const RealVector& weights, const ComplexMatrix& vectors) {
  return vectors * weights.cast<Complex>().asDiagonal() * vectors.adjoint();
}

ComplexMatrix expm_unitary(const ComplexMatrix& h, double t) {
  const EigenDecomposition eig = eig_hermitian(h);
  const Index n = eig.values.size();
  ComplexVector phases(n);
  for (Index i = 0; i < n; ++i) phases(i) = std::exp(Complex(0.0, -eig.values(i) * t));
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

double trace_norm_hermitian(const ComplexMatrix& m) {
  return eig_hermitian(m).values.cwiseAbs().sum();
}

namespace pauli {

ComplexMatrix identity(Index d) { return ComplexMatrix::Identity(d, d); }

ComplexMatrix x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

ComplexMatrix y() {
  ComplexMatrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

ComplexMatrix z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

}  // namespace pauli

ComplexMatrix site_operator(const ComplexMatrix& op, int site, int sites) {
  if (site < 1 || site > sites) throw InvalidArgument("site index out of range");
  const Index left = Index{1} << (site - 1);
  const Index right = Index{1} << (sites - site);
  return kron(kron(pauli::identity(left), op), pauli::identity(right));
}

}  // namespace qwit
