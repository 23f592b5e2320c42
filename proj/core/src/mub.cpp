#include "qwit/mub.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "qwit/errors.hpp"
#include "qwit/tolerances.hpp"

namespace qwit {

namespace {

int log2_exact(Index d) {
  int s = 0;
  while ((Index{1} << s) < d) ++s;
  return (Index{1} << s) == d ? s : 0;
}

/// Rows of `m` are grouped as da blocks of db; returns (U_A (x) U_B) m.
ComplexMatrix apply_left(const ComplexMatrix& m, const ComplexMatrix& ua, const ComplexMatrix& ub) {
  const Index da = ua.rows();
  const Index db = ub.rows();
  ComplexMatrix tmp(m.rows(), m.cols());
  for (Index a = 0; a < da; ++a) tmp.middleRows(a * db, db).noalias() = ub * m.middleRows(a * db, db);
  ComplexMatrix out = ComplexMatrix::Zero(m.rows(), m.cols());
  for (Index a = 0; a < da; ++a)
    for (Index ap = 0; ap < da; ++ap) {
      const Complex c = ua(a, ap);
      if (c != Complex(0.0, 0.0)) out.middleRows(a * db, db) += c * tmp.middleRows(ap * db, db);
    }
  return out;
}

}  // namespace

const char* to_string(RotationKind k) {
  switch (k) {
    case RotationKind::LocalX: return "local_x";
    case RotationKind::Fourier: return "fourier";
    case RotationKind::Quench: return "quench";
    case RotationKind::Custom: return "custom";
  }
  return "?";
}

MubRotation MubRotation::from_matrix(ComplexMatrix m, RotationKind kind) {
  if (m.rows() == 0 || m.rows() != m.cols()) throw InvalidArgument("rotation must be square");
  MubRotation u;
  u.dim = m.rows();
  u.sites = log2_exact(u.dim);
  u.kind = kind;
  u.matrix = std::move(m);
  return u;
}

PhaseTable extract_phases_mod4(const ComplexMatrix& u, double* max_deviation) {
  const double scale = std::sqrt(static_cast<double>(u.rows()));
  PhaseTable phi(u.rows(), u.cols());
  double worst = 0.0;
  for (Index q = 0; q < u.cols(); ++q)
    for (Index p = 0; p < u.rows(); ++p) {
      const double x = -(2.0 / std::numbers::pi) * std::arg(u(p, q) * scale);
      const double r = std::round(x);
      worst = std::max(worst, std::abs(x - r));
      phi(p, q) = ((static_cast<int>(r) % 4) + 4) % 4;
    }
  if (max_deviation) *max_deviation = worst;
  return phi;
}

MubRotation local_x_rotation(int sites) {
  if (sites < 1) throw InvalidArgument("local_x_rotation: L must be >= 1");
  if (sites > 14) throw CapExceeded("local_x_rotation: L exceeds the dense-storage limit");
  const ComplexMatrix one = expm_unitary(pauli::x(), std::numbers::pi / 4.0);
  ComplexMatrix m = one;
  for (int k = 1; k < sites; ++k) m = kron(m, one);

  MubRotation u = MubRotation::from_matrix(std::move(m), RotationKind::LocalX);
  PhaseTable phi(u.dim, u.dim);
  for (Index q = 0; q < u.dim; ++q)
    for (Index p = 0; p < u.dim; ++p)
      phi(p, q) = std::popcount(static_cast<std::uint64_t>(p ^ q));

  double deviation = 0.0;
  const PhaseTable mod4 = extract_phases_mod4(u.matrix, &deviation);
  if (deviation > kTolerances.phase_rounding) {
    throw LinalgFailure("local_x_rotation: phase rounding deviation " + std::to_string(deviation));
  }
  for (Index q = 0; q < u.dim; ++q)
    for (Index p = 0; p < u.dim; ++p)
      if (phi(p, q) % 4 != mod4(p, q)) {
        throw LinalgFailure("local_x_rotation: entry phase disagrees with Hamming distance");
      }
  u.phase_table = std::move(phi);
  return u;
}

MubRotation fourier_mub(Index d) {
  if (d < 2) throw InvalidArgument("fourier_mub: d must be >= 2");
  ComplexMatrix m(d, d);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (Index q = 1; q <= d; ++q)
    for (Index p = 1; p <= d; ++p) {
      const double angle = 2.0 * std::numbers::pi * (static_cast<double>(p) - 0.5) *
                           static_cast<double>(q) / static_cast<double>(d);
      m(p - 1, q - 1) = norm * std::exp(Complex(0.0, angle));
    }
  return MubRotation::from_matrix(std::move(m), RotationKind::Fourier);
}

double quench_time(double h, int k) {
  if (h == 0.0 || !std::isfinite(h)) throw InvalidArgument("quench_time: h must be nonzero");
  return std::numbers::pi / (4.0 * h) + 2.0 * k * std::numbers::pi;
}

MubRotation quench_rotation(int sites, double h, int k) {
  if (sites < 1) throw InvalidArgument("quench_rotation: L must be >= 1");
  const double t = quench_time(h, k);
  const ComplexMatrix one = expm_unitary(-h * pauli::x(), t);
  ComplexMatrix m = one;
  for (int s = 1; s < sites; ++s) m = kron(m, one);
  return MubRotation::from_matrix(std::move(m), RotationKind::Quench);
}

DensityMatrix rotate_state(const DensityMatrix& rho, const Bipartition& part,
                           const MubRotation& ua, const MubRotation& ub) {
  part.require_dim(rho.dim(), "rotate_state");
  if (ua.dim != part.dim_a() || ub.dim != part.dim_b()) {
    throw DimensionMismatch("rotate_state: rotation dimensions " + std::to_string(ua.dim) + "," +
                            std::to_string(ub.dim) + " do not match the bipartition");
  }
  // W rho W^dag = W (W rho^dag)^dag, rho Hermitian.
  const ComplexMatrix x = apply_left(rho.matrix(), ua.matrix, ub.matrix);
  const ComplexMatrix y = apply_left(x.adjoint(), ua.matrix, ub.matrix);
  return DensityMatrix::normalized(y);
}

double imaginary_bound(const DiagonalObservable& o) {
  if (o.decomposition_error(Symmetry::Antisymmetric) > kTolerances.decomposition) {
    throw InvalidArgument("imaginary_bound: spectrum is not antisymmetric about its pair mean");
  }
  const RealVector f = o.f();
  const Index d = o.dim();
  double sum = 0.0;
  for (Index p = 0; p < d / 2; ++p) sum += std::abs(f(p));
  return 2.0 * sum / static_cast<double>(d);
}

MubReport check_mub_properties(const MubRotation& u, bool strict_local_x) {
  MubReport r;
  const Index d = u.dim;
  const ComplexMatrix& m = u.matrix;
  r.unitarity = max_abs(m * m.adjoint() - ComplexMatrix::Identity(d, d));
  r.unbiasedness = (m.cwiseAbs2().array() - 1.0 / static_cast<double>(d)).abs().maxCoeff();
  if (r.unitarity > 1e-12) r.failures.push_back("unitarity");
  if (r.unbiasedness > 1e-12) r.failures.push_back("unbiasedness");
  if (!strict_local_x) return r;

  const int L = log2_exact(d);
  if (L == 0) {
    r.failures.push_back("strict checks need a 2^L dimension");
    return r;
  }
  r.strict_checked = true;
  r.symmetry = max_abs(m - m.transpose());
  if (r.symmetry > 1e-12) r.failures.push_back("symmetry");

  const PhaseTable phi = extract_phases_mod4(m, &r.phase_rounding);
  if (r.phase_rounding > kTolerances.phase_rounding) r.failures.push_back("integer phases");

  for (Index q = 0; q < d; ++q)
    for (Index p = 0; p < d; ++p) {
      const Index pc = d - 1 - p;
      if ((phi(p, q) + phi(pc, q) - L) % 4 != 0) ++r.pairing_violations;
    }
  if (r.pairing_violations > 0) r.failures.push_back("phase pairing");

  // Within one magnetization sector all phases of a row share a parity.
  for (Index p = 0; p < d; ++p) {
    std::vector<int> parity(L + 1, -1);
    for (Index q = 0; q < d; ++q) {
      const int sector = std::popcount(static_cast<std::uint64_t>(q));
      const int par = phi(p, q) % 2;
      if (parity[sector] < 0) {
        parity[sector] = par;
      } else if (parity[sector] != par) {
        ++r.sector_violations;
      }
    }
  }
  if (r.sector_violations > 0) r.failures.push_back("sector evenness");

  if (u.phase_table) {
    const PhaseTable& t = *u.phase_table;
    if (t.rows() != d || t.cols() != d) {
      r.table_mismatches = d * d;
    } else {
      for (Index q = 0; q < d; ++q)
        for (Index p = 0; p < d; ++p)
          if (t(p, q) < 0 || t(p, q) > L || t(p, q) % 4 != phi(p, q)) ++r.table_mismatches;
    }
    if (r.table_mismatches > 0) r.failures.push_back("phase table");
  }
  return r;
}

}  // namespace qwit
