#include "qwit/witness.hpp"

#include <cmath>
#include <string>

#include "qwit/errors.hpp"
#include "qwit/tolerances.hpp"

namespace qwit {

const char* to_string(Symmetry s) {
  switch (s) {
    case Symmetry::Antisymmetric: return "antisymmetric";
    case Symmetry::Symmetric: return "symmetric";
    case Symmetry::None: return "none";
  }
  return "?";
}

DiagonalObservable::DiagonalObservable(RealVector eigenvalues, Symmetry symmetry, double offset)
    : e_(std::move(eigenvalues)), sym_(symmetry), c1_(offset) {
  if (e_.size() < 1) throw InvalidArgument("observable needs at least one eigenvalue");
  if (sym_ == Symmetry::Antisymmetric) c1_ = e_.mean();
  if (sym_ != Symmetry::None) {
    const double err = decomposition_error(sym_);
    if (err > kTolerances.decomposition) {
      throw InvalidArgument(std::string("observable is not ") + to_string(sym_) +
                            " under j -> d-j+1: deviation " + std::to_string(err));
    }
  }
}

double DiagonalObservable::decomposition_error(Symmetry s) const {
  const Index d = e_.size();
  double worst = 0.0;
  if (s == Symmetry::Antisymmetric) {
    // A pairing-antisymmetric f forces c1 to be the overall mean.
    const double mean = e_.mean();
    for (Index j = 0; j < d; ++j) worst = std::max(worst, std::abs(e_(j) + e_(d - 1 - j) - 2.0 * mean));
  } else if (s == Symmetry::Symmetric) {
    for (Index j = 0; j < d; ++j) worst = std::max(worst, std::abs(e_(j) - e_(d - 1 - j)));
  }
  return worst;
}

DiagonalObservable subsystem_magnetization(int sites) {
  if (sites < 1) throw InvalidArgument("subsystem_magnetization: L_sub must be >= 1");
  const Index d = Index{1} << sites;
  RealVector e(d);
  for (Index j = 0; j < d; ++j) e(j) = magnetization(static_cast<std::uint64_t>(j), sites);
  return DiagonalObservable(std::move(e), Symmetry::Antisymmetric);
}

namespace {

struct Moments {
  double mean_a = 0.0, mean_b = 0.0, mean_ab = 0.0, sq_a = 0.0, sq_b = 0.0;

  double covariance() const { return mean_ab - mean_a * mean_b; }
  double var_a() const { return sq_a - mean_a * mean_a; }
  double var_b() const { return sq_b - mean_b * mean_b; }
};

Moments diagonal_moments(const DensityMatrix& rho, const Bipartition& part,
                         const DiagonalObservable& oa, const DiagonalObservable& ob) {
  part.require_dim(rho.dim(), "correlation");
  if (oa.dim() != part.dim_a() || ob.dim() != part.dim_b()) {
    throw DimensionMismatch("observable dimensions " + std::to_string(oa.dim()) + "," +
                            std::to_string(ob.dim()) + " do not match the bipartition");
  }
  const RealVector& ea = oa.eigenvalues();
  const RealVector& eb = ob.eigenvalues();
  const Index db = part.dim_b();
  Moments m;
  for (Index a = 0; a < part.dim_a(); ++a) {
    double pa = 0.0, pab = 0.0;
    for (Index b = 0; b < db; ++b) {
      const double p = rho(a * db + b, a * db + b).real();
      pa += p;
      pab += p * eb(b);
      m.mean_b += p * eb(b);
      m.sq_b += p * eb(b) * eb(b);
    }
    m.mean_a += pa * ea(a);
    m.sq_a += pa * ea(a) * ea(a);
    m.mean_ab += ea(a) * pab;
  }
  return m;
}

double pearson_from(const Moments& m) {
  const double va = m.var_a();
  const double vb = m.var_b();
  if (va <= kTolerances.variance_floor || vb <= kTolerances.variance_floor) {
    throw ZeroVariance("pearson: subsystem variance vanishes (" + std::to_string(va) + ", " +
                       std::to_string(vb) + "); the subsystem carries a fixed charge");
  }
  return m.covariance() / std::sqrt(va * vb);
}

void require_odd_fourier_rule(const DiagonalObservable& o, const MubRotation& u, const char* side) {
  if (u.kind != RotationKind::Fourier || u.dim % 2 == 0) return;
  const double mid = o.f()(u.dim / 2);
  if (std::abs(mid) > kTolerances.decomposition) {
    throw InvalidArgument(std::string("c2: odd-dimensional Fourier rotation on side ") + side +
                          " needs f((d+1)/2) = 0, got " + std::to_string(mid));
  }
}

}  // namespace

double connected_correlation(const DensityMatrix& rho, const Bipartition& part,
                             const DiagonalObservable& oa, const DiagonalObservable& ob) {
  return diagonal_moments(rho, part, oa, ob).covariance();
}

double connected_correlation(const DensityMatrix& rho, const Bipartition& part,
                             const ComplexMatrix& oa, const ComplexMatrix& ob) {
  part.require_dim(rho.dim(), "connected_correlation");
  if (oa.rows() != part.dim_a() || ob.rows() != part.dim_b()) {
    throw DimensionMismatch("connected_correlation: observable dimensions do not match");
  }
  const Complex joint = (rho.matrix() * kron(oa, ob)).trace();
  const Complex ea = (partial_trace(rho, part, Side::A).matrix() * oa).trace();
  const Complex eb = (partial_trace(rho, part, Side::B).matrix() * ob).trace();
  const Complex c = joint - ea * eb;
  if (std::abs(c.imag()) > kTolerances.imaginary_residue) {
    throw NotHermitian("connected_correlation: imaginary residue " + std::to_string(c.imag()));
  }
  return c.real();
}

double c2(const DensityMatrix& rho, const Bipartition& part, const DiagonalObservable& oa,
          const DiagonalObservable& ob, const MubRotation& ua, const MubRotation& ub) {
  require_odd_fourier_rule(oa, ua, "A");
  require_odd_fourier_rule(ob, ub, "B");
  return connected_correlation(rotate_state(rho, part, ua, ub), part, oa, ob);
}

double c1_family_check(double r1, double r2, double s1, double s2) {
  const double a1 = std::sqrt(1.0 - r1 * r1);
  const double a2 = std::sqrt(1.0 - r2 * r2);
  const double b1 = std::sqrt(1.0 - s1 * s1);
  const double b2 = std::sqrt(1.0 - s2 * s2);
  return 0.25 * (a1 * b1 - a1 * b2 - a2 * b1 + a2 * b2);
}

double pearson(const DensityMatrix& rho, const Bipartition& part, const DiagonalObservable& oa,
               const DiagonalObservable& ob) {
  return pearson_from(diagonal_moments(rho, part, oa, ob));
}

MacconeResult maccone_criterion(const DensityMatrix& rho, const Bipartition& part,
                                const DiagonalObservable& oa, const DiagonalObservable& ob,
                                const MubRotation& ua, const MubRotation& ub) {
  const double p = pearson(rho, part, oa, ob);
  const double pp = pearson(rotate_state(rho, part, ua, ub), part, oa, ob);
  const double lhs = std::abs(p) + std::abs(pp);
  return {lhs, lhs > 1.0};
}

double negativity(const DensityMatrix& rho, const Bipartition& part) {
  const double n = 0.5 * (trace_norm_hermitian(partial_transpose(rho, part)) - 1.0);
  if (n >= 0.0) return n;
  if (n >= -kTolerances.negativity_clip) return 0.0;
  throw LinalgFailure("negativity: " + std::to_string(n) + " below the clipping tolerance");
}

WitnessResult evaluate_all(const DensityMatrix& rho, const Bipartition& part,
                           const DiagonalObservable& oa, const DiagonalObservable& ob,
                           const MubRotation& ua, const MubRotation& ub,
                           const EvaluateOptions& options) {
  require_odd_fourier_rule(oa, ua, "A");
  require_odd_fourier_rule(ob, ub, "B");
  WitnessResult r;
  const Moments before = diagonal_moments(rho, part, oa, ob);
  const Moments after = diagonal_moments(rotate_state(rho, part, ua, ub), part, oa, ob);
  r.C1 = before.covariance();
  r.C2 = after.covariance();
  try {
    r.pearson_O = pearson_from(before);
  } catch (const ZeroVariance&) {
  }
  try {
    r.pearson_Oprime = pearson_from(after);
  } catch (const ZeroVariance&) {
  }
  if (r.pearson_O && r.pearson_Oprime) r.maccone_lhs = std::abs(*r.pearson_O) + std::abs(*r.pearson_Oprime);
  if (options.negativity) r.negativity = negativity(rho, part);
  return r;
}

}  // namespace qwit
