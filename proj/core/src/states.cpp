#include "qwit/states.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qwit/errors.hpp"
#include "qwit/tolerances.hpp"

namespace qwit {

namespace {

void require_range(double v, double lo, double hi, const char* name) {
  if (!(v >= lo && v <= hi)) {
    throw InvalidArgument(std::string("two_qubit_family: ") + name + " = " + std::to_string(v) +
                          " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

std::vector<double> random_weights(int n, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(n);
  double total = 0.0;
  for (auto& x : w) total += (x = expo(rng));
  for (auto& x : w) x /= total;
  return w;
}

/// All sector magnetizations available on `sites` qubits.
std::vector<int> charges(int sites) {
  std::vector<int> out;
  for (int m = -sites; m <= sites; m += 2) out.push_back(m);
  return out;
}

}  // namespace

DensityMatrix gibbs(const EigenDecomposition& spectrum, double beta) {
  if (!(beta >= 0.0)) throw InvalidArgument("gibbs: beta must be >= 0");
  const double e0 = spectrum.values.minCoeff();
  RealVector w = (-beta * (spectrum.values.array() - e0)).exp().matrix();
  w /= w.sum();
  return DensityMatrix::normalized(from_spectrum(w, spectrum.vectors));
}

DensityMatrix gibbs(const ComplexMatrix& H, double beta) {
  if (!(beta >= 0.0)) throw InvalidArgument("gibbs: beta must be >= 0");
  return gibbs(eig_hermitian(H), beta);
}

DensityMatrix embed_state(const DensityMatrix& rho_sector, const SectorBasis& basis) {
  return DensityMatrix(embed_from_sector(rho_sector.matrix(), basis, basis.L));
}

DensityMatrix gibbs_in_sector(const ComplexMatrix& H_sector, const SectorBasis& basis,
                              double beta) {
  return embed_state(gibbs(H_sector, beta), basis);
}

DensityMatrix neel_state(int L) {
  if (L < 1) throw InvalidArgument("neel_state: L must be >= 1");
  std::uint64_t j = 0;
  for (int k = 1; k <= L; ++k) {
    if (k % 2 == 0) j |= std::uint64_t{1} << (L - k);
  }
  const Index d = Index{1} << L;
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  m(static_cast<Index>(j), static_cast<Index>(j)) = 1.0;
  return DensityMatrix(std::move(m));
}

std::vector<TimedState> lindblad_evolve(const DensityMatrix& rho0, const ComplexMatrix& H,
                                        const LindbladSpec& spec) {
  if (!(spec.gamma >= 0.0)) throw InvalidArgument("lindblad: gamma must be >= 0");
  if (!(spec.dt > 0.0)) throw InvalidArgument("lindblad: dt must be positive");
  if (H.rows() != rho0.dim() || H.cols() != rho0.dim()) {
    throw DimensionMismatch("lindblad: Hamiltonian and state dimensions differ");
  }
  if (hermiticity_error(H) > kTolerances.eig_input) throw NotHermitian("lindblad: H not Hermitian");
  for (std::size_t i = 0; i < spec.sample_times.size(); ++i) {
    if (spec.sample_times[i] < 0.0) throw InvalidArgument("lindblad: negative sample time");
    if (i > 0) {
      const double gap = spec.sample_times[i] - spec.sample_times[i - 1];
      if (!(gap > 0.0)) throw InvalidArgument("lindblad: sample times must increase strictly");
      if (spec.dt > gap + 1e-12) {
        throw InvalidArgument("lindblad: dt exceeds the spacing of sample times");
      }
    }
  }

  const Index d = rho0.dim();
  int sites = 0;
  while ((Index{1} << sites) < d) ++sites;
  if ((Index{1} << sites) != d) throw DimensionMismatch("lindblad: dimension is not 2^L");

  // Jump operators sqrt(gamma/2) sigma^z_k are diagonal, so the dissipator
  // acts entrywise: rate(i,j) = sum_k (2 l_k(i) l_k(j) - l_k(i)^2 - l_k(j)^2).
  Eigen::MatrixXd rate = Eigen::MatrixXd::Zero(d, d);
  const double amp = std::sqrt(spec.gamma / 2.0);
  for (int k = 1; k <= sites; ++k) {
    for (Index j = 0; j < d; ++j) {
      const double lj = amp * (site_bit(static_cast<std::uint64_t>(j), k, sites) == 0 ? 1.0 : -1.0);
      for (Index i = 0; i < d; ++i) {
        const double li =
            amp * (site_bit(static_cast<std::uint64_t>(i), k, sites) == 0 ? 1.0 : -1.0);
        rate(i, j) += 2.0 * li * lj - li * li - lj * lj;
      }
    }
  }

  const Complex minus_i(0.0, -1.0);
  auto rhs = [&](const ComplexMatrix& r) -> ComplexMatrix {
    ComplexMatrix out = minus_i * (H * r - r * H);
    out.array() += rate.array().cast<Complex>() * r.array();
    return out;
  };

  std::vector<TimedState> out;
  out.reserve(spec.sample_times.size());
  ComplexMatrix rho = rho0.matrix();
  double t = 0.0;
  for (const double target : spec.sample_times) {
    while (t < target - 1e-12) {
      const double h = std::min(spec.dt, target - t);
      const ComplexMatrix k1 = rhs(rho);
      const ComplexMatrix k2 = rhs(rho + (0.5 * h) * k1);
      const ComplexMatrix k3 = rhs(rho + (0.5 * h) * k2);
      const ComplexMatrix k4 = rhs(rho + h * k3);
      rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      t += h;
      const double drift = std::abs(rho.trace() - Complex(1.0, 0.0));
      if (!(drift <= kTolerances.lindblad_abort)) {
        throw IntegratorAbort("lindblad: trace drift " + std::to_string(drift) + " at t = " +
                              std::to_string(t) + "; reduce dt");
      }
    }
    DensityMatrix corrected = DensityMatrix::normalized(rho);
    rho = corrected.matrix();
    out.push_back({target, std::move(corrected)});
  }
  return out;
}

DensityMatrix two_qubit_family(double r1, double r2, double s1, double s2, double eps, double c) {
  require_range(r1, -1.0, 1.0, "r1");
  require_range(r2, -1.0, 1.0, "r2");
  require_range(s1, -1.0, 1.0, "s1");
  require_range(s2, -1.0, 1.0, "s2");
  require_range(eps, 0.0, 1.0, "eps");
  require_range(c, -1.0, 1.0, "c");

  const double r[2] = {r1, r2};
  const double s[2] = {s1, s2};
  double ap[2], am[2], bp[2], bm[2];
  for (int i = 0; i < 2; ++i) {
    ap[i] = 1.0 + std::sqrt(1.0 - r[i] * r[i]);
    am[i] = 1.0 - std::sqrt(1.0 - r[i] * r[i]);
    bp[i] = 1.0 + std::sqrt(1.0 - s[i] * s[i]);
    bm[i] = 1.0 - std::sqrt(1.0 - s[i] * s[i]);
  }
  const double k = (1.0 - eps) / 8.0;
  const double cs = c * std::sqrt(1.0 - c * c);

  Eigen::Matrix4d m;
  m(0, 0) = k * (ap[0] * bp[0] + ap[1] * bp[1]) + c * c * eps;
  m(1, 1) = k * (ap[0] * bm[0] + ap[1] * bm[1]);
  m(2, 2) = k * (am[0] * bp[0] + am[1] * bp[1]);
  m(3, 3) = k * (am[0] * bm[0] + am[1] * bm[1]) + (1.0 - c * c) * eps;
  m(0, 1) = m(1, 0) = k * (s[0] * ap[0] + s[1] * ap[1]);
  m(0, 2) = m(2, 0) = k * (r[0] * bp[0] + r[1] * bp[1]);
  m(0, 3) = m(3, 0) = k * (r[0] * s[0] + r[1] * s[1]) + cs * eps;
  m(1, 2) = m(2, 1) = k * (r[0] * s[0] + r[1] * s[1]);
  m(1, 3) = m(3, 1) = k * (r[0] * bm[0] + r[1] * bm[1]);
  m(2, 3) = m(3, 2) = k * (s[0] * am[0] + s[1] * am[1]);

  if (std::abs(m.trace() - 1.0) > kTolerances.unit_trace) {
    throw LinalgFailure("two_qubit_family: assembled trace " + std::to_string(m.trace()));
  }
  return DensityMatrix(m.cast<Complex>());
}

const char* to_string(SeparableFlavor f) {
  switch (f) {
    case SeparableFlavor::Real: return "real";
    case SeparableFlavor::ImaginaryOffdiag: return "imaginary-offdiag";
    case SeparableFlavor::FixedCharge: return "fixed-charge";
    case SeparableFlavor::Generic: return "generic";
  }
  return "?";
}

DensityMatrix SeparableEnsemble::state() const {
  ComplexMatrix m = ComplexMatrix::Zero(part.dim(), part.dim());
  for (const auto& t : terms) m += t.weight * kron(t.a.matrix(), t.b.matrix());
  return DensityMatrix::normalized(m);
}

DensityMatrix random_real_density(Index d, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  if (d == 2) {
    // Bloch vector uniform in the XZ unit disk.
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double radius = std::sqrt(uni(rng));
    const double angle = 2.0 * 3.141592653589793 * uni(rng);
    const double x = radius * std::cos(angle);
    const double z = radius * std::sin(angle);
    ComplexMatrix m(2, 2);
    m << 0.5 * (1.0 + z), 0.5 * x, 0.5 * x, 0.5 * (1.0 - z);
    return DensityMatrix(std::move(m));
  }
  Eigen::MatrixXd a(d, d);
  for (Index j = 0; j < d; ++j)
    for (Index i = 0; i < d; ++i) a(i, j) = normal(rng);
  const Eigen::MatrixXd g = a.transpose() * a;
  return DensityMatrix::normalized(g.cast<Complex>());
}

DensityMatrix random_imaginary_offdiag_density(Index d, Rng& rng) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  RealVector diag(d);
  for (Index i = 0; i < d; ++i) diag(i) = 0.1 + 0.9 * uni(rng);
  Eigen::MatrixXd anti = Eigen::MatrixXd::Zero(d, d);
  for (Index j = 0; j < d; ++j)
    for (Index i = 0; i < j; ++i) {
      anti(i, j) = normal(rng);
      anti(j, i) = -anti(i, j);
    }
  const ComplexMatrix offdiag = Complex(0.0, 1.0) * anti.cast<Complex>();
  const double norm = eig_hermitian(offdiag).values.cwiseAbs().maxCoeff();
  // D + i A is PSD whenever ||A||_2 <= min(D).
  const double scale = norm > 0.0 ? uni(rng) * diag.minCoeff() / norm : 0.0;
  ComplexMatrix m = diag.cast<Complex>().asDiagonal();
  m += scale * offdiag;
  return DensityMatrix::normalized(m);
}

DensityMatrix random_generic_density(Index d, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(d, d);
  for (Index j = 0; j < d; ++j)
    for (Index i = 0; i < d; ++i) g(i, j) = Complex(normal(rng), normal(rng));
  return DensityMatrix::normalized(g * g.adjoint());
}

DensityMatrix random_sector_density(int L, int M, Rng& rng) {
  const SectorBasis basis = sector_basis(L, M);
  return embed_state(random_generic_density(basis.size(), rng), basis);
}

SeparableEnsemble random_separable(const SeparableRequest& request, Rng& rng) {
  if (request.n_terms < 1) throw InvalidArgument("random_separable: n_terms must be >= 1");
  const Bipartition& part = request.part;
  SeparableEnsemble ens{request.flavor, part, {}, std::nullopt};
  const std::vector<double> weights = random_weights(request.n_terms, rng);

  if (request.flavor == SeparableFlavor::FixedCharge) {
    if (!part.is_qubit_register()) {
      throw InvalidArgument("random_separable: fixed-charge flavor needs a qubit bipartition");
    }
    const int la = part.sites_a();
    const int lb = part.sites_b();
    auto splits_for = [&](int M) {
      std::vector<int> out;
      for (int ma : charges(la)) {
        const int mb = M - ma;
        if (std::abs(mb) <= lb && (lb - mb) % 2 == 0) out.push_back(ma);
      }
      return out;
    };
    int M;
    if (request.charge) {
      M = *request.charge;
    } else {
      const std::vector<int> all = charges(la + lb);
      M = all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
    }
    const std::vector<int> splits = splits_for(M);
    if (splits.empty()) {
      throw InvalidArgument("random_separable: charge " + std::to_string(M) +
                            " cannot be split across " + std::to_string(la) + "|" +
                            std::to_string(lb) + " sites");
    }
    ens.charge = M;
    std::uniform_int_distribution<std::size_t> pick(0, splits.size() - 1);
    for (int i = 0; i < request.n_terms; ++i) {
      const int ma = splits[pick(rng)];
      DensityMatrix a = random_sector_density(la, ma, rng);
      DensityMatrix b = random_sector_density(lb, M - ma, rng);
      ens.terms.push_back({weights[i], std::move(a), std::move(b)});
    }
    return ens;
  }

  auto factor = [&](Index d) {
    switch (request.flavor) {
      case SeparableFlavor::Real: return random_real_density(d, rng);
      case SeparableFlavor::ImaginaryOffdiag: return random_imaginary_offdiag_density(d, rng);
      default: return random_generic_density(d, rng);
    }
  };
  for (int i = 0; i < request.n_terms; ++i) {
    DensityMatrix a = factor(part.dim_a());
    DensityMatrix b = factor(part.dim_b());
    ens.terms.push_back({weights[i], std::move(a), std::move(b)});
  }
  return ens;
}

SeparableEnsemble random_separable(const SeparableRequest& request, std::uint64_t seed) {
  Rng rng(seed);
  return random_separable(request, rng);
}

}  // namespace qwit
