#include "qwit/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "qwit/errors.hpp"
#include "qwit/mub.hpp"
#include "qwit/witness.hpp"

namespace qwit {

namespace {

CheckResult finish(std::string name, double measured, double tol, std::string detail = {}) {
  return {std::move(name), measured <= tol, measured, tol, std::move(detail)};
}

struct Size {
  int la, lb;
};
constexpr Size kSizes[] = {{1, 1}, {2, 2}, {3, 3}, {2, 3}};

int terms(Rng& rng, int max_terms) {
  return std::uniform_int_distribution<int>(1, max_terms)(rng);
}

/// Worst |C2| over random ensembles of `flavor` with observables from `make`.
template <typename MakeObservable>
double worst_c2(const VerifyOptions& o, SeparableFlavor flavor, const Bipartition& part,
                const MubRotation& ua, const MubRotation& ub, MakeObservable make,
                std::uint64_t salt) {
  double worst = 0.0;
  for (int i = 0; i < o.seeds; ++i) {
    Rng rng(o.base_seed + salt * 100003 + static_cast<std::uint64_t>(i));
    SeparableRequest req{flavor, part, terms(rng, o.max_terms), std::nullopt};
    const DensityMatrix rho = random_separable(req, rng).state();
    const DiagonalObservable oa = make(part.dim_a(), part.sites_a(), rng);
    const DiagonalObservable ob = make(part.dim_b(), part.sites_b(), rng);
    worst = std::max(worst, std::abs(c2(rho, part, oa, ob, ua, ub)));
  }
  return worst;
}

}  // namespace

DiagonalObservable random_antisymmetric_observable(Index d, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double c1 = normal(rng);
  RealVector e(d);
  for (Index p = 0; p < d / 2; ++p) {
    const double f = normal(rng);
    e(p) = c1 + f;
    e(d - 1 - p) = c1 - f;
  }
  if (d % 2 == 1) e(d / 2) = c1;
  return DiagonalObservable(std::move(e), Symmetry::Antisymmetric);
}

DiagonalObservable random_symmetric_observable(Index d, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  RealVector e(d);
  for (Index p = 0; p < d / 2; ++p) e(p) = e(d - 1 - p) = normal(rng);
  if (d % 2 == 1) e(d / 2) = 0.0;
  return DiagonalObservable(std::move(e), Symmetry::Symmetric);
}

CheckResult check_closed_form_c2() {
  const Bipartition part = Bipartition::qubits(1, 1);
  const DiagonalObservable z = subsystem_magnetization(1);
  const MubRotation u = local_x_rotation(1);
  double worst = 0.0;
  std::ostringstream table;
  int reported = 0;
  for (int ie = 0; ie < 9; ++ie)
    for (int ic = 0; ic < 9; ++ic)
      for (int ir = 0; ir < 9; ++ir) {
        const double eps = ie / 8.0;
        const double c = -1.0 + 2.0 * ic / 8.0;
        const double r1 = -1.0 + 2.0 * ir / 8.0;
        const DensityMatrix rho = two_qubit_family(r1, -0.5, 0.7, 0.1, eps, c);
        const double expected = -2.0 * eps * c * std::sqrt(1.0 - c * c);
        const double diff = std::abs(c2(rho, part, z, z, u, u) - expected);
        worst = std::max(worst, diff);
        if (diff > 1e-9 && reported < 20) {
          char line[160];
          std::snprintf(line, sizeof line, "eps=%.4f c=%.4f r1=%.4f expected=%.12g delta=%.3g\n",
                        eps, c, r1, expected, diff);
          table << line;
          ++reported;
        }
      }
  return finish("closed-form C2 on the two-qubit family (729 points)", worst, 1e-9, table.str());
}

CheckResult check_real_separable(const VerifyOptions& o) {
  auto make = [](Index d, int, Rng& rng) { return random_antisymmetric_observable(d, rng); };
  double worst = 0.0;
  std::uint64_t salt = 1;
  for (const Size s : kSizes) {
    const Bipartition part = Bipartition::qubits(s.la, s.lb);
    worst = std::max(worst, worst_c2(o, SeparableFlavor::Real, part, local_x_rotation(s.la),
                                     local_x_rotation(s.lb), make, salt++));
    worst = std::max(worst, worst_c2(o, SeparableFlavor::Real, part, fourier_mub(part.dim_a()),
                                     fourier_mub(part.dim_b()), make, salt++));
  }
  const Bipartition qutrits = Bipartition::qudits(3, 3);
  worst = std::max(worst, worst_c2(o, SeparableFlavor::Real, qutrits, fourier_mub(3),
                                   fourier_mub(3), make, salt++));
  return finish("real separable states give C2 = 0 (local_x, fourier)", worst, 1e-10);
}

CheckResult check_imaginary_separable(const VerifyOptions& o) {
  auto make = [](Index d, int, Rng& rng) { return random_symmetric_observable(d, rng); };
  double worst = 0.0;
  std::uint64_t salt = 101;
  for (const Size s : kSizes) {
    const Bipartition part = Bipartition::qubits(s.la, s.lb);
    worst = std::max(worst, worst_c2(o, SeparableFlavor::ImaginaryOffdiag, part,
                                     local_x_rotation(s.la), local_x_rotation(s.lb), make, salt++));
    worst = std::max(worst, worst_c2(o, SeparableFlavor::ImaginaryOffdiag, part,
                                     fourier_mub(part.dim_a()), fourier_mub(part.dim_b()), make,
                                     salt++));
  }
  const Bipartition qutrits = Bipartition::qudits(3, 3);
  worst = std::max(worst, worst_c2(o, SeparableFlavor::ImaginaryOffdiag, qutrits, fourier_mub(3),
                                   fourier_mub(3), make, salt++));
  return finish("imaginary-offdiagonal separable states give C2 = 0", worst, 1e-10);
}

CheckResult check_fixed_charge(const VerifyOptions& o) {
  auto make = [](Index, int sites, Rng&) { return subsystem_magnetization(sites); };
  double worst = 0.0;
  std::uint64_t salt = 201;
  for (const Size s : kSizes) {
    const Bipartition part = Bipartition::qubits(s.la, s.lb);
    worst = std::max(worst, worst_c2(o, SeparableFlavor::FixedCharge, part,
                                     local_x_rotation(s.la), local_x_rotation(s.lb), make, salt++));
  }
  return finish("fixed-charge separable states give C2 = 0 (local_x)", worst, 1e-10);
}

CheckResult check_single_term(const VerifyOptions& o) {
  double worst = 0.0;
  for (int i = 0; i < o.seeds; ++i) {
    Rng rng(o.base_seed + 301 + static_cast<std::uint64_t>(i));
    const Size s = kSizes[static_cast<std::size_t>(i) % std::size(kSizes)];
    const Bipartition part = Bipartition::qubits(s.la, s.lb);
    const DensityMatrix rho = random_separable({SeparableFlavor::Generic, part, 1, std::nullopt}, rng).state();
    const DiagonalObservable oa = subsystem_magnetization(s.la);
    const DiagonalObservable ob = subsystem_magnetization(s.lb);
    const MubRotation ua = local_x_rotation(s.la);
    const MubRotation ub = local_x_rotation(s.lb);
    worst = std::max({worst, std::abs(connected_correlation(rho, part, oa, ob)),
                      std::abs(c2(rho, part, oa, ob, ua, ub))});
  }
  return finish("product states give C1 = C2 = 0", worst, 1e-10);
}

CheckResult check_rotated_mean(const VerifyOptions& o) {
  double worst = 0.0;
  for (int i = 0; i < o.seeds; ++i) {
    Rng rng(o.base_seed + 401 + static_cast<std::uint64_t>(i));
    const int sites = 1 + i % 3;
    const Index d = Index{1} << sites;
    const DensityMatrix rho = random_real_density(d, rng);
    const DiagonalObservable obs = random_antisymmetric_observable(d, rng);
    const MubRotation u = local_x_rotation(sites);
    const ComplexMatrix rotated = u.matrix * rho.matrix() * u.matrix.adjoint();
    const double mean = (rotated.diagonal().real().array() * obs.eigenvalues().array()).sum();
    worst = std::max(worst, std::abs(mean - obs.offset()));
  }
  return finish("rotated mean of a real state equals c1", worst, 1e-10);
}

CheckResult check_fixed_charge_pearson(const VerifyOptions& o) {
  double worst = 0.0;
  int zero_variance = 0;
  int checked = 0;
  std::string detail;
  for (int i = 0; i < o.seeds; ++i) {
    Rng rng(o.base_seed + 501 + static_cast<std::uint64_t>(i));
    const int L = 2 + i % 5;
    const int M = -L + 2 * std::uniform_int_distribution<int>(0, L)(rng);
    const Bipartition part = Bipartition::qubits(L / 2, L - L / 2);
    const DensityMatrix rho = random_sector_density(L, M, rng);
    try {
      const double p = pearson(rho, part, subsystem_magnetization(part.sites_a()),
                               subsystem_magnetization(part.sites_b()));
      worst = std::max(worst, std::abs(p + 1.0));
      ++checked;
    } catch (const ZeroVariance&) {
      ++zero_variance;
      if (std::abs(M) != L) {
        worst = std::max(worst, 1.0);
        detail = "unexpected zero variance at L=" + std::to_string(L) + " M=" + std::to_string(M);
      }
    }
  }
  if (detail.empty()) {
    detail = std::to_string(checked) + " states at -1, " + std::to_string(zero_variance) +
             " fully polarized states flagged";
  }
  return finish("fixed-charge states have Pearson correlation -1", worst, 1e-10, detail);
}

CheckResult check_mub_structure() {
  double worst = 0.0;
  std::string detail;
  for (int L = 1; L <= 6; ++L) {
    const MubReport r = check_mub_properties(local_x_rotation(L), true);
    worst = std::max({worst, r.unitarity, r.unbiasedness, r.symmetry});
    if (!r.pass()) {
      worst = std::max(worst, 1.0);
      detail += "L=" + std::to_string(L) + " failed:";
      for (const auto& f : r.failures) detail += " " + f;
      detail += "\n";
    }
  }
  return finish("local_x rotations satisfy the MUB structure, L = 1..6", worst, 1e-12, detail);
}

CheckResult check_negativity_oracle(const VerifyOptions& o) {
  double worst = 0.0;
  const Bipartition part = Bipartition::qubits(1, 1);
  for (int i = 0; i < 2 * o.seeds; ++i) {
    Rng rng(o.base_seed + 601 + static_cast<std::uint64_t>(i));
    const DensityMatrix rho = random_generic_density(4, rng);
    const RealVector ev = eig_hermitian(partial_transpose(rho, part)).values;
    double oracle = 0.0;
    for (Index k = 0; k < ev.size(); ++k)
      if (ev(k) < 0.0) oracle -= ev(k);
    worst = std::max(worst, std::abs(negativity(rho, part) - oracle));
  }
  ComplexVector phi = ComplexVector::Zero(4);
  phi(0) = phi(3) = 1.0;
  worst = std::max(worst, std::abs(negativity(DensityMatrix::pure(phi), part) - 0.5));
  return finish("negativity matches the sum of negative partial-transpose eigenvalues", worst, 1e-9);
}

std::vector<CheckResult> run_verification(const VerifyOptions& o) {
  return {check_closed_form_c2(),     check_real_separable(o),       check_imaginary_separable(o),
          check_fixed_charge(o),      check_single_term(o),          check_rotated_mean(o),
          check_fixed_charge_pearson(o), check_mub_structure(),      check_negativity_oracle(o)};
}

}  // namespace qwit
