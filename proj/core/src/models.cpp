#include "qwit/models.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <unordered_map>

#include "qwit/errors.hpp"

namespace qwit {

namespace {

constexpr Index kMaxSites = 14;

void require_sites(const ModelSpec& spec, int min_sites, const char* model) {
  if (spec.L < min_sites) {
    throw InvalidArgument(std::string(model) + " needs L >= " + std::to_string(min_sites) +
                          ", got " + std::to_string(spec.L));
  }
  if (spec.L > kMaxSites) {
    throw CapExceeded(std::string(model) + ": L = " + std::to_string(spec.L) +
                      " exceeds the dense-storage limit");
  }
}

/// Neighbour pairs (k, k+distance), 1-based, wrapping when periodic. A
/// periodic bond is skipped when it would duplicate an open one.
std::vector<std::pair<int, int>> bonds(int L, int distance, Boundary boundary) {
  std::vector<std::pair<int, int>> out;
  for (int k = 1; k + distance <= L; ++k) out.emplace_back(k, k + distance);
  if (boundary == Boundary::Periodic && L > 2 * distance) {
    for (int k = L - distance + 1; k <= L; ++k) out.emplace_back(k, k + distance - L);
  }
  return out;
}

/// sigma^z eigenvalue of `site` on basis index j.
inline double sz(std::uint64_t j, int site, int L) { return site_bit(j, site, L) == 0 ? 1.0 : -1.0; }

inline std::uint64_t flip(std::uint64_t j, int site, int L) {
  return j ^ (std::uint64_t{1} << (L - site));
}

}  // namespace

std::string to_string(ModelFamily f) {
  switch (f) {
    case ModelFamily::Heisenberg: return "heisenberg";
    case ModelFamily::Annni: return "annni";
    case ModelFamily::Pxp: return "pxp";
  }
  return "?";
}

std::string to_string(Boundary b) { return b == Boundary::Open ? "open" : "periodic"; }

SectorBasis sector_basis(int L, int M) {
  if (L < 1 || L > kMaxSites) throw InvalidArgument("sector_basis: L out of range");
  if (std::abs(M) > L || (L - M) % 2 != 0) {
    throw InvalidArgument("sector_basis: magnetization " + std::to_string(M) +
                          " is empty for L = " + std::to_string(L));
  }
  SectorBasis basis{L, M, false, {}};
  const std::uint64_t d = std::uint64_t{1} << L;
  for (std::uint64_t j = 0; j < d; ++j) {
    if (magnetization(j, L) == M) basis.indices.push_back(static_cast<Index>(j));
  }
  return basis;
}

SectorBasis pxp_basis(int L, Boundary boundary) {
  if (L < 2 || L > kMaxSites) throw InvalidArgument("pxp_basis: L out of range");
  SectorBasis basis{L, 0, true, {}};
  const auto nn = bonds(L, 1, boundary);
  const std::uint64_t d = std::uint64_t{1} << L;
  for (std::uint64_t j = 0; j < d; ++j) {
    bool allowed = true;
    for (auto [a, b] : nn) {
      if (site_bit(j, a, L) == 0 && site_bit(j, b, L) == 0) {
        allowed = false;
        break;
      }
    }
    if (allowed) basis.indices.push_back(static_cast<Index>(j));
  }
  return basis;
}

ComplexMatrix build_heisenberg(const ModelSpec& spec) {
  require_sites(spec, 2, "heisenberg");
  const int L = spec.L;
  const Index d = Index{1} << L;
  ComplexMatrix H = ComplexMatrix::Zero(d, d);
  const auto nn = bonds(L, 1, spec.boundary);
  std::vector<double> field(L + 1, 0.0);
  for (int k = 1; k <= L; ++k) field[k] = spec.W * std::cos(2.0 * std::numbers::pi * spec.eta * k);

  for (std::uint64_t j = 0; j < static_cast<std::uint64_t>(d); ++j) {
    double diag = 0.0;
    for (int k = 1; k <= L; ++k) diag += field[k] * sz(j, k, L);
    for (auto [a, b] : nn) {
      const double zz = sz(j, a, L) * sz(j, b, L);
      diag += -spec.J * zz;
      if (zz < 0.0) {
        // sigma^x sigma^x + sigma^y sigma^y exchanges antiparallel spins with amplitude 2.
        const std::uint64_t jj = flip(flip(j, a, L), b, L);
        H(static_cast<Index>(jj), static_cast<Index>(j)) += -2.0 * spec.J;
      }
    }
    H(static_cast<Index>(j), static_cast<Index>(j)) += diag;
  }
  return H;
}

ComplexMatrix build_annni(const ModelSpec& spec) {
  require_sites(spec, spec.kappa != 0.0 ? 3 : 2, "annni");
  const int L = spec.L;
  const Index d = Index{1} << L;
  ComplexMatrix H = ComplexMatrix::Zero(d, d);
  const auto nn = bonds(L, 1, spec.boundary);
  const auto nnn = bonds(L, 2, spec.boundary);

  for (std::uint64_t j = 0; j < static_cast<std::uint64_t>(d); ++j) {
    double diag = 0.0;
    for (auto [a, b] : nn) diag += -spec.J * sz(j, a, L) * sz(j, b, L);
    for (auto [a, b] : nnn) diag += spec.kappa * sz(j, a, L) * sz(j, b, L);
    for (int k = 1; k <= L; ++k) {
      diag += -spec.h_z * sz(j, k, L);
      H(static_cast<Index>(flip(j, k, L)), static_cast<Index>(j)) += -spec.h;
    }
    H(static_cast<Index>(j), static_cast<Index>(j)) += diag;
  }
  return H;
}

ConstrainedHamiltonian build_pxp(const ModelSpec& spec) {
  require_sites(spec, 2, "pxp");
  const int L = spec.L;
  SectorBasis basis = pxp_basis(L, spec.boundary);
  std::unordered_map<Index, Index> position;
  for (Index i = 0; i < basis.size(); ++i) position.emplace(basis.indices[i], i);

  ComplexMatrix H = ComplexMatrix::Zero(basis.size(), basis.size());
  for (Index i = 0; i < basis.size(); ++i) {
    const auto j = static_cast<std::uint64_t>(basis.indices[i]);
    H(i, i) = spec.Delta * magnetization(j, L);
    for (int k = 1; k <= L; ++k) {
      // P sigma^x P keeps only flips that stay inside the constrained space.
      auto it = position.find(static_cast<Index>(flip(j, k, L)));
      if (it != position.end()) H(it->second, i) += spec.Omega;
    }
  }
  return {std::move(H), std::move(basis)};
}

ComplexMatrix build_full(const ModelSpec& spec) {
  switch (spec.family) {
    case ModelFamily::Heisenberg: return build_heisenberg(spec);
    case ModelFamily::Annni: return build_annni(spec);
    case ModelFamily::Pxp: break;
  }
  throw InvalidArgument("build_full: PXP lives in its constrained basis, use build_pxp");
}

ComplexMatrix project_to_sector(const ComplexMatrix& m, const SectorBasis& basis) {
  const Index d = Index{1} << basis.L;
  if (m.rows() != d || m.cols() != d) {
    throw DimensionMismatch("project_to_sector: matrix is " + std::to_string(m.rows()) +
                            "x" + std::to_string(m.cols()) + ", register needs " +
                            std::to_string(d));
  }
  const Index n = basis.size();
  ComplexMatrix out(n, n);
  for (Index c = 0; c < n; ++c)
    for (Index r = 0; r < n; ++r) out(r, c) = m(basis.indices[r], basis.indices[c]);
  return out;
}

ComplexMatrix embed_from_sector(const ComplexMatrix& m, const SectorBasis& basis, int L) {
  if (L != basis.L) throw DimensionMismatch("embed_from_sector: basis built for other L");
  const Index n = basis.size();
  if (m.rows() != n || m.cols() != n) {
    throw DimensionMismatch("embed_from_sector: matrix is " + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()) + ", sector has " + std::to_string(n));
  }
  const Index d = Index{1} << L;
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (Index c = 0; c < n; ++c)
    for (Index r = 0; r < n; ++r) out(basis.indices[r], basis.indices[c]) = m(r, c);
  return out;
}

ComplexMatrix total_sz(int L) {
  const Index d = Index{1} << L;
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (Index j = 0; j < d; ++j) out(j, j) = magnetization(static_cast<std::uint64_t>(j), L);
  return out;
}

}  // namespace qwit
