#pragma once

// Correlators and entanglement quantities on bipartite states.

#include <optional>

#include "qwit/linalg.hpp"
#include "qwit/mub.hpp"
#include "qwit/observable.hpp"

namespace qwit {

/// <O_A (x) O_B> - <O_A><O_B> for computational-basis-diagonal observables.
double connected_correlation(const DensityMatrix& rho, const Bipartition& part,
                             const DiagonalObservable& oa, const DiagonalObservable& ob);

/// General Hermitian observables. Not used for theorem checks.
double connected_correlation(const DensityMatrix& rho, const Bipartition& part,
                             const ComplexMatrix& oa, const ComplexMatrix& ob);

/// Connected correlation on the rotated state. For an odd-dimensional Fourier
/// rotation the middle value f((d+1)/2) must vanish, otherwise InvalidArgument.
double c2(const DensityMatrix& rho, const Bipartition& part, const DiagonalObservable& oa,
          const DiagonalObservable& ob, const MubRotation& ua, const MubRotation& ub);

/// 1/4 (a1 b1 - a1 b2 - a2 b1 + a2 b2), a_i = sqrt(1-r_i^2), b_i = sqrt(1-s_i^2).
double c1_family_check(double r1, double r2, double s1, double s2);

/// C1 / (sigma_A sigma_B). Throws ZeroVariance when either variance is at or
/// below kTolerances.variance_floor.
double pearson(const DensityMatrix& rho, const Bipartition& part, const DiagonalObservable& oa,
               const DiagonalObservable& ob);

struct MacconeResult {
  double lhs;
  bool entangled;  // lhs > 1
};

MacconeResult maccone_criterion(const DensityMatrix& rho, const Bipartition& part,
                                const DiagonalObservable& oa, const DiagonalObservable& ob,
                                const MubRotation& ua, const MubRotation& ub);

/// (||rho^{T_A}||_1 - 1)/2. Values in [-negativity_clip, 0) report as 0, lower
/// values throw LinalgFailure.
double negativity(const DensityMatrix& rho, const Bipartition& part);

struct WitnessResult {
  double C1 = 0.0;
  double C2 = 0.0;
  std::optional<double> pearson_O;       // empty: zero variance
  std::optional<double> pearson_Oprime;  // empty: zero variance
  std::optional<double> maccone_lhs;     // empty when either Pearson value is
  double negativity = 0.0;
};

struct EvaluateOptions {
  bool negativity = true;
};

/// All quantities; zero-variance terms are left empty instead of throwing.
WitnessResult evaluate_all(const DensityMatrix& rho, const Bipartition& part,
                           const DiagonalObservable& oa, const DiagonalObservable& ob,
                           const MubRotation& ua, const MubRotation& ub,
                           const EvaluateOptions& options = {});

}  // namespace qwit
