#pragma once

// Theorem and property suite behind `qwit verify`.

#include <string>
#include <vector>

#include "qwit/observable.hpp"
#include "qwit/states.hpp"

namespace qwit {

struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;   // worst violation observed
  double tolerance = 0.0;
  std::string detail;
};

struct VerifyOptions {
  int seeds = 100;        // random ensembles per flavor and size
  int max_terms = 20;
  std::uint64_t base_seed = 20240601;
};

/// Random E_j = f(j) + c1 with f(j) = -f(d-j+1) and a random offset.
DiagonalObservable random_antisymmetric_observable(Index d, Rng& rng);
/// Random E_j with f(j) = +f(d-j+1); the middle entry of odd d is zero.
DiagonalObservable random_symmetric_observable(Index d, Rng& rng);

CheckResult check_closed_form_c2();
CheckResult check_real_separable(const VerifyOptions& o);
CheckResult check_imaginary_separable(const VerifyOptions& o);
CheckResult check_fixed_charge(const VerifyOptions& o);
CheckResult check_single_term(const VerifyOptions& o);
CheckResult check_rotated_mean(const VerifyOptions& o);
CheckResult check_fixed_charge_pearson(const VerifyOptions& o);
CheckResult check_mub_structure();
CheckResult check_negativity_oracle(const VerifyOptions& o);

std::vector<CheckResult> run_verification(const VerifyOptions& o = {});

}  // namespace qwit
