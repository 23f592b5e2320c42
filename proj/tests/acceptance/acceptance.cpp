// Acceptance suite: one PASS/FAIL line per criterion.
//   qwit_acceptance                 all criteria
//   qwit_acceptance --criterion 7   a single one (used by ctest)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "qwit/errors.hpp"
#include "qwit/mub.hpp"
#include "qwit/scenario.hpp"
#include "qwit/states.hpp"
#include "qwit/verify.hpp"
#include "qwit/witness.hpp"

using namespace qwit;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
  std::vector<std::string> notes;  // printed under the verdict, never affect it
};

struct Criterion {
  int id;
  const char* title;
  double time_limit_s;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

RunOptions run_options() {
  RunOptions o;
  o.workers = workers();
  return o;
}

std::vector<double> linspace_step(double start, double stop, double step) {
  std::vector<double> v;
  const long n = std::lround((stop - start) / step);
  for (long i = 0; i <= n; ++i) v.push_back(start + step * static_cast<double>(i));
  return v;
}

std::vector<double> abs_c2(const SweepResult& r) {
  std::vector<double> v;
  for (const auto& w : r.rows) v.push_back(std::abs(w.C2));
  return v;
}

std::vector<double> neg(const SweepResult& r) {
  std::vector<double> v;
  for (const auto& w : r.rows) v.push_back(w.negativity);
  return v;
}

std::size_t argmax(const std::vector<double>& v) {
  return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

/// Strict interior local maxima; flat stretches count once.
int interior_maxima(const std::vector<double>& v) {
  int count = 0;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    if (!(v[i] > v[i - 1])) continue;
    std::size_t j = i;
    while (j + 1 < v.size() && v[j + 1] == v[i]) ++j;
    if (j + 1 < v.size() && v[j + 1] < v[i]) ++count;
  }
  return count;
}

// ---- 1 ----------------------------------------------------------------------

Outcome closed_form() {
  const CheckResult r = check_closed_form_c2();
  Outcome o{r.passed, "max |delta| = " + fmt("%.3g", r.measured) + " over 729 points (tol 1e-9)", {}};
  if (!r.detail.empty()) o.notes.push_back("discrepancy table:\n" + r.detail);
  return o;
}

// ---- 2 ----------------------------------------------------------------------

Outcome separability() {
  VerifyOptions v;  // 100 seeds, 1..20 terms
  const CheckResult real = check_real_separable(v);
  const CheckResult imag = check_imaginary_separable(v);
  const CheckResult fixed = check_fixed_charge(v);
  const double worst = std::max({real.measured, imag.measured, fixed.measured});
  Outcome o;
  o.passed = real.passed && imag.passed && fixed.passed;
  o.detail = "max |C2|: real " + fmt("%.2g", real.measured) + ", imaginary " +
             fmt("%.2g", imag.measured) + ", fixed-charge " + fmt("%.2g", fixed.measured) +
             " (tol 1e-10, worst " + fmt("%.2g", worst) + ")";

  // Fourier rotation on fixed-charge ensembles, reported only.
  double fourier_fixed = 0.0;
  for (auto [la, lb] : {std::pair{2, 2}, std::pair{3, 3}}) {
    const Bipartition part = Bipartition::qubits(la, lb);
    for (int i = 0; i < 100; ++i) {
      Rng rng(7700 + static_cast<std::uint64_t>(i));
      const int n = std::uniform_int_distribution<int>(1, 20)(rng);
      const DensityMatrix rho = random_separable({SeparableFlavor::FixedCharge, part, n, std::nullopt}, rng).state();
      fourier_fixed = std::max(fourier_fixed, std::abs(c2(rho, part, subsystem_magnetization(la),
                                                         subsystem_magnetization(lb), fourier_mub(part.dim_a()),
                                                         fourier_mub(part.dim_b()))));
    }
  }
  o.notes.push_back("info: fourier rotation on fixed-charge ensembles gives max |C2| = " +
                    fmt("%.3g", fourier_fixed) + " (not covered by the fixed-charge theorem)");
  return o;
}

// ---- 3 ----------------------------------------------------------------------

Outcome detection_floor() {
  const Bipartition part = Bipartition::qubits(1, 1);
  const auto z = subsystem_magnetization(1);
  const MubRotation u = local_x_rotation(1);
  int total = 0, hits = 0, ppt = 0;
  double min_c2 = 1e300, min_n = 1e300, max_ppt_gap = 0.0;
  for (double eps : linspace_step(0.05, 1.0, 0.05))
    for (double c : linspace_step(0.2, 0.8, 0.05))
      for (double r1 : linspace_step(-1.0, 1.0, 0.25)) {
        const DensityMatrix rho = two_qubit_family(r1, -0.5, 0.7, 0.1, eps, c);
        const double a = std::abs(c2(rho, part, z, z, u, u));
        const double n = negativity(rho, part);
        min_c2 = std::min(min_c2, a);
        min_n = std::min(min_n, n);
        ++total;
        if (a > 1e-3 && n > 0.0) ++hits;
        if (n == 0.0) {
          ++ppt;
          max_ppt_gap = std::max(max_ppt_gap, eig_hermitian(partial_transpose(rho, part)).values.minCoeff());
        }
      }
  Outcome o{hits == total,
            std::to_string(hits) + "/" + std::to_string(total) + " points detected; min |C2| = " +
                fmt("%.3g", min_c2) + ", min N = " + fmt("%.3g", min_n),
            {}};
  if (ppt > 0) {
    o.notes.push_back("info: " + std::to_string(ppt) + " points are PPT (hence separable) with smallest " +
                      "partial-transpose eigenvalue up to " + fmt("%.3g", max_ppt_gap));
  }
  return o;
}

// ---- 4 ----------------------------------------------------------------------

Outcome fixed_charge_pearson() {
  std::vector<std::pair<int, int>> sectors;
  for (int L = 2; L <= 6; ++L)
    for (int M = -L + 2; M <= L - 2; M += 2) sectors.emplace_back(L, M);
  double worst = 0.0;
  int unexpected_zero = 0;
  for (int i = 0; i < 100; ++i) {
    const auto [L, M] = sectors[static_cast<std::size_t>(i) % sectors.size()];
    Rng rng(9100 + static_cast<std::uint64_t>(i));
    const Bipartition part = Bipartition::qubits(L / 2, L - L / 2);
    try {
      const double p = pearson(random_sector_density(L, M, rng), part, subsystem_magnetization(part.sites_a()),
                               subsystem_magnetization(part.sites_b()));
      worst = std::max(worst, std::abs(p + 1.0));
    } catch (const ZeroVariance&) {
      ++unexpected_zero;
    }
  }
  int flagged = 0, polarized = 0;
  for (int L = 2; L <= 6; ++L)
    for (int M : {-L, L}) {
      ++polarized;
      Rng rng(9300 + static_cast<std::uint64_t>(L));
      const Bipartition part = Bipartition::qubits(L / 2, L - L / 2);
      try {
        pearson(random_sector_density(L, M, rng), part, subsystem_magnetization(part.sites_a()),
                subsystem_magnetization(part.sites_b()));
      } catch (const ZeroVariance&) {
        ++flagged;
      }
    }
  return {worst <= 1e-10 && unexpected_zero == 0 && flagged == polarized,
          "max |P + 1| = " + fmt("%.3g", worst) + " over 100 states (tol 1e-10); zero-variance flagged " +
              std::to_string(flagged) + "/" + std::to_string(polarized),
          {}};
}

// ---- 5 ----------------------------------------------------------------------

Outcome mub_structure() {
  const CheckResult r = check_mub_structure();
  const MubRotation u = local_x_rotation(3);
  const PhaseTable& phi = *u.phase_table;
  const Complex a(0.0, -1.0);
  const double pre = 1.0 / std::sqrt(8.0);
  // One-based (4,2), (4,5), (4,3).
  const bool worked = phi(3, 1) == 1 && phi(3, 4) == 3 && phi(3, 2) == 1 &&
                      std::abs(u.matrix(3, 1) - pre * a) < 1e-12 &&
                      std::abs(u.matrix(3, 4) - pre * a * a * a) < 1e-12 &&
                      std::abs(u.matrix(3, 2) - pre * a) < 1e-12;
  Outcome o{r.passed && worked,
            "max(unitarity, unbiasedness, symmetry) = " + fmt("%.3g", r.measured) +
                " (tol 1e-12); L=3 worked elements " + (worked ? "match" : "differ"),
            {}};
  if (!r.detail.empty()) o.notes.push_back(r.detail);
  return o;
}

// ---- 6 ----------------------------------------------------------------------

Outcome negativity_oracle() {
  const Bipartition part = Bipartition::qubits(1, 1);
  double worst_oracle = 0.0, worst_literal = 0.0;
  for (int i = 0; i < 200; ++i) {
    Rng rng(11000 + static_cast<std::uint64_t>(i));
    const DensityMatrix rho = random_generic_density(4, rng);
    const RealVector ev = eig_hermitian(partial_transpose(rho, part)).values;
    double neg_sum = 0.0;
    for (Index k = 0; k < ev.size(); ++k)
      if (ev(k) < 0.0) neg_sum += ev(k);
    const double n = negativity(rho, part);
    worst_oracle = std::max(worst_oracle, std::abs(n + neg_sum));
    worst_literal = std::max(worst_literal, std::abs(n + 2.0 * neg_sum));
  }
  ComplexVector phi = ComplexVector::Zero(4);
  phi(0) = phi(3) = 1.0;
  const double bell = negativity(DensityMatrix::pure(phi), part);
  double worst_sep = 0.0;
  for (int i = 0; i < 200; ++i) {
    Rng rng(12000 + static_cast<std::uint64_t>(i));
    const int n = std::uniform_int_distribution<int>(1, 20)(rng);
    worst_sep = std::max(worst_sep, negativity(random_separable({SeparableFlavor::Generic, part, n, std::nullopt}, rng).state(), part));
  }
  Outcome o{worst_oracle <= 1e-9 && std::abs(bell - 0.5) <= 1e-9 && worst_sep <= 1e-9,
            "max |N - (-sum neg PT eig)| = " + fmt("%.3g", worst_oracle) + ", Bell N = " +
                fmt("%.12g", bell) + ", max separable N = " + fmt("%.3g", worst_sep),
            {}};
  o.notes.push_back("info: against -2*sum(neg PT eig) the max deviation is " + fmt("%.3g", worst_literal) +
                    "; that oracle would give 1 for the Bell state");
  return o;
}

// ---- 7 ----------------------------------------------------------------------

Outcome heisenberg_beta() {
  bool ok = true;
  std::ostringstream detail;
  Outcome o;
  for (double W : {1.0, 5.0}) {
    Scenario s;
    s.name = "heisenberg_beta";
    s.model.family = ModelFamily::Heisenberg;
    s.model.L = 8;
    s.model.W = W;
    s.model.sector = 0;
    s.sweep.parameter = "beta";
    for (int i = 0; i <= 28; ++i) s.sweep.values.push_back(std::pow(10.0, -5.0 + i / 4.0));
    const SweepResult r = run_scenario(s, run_options());
    const auto c = abs_c2(r), n = neg(r);
    const std::size_t lo = 8, hi = 28;  // beta = 1e-3, 1e2
    const bool low = c[lo] <= 1e-6 && n[lo] <= 1e-6;
    const bool high = c[hi] >= 1e-3 && n[hi] >= 1e-3;
    auto first_above = [&](const std::vector<double>& v) -> double {
      for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] > 1e-4) return r.values[i];
      return NAN;
    };
    const double bc = first_above(c), bn = first_above(n);
    const double ratio = std::max(bc, bn) / std::min(bc, bn);
    const bool onset = std::isfinite(ratio) && ratio <= 4.0;
    ok = ok && low && high && onset;
    detail << "W=" << W << ": beta=1e-3 |C2|=" << fmt("%.3g", c[lo]) << " N=" << fmt("%.3g", n[lo])
           << (low ? "" : " [>1e-6]") << "; beta=100 |C2|=" << fmt("%.3g", c[hi]) << " N=" << fmt("%.3g", n[hi])
           << (high ? "" : " [<1e-3]") << "; onset ratio " << fmt("%.3g", ratio) << (onset ? "" : " [>4]") << ". ";
  }
  o.passed = ok;
  o.detail = detail.str();
  return o;
}

// ---- 8 ----------------------------------------------------------------------

Outcome entanglement_barrier() {
  Scenario s;
  s.name = "dephasing_barrier";
  s.model.family = ModelFamily::Heisenberg;
  s.model.L = 6;
  s.model.W = 1.0;
  s.source = StateSource::Lindblad;
  s.gamma = 0.1;
  s.dt = 0.01;
  s.sweep = {"time", linspace_step(0.0, 50.0, 0.5)};
  const SweepResult r = run_scenario(s, run_options());
  const auto c = abs_c2(r), n = neg(r);
  const int mc = interior_maxima(c), mn = interior_maxima(n);
  const double tc = r.values[argmax(c)], tn = r.values[argmax(n)];
  const bool close = std::abs(tc - tn) <= 0.25 * std::max(tc, tn);
  Outcome o{mc == 1 && mn == 1 && close,
            "interior maxima: |C2| " + std::to_string(mc) + ", N " + std::to_string(mn) + "; argmax t: |C2| " +
                fmt("%.3g", tc) + ", N " + fmt("%.3g", tn) + (close ? "" : " [>25% apart]"),
            {}};
  std::vector<double> signed_c2;
  int sign_changes = 0;
  for (const auto& w : r.rows) {
    if (!signed_c2.empty() && w.C2 * signed_c2.back() < 0.0) ++sign_changes;
    signed_c2.push_back(w.C2);
  }
  o.notes.push_back("info: signed C2 has " + std::to_string(interior_maxima(signed_c2)) + " interior maxima and " +
                    std::to_string(sign_changes) + " sign changes; N last positive at t = " +
                    fmt("%.3g", [&] {
                      double last = 0.0;
                      for (std::size_t i = 0; i < r.rows.size(); ++i)
                        if (n[i] > 0.0) last = r.values[i];
                      return last;
                    }()));
  return o;
}

// ---- 9 ----------------------------------------------------------------------

Outcome ising_criticality() {
  Scenario s;
  s.name = "ising_h";
  s.model.family = ModelFamily::Annni;
  s.model.L = 8;
  s.model.kappa = 0.0;
  s.model.h_z = 1e-3;
  s.beta = 100.0;
  s.sweep = {"h", linspace_step(0.05, 2.0, 0.05)};
  const SweepResult r = run_scenario(s, run_options());
  const auto c = abs_c2(r), n = neg(r);
  const double hc = r.values[argmax(c)], hn = r.values[argmax(n)];
  int below = 0;
  for (const auto& w : r.rows)
    if (w.maccone_lhs && *w.maccone_lhs <= 1.0) ++below;
  const double frac = static_cast<double>(below) / static_cast<double>(r.rows.size());
  const bool peaks = hc >= 0.6 && hc <= 1.2 && hn >= 0.6 && hn <= 1.2;
  return {peaks && frac >= 0.9,
          "argmax h: |C2| " + fmt("%.3g", hc) + ", N " + fmt("%.3g", hn) + "; Maccone lhs <= 1 on " +
              fmt("%.1f", 100.0 * frac) + "% of the grid",
          {}};
}

// ---- 10 ---------------------------------------------------------------------

Outcome thresholds() {
  const std::vector<double> betas = {0.1, 0.3, 1.0, 3.0, 10.0, 30.0, 100.0};
  const std::vector<double> hs = linspace_step(0.1, 2.0, 0.1);
  double mean[2] = {0.0, 0.0};
  bool zero_high = true;
  std::ostringstream detail;
  int k = 0;
  for (int L : {6, 8}) {
    Scenario s;
    s.model.family = ModelFamily::Annni;
    s.model.L = L;
    s.model.kappa = 0.0;
    s.model.h_z = 1e-3;
    s.sweep = {"h", hs};
    const ThresholdMap m = threshold_map(s, betas, hs, 1e-4, run_options());
    for (std::size_t i = 0; i < betas.size(); ++i)
      if (betas[i] >= 10.0 && m.c2_threshold_per_beta[i] > kSeparableC2) zero_high = false;
    mean[k++] = m.mean_c2_threshold();
    detail << "L=" << L << " thresholds [";
    for (std::size_t i = 0; i < betas.size(); ++i) detail << (i ? " " : "") << fmt("%.3g", m.c2_threshold_per_beta[i]);
    detail << "] mean " << fmt("%.6f", m.mean_c2_threshold()) << "; ";
  }
  const bool trend = mean[1] <= 1.1 * mean[0];
  return {zero_high && trend,
          detail.str() + (zero_high ? "beta>=10 thresholds zero" : "nonzero threshold at beta>=10") +
              (trend ? "" : "; mean grows with L"),
          {}};
}

// ---- 11 ---------------------------------------------------------------------

SweepResult pxp_sweep(Boundary b) {
  Scenario s;
  s.name = "pxp_delta";
  s.model.family = ModelFamily::Pxp;
  s.model.L = 10;
  s.model.Omega = 1.0;
  s.model.boundary = b;
  s.beta = 100.0;
  s.sweep = {"Delta", linspace_step(-1.5, 1.5, 0.05)};
  return run_scenario(s, run_options());
}

Outcome pxp_transition() {
  // With H = sum(Omega PXP + Delta sigma^z) and up = excited, the ordering
  // transition sits at Delta/Omega = -0.65.
  constexpr double kCritical = -0.65;
  const SweepResult r = pxp_sweep(Boundary::Periodic);
  const auto c = abs_c2(r), n = neg(r);
  const double dc = r.values[argmax(c)], dn = r.values[argmax(n)];
  double max_lhs = 0.0;
  bool lhs_defined = true;
  for (const auto& w : r.rows) {
    if (w.maccone_lhs) max_lhs = std::max(max_lhs, *w.maccone_lhs);
    else lhs_defined = false;
  }
  const bool near = std::abs(dn - kCritical) <= 0.3 + 1e-12;
  const bool order = dc >= dn - 1e-12;
  Outcome o{near && order && lhs_defined && max_lhs <= 1.0,
            "periodic L=10: argmax N at Delta=" + fmt("%.3g", dn) + ", argmax |C2| at " + fmt("%.3g", dc) +
                ", max Maccone lhs " + fmt("%.3g", max_lhs),
            {}};
  const SweepResult open = pxp_sweep(Boundary::Open);
  const auto co = abs_c2(open), no = neg(open);
  o.notes.push_back("info: open boundaries: argmax N at Delta=" + fmt("%.3g", open.values[argmax(no)]) +
                    ", argmax |C2| at " + fmt("%.3g", open.values[argmax(co)]));
  return o;
}

// ---- 12 ---------------------------------------------------------------------

Outcome cli_determinism() {
#if defined(QWIT_CLI_PATH) && defined(QWIT_CONFIG_DIR)
  namespace fs = std::filesystem;
  const std::string config = std::string(QWIT_CONFIG_DIR) + "/fig2_kappa0_beta100.json";
  const fs::path dir = fs::temp_directory_path() / "qwit_acceptance";
  fs::create_directories(dir);
  auto run = [&](const std::string& name, int w) {
    const fs::path out = dir / name;
    const std::string cmd = std::string("\"") + QWIT_CLI_PATH + "\" --seed 7 --workers " + std::to_string(w) +
                            " --out \"" + out.string() + "\" sweep \"" + config + "\"";
    if (std::system(cmd.c_str()) != 0) return std::string();
    std::ifstream in(out, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const std::string a = run("a.csv", 1), b = run("b.csv", 3);
  std::string header;
  std::istringstream lines(a);
  for (std::string line; std::getline(lines, line);)
    if (line.rfind("#", 0) != 0) {
      header = line;
      break;
    }
  const bool ok = !a.empty() && a == b && header == "h,C1,C2,pearson_O,pearson_Oprime,maccone_lhs,negativity";
  return {ok, std::to_string(a.size()) + " bytes, runs " + (a == b ? "identical" : "differ") + ", header '" + header + "'", {}};
#else
  return {false, "CLI not built", {}};
#endif
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "closed-form C2 on the two-qubit family", 5, closed_form},
      {2, "separable ensembles give C2 = 0", 60, separability},
      {3, "entangled two-qubit family detected by C2 and N", 5, detection_floor},
      {4, "fixed-charge Pearson correlation is -1", 30, fixed_charge_pearson},
      {5, "local_x MUB structure, L = 1..6", 60, mub_structure},
      {6, "negativity against an eigenvalue oracle", 60, negativity_oracle},
      {7, "Heisenberg beta sweep, C2 tracks N", 600, heisenberg_beta},
      {8, "dephasing entanglement barrier", 600, entanglement_barrier},
      {9, "transverse Ising criticality", 900, ising_criticality},
      {10, "C2 thresholds shrink with L", 1800, thresholds},
      {11, "PXP transition", 900, pxp_transition},
      {12, "CLI sweep output is deterministic", 120, cli_determinism},
  };
  return all;
}

bool run_one(const Criterion& c) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = c.run();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what(), {}};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = secs < c.time_limit_s;
  const bool pass = o.passed && in_time;
  std::printf("%s  criterion %2d  %s: %s [%.1f s / %.0f s%s]\n", pass ? "PASS" : "FAIL", c.id, c.title,
              o.detail.c_str(), secs, c.time_limit_s, in_time ? "" : " exceeded");
  for (const auto& n : o.notes) std::printf("      %s\n", n.c_str());
  std::fflush(stdout);
  return pass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qwit acceptance suite"};
  int only = 0;
  app.add_option("--criterion", only, "run a single criterion (1-12)")->check(CLI::Range(1, 12));
  CLI11_PARSE(app, argc, argv);

  int failed = 0;
  for (const auto& c : criteria())
    if (only == 0 || c.id == only) failed += run_one(c) ? 0 : 1;
  if (only == 0) std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria().size()) - failed, criteria().size());
  return failed == 0 ? 0 : 1;
}
