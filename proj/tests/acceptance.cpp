// Acceptance suite: one self-contained check per criterion, each printing a
// single [PASS]/[FAIL] line. Run with no arguments for the full battery or
// pass criterion numbers to run a subset.

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "ataheat/ata.hpp"
#include "ataheat/cluster.hpp"
#include "ataheat/evolve.hpp"
#include "ataheat/experiments.hpp"
#include "ataheat/grid.hpp"
#include "ataheat/oracle.hpp"
#include "ataheat/pauli.hpp"
#include "ataheat/resources.hpp"
#include "ataheat/rng.hpp"
#include "ataheat/sources.hpp"
#include "ataheat/state.hpp"

using namespace ataheat;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t m = values.size() / 2;
  return values.size() % 2 == 1 ? values[m] : 0.5 * (values[m - 1] + values[m]);
}

struct LinearFit {
  double slope = 0.0;
  double r_squared = 0.0;
};

LinearFit fit_line(const std::vector<double>& y) {
  const double n = static_cast<double>(y.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double x = static_cast<double>(i + 1);
    sx += x;
    sy += y[i];
    sxx += x * x;
    sxy += x * y[i];
  }
  LinearFit fit;
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - fit.slope * sx) / n;
  const double mean = sy / n;
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double x = static_cast<double>(i + 1);
    ss_res += (y[i] - (fit.slope * x + intercept)) * (y[i] - (fit.slope * x + intercept));
    ss_tot += (y[i] - mean) * (y[i] - mean);
  }
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

// 1. Spectral and cyclic-tridiagonal solvers agree to 1e-10 on 100 random
//    systems at n in {4..12}, within 10 s.
bool criterion_1(std::string& detail) {
  const auto start = Clock::now();
  Rng rng(1001);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 4 + trial % 9;
    const double c = std::vector<double>{0.1, 1.0, 10.0}[trial % 3];
    const GridSpec g = GridSpec::dimensionless(n, c);
    std::vector<double> b(g.points());
    for (double& v : b) v = rng.uniform_pm1();

    const OracleSolution spectral =
        solve_exact(std::span<const double>(b), g, OracleSolution::Method::spectral);
    const OracleSolution tridiag =
        solve_exact(std::span<const double>(b), g, OracleSolution::Method::tridiagonal);
    for (std::size_t i = 0; i < b.size(); ++i) {
      worst = std::max(worst, std::abs(spectral.x[i] - tridiag.x[i]));
    }
  }
  const double elapsed = seconds_since(start);
  std::ostringstream os;
  os << "max |spectral - tridiagonal| = " << worst << ", " << elapsed << " s";
  detail = os.str();
  return worst < 1e-10 && elapsed < 10.0;
}

// 2. Walsh support of the piecewise-quadratic spectrum: popcount > 2 mass
//    below 1e-10 and term count within n(n+1)/2 + n + 1 for n in {3..12}.
bool criterion_2(std::string& detail) {
  double worst_heavy = 0.0;
  std::size_t worst_count_margin = 0;
  for (int n = 3; n <= 12; ++n) {
    const GridSpec g = GridSpec::dimensionless(n, 0.1);
    const Spectrum spec = approx_spectrum(g);
    const DiagonalPauliSum full = wht_analyze(spec.values, 0.0);
    std::size_t kept = 0;
    for (const auto& [mask, h] : full.terms) {
      if (detail::popcount64(mask) > 2) {
        worst_heavy = std::max(worst_heavy, std::abs(h));
      } else if (std::abs(h) > 1e-10) {
        ++kept;
      }
    }
    const std::size_t cap = static_cast<std::size_t>(n) * (n + 1) / 2 + n + 1;
    if (kept > cap) worst_count_margin = std::max(worst_count_margin, kept - cap);
  }
  std::ostringstream os;
  os << "max popcount>2 coefficient = " << worst_heavy
     << ", count overruns = " << worst_count_margin;
  detail = os.str();
  return worst_heavy < 1e-10 && worst_count_margin == 0;
}

// 3. Loss monotonicity across 50 random single-step problems at n = 8.
bool criterion_3(std::string& detail) {
  double worst_rise = -1.0;
  const double cs[3] = {0.1, 1.0, 10.0};
  for (int trial = 0; trial < 50; ++trial) {
    const double c = cs[trial % 3];
    const SingleStepProblem problem = make_single_step_problem(8, c, 20, 3000 + trial);
    AtaConfig cfg;
    cfg.max_depth = 40;
    const AnsatzTree tree = grow(fourier(Statevector::from_real(problem.b)), problem.approx,
                                 problem.decomposition, cfg);
    for (std::size_t i = 1; i < tree.loss_history.size(); ++i) {
      worst_rise = std::max(worst_rise, tree.loss_history[i] - tree.loss_history[i - 1]);
    }
  }
  std::ostringstream os;
  os << "worst per-node loss increase = " << worst_rise;
  detail = os.str();
  return worst_rise <= 1e-12;
}

// 4. Single-step minimal-depth trend: medians non-increasing in c at every
//    n in {6..10}, and non-increasing in n for n >= 8, +/- 1 node; < 10 min.
bool criterion_4(std::string& detail) {
  const auto start = Clock::now();
  const std::vector<int> ns{6, 7, 8, 9, 10};
  const std::vector<double> cs{0.1, 1.0, 10.0};
  std::map<std::pair<int, int>, double> medians;

  for (std::size_t ci = 0; ci < cs.size(); ++ci) {
    for (int n : ns) {
      std::vector<double> depths;
      for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const SingleStepProblem problem = make_single_step_problem(n, cs[ci], 20, 4000 + seed);
        AtaConfig cfg;
        cfg.max_depth = 128;
        const MinDepthResult r =
            min_depth_for_fidelity(fourier(Statevector::from_real(problem.b)), problem.approx,
                                   problem.decomposition, problem.oracle_x, 0.99, cfg);
        depths.push_back(static_cast<double>(r.depth));
      }
      medians[{n, static_cast<int>(ci)}] = median(depths);
    }
  }

  bool ok = true;
  std::ostringstream os;
  for (int n : ns) {
    os << "n=" << n << ": ";
    for (std::size_t ci = 0; ci < cs.size(); ++ci) {
      os << "d(c=" << cs[ci] << ")=" << medians[{n, static_cast<int>(ci)}] << " ";
      if (ci > 0 &&
          medians[{n, static_cast<int>(ci)}] > medians[{n, static_cast<int>(ci - 1)}] + 1.0) {
        ok = false;
      }
    }
  }
  for (std::size_t ci = 0; ci < cs.size(); ++ci) {
    for (int n : {9, 10}) {
      if (medians[{n, static_cast<int>(ci)}] > medians[{n - 1, static_cast<int>(ci)}] + 1.0) {
        ok = false;
      }
    }
  }
  const double elapsed = seconds_since(start);
  os << "(" << elapsed << " s)";
  detail = os.str();
  return ok && elapsed < 600.0;
}

// 5. Rough-field saturation: unresolvable fields (degree 300 on 64 cells)
//    are expected to pin the minimal depth at the 2^6 cap for >= 9 of 10
//    seeds. Measured reality: the solution of this operator is always
//    compressible (the 1/lambda^2 weighting concentrates its energy on the
//    amplified slow modes), so the 0.99 crossing lands far below the cap
//    for every input, including white noise; the sequential variant
//    (200-step final fidelity, shown as "evo") relaxes the state onto few
//    modes and lands even lower. The check asserts the expected saturation
//    anyway and documents the negative result.
bool criterion_5(std::string& detail) {
  int at_cap = 0;
  std::ostringstream os;
  os << "single-solve depths: ";
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const SingleStepProblem problem = make_single_step_problem(6, 0.1, 300, 5000 + seed);
    AtaConfig cfg;
    cfg.max_depth = 64;
    const MinDepthResult r =
        min_depth_for_fidelity(fourier(Statevector::from_real(problem.b)), problem.approx,
                               problem.decomposition, problem.oracle_x, 0.99, cfg);
    if (r.depth == 64) ++at_cap;
    os << r.depth << (r.saturated ? "*" : "") << " ";
  }
  os << "| evo depths: ";
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const EvolutionDepthResult r = min_evolution_depth(6, 0.1, 300, 200, 0.99, 64, 5000 + seed);
    os << r.depth << (r.saturated ? "*" : "") << " ";
  }
  os << "(* = target unreached)";
  detail = os.str();
  return at_cap >= 9;
}

// 6. Heater/cooler relaxation reaches fidelity 0.99 against the exact
//    stationary profile within 5000 steps at n = 8, depth cap 35.
bool criterion_6(std::string& detail) {
  const HeaterCoolerResult result = run_heater_cooler(8, 0.1, 35, 5000, 0.99);
  std::ostringstream os;
  os << "final fidelity " << result.final_fidelity << " after "
     << (result.steps_to_target > 0 ? result.steps_to_target
                                    : result.stationary_fidelity.size())
     << " steps";
  detail = os.str();
  return result.steps_to_target > 0 && result.final_fidelity >= 0.99;
}

// 7. Dual-path consistency over 20 undropped steps at n = 6.
bool criterion_7(std::string& detail) {
  const int n = 6;
  EvolveConfig cfg;
  cfg.grid = GridSpec::dimensionless(n, 0.3);
  cfg.ata.max_depth = 16;

  const DiagonalPauliSum b0 = sample_repr_state(n, 12, 7001, "b0");
  const DiagonalPauliSum f_repr = sample_repr_state(n, 5, 7001, "f");
  const SourceFn source = [&](std::size_t) { return SourceTerm{f_repr, 1.0}; };
  const EvolveState initial = make_initial_state(b0);

  // Explicit statevector path driven by the same trees.
  Statevector b_sv = prepare_from_pauli_sum(initial.b_repr);
  for (auto& a : b_sv.amps) a *= initial.b_scale;
  const Statevector f_sv = prepare_from_pauli_sum(f_repr);

  RunOptions options;
  options.observer = [&](const StepResult& r) {
    Statevector x = apply_diag_sum(fourier(b_sv), r.tree.as_pauli_sum());
    x = inverse_fourier(x);
    for (std::size_t i = 0; i < b_sv.size(); ++i) {
      b_sv.amps[i] = cfg.grid.c * (cfg.grid.dt * f_sv.amps[i] - x.amps[i]);
    }
  };

  const std::vector<EvolveState> traj = run(initial, source, cfg, 20, options);

  Statevector repr_final = prepare_from_pauli_sum(traj.back().b_repr);
  for (auto& a : repr_final.amps) a *= traj.back().b_scale;
  const double fid = fidelity(repr_final.amps, b_sv.amps);
  std::ostringstream os;
  os << "final-state fidelity between paths = " << fid;
  detail = os.str();
  return fid >= 1.0 - 1e-8;
}

// 8. Dropout error growth at n = 9: monotone mean infidelity, inverse
//    ordering in D_cut at the last step, linear fit with R^2 >= 0.8.
bool criterion_8(std::string& detail) {
  const std::size_t steps = 100;
  const std::vector<std::size_t> cuts{8, 16, 32};
  std::map<std::size_t, std::vector<double>> mean_curves;

  for (std::size_t cut : cuts) {
    std::vector<double> mean(steps, 0.0);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const DropoutRun run = run_dropout_study(9, 2.0, 50, cut, steps, 20, 8000 + seed);
      for (std::size_t i = 0; i < steps; ++i) mean[i] += run.infidelity[i] / 10.0;
    }
    mean_curves[cut] = std::move(mean);
  }

  bool monotone = true;
  double worst_drop = 0.0;
  for (const auto& [cut, curve] : mean_curves) {
    for (std::size_t i = 1; i < curve.size(); ++i) {
      if (curve[i] < curve[i - 1]) {
        monotone = false;
        worst_drop = std::max(worst_drop, curve[i - 1] - curve[i]);
      }
    }
  }
  const bool ordered = mean_curves[8].back() >= mean_curves[16].back() &&
                       mean_curves[16].back() >= mean_curves[32].back();
  double min_r2 = 1.0;
  for (const auto& [cut, curve] : mean_curves) {
    min_r2 = std::min(min_r2, fit_line(curve).r_squared);
  }

  std::ostringstream os;
  os << "final mean infidelity (8/16/32) = " << mean_curves[8].back() << "/"
     << mean_curves[16].back() << "/" << mean_curves[32].back() << ", min R^2 = " << min_r2
     << ", monotone = " << (monotone ? "yes" : "no");
  if (!monotone) os << " (worst drop " << worst_drop << ")";
  detail = os.str();
  return monotone && ordered && min_r2 >= 0.8;
}

// 9. Warm starts never lose to the cold depth-1 solve (50 paired runs) and
//    the Haar cluster size stays within 2x across n in {5..9}.
bool criterion_9(std::string& detail) {
  double worst_excess = -1.0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const WarmColdComparison cmp = warm_start_comparison(8, 0.1, 20, 3, 12, 9000 + seed);
    worst_excess = std::max(worst_excess, cmp.warm_initial_loss - cmp.cold_depth1_loss);
  }

  std::size_t min_size = SIZE_MAX, max_size = 0;
  std::ostringstream sizes;
  for (int n = 5; n <= 9; ++n) {
    HaarStudyConfig cfg;
    cfg.n = n;
    cfg.samples = 8;
    cfg.depth_cap = 50;
    cfg.c = 0.1;
    cfg.seed = 9100;
    const ClusterReport report = haar_random_study(cfg);
    min_size = std::min(min_size, report.masks.size());
    max_size = std::max(max_size, report.masks.size());
    sizes << report.masks.size() << " ";
  }

  std::ostringstream os;
  os << "worst warm-cold excess = " << worst_excess << ", haar sizes = " << sizes.str();
  detail = os.str();
  return worst_excess <= 1e-12 && min_size >= 1 && max_size <= 2 * min_size;
}

// 10. Closed-form resource models.
bool criterion_10(std::string& detail) {
  const bool chain_exact = resources::hhl_chain_probability(0.5, 10).exact == 0x1p-10;
  const bool overhead_exact = resources::ata_run_overhead(20000, 35).exact == 20000.0 * 64.0;
  bool ratio_monotone = true;
  double prev = std::numeric_limits<double>::infinity();
  for (int n = 4; n <= 20; ++n) {
    const double ratio = resources::gate_counts(n, resources::Method::ata, 35).total /
                         resources::gate_counts(n, resources::Method::hhl).total;
    if (ratio >= prev) ratio_monotone = false;
    prev = ratio;
  }
  std::ostringstream os;
  os << "chain(0.5,10) exact: " << (chain_exact ? "yes" : "no")
     << ", overhead(20000,35) exact: " << (overhead_exact ? "yes" : "no")
     << ", gate ratio monotone: " << (ratio_monotone ? "yes" : "no");
  detail = os.str();
  return chain_exact && overhead_exact && ratio_monotone;
}

// 11. State preparation from Z-string sums: round trip and the
//     Fourier-image proportionality, 100 random sums at n <= 8.
bool criterion_11(std::string& detail) {
  Rng rng(11001);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 8;
    const std::size_t size = std::size_t{1} << n;
    const std::size_t terms = 1 + rng.next_u64() % std::min<std::size_t>(size, 16);
    DiagonalPauliSum p(n);
    while (p.term_count() < terms) p.terms.emplace(rng.next_u64() % size, rng.uniform_pm1());

    const Statevector prepared = prepare_from_pauli_sum(p);
    const Statevector image = fourier(prepared);
    const std::vector<double> diag = wht_synthesize(p);
    const double scale = std::sqrt(static_cast<double>(size));

    double ref = 0.0;
    for (double d : diag) ref = std::max(ref, std::abs(d));
    for (std::size_t k = 0; k < size; ++k) {
      worst = std::max(worst, std::abs(image.amps[k] * scale - diag[k]) / std::max(ref, 1.0));
    }

    // analysis of the scaled Fourier image returns the original coefficients
    std::vector<double> real_image(size);
    for (std::size_t k = 0; k < size; ++k) real_image[k] = image.amps[k].real() * scale;
    const DiagonalPauliSum back = wht_analyze(real_image, 0.0);
    for (std::size_t m = 0; m < size; ++m) {
      worst = std::max(worst, std::abs(back.coeff(m) - p.coeff(m)) / std::max(ref, 1.0));
    }
  }
  std::ostringstream os;
  os << "worst relative deviation = " << worst;
  detail = os.str();
  return worst < 1e-12;
}

// 12. Kronecker-sum spectra against dense assembly at n = 2, d_r in {2, 3}.
bool criterion_12(std::string& detail) {
  double worst = 0.0;
  for (int d_r : {2, 3}) {
    const GridSpec g = GridSpec::dimensionless(2, 0.5);
    Spectrum mine = multidim_spectrum(g, d_r);

    Eigen::MatrixXd a0 = Eigen::MatrixXd::Zero(4, 4);
    for (int i = 0; i < 4; ++i) {
      a0(i, i) = -2.0;
      a0(i, (i + 1) % 4) += 1.0;
      a0(i, (i + 3) % 4) += 1.0;
    }
    const int total = 1 << (2 * d_r);
    Eigen::MatrixXd big = Eigen::MatrixXd::Zero(total, total);
    for (int axis = 0; axis < d_r; ++axis) {
      Eigen::MatrixXd term = Eigen::MatrixXd::Identity(1, 1);
      for (int pos = 0; pos < d_r; ++pos) {
        const Eigen::MatrixXd& factor =
            pos == axis ? a0 : Eigen::MatrixXd::Identity(4, 4).eval();
        term = Eigen::kroneckerProduct(term, factor).eval();
      }
      big += term;
    }
    big -= 0.5 * Eigen::MatrixXd::Identity(total, total);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(big);
    std::vector<double> dense(solver.eigenvalues().data(),
                              solver.eigenvalues().data() + total);
    std::vector<double> sorted = mine.values;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < total; ++i) {
      worst = std::max(worst, std::abs(sorted[static_cast<std::size_t>(i)] - dense[static_cast<std::size_t>(i)]));
    }
  }
  std::ostringstream os;
  os << "max eigenvalue deviation = " << worst;
  detail = os.str();
  return worst < 1e-10;
}

struct Criterion {
  int id;
  const char* name;
  std::function<bool(std::string&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "oracle cross-validation", criterion_1},
      {2, "two-local decomposition support", criterion_2},
      {3, "loss monotonicity", criterion_3},
      {4, "single-step minimal-depth trends", criterion_4},
      {5, "rough-field depth saturation", criterion_5},
      {6, "stationary heater/cooler", criterion_6},
      {7, "dual-path consistency", criterion_7},
      {8, "dropout error growth", criterion_8},
      {9, "cluster warm starts and Haar stability", criterion_9},
      {10, "resource formulas", criterion_10},
      {11, "state preparation from Z-string sums", criterion_11},
      {12, "Kronecker-sum spectra", criterion_12},
  };

  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    if (!selected.empty() &&
        std::find(selected.begin(), selected.end(), criterion.id) == selected.end()) {
      continue;
    }
    std::string detail;
    bool ok = false;
    try {
      ok = criterion.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << criterion.id << ": "
              << criterion.name << " (" << detail << ")\n";
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
