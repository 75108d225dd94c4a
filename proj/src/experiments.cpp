#include "ataheat/experiments.hpp"

#include <cmath>
#include <stdexcept>

#include "ataheat/oracle.hpp"

namespace ataheat {

namespace {

// Physical grid over z in [0, 1): dz = 1/2^n, dt chosen so the requested c
// holds with unit diffusivity.
GridSpec unit_interval_grid(int n, double c) {
  const double dz = 1.0 / static_cast<double>(std::size_t{1} << n);
  return GridSpec::physical(n, c, 1.0, dz * dz / c);
}

struct SmoothFields {
  GridSpec grid;
  std::vector<double> chi;
  ChebyshevField2D f_field;

  std::vector<double> f_at(int n, double t01) const { return discretize(f_field, n, t01); }
};

SmoothFields make_smooth_fields(int n, double c, int smoothness, std::uint64_t seed) {
  SmoothFields fields;
  fields.grid = unit_interval_grid(n, c);
  const ChebyshevField1D chi_field = sample_field_1d(smoothness, seed, "chi");
  fields.f_field = sample_field_2d(smoothness, smoothness, seed, "f");
  normalize_pair(chi_field, fields.f_field);
  fields.chi = discretize(chi_field, n);
  return fields;
}

}  // namespace

SingleStepProblem make_single_step_problem(int n, double c, int smoothness, std::uint64_t seed) {
  SingleStepProblem problem;
  const SmoothFields fields = make_smooth_fields(n, c, smoothness, seed);
  problem.grid = fields.grid;

  const std::vector<double> f0 = fields.f_at(n, 0.0);
  problem.b.resize(fields.chi.size());
  for (std::size_t i = 0; i < problem.b.size(); ++i) {
    problem.b[i] = c * (problem.grid.dt * f0[i] - fields.chi[i]);
  }

  problem.approx = approx_spectrum(problem.grid);
  problem.decomposition = decompose_operator(problem.approx);
  problem.oracle_x = solve_exact(std::span<const double>(problem.b), problem.grid).x;
  return problem;
}

HeaterCoolerResult run_heater_cooler(int n, double c, std::size_t depth_cap,
                                     std::size_t max_steps, double target_fidelity,
                                     std::size_t d_cut) {
  const GridSpec grid = unit_interval_grid(n, c);
  const std::size_t size = grid.points();
  const HeaterCoolerPreset preset = heater_cooler_preset(n, 0, size / 2, 1);
  const std::vector<double> stationary = stationary_profile(preset.field, grid);

  EvolveConfig cfg;
  cfg.grid = grid;
  cfg.ata.max_depth = depth_cap;
  cfg.d_cut = d_cut;

  // Zero initial temperature: b^0 = c dt f.
  const EvolveState initial = make_initial_state(preset.f_repr, grid.c * grid.dt);
  const SourceTerm source{preset.f_repr, 1.0};

  HeaterCoolerResult result;
  EvolveState state = initial;
  std::vector<std::complex<double>> b_exact;
  {
    const Statevector b0 = prepare_from_pauli_sum(initial.b_repr);
    b_exact = b0.amps;
    for (auto& a : b_exact) a *= initial.b_scale;
  }
  const Statevector f_sv = prepare_from_pauli_sum(preset.f_repr);

  for (std::size_t tau = 0; tau < max_steps; ++tau) {
    StepResult r = step(state, source, cfg);

    const std::vector<std::complex<double>> x_exact = solve_exact_complex(b_exact, grid);
    r.state.diag.fidelity = fidelity(r.solution.amps, x_exact);
    for (std::size_t i = 0; i < b_exact.size(); ++i) {
      b_exact[i] = grid.c * (grid.dt * f_sv.amps[i] - x_exact[i]);
    }

    const double fid = fidelity(r.solution.amps, stationary);
    result.stationary_fidelity.push_back(fid);
    result.trajectory.push_back(r.state);
    state = std::move(r.state);
    if (fid >= target_fidelity) {
      result.steps_to_target = tau + 1;
      break;
    }
  }
  result.final_fidelity = result.stationary_fidelity.back();
  return result;
}

DropoutRun run_dropout_study(int n, double c, std::size_t tree_depth, std::size_t d_cut,
                             std::size_t n_steps, int envelope_degree, std::uint64_t seed) {
  const GridSpec grid = unit_interval_grid(n, c);

  // Compressible inputs: truncation to the largest weights is only a
  // meaningful operation on states with a weight hierarchy.
  constexpr double kRankDecay = 0.6;
  DiagonalPauliSum b0 = sample_repr_state(n, d_cut, seed, "b0", kRankDecay);
  TimeEnvelopedReprSource source = sample_repr_source(
      ReprSourceSpec{n, d_cut, envelope_degree, seed, kRankDecay});

  constexpr std::size_t kBurnIn = 10;

  // Heat balance: source and initial distribution are O(1) fields of
  // comparable l1 mass on the unit square; the per-step injection then
  // carries the scheme's small dt factor.
  {
    const Statevector u0 = prepare_from_pauli_sum(b0);
    double chi_l1 = 0.0;
    for (const auto& a : u0.amps) chi_l1 += std::abs(a);
    double f_l1 = 0.0;
    const std::size_t probes = 33;
    for (std::size_t i = 0; i < probes; ++i) {
      const double t01 = static_cast<double>(i) / static_cast<double>(probes - 1);
      const Statevector f_sv = prepare_from_pauli_sum(source.at(t01));
      for (const auto& a : f_sv.amps) f_l1 += std::abs(a);
    }
    f_l1 /= static_cast<double>(probes);
    if (f_l1 > 0.0 && chi_l1 > 0.0) source.scale = chi_l1 / f_l1;
  }

  EvolveConfig cfg;
  cfg.grid = grid;
  cfg.ata.max_depth = tree_depth;

  // A short burn-in (dropout active) relaxes the sampled state onto the
  // truncated working manifold; the exact reference then launches from the
  // common adapted state, so the measured curve isolates the error
  // accumulated per dropout application.
  cfg.d_cut = d_cut;
  const double t_end = static_cast<double>(n_steps + kBurnIn);
  const SourceFn source_fn = [&source, t_end](std::size_t tau) {
    return source.term_at(std::min(static_cast<double>(tau) / t_end, 1.0));
  };

  const std::vector<EvolveState> warmup = run(make_initial_state(b0), source_fn, cfg, kBurnIn);

  RunOptions options;
  options.track_oracle = true;

  DropoutRun out;
  out.trajectory = run(warmup.back(), source_fn, cfg, n_steps, options);
  out.infidelity.reserve(n_steps);
  for (const EvolveState& s : out.trajectory) {
    out.infidelity.push_back(1.0 - s.diag.fidelity);
  }
  return out;
}

double evolution_final_fidelity(int n, double c, int smoothness, std::size_t n_steps,
                                std::size_t tree_depth, std::uint64_t seed,
                                Expansion expansion) {
  // Arbitrary fields generally have no real Z-string coefficients, so the
  // depth studies evolve the explicit statevector. With unlimited dropout
  // the two paths coincide where both apply.
  const SmoothFields fields = make_smooth_fields(n, c, smoothness, seed);
  const GridSpec& grid = fields.grid;
  const std::size_t size = grid.points();

  const Spectrum spectrum = approx_spectrum(grid);
  const DiagonalPauliSum decomposition = decompose_operator(spectrum);

  AtaConfig ata;
  ata.max_depth = tree_depth;
  ata.expansion = expansion;

  const double t_end = static_cast<double>(n_steps) * grid.dt;

  std::vector<std::complex<double>> b(size);
  std::vector<std::complex<double>> b_exact(size);
  {
    const std::vector<double> f0 = fields.f_at(n, 0.0);
    for (std::size_t i = 0; i < size; ++i) {
      b[i] = grid.c * (grid.dt * f0[i] - fields.chi[i]);
      b_exact[i] = b[i];
    }
  }

  std::vector<std::complex<double>> x;
  std::vector<std::complex<double>> x_exact;
  for (std::size_t tau = 0; tau < n_steps; ++tau) {
    const Statevector root = fourier(Statevector::from_complex(b, Domain::position));
    const AnsatzTree tree = grow(root, spectrum, decomposition, ata);
    x = tree.solution().amps;
    x_exact = solve_exact_complex(b_exact, grid);

    const double t01 = std::min(static_cast<double>(tau + 1) * grid.dt / t_end, 1.0);
    const std::vector<double> f = fields.f_at(n, t01);
    for (std::size_t i = 0; i < size; ++i) {
      b[i] = grid.c * (grid.dt * f[i] - x[i]);
      b_exact[i] = grid.c * (grid.dt * f[i] - x_exact[i]);
    }
  }
  return fidelity(x, x_exact);
}

namespace {

// Shared smooth-field statevector evolution; visit(tau, tree) sees every
// grown tree, and the working right-hand side after the loop is returned.
std::vector<std::complex<double>> evolve_smooth_statevector(
    const SmoothFields& fields, int n, std::size_t n_steps, const AtaConfig& ata,
    const std::function<void(std::size_t, const AnsatzTree&)>& visit) {
  const GridSpec& grid = fields.grid;
  const std::size_t size = grid.points();
  const Spectrum spectrum = approx_spectrum(grid);
  const DiagonalPauliSum decomposition = decompose_operator(spectrum);
  const double t_end = static_cast<double>(n_steps) * grid.dt;

  std::vector<std::complex<double>> b(size);
  {
    const std::vector<double> f0 = fields.f_at(n, 0.0);
    for (std::size_t i = 0; i < size; ++i) {
      b[i] = grid.c * (grid.dt * f0[i] - fields.chi[i]);
    }
  }
  for (std::size_t tau = 0; tau < n_steps; ++tau) {
    const Statevector root = fourier(Statevector::from_complex(b, Domain::position));
    const AnsatzTree tree = grow(root, spectrum, decomposition, ata);
    if (visit) visit(tau, tree);
    const std::vector<std::complex<double>> x = tree.solution().amps;
    const double t01 = std::min(static_cast<double>(tau + 1) * grid.dt / t_end, 1.0);
    const std::vector<double> f = fields.f_at(n, t01);
    for (std::size_t i = 0; i < size; ++i) {
      b[i] = grid.c * (grid.dt * f[i] - x[i]);
    }
  }
  return b;
}

}  // namespace

ClusterReport evolution_cluster(int n, double c, int smoothness, std::size_t n_steps,
                                std::size_t tree_depth, std::uint64_t seed,
                                double threshold, double loss_tol) {
  const SmoothFields fields = make_smooth_fields(n, c, smoothness, seed);
  AtaConfig ata;
  ata.max_depth = tree_depth;
  ata.loss_tol = loss_tol;

  std::vector<std::vector<std::uint64_t>> masks;
  masks.reserve(n_steps);
  evolve_smooth_statevector(fields, n, n_steps, ata,
                            [&masks](std::size_t, const AnsatzTree& tree) {
                              masks.push_back(tree.masks);
                            });
  return detect(masks, threshold);
}

WarmColdComparison warm_start_comparison(int n, double c, int smoothness,
                                         std::size_t prefix_steps, std::size_t tree_depth,
                                         std::uint64_t seed) {
  const SmoothFields fields = make_smooth_fields(n, c, smoothness, seed);
  AtaConfig ata;
  ata.max_depth = tree_depth;

  std::vector<std::vector<std::uint64_t>> masks;
  const std::vector<std::complex<double>> b_next =
      evolve_smooth_statevector(fields, n, prefix_steps, ata,
                                [&masks](std::size_t, const AnsatzTree& tree) {
                                  masks.push_back(tree.masks);
                                });
  const ClusterReport cluster = detect(masks, 1.0);

  const Spectrum spectrum = approx_spectrum(fields.grid);
  const Statevector root = fourier(Statevector::from_complex(b_next, Domain::position));

  WarmColdComparison cmp;
  cmp.cluster_size = cluster.masks.size();
  cmp.warm_initial_loss = warm_start(cluster, root, spectrum).loss();

  AnsatzTree cold;
  cold.root = root;
  cold.root_norm = root.norm();
  cold.masks = {0};
  cmp.cold_depth1_loss = solve_weights(cold, spectrum).loss;
  return cmp;
}

EvolutionDepthResult min_evolution_depth(int n, double c, int smoothness,
                                         std::size_t n_steps, double target_fidelity,
                                         std::size_t depth_cap, std::uint64_t seed,
                                         Expansion expansion) {
  EvolutionDepthResult result;

  // Probe the cap first: when even the widest tree misses the target the
  // search is saturated and scanning below is pointless.
  const double cap_fid =
      evolution_final_fidelity(n, c, smoothness, n_steps, depth_cap, seed, expansion);
  if (cap_fid < target_fidelity) {
    result.depth = depth_cap;
    result.final_fidelity = cap_fid;
    result.saturated = true;
    return result;
  }

  // Bisect on the practically monotone depth -> final-fidelity trend.
  std::size_t lo = 1, hi = depth_cap;
  double best_fid = cap_fid;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    const double fid =
        evolution_final_fidelity(n, c, smoothness, n_steps, mid, seed, expansion);
    if (fid >= target_fidelity) {
      hi = mid;
      best_fid = fid;
    } else {
      lo = mid + 1;
    }
  }
  result.depth = lo;
  result.final_fidelity = best_fid;
  result.saturated = false;
  return result;
}

}  // namespace ataheat
