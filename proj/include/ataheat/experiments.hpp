#pragma once

#include <cstdint>
#include <vector>

#include "ataheat/ata.hpp"
#include "ataheat/cluster.hpp"
#include "ataheat/evolve.hpp"
#include "ataheat/grid.hpp"
#include "ataheat/pauli.hpp"
#include "ataheat/sources.hpp"
#include "ataheat/state.hpp"

namespace ataheat {

/// One implicit-scheme transition b = c (dt f(z, 0) - chi) built from random
/// Chebyshev fields of the given smoothness, with the exact solution
/// attached. The grid is physical: dz = 1/2^n, dt = dz^2 / c.
struct SingleStepProblem {
  GridSpec grid;
  std::vector<double> b;
  Spectrum approx;
  DiagonalPauliSum decomposition;
  std::vector<double> oracle_x;
};

SingleStepProblem make_single_step_problem(int n, double c, int smoothness, std::uint64_t seed);

/// Heater/cooler relaxation toward the stationary profile.
struct HeaterCoolerResult {
  std::vector<EvolveState> trajectory;       ///< states after each step
  std::vector<double> stationary_fidelity;   ///< per step, vs the exact stationary profile
  std::size_t steps_to_target = 0;           ///< 0 when the target was never reached
  double final_fidelity = 0.0;
};

HeaterCoolerResult run_heater_cooler(int n, double c, std::size_t depth_cap,
                                     std::size_t max_steps, double target_fidelity,
                                     std::size_t d_cut = kNoDropout);

/// Dropout study: representation-space fields with slowly varying
/// coefficients, fixed tree depth, 100-style step counts; returns the
/// per-step infidelity against the exact trajectory.
struct DropoutRun {
  std::vector<double> infidelity;  ///< one entry per step
  std::vector<EvolveState> trajectory;
};

DropoutRun run_dropout_study(int n, double c, std::size_t tree_depth, std::size_t d_cut,
                             std::size_t n_steps, int envelope_degree, std::uint64_t seed);

/// Minimal per-step tree depth whose n_steps-long evolution still reaches
/// the target final fidelity against the exact trajectory; scans depth
/// upward after probing the cap (saturated when even the cap misses).
struct EvolutionDepthResult {
  std::size_t depth = 0;
  double final_fidelity = 0.0;
  bool saturated = false;
};

EvolutionDepthResult min_evolution_depth(int n, double c, int smoothness,
                                         std::size_t n_steps, double target_fidelity,
                                         std::size_t depth_cap, std::uint64_t seed,
                                         Expansion expansion = Expansion::latest_node);

/// Smooth-field evolution run used by the depth search; exposed for the
/// experiment drivers.
double evolution_final_fidelity(int n, double c, int smoothness, std::size_t n_steps,
                                std::size_t tree_depth, std::uint64_t seed,
                                Expansion expansion = Expansion::latest_node);

/// Cluster of the trees grown across a smooth-field evolution. Trees stop
/// at the loss tolerance, so their recurring core tracks the field's
/// roughness rather than the depth cap.
ClusterReport evolution_cluster(int n, double c, int smoothness, std::size_t n_steps,
                                std::size_t tree_depth, std::uint64_t seed,
                                double threshold = 1.0, double loss_tol = 1e-9);

/// Warm start from the cluster of a short evolution prefix versus the cold
/// single-node solve on the step that follows it.
struct WarmColdComparison {
  double warm_initial_loss = 0.0;
  double cold_depth1_loss = 0.0;
  std::size_t cluster_size = 0;
};

WarmColdComparison warm_start_comparison(int n, double c, int smoothness,
                                         std::size_t prefix_steps, std::size_t tree_depth,
                                         std::uint64_t seed);

}  // namespace ataheat
