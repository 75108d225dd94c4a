#include "ataheat/evolve.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "ataheat/errors.hpp"
#include "ataheat/oracle.hpp"

namespace ataheat {

namespace {

DiagonalPauliSum lowpass_filter(const DiagonalPauliSum& repr, std::uint64_t cutoff) {
  std::vector<double> diag = wht_synthesize(repr);
  const std::size_t size = diag.size();
  for (std::size_t k = 0; k < size; ++k) {
    const std::uint64_t wave = std::min<std::uint64_t>(k, size - k);
    if (wave > cutoff) diag[k] = 0.0;
  }
  return wht_analyze(diag);
}

Spectrum operator_spectrum(const EvolveConfig& cfg) {
  if (cfg.spectrum_override.has_value()) return *cfg.spectrum_override;
  return cfg.operator_mode == EvolveConfig::OperatorMode::approx ? approx_spectrum(cfg.grid)
                                                                 : exact_spectrum(cfg.grid);
}

DiagonalPauliSum operator_decomposition(const EvolveConfig& cfg, const Spectrum& spectrum) {
  if (cfg.operator_mode == EvolveConfig::OperatorMode::approx && !cfg.spectrum_override) {
    return decompose_operator(spectrum);
  }
  // Validation modes: the full Walsh expansion, no two-locality promise.
  return wht_analyze(spectrum.values, 1e-10);
}

}  // namespace

SourceFn zero_source(int n) {
  return [n](std::size_t) { return SourceTerm{DiagonalPauliSum(n), 0.0}; };
}

EvolveState make_initial_state(const DiagonalPauliSum& b0_repr, double scale) {
  EvolveState state;
  state.b_repr = b0_repr;
  state.b_repr.prune();
  const double nrm = state.b_repr.coeff_l2();
  if (!(nrm > 0.0)) throw std::invalid_argument("make_initial_state: zero representation");
  state.b_repr = state.b_repr.scaled(1.0 / nrm);
  state.b_scale = scale * nrm;
  state.diag.term_count = state.b_repr.term_count();
  return state;
}

SourceTerm make_initial_rhs(const SourceTerm& chi, const SourceTerm& f0, const GridSpec& g) {
  SourceTerm b0;
  b0.repr = DiagonalPauliSum::axpy(g.c * g.dt * f0.scale, f0.repr,
                                   -g.c * chi.scale, chi.repr);
  b0.repr.prune();
  b0.scale = 1.0;
  return b0;
}

StepResult step(const EvolveState& state, const SourceTerm& next_source, const EvolveConfig& cfg) {
  if (state.b_repr.n != cfg.grid.n) throw std::invalid_argument("step: qubit-count mismatch");
  DiagonalPauliSum f_repr = next_source.repr;
  if (f_repr.term_count() == 0) {
    f_repr = DiagonalPauliSum(cfg.grid.n);
  } else if (f_repr.n != cfg.grid.n) {
    throw std::invalid_argument("step: source qubit-count mismatch");
  }
  if (cfg.d_cut < 1) throw std::invalid_argument("step: d_cut must be >= 1");

  StepResult result;
  result.state.step = state.step + 1;

  DiagonalPauliSum b_repr = state.b_repr;
  double b_scale = state.b_scale;
  if (cfg.lowpass_k.has_value()) {
    b_repr = lowpass_filter(b_repr, *cfg.lowpass_k);
    const double nrm = b_repr.coeff_l2();
    if (!(nrm > 0.0)) throw std::runtime_error("step: low-pass filter removed the whole state");
    b_repr = b_repr.scaled(1.0 / nrm);
    b_scale *= nrm;
  }

  const Spectrum spectrum = operator_spectrum(cfg);
  const DiagonalPauliSum decomposition = operator_decomposition(cfg, spectrum);

  const Statevector root = fourier_root_from_pauli_sum(b_repr);
  result.tree = grow(root, spectrum, decomposition, cfg.ata, cfg.warm_start);

  // Every node is a Z-string in the Fourier domain, so the solution's
  // representation is the coefficient-space product of the tree weights
  // with the right-hand side's representation.
  DiagonalPauliSum x_repr = xor_convolve(result.tree.as_pauli_sum(), b_repr);

  {
    Statevector x_fourier = fourier_root_from_pauli_sum(x_repr);
    for (auto& a : x_fourier.amps) a *= b_scale;
    result.solution = inverse_fourier(x_fourier);
  }

  StepDiagnostics diag;
  diag.loss = result.tree.loss();
  diag.depth = result.tree.depth();
  diag.reality_leakage = result.solution.imag_fraction();

  DiagonalPauliSum next;
  if (cfg.coupling == SourceCoupling::scheme_exact) {
    next = DiagonalPauliSum::axpy(cfg.grid.c * cfg.grid.dt * next_source.scale, f_repr,
                                  -cfg.grid.c * b_scale, x_repr);
  } else {
    next = DiagonalPauliSum::axpy(b_scale, x_repr,
                                  cfg.gamma * next_source.scale, f_repr);
  }
  next.prune();

  diag.pre_truncation_terms = next.term_count();
  diag.blowup_warning = diag.pre_truncation_terms > cfg.term_cap;

  const double pre_norm = next.coeff_l2();
  double dropped_sq = 0.0;
  if (cfg.d_cut != kNoDropout) {
    next = truncate_top(next, cfg.d_cut, &dropped_sq);
  }
  diag.dropped_mass = pre_norm > 0.0 ? std::sqrt(dropped_sq) / pre_norm : 0.0;

  const double post_norm = next.coeff_l2();
  if (!(post_norm > 0.0)) throw std::runtime_error("step: representation vanished");
  result.state.b_repr = next.scaled(1.0 / post_norm);
  result.state.b_scale = post_norm;
  diag.term_count = result.state.b_repr.term_count();

  result.state.diag = diag;
  return result;
}

std::vector<EvolveState> run(const EvolveState& initial, const SourceFn& source,
                             const EvolveConfig& cfg, std::size_t n_steps,
                             const RunOptions& options) {
  std::vector<EvolveState> trajectory;
  trajectory.reserve(n_steps);

  std::vector<std::complex<double>> b_exact;
  if (options.track_oracle) {
    Statevector b0 = prepare_from_pauli_sum(initial.b_repr);
    b_exact = b0.amps;
    for (auto& a : b_exact) a *= initial.b_scale;
  }

  EvolveState state = initial;
  for (std::size_t tau = 0; tau < n_steps; ++tau) {
    const SourceTerm f = source(state.step + 1);
    StepResult r = step(state, f, cfg);

    if (options.track_oracle) {
      const std::vector<std::complex<double>> x_exact = solve_exact_complex(b_exact, cfg.grid);
      r.state.diag.fidelity = fidelity(r.solution.amps, x_exact);
      const Statevector f_sv = prepare_from_pauli_sum(
          f.repr.term_count() == 0 ? DiagonalPauliSum(cfg.grid.n) : f.repr);
      for (std::size_t i = 0; i < b_exact.size(); ++i) {
        const std::complex<double> f_i = f.scale * f_sv.amps[i];
        b_exact[i] = cfg.coupling == SourceCoupling::scheme_exact
                         ? cfg.grid.c * (cfg.grid.dt * f_i - x_exact[i])
                         : x_exact[i] + cfg.gamma * f_i;
      }
    }

    if (options.observer) options.observer(r);
    trajectory.push_back(r.state);
    state = std::move(r.state);
  }
  return trajectory;
}

PreparationCost preparation_cost(std::size_t tree_depth) {
  if (tree_depth < 1) throw std::invalid_argument("preparation_cost: depth must be >= 1");
  PreparationCost cost;
  cost.ancilla_m = tree_depth == 1 ? 0 : static_cast<int>(std::bit_width(tree_depth - 1));
  cost.success_probability = std::ldexp(1.0, -cost.ancilla_m);
  return cost;
}

}  // namespace ataheat
