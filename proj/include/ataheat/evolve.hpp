#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "ataheat/ata.hpp"
#include "ataheat/grid.hpp"
#include "ataheat/pauli.hpp"
#include "ataheat/state.hpp"

namespace ataheat {

inline constexpr std::size_t kNoDropout = std::numeric_limits<std::size_t>::max();

/// How the source enters the next right-hand side.
enum class SourceCoupling {
  scheme_exact,  ///< b^{tau+1} = c (dt f - x), the implicit-scheme constant
  custom_gamma,  ///< b^{tau+1} = x + gamma f
};

struct EvolveConfig {
  GridSpec grid;
  AtaConfig ata;
  std::size_t d_cut = kNoDropout;  ///< dropout width
  SourceCoupling coupling = SourceCoupling::scheme_exact;
  double gamma = 0.0;  ///< only read under custom_gamma
  std::optional<std::uint64_t> lowpass_k;  ///< zero Fourier modes with min(k, N-k) > cutoff
  std::vector<std::uint64_t> warm_start;   ///< cluster masks seeding each tree
  std::size_t term_cap = std::size_t{1} << 22;  ///< blow-up warning threshold
  /// exact runs the tree against the full spectrum (validation mode).
  enum class OperatorMode { approx, exact } operator_mode = OperatorMode::approx;
  /// Validation hook: replaces the grid spectrum; candidates come from its
  /// full Walsh expansion.
  std::optional<Spectrum> spectrum_override;
};

struct StepDiagnostics {
  double loss = 0.0;
  std::size_t depth = 0;
  double fidelity = std::numeric_limits<double>::quiet_NaN();  ///< vs exact trajectory when tracked
  double dropped_mass = 0.0;       ///< l2 fraction of coefficients removed by dropout
  double reality_leakage = 0.0;    ///< imaginary l2 fraction of the position-space solution
  std::size_t term_count = 0;      ///< stored representation size (post-dropout)
  std::size_t pre_truncation_terms = 0;
  bool blowup_warning = false;
};

/// Running representation of the right-hand side b^tau: a unit-l2 Z-string
/// coefficient vector plus the physical scale, so that
/// b^tau = b_scale * prepare_from_pauli_sum(b_repr).
struct EvolveState {
  std::size_t step = 0;
  DiagonalPauliSum b_repr;
  double b_scale = 1.0;
  StepDiagnostics diag;
};

/// One source term in representation form at physical scale
/// f = scale * prepare_from_pauli_sum(repr).
struct SourceTerm {
  DiagonalPauliSum repr;
  double scale = 1.0;
};

/// Source model: representation of f at time index tau.
using SourceFn = std::function<SourceTerm(std::size_t tau)>;

SourceFn zero_source(int n);

/// Normalizes a representation into an EvolveState (unit-l2 coefficients,
/// scale folded out).
EvolveState make_initial_state(const DiagonalPauliSum& b0_repr, double scale = 1.0);

/// b^0 = c (dt f^0 - chi) assembled in representation space.
SourceTerm make_initial_rhs(const SourceTerm& chi, const SourceTerm& f0, const GridSpec& g);

struct StepResult {
  EvolveState state;
  AnsatzTree tree;
  Statevector solution;  ///< position domain, physical scale
};

/// One time transition: grow the tree on the current root, compose the
/// solution representation by XOR convolution, add the source, apply
/// dropout, renormalize.
StepResult step(const EvolveState& state, const SourceTerm& next_source, const EvolveConfig& cfg);

struct RunOptions {
  bool track_oracle = false;
  /// Called after every step.
  std::function<void(const StepResult&)> observer;
};

/// Repeated ATA steps from the representation of b^0. The returned vector
/// holds the post-step states (diagnostics filled, fidelity only when the
/// oracle is tracked).
std::vector<EvolveState> run(const EvolveState& initial, const SourceFn& source,
                             const EvolveConfig& cfg, std::size_t n_steps,
                             const RunOptions& options = {});

struct PreparationCost {
  int ancilla_m = 0;
  double success_probability = 1.0;
};

/// m = ceil(log2 d) ancillas and 1/2^m success probability per preparation.
PreparationCost preparation_cost(std::size_t tree_depth);

}  // namespace ataheat
