#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ataheat/grid.hpp"
#include "ataheat/pauli.hpp"
#include "ataheat/state.hpp"

namespace ataheat {

enum class Expansion { latest_node, full_frontier };

enum class StopReason { none, max_depth, loss_tol, stagnation, exhaustion };

struct AtaConfig {
  std::size_t max_depth = 64;    ///< node count cap
  double loss_tol = 0.0;         ///< stop once the residual loss drops below
  double stagnation_tol = 0.0;   ///< minimum relative per-node improvement
  Expansion expansion = Expansion::latest_node;
  double ridge = 1e-12;          ///< Gram ridge scale (times trace/dim)
};

/// Greedy unitary-sum solution of A' x = b.
///
/// Node j is the Z-string masks[j] applied to the root in the Fourier
/// domain; node 0 is always mask 0 (the root itself). The loss history is
/// the residual ||A' x - b/||b|| ||^2 after each weight solve.
struct AnsatzTree {
  Statevector root;  ///< Fourier domain, unnormalized
  double root_norm = 0.0;
  std::vector<std::uint64_t> masks;
  std::vector<std::complex<double>> alphas;
  std::vector<double> loss_history;
  StopReason stop_reason = StopReason::none;

  std::size_t depth() const { return masks.size(); }
  double loss() const { return loss_history.empty() ? 1.0 : loss_history.back(); }

  /// Solution statevector at physical scale, position domain.
  Statevector solution() const;

  /// The node weights as a Z-string sum (real parts of the alphas; the
  /// imaginary residue of the solve is reported separately).
  DiagonalPauliSum as_pauli_sum() const;
};

struct WeightSolve {
  std::vector<std::complex<double>> alphas;
  double loss = 1.0;
};

/// Least-squares weights over the current nodes via the Hermitian normal
/// system G a = r, ridge-regularized with SVD fallback. The loss is
/// evaluated as the explicit Fourier-domain residual of the normalized root.
WeightSolve solve_weights(const AnsatzTree& tree, const Spectrum& spectrum);

struct ScoredChild {
  std::uint64_t mask = 0;
  double score = 0.0;
};

/// Children of the expansion frontier scored by the gradient overlap
/// |2 sum_j a_j <c|A'^2|j> - 2 <c|A'|b>|. Masks already in the tree are
/// skipped; an empty result signals exhaustion.
std::vector<ScoredChild> score_children(const AnsatzTree& tree, const Spectrum& spectrum,
                                        const DiagonalPauliSum& decomposition,
                                        Expansion expansion = Expansion::latest_node);

/// Greedy growth: repeat {solve, score, add argmax child} until a stop
/// condition fires. Ties in |g| break toward the smaller mask. seed_masks
/// pre-populates the tree (mask 0 is always ensured first).
AnsatzTree grow(const Statevector& root, const Spectrum& spectrum,
                const DiagonalPauliSum& decomposition, const AtaConfig& cfg,
                std::span<const std::uint64_t> seed_masks = {});

/// grow with a hook after every weight solve; returning true stops growth.
AnsatzTree grow_with_observer(const Statevector& root, const Spectrum& spectrum,
                              const DiagonalPauliSum& decomposition, const AtaConfig& cfg,
                              const std::function<bool(const AnsatzTree&)>& on_solve,
                              std::span<const std::uint64_t> seed_masks = {});

struct MinDepthResult {
  std::size_t depth = 0;
  double fidelity = 0.0;
  bool saturated = false;  ///< target not reached within the growth budget
};

/// Smallest node count whose solution reaches the target fidelity against
/// the reference vector; grows a single tree incrementally. When the target
/// is never reached the result reports the final depth with saturated set.
MinDepthResult min_depth_for_fidelity(const Statevector& root, const Spectrum& spectrum,
                                      const DiagonalPauliSum& decomposition,
                                      std::span<const double> reference, double target,
                                      const AtaConfig& cfg);

}  // namespace ataheat
