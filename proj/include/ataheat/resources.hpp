#pragma once

#include <cstddef>

namespace ataheat {

/// Closed-form cost models for the tree-based solver and the HHL baseline.
/// Everything here is pure arithmetic on documented model constants; the
/// contract is the scaling shape, not a hardware measurement.
namespace resources {

/// Two-qubit gates contributed by one direct+inverse QFT pair beyond the
/// controlled Z-strings between them.
inline constexpr double kAtaGateConstant = 2.0;  ///< multiplies the n(n-1) QFT-pair term
inline constexpr double kHhlGateConstant = 1.0;  ///< multiplies n^3

enum class Method { ata, hhl };

/// How the reciprocal-eigenvalue block of HHL is modeled: polylog assumes a
/// tailored circuit exists for the quadratic spectrum, exponential charges
/// the generic 2^n construction.
enum class RevModel { polylog, exponential };

struct ResourceEstimate {
  Method method = Method::ata;
  int n = 0;
  std::size_t n_steps = 0;
  std::size_t depth_d = 1;
  int ancilla_m = 0;
  double two_qubit_gates = 0.0;
  double success_probability = 1.0;
  double expected_runs = 1.0;
};

struct ChainProbability {
  double exact = 1.0;              ///< (1 - p)^{N_tau}
  double exponential_model = 1.0;  ///< exp(-p N_tau)
};

/// Probability that every one of N_tau sequential HHL applications succeeds.
ChainProbability hhl_chain_probability(double p, std::size_t n_steps);

struct RunOverhead {
  double exact = 0.0;         ///< N_tau * 2^ceil(log2 d)
  double smooth_model = 0.0;  ///< N_tau * d
};

/// Expected circuit runs over a full evolution when each preparation
/// succeeds with probability 2^{-ceil(log2 d)}.
RunOverhead ata_run_overhead(std::size_t n_steps, std::size_t depth_d);

struct GateCounts {
  double qft_two_qubit = 0.0;  ///< n(n-1), the direct+inverse QFT pair
  double total = 0.0;
};

/// Two-qubit gate estimate per preparation. ATA: kAtaGateConstant * n(n-1)
/// plus the additive 2^ceil(log2 d) amplitude-loader term. HHL:
/// kHhlGateConstant * n^3, plus 2^n under the exponential REV model.
GateCounts gate_counts(int n, Method method, std::size_t depth_d = 1,
                       RevModel rev = RevModel::polylog);

ResourceEstimate estimate_ata(int n, std::size_t n_steps, std::size_t depth_d);
ResourceEstimate estimate_hhl(int n, std::size_t n_steps, double p,
                              RevModel rev = RevModel::polylog);

}  // namespace resources
}  // namespace ataheat
