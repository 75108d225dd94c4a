#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "ataheat/grid.hpp"

namespace ataheat {

/// Sparse real-coefficient sum of Z-strings.
///
/// A mask with bit s set places Z on qubit s; the represented diagonal
/// operator is D_kk = sum_m h_m * (-1)^popcount(m & k). Terms are keyed by
/// mask in ascending order, which keeps every traversal deterministic.
struct DiagonalPauliSum {
  static constexpr double kDefaultPrune = 1e-14;

  int n = 0;
  std::map<std::uint64_t, double> terms;

  DiagonalPauliSum() = default;
  explicit DiagonalPauliSum(int n_qubits) : n(n_qubits) {}

  std::size_t term_count() const { return terms.size(); }
  std::size_t dimension() const { return std::size_t{1} << n; }

  double coeff(std::uint64_t mask) const {
    auto it = terms.find(mask);
    return it == terms.end() ? 0.0 : it->second;
  }

  /// Accumulates into an existing term.
  void add_term(std::uint64_t mask, double value);

  /// Drops coefficients with |h| <= tol. Returns *this.
  DiagonalPauliSum& prune(double tol = kDefaultPrune);

  /// l2 norm of the coefficient vector.
  double coeff_l2() const;

  DiagonalPauliSum scaled(double s) const;

  /// a * x + b * y, term-wise.
  static DiagonalPauliSum axpy(double a, const DiagonalPauliSum& x,
                               double b, const DiagonalPauliSum& y);
};

/// Walsh coefficients of a diagonal: h_m = 2^-n sum_k d_k (-1)^popcount(m&k).
/// The 2^-n prefactor makes wht_synthesize an exact inverse.
DiagonalPauliSum wht_analyze(std::span<const double> diag, double prune_tol = DiagonalPauliSum::kDefaultPrune);

/// Diagonal values of the sum; exact inverse of wht_analyze.
std::vector<double> wht_synthesize(const DiagonalPauliSum& p);

/// Two-local Z-string decomposition of a piecewise-quadratic spectrum.
/// Prunes at 1e-10 and then demands popcount(mask) <= 2 on every survivor;
/// anything else throws DecompositionError.
DiagonalPauliSum decompose_operator(const Spectrum& s);

/// Coefficient-space product: masks combine by XOR because Z-strings
/// multiply to Z-strings. Equals the pointwise product of the synthesized
/// diagonals.
DiagonalPauliSum xor_convolve(const DiagonalPauliSum& a, const DiagonalPauliSum& b);

/// Keeps the d_cut largest-|coefficient| terms; ties broken by smaller mask.
/// When dropped_l2_sq is non-null it receives the sum of the squared dropped
/// coefficients.
DiagonalPauliSum truncate_top(const DiagonalPauliSum& p, std::size_t d_cut,
                              double* dropped_l2_sq = nullptr);

namespace detail {

/// In-place unnormalized Walsh-Hadamard butterfly (self-inverse up to 2^n).
void fwht(std::span<double> a);

bool is_power_of_two(std::size_t v);

int popcount64(std::uint64_t v);

}  // namespace detail

}  // namespace ataheat
