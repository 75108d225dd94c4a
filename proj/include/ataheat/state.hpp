#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "ataheat/grid.hpp"
#include "ataheat/pauli.hpp"

namespace ataheat {

enum class Domain { position, fourier };

/// Dense complex amplitude vector over 2^n basis states.
///
/// Normalization is not enforced: right-hand sides are physical data. The
/// domain flag tracks whether amplitudes live in position space or in the
/// Fourier (diagonal) space where Z-strings act by sign flips.
struct Statevector {
  int n = 0;
  Domain domain = Domain::position;
  std::vector<std::complex<double>> amps;

  static Statevector zero_state(int n);  ///< |0...0>
  static Statevector basis(int n, std::size_t index);
  static Statevector from_real(std::span<const double> values, Domain d = Domain::position);
  static Statevector from_complex(std::vector<std::complex<double>> values, Domain d);

  std::size_t size() const { return amps.size(); }
  double norm() const;
  /// l2 fraction of the vector living in the imaginary parts.
  double imag_fraction() const;
  std::vector<double> real_parts() const;
};

/// Unitary DFT with kernel e^{-2 pi i j k / 2^n} / 2^{n/2}. Requires the
/// position domain.
Statevector fourier(const Statevector& s);

/// Adjoint of fourier. Requires the fourier domain.
Statevector inverse_fourier(const Statevector& s);

/// amps[k] *= (-1)^popcount(mask & k); involutive. Fourier domain only.
Statevector apply_zstring(Statevector s, std::uint64_t mask);

/// amps[k] *= wht_synthesize(p)[k]. Fourier domain only.
Statevector apply_diag_sum(const Statevector& s, const DiagonalPauliSum& p);

/// inverse_fourier(apply_diag_sum(fourier(|0..0>), p)); the Fourier image of
/// the result is 2^{-n/2} times the synthesized diagonal.
Statevector prepare_from_pauli_sum(const DiagonalPauliSum& p);

/// Fourier image of prepare_from_pauli_sum(p) without the round trip.
Statevector fourier_root_from_pauli_sum(const DiagonalPauliSum& p);

/// Gram data for tree nodes relative to a Fourier-domain root:
/// a2[i*|mj|+j] = <i|A'^2|j> and a_root[i] = <i|A'|root>, with node |i> the
/// Z-string masks_i[i] applied to the root. O(2^n) per entry.
struct OverlapSet {
  std::vector<std::complex<double>> a2;      ///< row-major |masks_i| x |masks_j|
  std::vector<std::complex<double>> a_root;  ///< |masks_i|
};

OverlapSet overlaps(const Statevector& root, const Spectrum& spectrum,
                    std::span<const std::uint64_t> masks_i,
                    std::span<const std::uint64_t> masks_j);

/// Single entry <i|A'^power|j>, power in {0, 1, 2}.
std::complex<double> overlap_entry(const Statevector& root, const Spectrum& spectrum,
                                   std::uint64_t mask_i, std::uint64_t mask_j, int power);

namespace detail {

/// In-place radix-2 FFT, unnormalized; sign -1 applies the forward kernel
/// e^{-2 pi i j k/N}, sign +1 the inverse kernel.
void fft_pow2(std::span<std::complex<double>> a, int sign);

}  // namespace detail

}  // namespace ataheat
