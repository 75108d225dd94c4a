#include "ataheat/state.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ataheat/errors.hpp"

namespace ataheat {

namespace detail {

void fft_pow2(std::span<std::complex<double>> a, int sign) {
  const std::size_t size = a.size();
  if (!is_power_of_two(size)) throw std::invalid_argument("fft_pow2: length must be a power of two");

  for (std::size_t i = 1, j = 0; i < size; ++i) {
    std::size_t bit = size >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }

  for (std::size_t len = 2; len <= size; len <<= 1) {
    const double ang = static_cast<double>(sign) * 2.0 * std::numbers::pi / static_cast<double>(len);
    for (std::size_t block = 0; block < size; block += len) {
      for (std::size_t j = 0; j < len / 2; ++j) {
        // Per-index twiddles keep the kernel accurate for deep transforms.
        const std::complex<double> w = std::polar(1.0, ang * static_cast<double>(j));
        const std::complex<double> u = a[block + j];
        const std::complex<double> v = a[block + j + len / 2] * w;
        a[block + j] = u + v;
        a[block + j + len / 2] = u - v;
      }
    }
  }
}

}  // namespace detail

Statevector Statevector::zero_state(int n) { return basis(n, 0); }

Statevector Statevector::basis(int n, std::size_t index) {
  Statevector s;
  s.n = n;
  s.domain = Domain::position;
  s.amps.assign(std::size_t{1} << n, {0.0, 0.0});
  if (index >= s.amps.size()) throw std::invalid_argument("Statevector::basis: index out of range");
  s.amps[index] = {1.0, 0.0};
  return s;
}

Statevector Statevector::from_real(std::span<const double> values, Domain d) {
  if (!detail::is_power_of_two(values.size())) {
    throw std::invalid_argument("Statevector: length must be a power of two");
  }
  Statevector s;
  s.n = std::countr_zero(values.size());
  s.domain = d;
  s.amps.reserve(values.size());
  for (double v : values) s.amps.emplace_back(v, 0.0);
  return s;
}

Statevector Statevector::from_complex(std::vector<std::complex<double>> values, Domain d) {
  if (!detail::is_power_of_two(values.size())) {
    throw std::invalid_argument("Statevector: length must be a power of two");
  }
  Statevector s;
  s.n = std::countr_zero(values.size());
  s.domain = d;
  s.amps = std::move(values);
  return s;
}

double Statevector::norm() const {
  double sum = 0.0;
  for (const auto& a : amps) sum += std::norm(a);
  return std::sqrt(sum);
}

double Statevector::imag_fraction() const {
  double im = 0.0;
  double all = 0.0;
  for (const auto& a : amps) {
    im += a.imag() * a.imag();
    all += std::norm(a);
  }
  return all > 0.0 ? std::sqrt(im / all) : 0.0;
}

std::vector<double> Statevector::real_parts() const {
  std::vector<double> out(amps.size());
  for (std::size_t i = 0; i < amps.size(); ++i) out[i] = amps[i].real();
  return out;
}

Statevector fourier(const Statevector& s) {
  if (s.domain != Domain::position) throw std::invalid_argument("fourier: position domain required");
  Statevector out = s;
  detail::fft_pow2(out.amps, -1);
  const double scale = 1.0 / std::sqrt(static_cast<double>(out.size()));
  for (auto& a : out.amps) a *= scale;
  out.domain = Domain::fourier;
  return out;
}

Statevector inverse_fourier(const Statevector& s) {
  if (s.domain != Domain::fourier) throw std::invalid_argument("inverse_fourier: fourier domain required");
  Statevector out = s;
  detail::fft_pow2(out.amps, +1);
  const double scale = 1.0 / std::sqrt(static_cast<double>(out.size()));
  for (auto& a : out.amps) a *= scale;
  out.domain = Domain::position;
  return out;
}

Statevector apply_zstring(Statevector s, std::uint64_t mask) {
  if (s.domain != Domain::fourier) throw std::invalid_argument("apply_zstring: fourier domain required");
  if (mask >= s.size()) throw std::invalid_argument("apply_zstring: mask out of range");
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (detail::popcount64(mask & k) & 1) s.amps[k] = -s.amps[k];
  }
  return s;
}

Statevector apply_diag_sum(const Statevector& s, const DiagonalPauliSum& p) {
  if (s.domain != Domain::fourier) throw std::invalid_argument("apply_diag_sum: fourier domain required");
  if (s.n != p.n) throw std::invalid_argument("apply_diag_sum: qubit-count mismatch");
  const std::vector<double> diag = wht_synthesize(p);
  Statevector out = s;
  for (std::size_t k = 0; k < out.size(); ++k) out.amps[k] *= diag[k];
  return out;
}

Statevector prepare_from_pauli_sum(const DiagonalPauliSum& p) {
  return inverse_fourier(fourier_root_from_pauli_sum(p));
}

Statevector fourier_root_from_pauli_sum(const DiagonalPauliSum& p) {
  const std::vector<double> diag = wht_synthesize(p);
  const double scale = 1.0 / std::sqrt(static_cast<double>(diag.size()));
  Statevector out;
  out.n = p.n;
  out.domain = Domain::fourier;
  out.amps.reserve(diag.size());
  for (double d : diag) out.amps.emplace_back(d * scale, 0.0);
  return out;
}

OverlapSet overlaps(const Statevector& root, const Spectrum& spectrum,
                    std::span<const std::uint64_t> masks_i,
                    std::span<const std::uint64_t> masks_j) {
  OverlapSet set;
  set.a2.reserve(masks_i.size() * masks_j.size());
  set.a_root.reserve(masks_i.size());
  for (std::uint64_t mi : masks_i) {
    for (std::uint64_t mj : masks_j) {
      set.a2.push_back(overlap_entry(root, spectrum, mi, mj, 2));
    }
    set.a_root.push_back(overlap_entry(root, spectrum, mi, 0, 1));
  }
  return set;
}

std::complex<double> overlap_entry(const Statevector& root, const Spectrum& spectrum,
                                   std::uint64_t mask_i, std::uint64_t mask_j, int power) {
  if (root.domain != Domain::fourier) throw std::invalid_argument("overlap_entry: fourier-domain root required");
  if (root.size() != spectrum.size()) throw std::invalid_argument("overlap_entry: size mismatch");
  if (power < 0 || power > 2) throw std::invalid_argument("overlap_entry: power must be 0, 1 or 2");

  const std::uint64_t combined = mask_i ^ mask_j;
  std::complex<double> sum = 0.0;
  for (std::size_t k = 0; k < root.size(); ++k) {
    double w = std::norm(root.amps[k]);
    for (int p = 0; p < power; ++p) w *= spectrum[k];
    if (detail::popcount64(combined & k) & 1) w = -w;
    sum += w;
  }
  return sum;
}

}  // namespace ataheat
