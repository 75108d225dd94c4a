#include "ataheat/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ataheat/errors.hpp"

namespace ataheat {

namespace detail {

void fwht(std::span<double> a) {
  const std::size_t size = a.size();
  for (std::size_t half = 1; half < size; half <<= 1) {
    for (std::size_t block = 0; block < size; block += half << 1) {
      for (std::size_t i = block; i < block + half; ++i) {
        const double x = a[i];
        const double y = a[i + half];
        a[i] = x + y;
        a[i + half] = x - y;
      }
    }
  }
}

bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

int popcount64(std::uint64_t v) { return std::popcount(v); }

}  // namespace detail

void DiagonalPauliSum::add_term(std::uint64_t mask, double value) {
  if (mask >= dimension()) throw std::invalid_argument("DiagonalPauliSum: mask out of range");
  terms[mask] += value;
}

DiagonalPauliSum& DiagonalPauliSum::prune(double tol) {
  for (auto it = terms.begin(); it != terms.end();) {
    if (std::abs(it->second) <= tol) {
      it = terms.erase(it);
    } else {
      ++it;
    }
  }
  return *this;
}

double DiagonalPauliSum::coeff_l2() const {
  double sum = 0.0;
  for (const auto& [mask, h] : terms) sum += h * h;
  return std::sqrt(sum);
}

DiagonalPauliSum DiagonalPauliSum::scaled(double s) const {
  DiagonalPauliSum out(n);
  for (const auto& [mask, h] : terms) out.terms.emplace(mask, s * h);
  return out;
}

DiagonalPauliSum DiagonalPauliSum::axpy(double a, const DiagonalPauliSum& x,
                                        double b, const DiagonalPauliSum& y) {
  if (x.n != y.n) throw std::invalid_argument("DiagonalPauliSum::axpy: qubit-count mismatch");
  DiagonalPauliSum out(x.n);
  for (const auto& [mask, h] : x.terms) out.terms[mask] += a * h;
  for (const auto& [mask, h] : y.terms) out.terms[mask] += b * h;
  return out;
}

DiagonalPauliSum wht_analyze(std::span<const double> diag, double prune_tol) {
  if (!detail::is_power_of_two(diag.size())) {
    throw std::invalid_argument("wht_analyze: length must be a power of two");
  }
  const std::size_t size = diag.size();
  std::vector<double> work(diag.begin(), diag.end());
  detail::fwht(work);
  const double inv = 1.0 / static_cast<double>(size);

  DiagonalPauliSum p(std::countr_zero(size));
  for (std::size_t m = 0; m < size; ++m) {
    const double h = work[m] * inv;
    if (std::abs(h) > prune_tol) p.terms.emplace(m, h);
  }
  return p;
}

std::vector<double> wht_synthesize(const DiagonalPauliSum& p) {
  std::vector<double> values(p.dimension(), 0.0);
  for (const auto& [mask, h] : p.terms) values[mask] = h;
  detail::fwht(values);
  return values;
}

DiagonalPauliSum decompose_operator(const Spectrum& s) {
  constexpr double kTol = 1e-10;
  DiagonalPauliSum p = wht_analyze(s.values, kTol);
  for (const auto& [mask, h] : p.terms) {
    if (detail::popcount64(mask) > 2) {
      throw DecompositionError(
          "decompose_operator: spectrum is not piecewise quadratic; mask " +
          std::to_string(mask) + " (popcount " + std::to_string(detail::popcount64(mask)) +
          ") carries coefficient " + std::to_string(h));
    }
  }
  return p;
}

DiagonalPauliSum xor_convolve(const DiagonalPauliSum& a, const DiagonalPauliSum& b) {
  if (a.n != b.n) throw std::invalid_argument("xor_convolve: qubit-count mismatch");
  const std::size_t size = a.dimension();

  // Dense route above the crossover: synthesize, multiply pointwise,
  // re-analyze. O(n 2^n) vs the O(|a||b|) sparse double loop.
  const std::size_t sparse_cost = a.term_count() * b.term_count();
  const std::size_t dense_cost = size * static_cast<std::size_t>(std::max(a.n, 1));
  DiagonalPauliSum out(a.n);
  if (sparse_cost > dense_cost) {
    std::vector<double> da = wht_synthesize(a);
    const std::vector<double> db = wht_synthesize(b);
    for (std::size_t k = 0; k < size; ++k) da[k] *= db[k];
    out = wht_analyze(da);
  } else {
    for (const auto& [ma, ha] : a.terms) {
      for (const auto& [mb, hb] : b.terms) {
        out.terms[ma ^ mb] += ha * hb;
      }
    }
    out.prune();
  }
  return out;
}

DiagonalPauliSum truncate_top(const DiagonalPauliSum& p, std::size_t d_cut,
                              double* dropped_l2_sq) {
  if (d_cut < 1) throw std::invalid_argument("truncate_top: d_cut must be >= 1");
  if (dropped_l2_sq != nullptr) *dropped_l2_sq = 0.0;
  if (p.term_count() <= d_cut) return p;

  std::vector<std::pair<std::uint64_t, double>> ordered(p.terms.begin(), p.terms.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& lhs, const auto& rhs) {
    const double la = std::abs(lhs.second);
    const double ra = std::abs(rhs.second);
    if (la != ra) return la > ra;
    return lhs.first < rhs.first;
  });

  DiagonalPauliSum out(p.n);
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    if (i < d_cut) {
      out.terms.emplace(ordered[i].first, ordered[i].second);
    } else if (dropped_l2_sq != nullptr) {
      *dropped_l2_sq += ordered[i].second * ordered[i].second;
    }
  }
  return out;
}

}  // namespace ataheat
