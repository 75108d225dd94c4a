#include "ataheat/oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ataheat/errors.hpp"

namespace ataheat {

namespace {

// (A v) for the cyclic tridiagonal operator: diagonal -2-c, neighbors 1.
// At N = 2 the two off-diagonal routes land on the same column and add.
template <typename T>
std::vector<T> apply_circulant(std::span<const T> v, double c) {
  const std::size_t size = v.size();
  std::vector<T> out(size);
  for (std::size_t i = 0; i < size; ++i) {
    const std::size_t up = (i + 1) % size;
    const std::size_t down = (i + size - 1) % size;
    out[i] = (-2.0 - c) * v[i] + v[up] + v[down];
  }
  return out;
}

std::vector<double> solve_spectral(std::span<const double> b, const GridSpec& g) {
  const std::size_t size = b.size();
  std::vector<std::complex<double>> work(b.begin(), b.end());
  detail::fft_pow2(work, -1);
  for (std::size_t k = 0; k < size; ++k) {
    const double sk = std::sin(std::numbers::pi * static_cast<double>(k) / static_cast<double>(size));
    work[k] /= -(g.c + 4.0 * sk * sk);
  }
  detail::fft_pow2(work, +1);
  std::vector<double> x(size);
  const double inv = 1.0 / static_cast<double>(size);
  for (std::size_t i = 0; i < size; ++i) x[i] = work[i].real() * inv;
  return x;
}

// Thomas algorithm on the acyclic part, Sherman-Morrison for the wrapped
// corners: A = T + u v^T with u = (gamma, 0, .., 1), v = (1, 0, .., 1/gamma).
std::vector<double> solve_tridiagonal(std::span<const double> b, const GridSpec& g) {
  const std::size_t size = b.size();
  const double diag = -2.0 - g.c;
  if (size == 2) {
    // Both neighbor routes wrap onto the same column.
    const double a00 = diag, a01 = 2.0, a10 = 2.0, a11 = diag;
    const double det = a00 * a11 - a01 * a10;
    return {(b[0] * a11 - a01 * b[1]) / det, (a00 * b[1] - a10 * b[0]) / det};
  }

  const double gamma = 2.0 + g.c;  // keeps the modified diagonal away from zero
  auto thomas = [&](std::span<const double> rhs) {
    std::vector<double> d(size, diag);
    d.front() = diag - gamma;
    d.back() = diag - 1.0 / gamma;
    std::vector<double> cp(size, 0.0);
    std::vector<double> x(size, 0.0);
    cp[0] = 1.0 / d[0];
    x[0] = rhs[0] / d[0];
    for (std::size_t i = 1; i < size; ++i) {
      const double m = d[i] - cp[i - 1];
      cp[i] = 1.0 / m;
      x[i] = (rhs[i] - x[i - 1]) / m;
    }
    for (std::size_t i = size - 1; i-- > 0;) {
      x[i] -= cp[i] * x[i + 1];
    }
    return x;
  };

  std::vector<double> u(size, 0.0);
  u.front() = gamma;
  u.back() = 1.0;

  const std::vector<double> y = thomas(b);
  const std::vector<double> z = thomas(u);

  const double vy = y.front() + y.back() / gamma;
  const double vz = z.front() + z.back() / gamma;
  const double factor = vy / (1.0 + vz);

  std::vector<double> x(size);
  for (std::size_t i = 0; i < size; ++i) x[i] = y[i] - factor * z[i];
  return x;
}

}  // namespace

OracleSolution solve_exact(std::span<const double> b, const GridSpec& g,
                           OracleSolution::Method method) {
  if (!(g.c > 0.0)) throw std::invalid_argument("solve_exact: c must be > 0");
  if (b.size() != g.points()) throw std::invalid_argument("solve_exact: size mismatch");

  OracleSolution sol;
  sol.method = method;
  sol.x = method == OracleSolution::Method::spectral ? solve_spectral(b, g)
                                                     : solve_tridiagonal(b, g);

  const std::vector<double> ax = apply_circulant<double>(sol.x, g.c);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    num += (ax[i] - b[i]) * (ax[i] - b[i]);
    den += b[i] * b[i];
  }
  sol.residual = den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
  if (sol.residual >= 1e-10) {
    throw std::runtime_error("solve_exact: residual " + std::to_string(sol.residual) +
                             " exceeds the 1e-10 contract");
  }
  return sol;
}

OracleSolution solve_exact(const Statevector& b, const GridSpec& g,
                           OracleSolution::Method method) {
  if (b.domain != Domain::position) throw std::invalid_argument("solve_exact: position domain required");
  if (b.imag_fraction() > 1e-9) {
    throw std::invalid_argument("solve_exact: right-hand side must be real to 1e-9");
  }
  return solve_exact(std::span<const double>(b.real_parts()), g, method);
}

std::vector<std::complex<double>> solve_exact_complex(std::span<const std::complex<double>> b,
                                                      const GridSpec& g) {
  if (!(g.c > 0.0)) throw std::invalid_argument("solve_exact_complex: c must be > 0");
  const std::size_t size = b.size();
  std::vector<std::complex<double>> work(b.begin(), b.end());
  detail::fft_pow2(work, -1);
  for (std::size_t k = 0; k < size; ++k) {
    const double sk = std::sin(std::numbers::pi * static_cast<double>(k) / static_cast<double>(size));
    work[k] /= -(g.c + 4.0 * sk * sk);
  }
  detail::fft_pow2(work, +1);
  const double inv = 1.0 / static_cast<double>(size);
  for (auto& w : work) w *= inv;
  return work;
}

std::vector<std::vector<double>> evolve_exact(
    std::span<const double> chi,
    const std::function<std::vector<double>(std::size_t)>& source,
    const GridSpec& g, std::size_t n_steps) {
  std::vector<std::vector<double>> trajectory;
  trajectory.reserve(n_steps + 1);
  trajectory.emplace_back(chi.begin(), chi.end());

  std::vector<double> b(chi.size());
  for (std::size_t tau = 0; tau < n_steps; ++tau) {
    const std::vector<double> f = source(tau);
    if (f.size() != chi.size()) throw std::invalid_argument("evolve_exact: source size mismatch");
    const std::vector<double>& u = trajectory.back();
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = g.c * (g.dt * f[i] - u[i]);
    trajectory.push_back(solve_exact(std::span<const double>(b), g).x);
  }
  return trajectory;
}

double fidelity(std::span<const std::complex<double>> x, std::span<const std::complex<double>> y) {
  if (x.size() != y.size()) throw std::invalid_argument("fidelity: length mismatch");
  std::complex<double> dot = 0.0;
  double nx = 0.0, ny = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    dot += std::conj(x[i]) * y[i];
    nx += std::norm(x[i]);
    ny += std::norm(y[i]);
  }
  if (!(nx > 0.0) || !(ny > 0.0)) throw std::invalid_argument("fidelity: zero vector");
  return std::abs(dot) / std::sqrt(nx * ny);
}

double fidelity(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("fidelity: length mismatch");
  double dot = 0.0, nx = 0.0, ny = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    dot += x[i] * y[i];
    nx += x[i] * x[i];
    ny += y[i] * y[i];
  }
  if (!(nx > 0.0) || !(ny > 0.0)) throw std::invalid_argument("fidelity: zero vector");
  return std::abs(dot) / std::sqrt(nx * ny);
}

double fidelity(std::span<const std::complex<double>> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("fidelity: length mismatch");
  std::complex<double> dot = 0.0;
  double nx = 0.0, ny = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    dot += std::conj(x[i]) * y[i];
    nx += std::norm(x[i]);
    ny += y[i] * y[i];
  }
  if (!(nx > 0.0) || !(ny > 0.0)) throw std::invalid_argument("fidelity: zero vector");
  return std::abs(dot) / std::sqrt(nx * ny);
}

std::vector<double> stationary_profile(std::span<const double> f, const GridSpec& g) {
  const std::size_t size = f.size();
  if (size != g.points()) throw std::invalid_argument("stationary_profile: size mismatch");
  std::vector<std::complex<double>> work(f.begin(), f.end());
  detail::fft_pow2(work, -1);
  if (std::abs(work[0]) > 1e-9 * static_cast<double>(size)) {
    throw std::invalid_argument("stationary_profile: source must have zero total sum");
  }
  work[0] = 0.0;
  for (std::size_t k = 1; k < size; ++k) {
    const double sk = std::sin(std::numbers::pi * static_cast<double>(k) / static_cast<double>(size));
    work[k] *= g.c * g.dt / (-4.0 * sk * sk);
  }
  detail::fft_pow2(work, +1);
  std::vector<double> u(size);
  const double inv = 1.0 / static_cast<double>(size);
  for (std::size_t i = 0; i < size; ++i) u[i] = work[i].real() * inv;
  return u;
}

Eigen::MatrixXcd dense_from_spectrum(const Spectrum& s) {
  if (s.n > 10) throw CapacityError("dense_from_spectrum: n > 10");
  const auto size = static_cast<Eigen::Index>(s.size());
  // A_jl = (1/N) sum_k lambda_k e^{2 pi i (j-l) k / N}: one inverse transform
  // of the spectrum gives the circulant's first column.
  std::vector<std::complex<double>> col(s.values.begin(), s.values.end());
  detail::fft_pow2(col, +1);
  Eigen::MatrixXcd m(size, size);
  const double inv = 1.0 / static_cast<double>(size);
  for (Eigen::Index j = 0; j < size; ++j) {
    for (Eigen::Index l = 0; l < size; ++l) {
      m(j, l) = col[static_cast<std::size_t>(((j - l) % size + size) % size)] * inv;
    }
  }
  return m;
}

Eigen::MatrixXcd dense_from_pauli_sum(const DiagonalPauliSum& p) {
  if (p.n > 10) throw CapacityError("dense_from_pauli_sum: n > 10");
  Spectrum s;
  s.n = p.n;
  s.values = wht_synthesize(p);
  return dense_from_spectrum(s);
}

}  // namespace ataheat
