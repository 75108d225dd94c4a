#include "ataheat/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ataheat/errors.hpp"
#include "ataheat/state.hpp"

namespace ataheat {

namespace {

void validate(const GridSpec& g) {
  if (g.n < 1) throw std::invalid_argument("GridSpec: n must be >= 1");
  if (!(g.c >= 0.0)) throw std::invalid_argument("GridSpec: c must be >= 0");
  if (!(g.a2 > 0.0)) throw std::invalid_argument("GridSpec: a2 must be > 0");
  if (!(g.dt > 0.0)) throw std::invalid_argument("GridSpec: dt must be > 0");
  if (!(g.dz >= 0.0)) throw std::invalid_argument("GridSpec: dz must be >= 0");
  const double lhs = g.c * g.a2 * g.dt;
  const double rhs = g.dz * g.dz;
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  if (scale > 0.0 && std::abs(lhs - rhs) > 1e-12 * scale) {
    throw std::invalid_argument("GridSpec: c * a2 * dt must equal dz^2");
  }
}

}  // namespace

GridSpec GridSpec::dimensionless(int n, double c, std::size_t n_t) {
  GridSpec g;
  g.n = n;
  g.c = c;
  g.a2 = 1.0;
  g.dt = 1.0;
  g.dz = std::sqrt(c);
  g.n_t = n_t;
  validate(g);
  return g;
}

GridSpec GridSpec::physical(int n, double c, double a2, double dt, std::size_t n_t) {
  GridSpec g;
  g.n = n;
  g.c = c;
  g.a2 = a2;
  g.dt = dt;
  g.dz = std::sqrt(c * a2 * dt);
  g.n_t = n_t;
  if (!(c > 0.0)) throw std::invalid_argument("GridSpec::physical: c must be > 0");
  validate(g);
  return g;
}

Spectrum exact_spectrum(const GridSpec& g) {
  validate(g);
  const std::size_t size = g.points();
  Spectrum s;
  s.n = g.n;
  s.values.resize(size);
  for (std::size_t k = 0; k < size; ++k) {
    const double sk = std::sin(std::numbers::pi * static_cast<double>(k) / static_cast<double>(size));
    s.values[k] = -g.c - 4.0 * sk * sk;
  }
  return s;
}

Spectrum approx_spectrum(const GridSpec& g) {
  validate(g);
  const std::size_t size = g.points();
  const double half = static_cast<double>(size) / 2.0;
  Spectrum s;
  s.n = g.n;
  s.values.resize(size);
  for (std::size_t k = 0; k < size; ++k) {
    const double w = std::abs(static_cast<double>(k) / half - 1.0) - 1.0;
    s.values[k] = -g.c - std::numbers::pi * std::numbers::pi * w * w;
  }
  return s;
}

Spectrum multidim_spectrum(const GridSpec& g, int d_r) {
  validate(g);
  if (d_r < 1) throw std::invalid_argument("multidim_spectrum: d_r must be >= 1");
  constexpr int kMaxTotalQubits = 24;
  const long long total_qubits = static_cast<long long>(g.n) * d_r;
  if (total_qubits > kMaxTotalQubits) {
    throw CapacityError("multidim_spectrum: 2^(n*d_r) with n*d_r = " +
                        std::to_string(total_qubits) + " exceeds the capacity of 2^" +
                        std::to_string(kMaxTotalQubits));
  }

  const std::size_t axis = g.points();
  std::vector<double> lambda0(axis);
  for (std::size_t k = 0; k < axis; ++k) {
    const double sk = std::sin(std::numbers::pi * static_cast<double>(k) / static_cast<double>(axis));
    lambda0[k] = -4.0 * sk * sk;
  }

  Spectrum s;
  s.n = static_cast<int>(total_qubits);
  s.values.assign(std::size_t{1} << total_qubits, -g.c);
  for (std::size_t flat = 0; flat < s.values.size(); ++flat) {
    std::size_t rest = flat;
    for (int axis_idx = 0; axis_idx < d_r; ++axis_idx) {
      s.values[flat] += lambda0[rest & (axis - 1)];
      rest >>= g.n;
    }
  }
  return s;
}

Statevector rhs_from_state(const Statevector& u, const Statevector& f, const GridSpec& g) {
  validate(g);
  if (u.n != g.n || f.n != g.n || u.size() != f.size()) {
    throw std::invalid_argument("rhs_from_state: length mismatch");
  }
  if (u.domain != Domain::position || f.domain != Domain::position) {
    throw std::invalid_argument("rhs_from_state: position-domain inputs required");
  }
  Statevector b = u;
  for (std::size_t i = 0; i < b.size(); ++i) {
    b.amps[i] = g.c * (g.dt * f.amps[i] - u.amps[i]);
  }
  return b;
}

}  // namespace ataheat
