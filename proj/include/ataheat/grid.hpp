#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ataheat {

struct Statevector;

/// Discretization parameters of the periodic 1-D heat problem.
///
/// The dimensionless grid parameter c ties the resolutions together:
/// c = dz^2 / (a2 * dt). Either construct from physical quantities (dz is
/// derived) or in dimensionless mode where a2 = dt = 1 and dz = sqrt(c).
struct GridSpec {
  int n = 1;            ///< qubit count; N = 2^n spatial points
  double c = 1.0;       ///< dz^2 / (a2 * dt)
  double a2 = 1.0;      ///< diffusivity
  double dz = 1.0;      ///< spatial step
  double dt = 1.0;      ///< time step
  std::size_t n_t = 1;  ///< number of time steps

  static GridSpec dimensionless(int n, double c, std::size_t n_t = 1);
  static GridSpec physical(int n, double c, double a2, double dt, std::size_t n_t = 1);

  std::size_t points() const { return std::size_t{1} << n; }
};

/// Eigenvalues of a circulant operator, indexed by wave index k in natural
/// binary order (forward kernel e^{-2*pi*i*j*k/2^n}).
struct Spectrum {
  int n = 0;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t k) const { return values[k]; }
};

/// lambda_k = -c - 4 sin^2(pi k / 2^n).
Spectrum exact_spectrum(const GridSpec& g);

/// Piecewise quadratic stand-in -c - pi^2 (|k/2^{n-1} - 1| - 1)^2; agrees
/// with exact_spectrum as k/2^n -> 0.
Spectrum approx_spectrum(const GridSpec& g);

/// Kronecker-sum spectrum for d_r spatial dimensions: the eigenvalue at
/// multi-index (k_1..k_dr) is sum_j lambda0(k_j) - c with lambda0 the c = 0
/// single-axis spectrum. Flat indexing puts k_1 in the most significant
/// bits. Throws CapacityError when 2^(n*d_r) exceeds the desk budget.
Spectrum multidim_spectrum(const GridSpec& g, int d_r);

/// Right-hand side of the implicit step: b_i = c * (dt * f_i - u_i).
Statevector rhs_from_state(const Statevector& u, const Statevector& f, const GridSpec& g);

}  // namespace ataheat
