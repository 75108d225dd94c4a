#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "ataheat/grid.hpp"
#include "ataheat/pauli.hpp"
#include "ataheat/state.hpp"

namespace ataheat {

struct OracleSolution {
  enum class Method { spectral, tridiagonal };
  std::vector<double> x;
  double residual = 0.0;  ///< ||A x - b|| / ||b||
  Method method = Method::spectral;
};

/// Exact solve of the cyclic tridiagonal system (diagonal -2-c, neighbor 1,
/// wrapped corners). The spectral method divides Fourier modes by the exact
/// spectrum; the tridiagonal method is the Thomas algorithm with a
/// Sherman-Morrison corner correction. Requires c > 0 and a real b.
OracleSolution solve_exact(std::span<const double> b, const GridSpec& g,
                           OracleSolution::Method method = OracleSolution::Method::spectral);
OracleSolution solve_exact(const Statevector& b, const GridSpec& g,
                           OracleSolution::Method method = OracleSolution::Method::spectral);

/// Spectral solve for a complex right-hand side (the validation paths feed
/// complex data; the physical contract stays real).
std::vector<std::complex<double>> solve_exact_complex(std::span<const std::complex<double>> b,
                                                      const GridSpec& g);

/// Reference trajectory of the implicit scheme: U^0 = chi, then repeated
/// exact solves of b^tau = c (dt f^tau - U^tau). source(tau) returns the
/// position-space f at time index tau.
std::vector<std::vector<double>> evolve_exact(
    std::span<const double> chi,
    const std::function<std::vector<double>(std::size_t)>& source,
    const GridSpec& g, std::size_t n_steps);

/// |<x|y>| / (||x|| ||y||); scale- and phase-invariant.
double fidelity(std::span<const std::complex<double>> x, std::span<const std::complex<double>> y);
double fidelity(std::span<const double> x, std::span<const double> y);
double fidelity(std::span<const std::complex<double>> x, std::span<const double> y);

/// Stationary profile of the driven scheme: solves (A + cI) u = c dt f on
/// the nonzero modes; requires a zero-sum source.
std::vector<double> stationary_profile(std::span<const double> f, const GridSpec& g);

/// Dense circulant with the given spectrum (F^dag diag F); brute-force
/// reference for n <= 10, otherwise CapacityError.
Eigen::MatrixXcd dense_from_spectrum(const Spectrum& s);

/// Dense operator of a Z-string sum conjugated by the DFT.
Eigen::MatrixXcd dense_from_pauli_sum(const DiagonalPauliSum& p);

}  // namespace ataheat
