#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ataheat/evolve.hpp"
#include "ataheat/pauli.hpp"
#include "ataheat/state.hpp"

namespace ataheat {

/// chi(z) = sum_j g_j T_j(2z - 1) on z in [0, 1].
struct ChebyshevField1D {
  int degree = 0;
  std::vector<double> coeffs;  ///< degree + 1 entries
  std::uint64_t seed = 0;
};

/// f(z, t) = sum_ij h_ij T_i(2t - 1) T_j(2z - 1) on [0, 1]^2.
struct ChebyshevField2D {
  int g_t = 0;
  int g_z = 0;
  std::vector<double> coeffs;  ///< (g_t + 1) x (g_z + 1), row-major in i
  std::uint64_t seed = 0;

  double coeff(int i, int j) const { return coeffs[static_cast<std::size_t>(i) * (g_z + 1) + j]; }
};

/// Coefficients i.i.d. uniform on [-1, 1]; deterministic per (seed, label).
ChebyshevField1D sample_field_1d(int degree, std::uint64_t seed, std::string_view label = "chi");
ChebyshevField2D sample_field_2d(int g_t, int g_z, std::uint64_t seed, std::string_view label = "f");

double evaluate(const ChebyshevField1D& field, double z);
double evaluate(const ChebyshevField2D& field, double z, double t);

/// Rescales f in place so that the [0,1]^2 integral of |f| equals the [0,1]
/// integral of |chi| (composite Simpson, 1024 intervals per axis). Returns
/// the applied factor. Throws NormalizationError on an identically zero
/// field.
double normalize_pair(const ChebyshevField1D& chi, ChebyshevField2D& f);

/// Samples at grid points z_i = i / 2^n.
std::vector<double> discretize(const ChebyshevField1D& field, int n);
std::vector<double> discretize(const ChebyshevField2D& field, int n, double t);

/// Real Z-string representation of a position-space field, i.e. p with
/// prepare_from_pauli_sum(p) equal to the field. Requires the field's
/// unnormalized Fourier image to be real (RepresentationError otherwise).
DiagonalPauliSum field_to_pauli_sum(std::span<const double> field,
                                    double imag_tol = 1e-9);

struct HeaterCoolerPreset {
  std::vector<double> field;   ///< +1 on the heater window, -1 on the cooler
  DiagonalPauliSum chi_repr;   ///< zero initial temperature
  DiagonalPauliSum f_repr;
};

/// Quasi-singular heater/cooler pair: width cells of +1 starting at the
/// heater position and -1 at the cooler (positions wrap). The windows must
/// not partially overlap; width = 2^n cancels to the zero field. The
/// configuration must be exactly representable with real coefficients
/// (antipodal pairs anchored at 0 are; see field_to_pauli_sum).
HeaterCoolerPreset heater_cooler_preset(int n, std::size_t heater, std::size_t cooler,
                                        std::size_t width);

/// Source given directly in representation space: a fixed random mask set
/// whose coefficients follow independent random Chebyshev envelopes in time,
/// each weighted by a per-mask amplitude.
struct TimeEnvelopedReprSource {
  int n = 0;
  std::vector<std::uint64_t> masks;
  std::vector<double> amplitudes;           ///< one per mask
  std::vector<ChebyshevField1D> envelopes;  ///< one per mask
  double scale = 1.0;

  DiagonalPauliSum at(double t01) const;
  SourceTerm term_at(double t01) const;
};

struct ReprSourceSpec {
  int n = 0;
  std::size_t term_count = 8;
  int envelope_degree = 20;
  std::uint64_t seed = 1;
  double rank_decay = 1.0;  ///< amplitude factor per sampled rank
};

TimeEnvelopedReprSource sample_repr_source(const ReprSourceSpec& spec);

/// Random sparse representation state: term_count distinct masks with
/// uniform [-1, 1] coefficients. rank_decay < 1 multiplies the r-th sampled
/// mask's coefficient by rank_decay^r, giving the weight hierarchy that
/// truncation studies presuppose (a flat profile has no meaningful
/// "largest" terms to keep).
DiagonalPauliSum sample_repr_state(int n, std::size_t term_count, std::uint64_t seed,
                                   std::string_view label = "b0", double rank_decay = 1.0);

}  // namespace ataheat
