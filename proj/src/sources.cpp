#include "ataheat/sources.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ataheat/errors.hpp"
#include "ataheat/rng.hpp"

namespace ataheat {

namespace {

// T_0..T_degree at x by the three-term recurrence.
void chebyshev_row(double x, int degree, double* out) {
  out[0] = 1.0;
  if (degree >= 1) out[1] = x;
  for (int j = 2; j <= degree; ++j) out[j] = 2.0 * x * out[j - 1] - out[j - 2];
}

constexpr std::size_t kSimpsonIntervals = 1024;

std::vector<double> simpson_weights(double h) {
  std::vector<double> w(kSimpsonIntervals + 1, 2.0 * h / 3.0);
  w.front() = w.back() = h / 3.0;
  for (std::size_t i = 1; i < kSimpsonIntervals; i += 2) w[i] = 4.0 * h / 3.0;
  return w;
}

void check_unit_interval(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::invalid_argument(std::string("evaluate: ") + name + " must lie in [0, 1]");
  }
}

}  // namespace

ChebyshevField1D sample_field_1d(int degree, std::uint64_t seed, std::string_view label) {
  if (degree < 0) throw std::invalid_argument("sample_field_1d: degree must be >= 0");
  ChebyshevField1D field;
  field.degree = degree;
  field.seed = seed;
  field.coeffs.resize(degree + 1);
  Rng rng = Rng::substream(seed, label);
  for (double& c : field.coeffs) c = rng.uniform_pm1();
  return field;
}

ChebyshevField2D sample_field_2d(int g_t, int g_z, std::uint64_t seed, std::string_view label) {
  if (g_t < 0 || g_z < 0) throw std::invalid_argument("sample_field_2d: degrees must be >= 0");
  ChebyshevField2D field;
  field.g_t = g_t;
  field.g_z = g_z;
  field.seed = seed;
  field.coeffs.resize(static_cast<std::size_t>(g_t + 1) * (g_z + 1));
  Rng rng = Rng::substream(seed, label);
  for (double& c : field.coeffs) c = rng.uniform_pm1();  // row-major, time index outer
  return field;
}

double evaluate(const ChebyshevField1D& field, double z) {
  check_unit_interval(z, "z");
  std::vector<double> t(field.degree + 1);
  chebyshev_row(2.0 * z - 1.0, field.degree, t.data());
  double value = 0.0;
  for (int j = 0; j <= field.degree; ++j) value += field.coeffs[j] * t[j];
  return value;
}

double evaluate(const ChebyshevField2D& field, double z, double t) {
  check_unit_interval(z, "z");
  check_unit_interval(t, "t");
  std::vector<double> tz(field.g_z + 1);
  std::vector<double> tt(field.g_t + 1);
  chebyshev_row(2.0 * z - 1.0, field.g_z, tz.data());
  chebyshev_row(2.0 * t - 1.0, field.g_t, tt.data());
  double value = 0.0;
  for (int i = 0; i <= field.g_t; ++i) {
    double inner = 0.0;
    for (int j = 0; j <= field.g_z; ++j) inner += field.coeff(i, j) * tz[j];
    value += tt[i] * inner;
  }
  return value;
}

double normalize_pair(const ChebyshevField1D& chi, ChebyshevField2D& f) {
  const double h = 1.0 / static_cast<double>(kSimpsonIntervals);
  const std::vector<double> w = simpson_weights(h);
  const std::size_t nodes = kSimpsonIntervals + 1;

  double chi_integral = 0.0;
  {
    std::vector<double> row(chi.degree + 1);
    for (std::size_t i = 0; i < nodes; ++i) {
      const double z = static_cast<double>(i) * h;
      chebyshev_row(2.0 * z - 1.0, chi.degree, row.data());
      double v = 0.0;
      for (int j = 0; j <= chi.degree; ++j) v += chi.coeffs[j] * row[j];
      chi_integral += w[i] * std::abs(v);
    }
  }

  // f on the tensor Simpson grid through its Chebyshev design matrices.
  Eigen::MatrixXd tz(nodes, f.g_z + 1);
  Eigen::MatrixXd tt(nodes, f.g_t + 1);
  {
    std::vector<double> rz(f.g_z + 1);
    std::vector<double> rt(f.g_t + 1);
    for (std::size_t i = 0; i < nodes; ++i) {
      const double x = 2.0 * static_cast<double>(i) * h - 1.0;
      chebyshev_row(x, f.g_z, rz.data());
      chebyshev_row(x, f.g_t, rt.data());
      for (int j = 0; j <= f.g_z; ++j) tz(i, j) = rz[j];
      for (int j = 0; j <= f.g_t; ++j) tt(i, j) = rt[j];
    }
  }
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> coeffs(
      f.coeffs.data(), f.g_t + 1, f.g_z + 1);
  const Eigen::MatrixXd values = tt * coeffs * tz.transpose();  // (t node) x (z node)

  double f_integral = 0.0;
  for (std::size_t i = 0; i < nodes; ++i) {
    double inner = 0.0;
    for (std::size_t j = 0; j < nodes; ++j) inner += w[j] * std::abs(values(i, j));
    f_integral += w[i] * inner;
  }

  if (!(chi_integral > 1e-300)) throw NormalizationError("normalize_pair: chi is identically zero");
  if (!(f_integral > 1e-300)) throw NormalizationError("normalize_pair: f is identically zero");

  const double scale = chi_integral / f_integral;
  for (double& c : f.coeffs) c *= scale;
  return scale;
}

std::vector<double> discretize(const ChebyshevField1D& field, int n) {
  const std::size_t size = std::size_t{1} << n;
  std::vector<double> out(size);
  std::vector<double> row(field.degree + 1);
  for (std::size_t i = 0; i < size; ++i) {
    const double z = static_cast<double>(i) / static_cast<double>(size);
    chebyshev_row(2.0 * z - 1.0, field.degree, row.data());
    double v = 0.0;
    for (int j = 0; j <= field.degree; ++j) v += field.coeffs[j] * row[j];
    out[i] = v;
  }
  return out;
}

std::vector<double> discretize(const ChebyshevField2D& field, int n, double t) {
  check_unit_interval(t, "t");
  const std::size_t size = std::size_t{1} << n;
  std::vector<double> out(size);
  std::vector<double> tt(field.g_t + 1);
  chebyshev_row(2.0 * t - 1.0, field.g_t, tt.data());
  std::vector<double> zrow(field.g_z + 1);
  for (std::size_t i = 0; i < size; ++i) {
    const double z = static_cast<double>(i) / static_cast<double>(size);
    chebyshev_row(2.0 * z - 1.0, field.g_z, zrow.data());
    double v = 0.0;
    for (int it = 0; it <= field.g_t; ++it) {
      double inner = 0.0;
      for (int j = 0; j <= field.g_z; ++j) inner += field.coeff(it, j) * zrow[j];
      v += tt[it] * inner;
    }
    out[i] = v;
  }
  return out;
}

DiagonalPauliSum field_to_pauli_sum(std::span<const double> field, double imag_tol) {
  if (!detail::is_power_of_two(field.size())) {
    throw std::invalid_argument("field_to_pauli_sum: length must be a power of two");
  }
  // prepare_from_pauli_sum reproduces the field iff the synthesized diagonal
  // equals the unnormalized forward DFT of the field, which must be real.
  std::vector<std::complex<double>> image(field.begin(), field.end());
  detail::fft_pow2(image, -1);

  double max_abs = 0.0;
  double max_imag = 0.0;
  for (const auto& v : image) {
    max_abs = std::max(max_abs, std::abs(v));
    max_imag = std::max(max_imag, std::abs(v.imag()));
  }
  if (max_abs > 0.0 && max_imag > imag_tol * max_abs) {
    throw RepresentationError(
        "field_to_pauli_sum: Fourier image is not real (relative imaginary part " +
        std::to_string(max_imag / max_abs) + "); the field admits no real Z-string coefficients");
  }

  std::vector<double> diag(image.size());
  for (std::size_t k = 0; k < image.size(); ++k) diag[k] = image[k].real();
  return wht_analyze(diag);
}

HeaterCoolerPreset heater_cooler_preset(int n, std::size_t heater, std::size_t cooler,
                                        std::size_t width) {
  const std::size_t size = std::size_t{1} << n;
  if (heater >= size || cooler >= size) {
    throw std::invalid_argument("heater_cooler_preset: position out of range");
  }
  if (heater == cooler) throw std::invalid_argument("heater_cooler_preset: positions must differ");
  if (width < 1 || width > size) throw std::invalid_argument("heater_cooler_preset: bad width");

  HeaterCoolerPreset preset;
  preset.field.assign(size, 0.0);
  preset.chi_repr = DiagonalPauliSum(n);
  preset.f_repr = DiagonalPauliSum(n);
  if (width == size) return preset;  // windows coincide and cancel exactly

  const std::size_t gap_fwd = (cooler + size - heater) % size;
  const std::size_t gap_bwd = (heater + size - cooler) % size;
  if (std::min(gap_fwd, gap_bwd) < width) {
    throw std::invalid_argument("heater_cooler_preset: windows overlap");
  }
  for (std::size_t r = 0; r < width; ++r) {
    preset.field[(heater + r) % size] += 1.0;
    preset.field[(cooler + r) % size] -= 1.0;
  }

  preset.f_repr = field_to_pauli_sum(preset.field, 1e-10);
  return preset;
}

DiagonalPauliSum TimeEnvelopedReprSource::at(double t01) const {
  DiagonalPauliSum p(n);
  for (std::size_t i = 0; i < masks.size(); ++i) {
    const double v = amplitudes[i] * evaluate(envelopes[i], t01);
    if (v != 0.0) p.terms.emplace(masks[i], v);
  }
  return p;
}

SourceTerm TimeEnvelopedReprSource::term_at(double t01) const {
  return SourceTerm{at(t01), scale};
}

TimeEnvelopedReprSource sample_repr_source(const ReprSourceSpec& spec) {
  TimeEnvelopedReprSource src;
  src.n = spec.n;

  Rng rng = Rng::substream(spec.seed, "f-masks");
  const std::size_t size = std::size_t{1} << spec.n;
  std::map<std::uint64_t, double> drawn;
  double amplitude = 1.0;
  while (drawn.size() < spec.term_count) {
    const std::uint64_t mask = rng.next_u64() & (size - 1);
    if (!drawn.contains(mask)) {
      drawn.emplace(mask, amplitude);
      amplitude *= spec.rank_decay;
    }
  }
  for (const auto& [mask, amp] : drawn) {
    src.masks.push_back(mask);
    src.amplitudes.push_back(amp);
  }
  src.envelopes.reserve(src.masks.size());
  for (std::size_t i = 0; i < src.masks.size(); ++i) {
    src.envelopes.push_back(
        sample_field_1d(spec.envelope_degree, spec.seed, "f-envelope-" + std::to_string(i)));
  }
  return src;
}

DiagonalPauliSum sample_repr_state(int n, std::size_t term_count, std::uint64_t seed,
                                   std::string_view label, double rank_decay) {
  const std::size_t size = std::size_t{1} << n;
  if (term_count < 1 || term_count > size) {
    throw std::invalid_argument("sample_repr_state: term count out of range");
  }
  Rng rng = Rng::substream(seed, label);
  DiagonalPauliSum p(n);
  double amplitude = 1.0;
  while (p.terms.size() < term_count) {
    const std::uint64_t mask = rng.next_u64() & (size - 1);
    if (!p.terms.contains(mask)) {
      p.terms.emplace(mask, amplitude * rng.uniform_pm1());
      amplitude *= rank_decay;
    }
  }
  return p;
}

}  // namespace ataheat
