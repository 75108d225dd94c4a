#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace ataheat {

/// Seedable random generator with portable output.
///
/// The engine is std::mt19937_64, whose raw 64-bit stream is fully specified
/// by the standard. Floating-point values are derived from the raw stream by
/// hand (53-bit mantissa mapping, Marsaglia polar method) instead of the
/// standard distributions, whose output is implementation-defined. Substreams
/// are derived by mixing the base seed with an FNV-1a hash of a label through
/// SplitMix64, so e.g. the "chi" and "f" draws of one experiment never alias.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static constexpr const char* kAlgorithm =
      "mt19937_64 + 53-bit mantissa uniforms + polar gaussians; "
      "substreams via splitmix64(seed ^ fnv1a64(label))";

  static Rng substream(std::uint64_t seed, std::string_view label) {
    return Rng(splitmix64(seed ^ fnv1a64(label)));
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random mantissa bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform on [-1, 1].
  double uniform_pm1() { return 2.0 * uniform01() - 1.0; }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = uniform_pm1();
      v = uniform_pm1();
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    have_spare_ = true;
    return u * m;
  }

  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

  static std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 0x100000001b3ull;
    }
    return h;
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace ataheat
