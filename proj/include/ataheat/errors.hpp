#pragma once

#include <stdexcept>
#include <string>

namespace ataheat {

/// Requested object exceeds the configured desk-scale capacity.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

/// A spectrum fed to the two-local decomposition carries Walsh mass on
/// masks of popcount > 2 above tolerance.
class DecompositionError : public std::runtime_error {
 public:
  explicit DecompositionError(const std::string& what) : std::runtime_error(what) {}
};

/// Normal-equation solve failed beyond the ridge / SVD rescue path.
class DegenerateBasisError : public std::runtime_error {
 public:
  explicit DegenerateBasisError(const std::string& what) : std::runtime_error(what) {}
};

/// A field cannot be expressed with real Z-string coefficients.
class RepresentationError : public std::runtime_error {
 public:
  explicit RepresentationError(const std::string& what) : std::runtime_error(what) {}
};

/// Source/initial-field pair cannot be normalized (identically zero field).
class NormalizationError : public std::runtime_error {
 public:
  explicit NormalizationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ataheat
