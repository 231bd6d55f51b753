#pragma once

#include <stdexcept>
#include <string>

namespace gmsep {

/// Channel lies outside the family an operation supports (e.g. a
/// phase-sensitive composite that is not squeeze-conjugated
/// single-quadrature noise, or a dual of full loss).
struct UnsupportedChannelError : std::runtime_error {
  explicit UnsupportedChannelError(const std::string& what)
      : std::runtime_error(what) {}
};

/// Covariance matrix does not match the two-mode standard-form pattern.
struct NotStandardFormError : std::runtime_error {
  explicit NotStandardFormError(const std::string& what)
      : std::runtime_error(what) {}
};

/// Marginal variance at or below the vacuum floor, where the Duan
/// rescaling exponent is singular.
struct DegenerateMarginalError : std::runtime_error {
  explicit DegenerateMarginalError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace gmsep
