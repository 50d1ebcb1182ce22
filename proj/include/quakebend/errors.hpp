#pragma once

#include <stdexcept>
#include <string>

namespace qb {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// moebius
struct IdentityElement : Error { using Error::Error; };
struct DegenerateAxis : Error { using Error::Error; };
struct BadMultiplier : Error { using Error::Error; };
struct NotLoxodromic : Error { using Error::Error; };
struct SingularMatrix : Error { using Error::Error; };

// hyperbolic
struct DegenerateVertex : Error { using Error::Error; };
struct RadiusTooLarge : Error { using Error::Error; };

// surface
struct BadGenus : Error { using Error::Error; };
struct InvalidLength : Error { using Error::Error; };
struct UnknownGenerator : Error { using Error::Error; };

// framed
struct UnknownLoop : Error { using Error::Error; };
struct InvalidFraming : Error { using Error::Error; };

// bending
struct ParabolicLoop : Error { using Error::Error; };
struct InconsistentAxes : Error { using Error::Error; };

// experiments
struct WeightNearPi : Error { using Error::Error; };

// cli
struct ConfigError : Error {
  ConfigError(const std::string& msg, std::string ptr)
      : Error(msg + " (at " + ptr + ")"), pointer(std::move(ptr)) {}
  std::string pointer;
};

}  // namespace qb
