#pragma once

#include <stdexcept>
#include <string>

namespace spinframe {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Geometry
class SingularityError : public Error { using Error::Error; };
class ResolutionError : public Error { using Error::Error; };
class GridMismatchError : public Error { using Error::Error; };

// Wigner / wavefunction
class InvalidProjectionError : public Error { using Error::Error; };
class PeriodMismatchError : public Error { using Error::Error; };
class MixedGammaModeError : public Error { using Error::Error; };
class NonNormalizableError : public Error { using Error::Error; };
class NodeCrossingError : public Error { using Error::Error; };

// Dynamics
class NonPositiveDensityError : public Error { using Error::Error; };
class ModeCapError : public Error { using Error::Error; };
class RefinementError : public Error { using Error::Error; };

// Exchange
class InvalidPathError : public Error { using Error::Error; };

// CLI / config
class ConfigError : public Error { using Error::Error; };

}  // namespace spinframe
