#pragma once

#include <stdexcept>
#include <string>

namespace sblab {

// Base class for all typed failures raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Configuration / validation failures (CLI exit code 2).
struct ConfigError : Error {
    using Error::Error;
};

// Model parameter validation
struct GapViolation : Error {
    using Error::Error;
};
struct MassOrderViolation : Error {
    using Error::Error;
};

// Quadrature
struct PoleOnBoundary : Error {
    using Error::Error;
};
struct NumeratorDiscontinuous : Error {
    using Error::Error;
};

// Level shift
struct BelowThreshold : Error {
    using Error::Error;
};

// Scattering
struct SupportAtOrigin : Error {
    using Error::Error;
};

// Dynamics
struct WindowTooNarrow : Error {
    using Error::Error;
};

// Fock oracle
struct InvalidGrid : Error {
    using Error::Error;
};
struct DimensionOverflow : Error {
    using Error::Error;
};
struct EigensolverFailure : Error {
    using Error::Error;
};
struct ContourCrossesSpectrum : Error {
    using Error::Error;
};
struct EtaTooSmall : Error {
    using Error::Error;
};

// Mourre
struct SupportTouchesBoundary : Error {
    using Error::Error;
};
struct EmptyCutoffRange : Error {
    using Error::Error;
};
struct EpsBelowSpacingFloor : Error {
    using Error::Error;
};

} // namespace sblab
