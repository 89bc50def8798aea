#pragma once

#include <stdexcept>
#include <string>

namespace wcdd {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid configuration, parameters or inputs (CLI exit code 2).
struct ConfigError : Error {
    using Error::Error;
};

struct UnknownWeightName : ConfigError {
    using ConfigError::ConfigError;
};

struct MissingWeight : ConfigError {
    using ConfigError::ConfigError;
};

struct UnknownPreset : ConfigError {
    using ConfigError::ConfigError;
};

/// Weight matrix populated outside the active scheme's slots.
struct SchemeMismatch : ConfigError {
    using ConfigError::ConfigError;
};

/// Numerical failure (CLI exit code 3).
struct NumericalError : Error {
    using Error::Error;
};

/// Equilibrium solver failed from every start; message carries diagnostics.
struct NoConvergence : NumericalError {
    using NumericalError::NumericalError;
};

/// Kernel transform evaluated at a point where it is singular or vanishes.
struct KernelSingularity : NumericalError {
    using NumericalError::NumericalError;
};

/// Critical-window query for a point outside the Gray/Pink/Cyan zones.
struct ZoneMismatch : ConfigError {
    using ConfigError::ConfigError;
};

/// Transversality expression within 1e-10 of zero; crossing direction is not decided.
struct OnSignBoundary : NumericalError {
    using NumericalError::NumericalError;
};

struct StepTooLarge : ConfigError {
    using ConfigError::ConfigError;
};

/// Integration state exceeded the overflow guard.
struct Overflow : NumericalError {
    using NumericalError::NumericalError;
};

struct HorizonTooLong : ConfigError {
    using ConfigError::ConfigError;
};

/// Spectrum of the analyzed signal has no usable peak.
struct NoPeak : NumericalError {
    using NumericalError::NumericalError;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace wcdd
