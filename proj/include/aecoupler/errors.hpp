#pragma once

#include <stdexcept>
#include <string>

namespace aecoupler {

/// Both field components vanish where an angle or phase is required.
class DegenerateFieldError : public std::domain_error {
public:
    explicit DegenerateFieldError(const std::string& what) : std::domain_error(what) {}
};

/// A basis transform failed its unitarity check.
class NonUnitaryError : public std::invalid_argument {
public:
    explicit NonUnitaryError(const std::string& what) : std::invalid_argument(what) {}
};

/// Amplitude norm left its conservation band; the step is too coarse.
class NormDriftError : public std::runtime_error {
public:
    explicit NormDriftError(const std::string& what) : std::runtime_error(what) {}
};

/// Density-matrix trace left its conservation band.
class TraceDriftError : public std::runtime_error {
public:
    explicit TraceDriftError(const std::string& what) : std::runtime_error(what) {}
};

/// Density-matrix purity left its conservation band.
class PurityDriftError : public std::runtime_error {
public:
    explicit PurityDriftError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace aecoupler
