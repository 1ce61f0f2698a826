#pragma once

#include <stdexcept>
#include <string>

namespace pairsim {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A basis or Fock-space dimension exceeds the configured cap.
class CapacityError : public Error {
public:
    using Error::Error;
};

/// Vector or matrix sizes do not match the basis they are applied to.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Invalid argument (bad level index, k == k', odd omega, ...).
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// A scalar lies outside the domain of the function.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A density matrix or block violates its invariants (trace, PSD, Hermiticity).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Iterative solver failed to converge or to bracket a root.
class SolverError : public Error {
public:
    SolverError(const std::string& what, double residual = -1.0)
        : Error(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// A single-particle level sits exactly at the Fermi energy.
class DegenerateFermiLevelError : public Error {
public:
    using Error::Error;
};

/// Gaussian state requested for occupations at 0 or 1.
class DegenerateGaussianError : public Error {
public:
    using Error::Error;
};

} // namespace pairsim
