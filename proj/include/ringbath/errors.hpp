// errors.hpp — exception types shared across the library

#pragma once

#include <stdexcept>
#include <string>

namespace ringbath {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Matrix or vector dimensions do not agree.
struct DimensionMismatch : Error { using Error::Error; };

// The mode-basis evolution matrix is numerically singular; this signals an
// invalid state, not a propagator singularity (those are handled exactly).
struct SingularEvolution : Error { using Error::Error; };

// The bath block M + M* of the quadratic form is not positive definite.
struct NonPositiveBath : Error { using Error::Error; };

// Reduced-state parameters violate R12 <= Re R11 (purity undefined).
struct NonPositiveReduced : Error { using Error::Error; };

// Initial full-state matrix failed the positive-definiteness check.
struct NonPositiveInitial : Error { using Error::Error; };

// Bath preparations bp3/bp4/bp5 need an even number of bath oscillators.
struct OddBathSize : Error { using Error::Error; };

// Purity traces combined in a width computation must share one time grid.
struct GridMismatch : Error { using Error::Error; };

// Doubling the quadrature grid moved the result by more than the tolerance.
struct GridTooCoarse : Error { using Error::Error; };

// Ground-state construction produced imaginary parts above tolerance.
struct InternalError : Error { using Error::Error; };

// A structural problem in a config file; carries the 1-based line number.
struct ParseError : Error {
    int line = 0;
    ParseError(const std::string& msg, int line_number)
        : Error("line " + std::to_string(line_number) + ": " + msg), line(line_number) {}
};

// A well-formed config that violates an invariant.
struct ValidationError : Error { using Error::Error; };

} // namespace ringbath
