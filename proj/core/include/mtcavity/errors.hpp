#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace mtcavity {

// Base for all typed failures.  kind() strings appear verbatim in run
// manifests and drive the CLI exit-code mapping (see runner.hpp).
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(message), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define MTCAVITY_ERROR_KIND(NAME)                                  \
    class NAME : public Error {                                    \
    public:                                                        \
        explicit NAME(const std::string& message)                  \
            : Error(#NAME, message) {}                             \
    }

// bad mathematical input (zero polynomial, empty profile, ...)
MTCAVITY_ERROR_KIND(DegenerateInput);
// a field value left the trusted range during time stepping
MTCAVITY_ERROR_KIND(NumericalBlowup);
// measure_front found no level crossing
MTCAVITY_ERROR_KIND(NoCrossing);
// traveling-frame reduction needs |v| < 1
MTCAVITY_ERROR_KIND(SupersonicVelocity);
// the reduced force has fewer than two real roots in the search window
MTCAVITY_ERROR_KIND(NoAsymptotes);
// no heteroclinic orbit for the requested damping
MTCAVITY_ERROR_KIND(NoConnection);
// the shooting bisection exhausted its budget above tolerance
MTCAVITY_ERROR_KIND(ToleranceUnmet);
// smearing variance must be non-negative
MTCAVITY_ERROR_KIND(NegativeVariance);
// spectrum grid cannot resolve the requested linewidth
MTCAVITY_ERROR_KIND(GridTooCoarse);
// enhancement fit rejected because every splitting vanished
MTCAVITY_ERROR_KIND(ZeroSplitting);
// fewer than two distinct sizes in a power-law fit
MTCAVITY_ERROR_KIND(FitUnderdetermined);
// an estimate was requested without its mandatory explicit input
MTCAVITY_ERROR_KIND(MissingOpenParameter);
// config value violates a stated constraint
MTCAVITY_ERROR_KIND(ValidationError);
// filesystem failure while writing artifacts
MTCAVITY_ERROR_KIND(IoError);

#undef MTCAVITY_ERROR_KIND

// Config text that is not syntactically valid; carries the position.
class ParseError : public Error {
public:
    ParseError(const std::string& message, int line, int column)
        : Error("ParseError", message), line_(line), column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

}  // namespace mtcavity
