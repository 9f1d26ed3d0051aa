#pragma once

#include <stdexcept>
#include <string>

namespace tamexp {

enum class Errc {
    NonPrime,
    DegreeZero,
    FieldTooLarge,
    DimensionMismatch,
    DegreeOverflow,
    BadExponent,
    BadIndex,
    NotInvertible,
    BudgetExceeded,
    BoundViolated,
    ClashingMinimalPolynomials,
    ValueOutsideSubfield,
    RankTooLarge,
    NotClosed,
    NotConnected,
    NoConvergence,
    ProbeFailed,
    NotApplicable,
    ParseError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace tamexp
