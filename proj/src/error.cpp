#include "tamexp/error.hpp"

namespace tamexp {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::NonPrime: return "NonPrime";
        case Errc::DegreeZero: return "DegreeZero";
        case Errc::FieldTooLarge: return "FieldTooLarge";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::DegreeOverflow: return "DegreeOverflow";
        case Errc::BadExponent: return "BadExponent";
        case Errc::BadIndex: return "BadIndex";
        case Errc::NotInvertible: return "NotInvertible";
        case Errc::BudgetExceeded: return "BudgetExceeded";
        case Errc::BoundViolated: return "BoundViolated";
        case Errc::ClashingMinimalPolynomials: return "ClashingMinimalPolynomials";
        case Errc::ValueOutsideSubfield: return "ValueOutsideSubfield";
        case Errc::RankTooLarge: return "RankTooLarge";
        case Errc::NotClosed: return "NotClosed";
        case Errc::NotConnected: return "NotConnected";
        case Errc::NoConvergence: return "NoConvergence";
        case Errc::ProbeFailed: return "ProbeFailed";
        case Errc::NotApplicable: return "NotApplicable";
        case Errc::ParseError: return "ParseError";
    }
    return "Unknown";
}

}  // namespace tamexp
