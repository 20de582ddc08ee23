#include <latval/error.hpp>

namespace latval
{

std::string_view to_string(ErrorCode code)
{
    switch (code) {
        case ErrorCode::division_by_non_unit:
            return "DivisionByNonUnit";
        case ErrorCode::not_divisible:
            return "NotDivisible";
        case ErrorCode::constant_term_not_zero:
            return "ConstantTermNotZero";
        case ErrorCode::degree_exceeds_order:
            return "DegreeExceedsOrder";
        case ErrorCode::not_primitive:
            return "NotPrimitive";
        case ErrorCode::not_unimodular_triangle:
            return "NotUnimodularTriangle";
        case ErrorCode::not_unimodular:
            return "NotUnimodular";
        case ErrorCode::empty_input:
            return "EmptyInput";
        case ErrorCode::not_full_dimensional:
            return "NotFullDimensional";
        case ErrorCode::no_valid_chord:
            return "NoValidChord";
        case ErrorCode::not_invariant:
            return "NotInvariant";
        case ErrorCode::no_representation:
            return "NoRepresentation";
        case ErrorCode::invalid_rho:
            return "InvalidRho";
        case ErrorCode::not_segment:
            return "NotSegment";
        case ErrorCode::not_simple_spec:
            return "NotSimpleSpec";
        case ErrorCode::no_candidate_passes:
            return "NoCandidatePasses";
        case ErrorCode::both_pass:
            return "BothPass";
        case ErrorCode::law_violation:
            return "LawViolation";
        case ErrorCode::malformed_input:
            return "MalformedInput";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string &what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), m_code(code)
{
}

} // namespace latval
