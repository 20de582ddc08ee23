#ifndef LATVAL_ERROR_HPP
#define LATVAL_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace latval
{

enum class ErrorCode {
    division_by_non_unit,
    not_divisible,
    constant_term_not_zero,
    degree_exceeds_order,
    not_primitive,
    not_unimodular_triangle,
    not_unimodular,
    empty_input,
    not_full_dimensional,
    no_valid_chord,
    not_invariant,
    no_representation,
    invalid_rho,
    not_segment,
    not_simple_spec,
    no_candidate_passes,
    both_pass,
    law_violation,
    malformed_input,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so that
// callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error
{
public:
    Error(ErrorCode code, const std::string &what);

    [[nodiscard]] ErrorCode code() const noexcept
    {
        return m_code;
    }

private:
    ErrorCode m_code;
};

} // namespace latval

#endif
