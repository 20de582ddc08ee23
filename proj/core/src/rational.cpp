#include <cctype>
#include <string>

#include <latval/error.hpp>
#include <latval/rational.hpp>

namespace latval
{

namespace
{

bool is_integer_literal(std::string_view s)
{
    if (s.empty()) {
        return false;
    }
    std::size_t i = (s.front() == '-' || s.front() == '+') ? 1 : 0;
    if (i == s.size()) {
        return false;
    }
    for (; i < s.size(); ++i) {
        if (std::isdigit(static_cast<unsigned char>(s[i])) == 0) {
            return false;
        }
    }
    return true;
}

Integer parse_integer(std::string_view s)
{
    if (s.front() == '+') {
        s.remove_prefix(1);
    }
    return Integer(std::string(s), 10);
}

} // namespace

Rational make_rational(std::int64_t num, std::int64_t den)
{
    Rational q(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
    q.canonicalize();
    return q;
}

std::string to_string(const Rational &q)
{
    if (q.get_den() == 1) {
        return q.get_num().get_str();
    }
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(std::string_view text)
{
    const auto slash = text.find('/');
    const auto num_text = text.substr(0, slash);
    if (!is_integer_literal(num_text)) {
        throw Error(ErrorCode::malformed_input, "not a rational: '" + std::string(text) + "'");
    }
    Integer den = 1;
    if (slash != std::string_view::npos) {
        const auto den_text = text.substr(slash + 1);
        if (!is_integer_literal(den_text)) {
            throw Error(ErrorCode::malformed_input, "not a rational: '" + std::string(text) + "'");
        }
        den = parse_integer(den_text);
        if (den == 0) {
            throw Error(ErrorCode::malformed_input, "zero denominator in '" + std::string(text) + "'");
        }
    }
    Rational q(parse_integer(num_text), den);
    q.canonicalize();
    return q;
}

Integer factorial(unsigned n)
{
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

Integer binomial(unsigned n, unsigned k)
{
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Rational pow(const Rational &base, unsigned exp)
{
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), exp);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), exp);
    r.canonicalize();
    return r;
}

} // namespace latval
