#include <doctest.h>

#include <latval/laws.hpp>
#include <latval/vspace.hpp>


using namespace latval;

namespace
{

// Coefficient vector of a degree-d form, x^d first.
std::vector<Rational> coefficients(const Series2 &f, int d)
{
    std::vector<Rational> v;
    for (int q = 0; q <= d; ++q) {
        v.push_back(f.coeff(d - q, q));
    }
    return v;
}

std::size_t rank_of(std::vector<std::vector<Rational>> rows)
{
    std::size_t rank = 0;
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t p = rank;
        while (p < rows.size() && sgn(rows[p][c]) == 0) {
            ++p;
        }
        if (p == rows.size()) {
            continue;
        }
        std::swap(rows[p], rows[rank]);
        for (std::size_t i = rank + 1; i < rows.size(); ++i) {
            const Rational f = rows[i][c] / rows[rank][c];
            for (std::size_t j = c; j < cols; ++j) {
                rows[i][j] -= f * rows[rank][j];
            }
        }
        ++rank;
    }
    return rank;
}

} // namespace

TEST_CASE("small degrees")
{
    const auto b0 = vd_basis(0);
    REQUIRE(b0.basis.size() == 1);
    CHECK(agree(b0.basis[0], Series2::constant(1, 0)));
    CHECK(vd_basis(2).basis.empty());

    const auto b4 = vd_basis(4);
    REQUIRE(b4.basis.size() == 1);
    const Series2 expected(4, {{{4, 0}, 1}, {{3, 1}, 2}, {{2, 2}, Rational(-1, 3)}, {{1, 3}, Rational(-4, 3)},
                               {{0, 4}, Rational(-1, 3)}});
    CHECK(agree(b4.basis[0], expected));
}

TEST_CASE("predicted dimensions")
{
    CHECK(predicted_dim(12) == 2);
    CHECK(predicted_dim(26) == 2);
    CHECK(predicted_dim(7) == 0);
    CHECK(predicted_dim(2) == 0);
    CHECK(predicted_dim(14) == 1);
    const std::vector<int> even{1, 0, 1, 1, 1, 1, 2, 1, 2, 2, 2, 2, 3, 2, 3, 3};
    for (int d = 0; d <= 30; d += 2) {
        CHECK(predicted_dim(d) == even[static_cast<std::size_t>(d / 2)]);
    }
}

TEST_CASE("dimension table matches the closed form")
{
    for (const auto &row : dims_table(30)) {
        CAPTURE(row.degree);
        CHECK(row.match);
    }
}

TEST_CASE("basis elements satisfy all rho laws")
{
    for (int d = 0; d <= 14; ++d) {
        const auto b = vd_basis(d);
        const auto rev = vd_basis(d, PivotOrder::reversed);
        REQUIRE(rev.basis.size() == b.basis.size());
        for (std::size_t i = 0; i < b.basis.size(); ++i) {
            CHECK(agree(rev.basis[i], b.basis[i]));
        }
        for (const auto &rho : b.basis) {
            CAPTURE(d);
            // Leading coefficient of a reduced echelon row is 1.
            CHECK(rho.terms().begin()->second == 1);
            for (const auto law : {LawId::rhoformula, LawId::Aprime, LawId::E, LawId::Bprime, LawId::Cprime,
                                   LawId::D}) {
                CHECK(check_law(law, rho).holds);
            }
            CHECK(is_d4_invariant(rho).invariant);
            const auto f = dagger(with_order(rho, d + 4));
            CHECK(check_law(LawId::A, f).holds);
            CHECK(check_law(LawId::B, f).holds);
            CHECK(check_law(LawId::C, f).holds);
        }
    }
}

TEST_CASE("(s, t) coordinates give an isomorphic space")
{
    for (int d = 0; d <= 20; ++d) {
        const auto xy = vd_basis(d);
        const auto st = st_basis(d);
        CAPTURE(d);
        REQUIRE(xy.basis.size() == st.basis.size());
        std::vector<std::vector<Rational>> rows;
        for (const auto &s : st.basis) {
            rows.push_back(coefficients(s, d));
        }
        const auto r = rank_of(rows);
        for (const auto &rho : xy.basis) {
            auto with = rows;
            with.push_back(coefficients(to_st(rho), d));
            CHECK(rank_of(with) == r);
            CHECK(check_law(LawId::Adoubleprime, to_st(rho)).holds);
        }
    }
    REQUIRE(st_basis(0).basis.size() == 1);
    CHECK(agree(st_basis(0).basis[0], Series2::constant(1, 0)));
}
