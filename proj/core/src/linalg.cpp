#include <algorithm>
#include <stdexcept>

#include "linalg.hpp"

namespace latval::detail
{

namespace
{

using IntegerMatrix = std::vector<std::vector<Integer>>;

// Scale every row by the lcm of its denominators.
IntegerMatrix clear_denominators(const RationalMatrix &m, std::size_t cols)
{
    IntegerMatrix out;
    out.reserve(m.size());
    for (const auto &row : m) {
        Integer l = 1;
        for (const auto &q : row) {
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
        }
        std::vector<Integer> r(cols);
        for (std::size_t j = 0; j < cols && j < row.size(); ++j) {
            r[j] = row[j].get_num() * (l / row[j].get_den());
        }
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace

std::vector<std::vector<Rational>> kernel_basis(const RationalMatrix &m, std::size_t cols,
                                                const std::vector<std::size_t> &column_order)
{
    auto a = clear_denominators(m, cols);
    const std::size_t rows = a.size();

    // Bareiss elimination: every entry stays an integer minor of the input.
    std::vector<std::size_t> pivots;
    Integer prev = 1;
    std::size_t r = 0;
    for (const auto col : column_order) {
        if (r == rows) {
            break;
        }
        std::size_t piv = r;
        while (piv < rows && a[piv][col] == 0) {
            ++piv;
        }
        if (piv == rows) {
            continue;
        }
        std::swap(a[piv], a[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = 0; j < cols; ++j) {
                if (j == col) {
                    continue;
                }
                Integer t = a[r][col] * a[i][j] - a[i][col] * a[r][j];
                if (!mpz_divisible_p(t.get_mpz_t(), prev.get_mpz_t())) {
                    throw std::logic_error("fraction-free elimination lost exactness");
                }
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][col] = 0;
        }
        prev = a[r][col];
        pivots.push_back(col);
        ++r;
    }

    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) {
        is_pivot[c] = true;
    }
    RationalMatrix basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) {
            continue;
        }
        std::vector<Rational> v(cols);
        v[free] = 1;
        // Back substitution through the echelon rows, last pivot first.
        for (std::size_t k = pivots.size(); k-- > 0;) {
            const auto pc = pivots[k];
            Rational s;
            for (std::size_t j = 0; j < cols; ++j) {
                if (j != pc && a[k][j] != 0) {
                    s += Rational(a[k][j]) * v[j];
                }
            }
            v[pc] = -s / Rational(a[k][pc]);
        }
        basis.push_back(std::move(v));
    }
    return rref(std::move(basis));
}

RationalMatrix rref(RationalMatrix m)
{
    if (m.empty()) {
        return m;
    }
    const std::size_t cols = m.front().size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t piv = r;
        while (piv < m.size() && sgn(m[piv][c]) == 0) {
            ++piv;
        }
        if (piv == m.size()) {
            continue;
        }
        std::swap(m[piv], m[r]);
        const Rational lead = m[r][c];
        for (auto &q : m[r]) {
            q /= lead;
        }
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || sgn(m[i][c]) == 0) {
                continue;
            }
            const Rational f = m[i][c];
            for (std::size_t j = 0; j < cols; ++j) {
                m[i][j] -= f * m[r][j];
            }
        }
        ++r;
    }
    m.resize(r);
    return m;
}

std::optional<std::vector<Rational>> solve_unique(const RationalMatrix &a, const std::vector<Rational> &b,
                                                  std::size_t cols)
{
    RationalMatrix aug;
    aug.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto row = a[i];
        row.resize(cols);
        row.push_back(b[i]);
        aug.push_back(std::move(row));
    }
    if (aug.empty()) {
        return cols == 0 ? std::optional<std::vector<Rational>>(std::vector<Rational>{}) : std::nullopt;
    }
    const auto red = rref(std::move(aug));
    std::vector<Rational> x(cols);
    std::size_t found = 0;
    for (const auto &row : red) {
        const auto lead = std::find_if(row.begin(), row.end(), [](const Rational &q) { return sgn(q) != 0; });
        const auto idx = static_cast<std::size_t>(lead - row.begin());
        if (idx == cols) {
            return std::nullopt;  // 0 = nonzero
        }
        x[idx] = row[cols];
        ++found;
    }
    if (found != cols) {
        return std::nullopt;
    }
    return x;
}

} // namespace latval::detail
