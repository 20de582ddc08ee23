#ifndef LATVAL_SRC_LINALG_HPP
#define LATVAL_SRC_LINALG_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include <latval/rational.hpp>

namespace latval::detail
{

using RationalMatrix = std::vector<std::vector<Rational>>;

// Basis of the right kernel of m (rows x cols), computed by fraction-free
// elimination. Pivots are searched in column_order (a permutation of
// 0..cols-1). The returned basis is in reduced row echelon form with respect
// to the natural column order, so it is canonical whatever order was used.
std::vector<std::vector<Rational>> kernel_basis(const RationalMatrix &m, std::size_t cols,
                                                const std::vector<std::size_t> &column_order);

// Reduced row echelon form (natural column order), zero rows removed.
RationalMatrix rref(RationalMatrix m);

// Unique solution of a x = b when the columns of a are independent;
// nullopt if the system is inconsistent.
std::optional<std::vector<Rational>> solve_unique(const RationalMatrix &a, const std::vector<Rational> &b,
                                                  std::size_t cols);

} // namespace latval::detail

#endif
