#ifndef LATVAL_VSPACE_HPP
#define LATVAL_VSPACE_HPP

#include <vector>

#include <latval/series.hpp>

namespace latval
{

// Pivot search order for the elimination. The basis is normalized either way.
enum class PivotOrder { graded, reversed };

// Homogeneous degree-d solutions. Elements are stored at order d and are in
// reduced echelon form over x^d > x^(d-1) y > ... > y^d.
struct VdBasis {
    int degree = 0;
    std::vector<Series2> basis;
};

// Kernel of the coefficient equations of (Aprime) and (E) on degree-d forms.
VdBasis vd_basis(int d, PivotOrder pivots = PivotOrder::graded);

// Same space in the (s, t) coordinates: kernel of (Adoubleprime) together
// with sigma(s, t) = sigma(-t, -s).
VdBasis st_basis(int d, PivotOrder pivots = PivotOrder::graded);

int predicted_dim(int d);

struct DimRow {
    int degree = 0;
    int computed = 0;
    int predicted = 0;
    bool match = false;
};

std::vector<DimRow> dims_table(int d_max);

// The same polynomial viewed at another order. Only meaningful for
// polynomials whose degree does not exceed their current order.
Series2 with_order(const Series2 &polynomial, int order);

} // namespace latval

#endif
