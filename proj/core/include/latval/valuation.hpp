#ifndef LATVAL_VALUATION_HPP
#define LATVAL_VALUATION_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include <latval/lattice_geom.hpp>
#include <latval/laws.hpp>
#include <latval/series.hpp>

namespace latval
{

// The parameters (c, g, rho) of an equivariant valuation at working order N.
// g is stored at order N/2 and rho at order N.
class ValuationSpec
{
public:
    // Validates rho against (rhoformula) and dihedral invariance; throws
    // invalid_rho with the failing law in the message.
    ValuationSpec(Rational c, Series1 g, Series2 rho, int order);

    static ValuationSpec unchecked(Rational c, Series1 g, Series2 rho, int order);

    [[nodiscard]] const Rational &c() const noexcept
    {
        return m_c;
    }
    [[nodiscard]] const Series1 &g() const noexcept
    {
        return m_g;
    }
    [[nodiscard]] const Series2 &rho() const noexcept
    {
        return m_rho;
    }
    [[nodiscard]] int order() const noexcept
    {
        return m_order;
    }
    // Order up to which every evaluation is exact (one less than N).
    [[nodiscard]] int effective_order() const noexcept
    {
        return m_order - 1;
    }
    [[nodiscard]] bool is_simple() const noexcept
    {
        return sgn(m_c) == 0 && m_g.is_zero();
    }

private:
    ValuationSpec() = default;

    Rational m_c;
    Series1 m_g;
    Series2 m_rho;
    int m_order = 0;
};

// Reports why rho is not admissible, or nullopt.
std::optional<LawReport> rho_violation(const Series2 &rho);

// sum (x/4)^k/(2k)!, the g of f1 = (e^x + 1)/2.
Series1 cosh_series(int order);

// x^(delta/2) sinh(sqrt(x)/2) for odd delta >= -1.
Series1 odd_basis(int delta, int order);

struct TriangleData {
    Series2 f0;
    Series2 f1;
    Series2 f2;
    Series2 zT;
    int effective_order = 0;
};

TriangleData build_triangle_data(const ValuationSpec &spec);

// c exp(p.x x + p.y y).
Series2 z_point(const ValuationSpec &spec, Point p);
// Throws not_segment.
Series2 z_segment(const ValuationSpec &spec, const LatticePolygon &seg);
Series2 z_polygon(const ValuationSpec &spec, const LatticePolygon &p,
                  std::optional<std::uint64_t> seed = std::nullopt);

// Overloads reusing precomputed triangle data.
Series2 z_segment(const ValuationSpec &spec, const TriangleData &data, const LatticePolygon &seg);
Series2 z_polygon(const ValuationSpec &spec, const TriangleData &data, const LatticePolygon &p,
                  std::optional<std::uint64_t> seed = std::nullopt);

// Sum of exp(s x + t y) over the lattice points of mT.
Series2 g_m_direct(int m, int order);
// The same through divided differences of the exponential.
Series2 g_m_closed(int m, int order);

// g_(m-1) zT + e^(x+y) g_(m-2) zT(-x,-y). Throws not_simple_spec.
Series2 z_mT_closed(const ValuationSpec &spec, int m);

struct DilativeCase {
    int m = 0;
    LatticePolygon polygon;
    Comparison comparison;
};

struct DilativeReport {
    bool holds = true;
    int verified_order = 0;
    std::vector<DilativeCase> cases;
    // Index into cases of the first failure.
    std::optional<std::size_t> first_failure;
};

// Z(mP)(x, y) = m^(-delta) Z(P)(mx, my) for every m and P given.
DilativeReport check_dilative(const ValuationSpec &spec, int delta, std::span<const int> ms,
                              std::span<const LatticePolygon> polygons);

struct CalibrationCandidate {
    Rational kappa;
    DilativeReport report;
};

struct CalibrationReport {
    std::vector<CalibrationCandidate> candidates;
    // Set when exactly one candidate passes.
    std::optional<Rational> kappa;
};

// Tests spec (1, cosh_series, kappa) for kappa in {0, -1} on T (m = 2, 3) and
// the unit square (m = 2), verified up to `order`.
CalibrationReport calibrate_val0_report(int order);
// Same, but throws no_candidate_passes or both_pass.
Rational calibrate_val0(int order);

struct Val0Fit {
    // rho such that (1, cosh_series, rho) is 0-dilative, exact up to `order`.
    Series2 rho;
    // Whether the fitted rho is admissible and the resulting spec passes the
    // calibration polygons.
    bool admissible = false;
    bool dilative = false;
    DilativeReport report;
};

// Solves Z(2T)(u) = Z(T)(2u) for the rho part of the Val_0 generator.
// Each homogeneous part rho_d of degree d contributes a (d-2)-dilative
// piece, which gives rho_d directly from sharp of the defect.
// Throws no_representation if the defect has a degree-2 component.
Val0Fit solve_val0_rho(int order);

struct DilativeComponents {
    Rational alpha0;
    std::map<int, Rational> odd;
    std::map<int, Series2> even_simple;
    Rational kappa;
    // rho part of the Val_0 generator that was subtracted (kappa times 1 when
    // a constant was used).
    Series2 val0_rho;
    // Parts beyond delta_max, kept so that reassembly is exact.
    Series1 remainder_g;
    Series2 remainder_rho;
    int order = 0;
};

// Splits spec into dilative pieces using val0_rho as the rho part of the
// Val_0 generator.
DilativeComponents dilative_decompose(const ValuationSpec &spec, int delta_max, const Series2 &val0_rho);
ValuationSpec reassemble(const DilativeComponents &parts);

struct SurfaceReport {
    bool holds = true;
    Comparison comparison;
    Series2 polygon_value;
    Series2 edge_half_sum;
};

// Z(P) against half the sum of Z over the edges of P.
SurfaceReport surface_formula_check(const ValuationSpec &spec, const LatticePolygon &p);

// The g with g(x^2) e^(x/2) = f1. Throws law_violation.
Series1 extract_g(const Series2 &f1);

} // namespace latval

#endif
