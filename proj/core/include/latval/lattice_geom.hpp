#ifndef LATVAL_LATTICE_GEOM_HPP
#define LATVAL_LATTICE_GEOM_HPP

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace latval
{

struct Point {
    std::int64_t x = 0;
    std::int64_t y = 0;

    friend constexpr auto operator<=>(const Point &, const Point &) = default;
    friend constexpr Point operator+(Point a, Point b)
    {
        return {a.x + b.x, a.y + b.y};
    }
    friend constexpr Point operator-(Point a, Point b)
    {
        return {a.x - b.x, a.y - b.y};
    }
};

constexpr std::int64_t cross(Point a, Point b)
{
    return a.x * b.y - a.y * b.x;
}

// Convex hull of finitely many lattice points in canonical form: vertices in
// strictly convex position, counterclockwise, lexicographically smallest
// first. A segment keeps its two endpoints (smaller first), a point one.
class LatticePolygon
{
public:
    LatticePolygon() = default;

    [[nodiscard]] const std::vector<Point> &vertices() const noexcept
    {
        return m_vertices;
    }
    [[nodiscard]] int dim() const noexcept
    {
        return m_dim;
    }

    friend bool operator==(const LatticePolygon &, const LatticePolygon &) = default;

private:
    friend LatticePolygon hull_normalize(std::span<const Point> points);

    std::vector<Point> m_vertices;
    int m_dim = 0;
};

// Throws empty_input for an empty list.
LatticePolygon hull_normalize(std::span<const Point> points);
LatticePolygon hull_normalize(std::initializer_list<Point> points);

// Twice the Euclidean area. Throws not_full_dimensional below dimension 2.
std::int64_t area2(const LatticePolygon &p);

// All lattice points of P, sorted lexicographically.
std::vector<Point> lattice_points(const LatticePolygon &p);

// Lattice points on the boundary, counterclockwise starting at the first vertex.
std::vector<Point> boundary_lattice_points(const LatticePolygon &p);

bool contains(const LatticePolygon &p, Point q);
bool on_boundary(const LatticePolygon &p, Point q);

// Number of lattice steps along a lattice segment; gcd of the coordinate
// differences.
std::int64_t lattice_length(Point a, Point b);

LatticePolygon dilate(const LatticePolygon &p, std::int64_t m);
LatticePolygon translate(const LatticePolygon &p, Point v);

LatticePolygon standard_triangle();  // T = [e1, e2, o]
LatticePolygon unit_square();

struct TriangulationEdge {
    std::size_t a = 0;
    std::size_t b = 0;
    bool interior = false;
};

// A unimodular triangulation of a lattice polygon using every lattice point.
struct Triangulation {
    std::vector<Point> points;
    std::vector<std::array<std::size_t, 3>> triangles;
    std::vector<TriangulationEdge> edges;
    std::vector<std::size_t> interior_vertices;

    [[nodiscard]] std::size_t interior_edge_count() const;
};

// Placing triangulation: points are inserted in lexicographic order and each
// new point is joined to the hull edges it sees. A seed selects a different
// (pseudo-random) pair of ordering functionals; the outcome is still a
// triangulation with all lattice points as vertices.
// Throws not_full_dimensional.
Triangulation unimodular_triangulation(const LatticePolygon &p, std::optional<std::uint64_t> seed = std::nullopt);

struct SplitPair {
    LatticePolygon first;
    LatticePolygon second;
    LatticePolygon chord;
};

// Splits of P along chords joining two boundary lattice points that do not lie
// on a common edge. count == 0 returns all of them. Throws no_valid_chord.
std::vector<SplitPair> split_pairs(const LatticePolygon &p, std::size_t count = 0);

} // namespace latval

#endif
