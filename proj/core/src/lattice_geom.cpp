#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <utility>

#include <latval/error.hpp>
#include <latval/lattice_geom.hpp>

namespace latval
{

namespace
{

std::int64_t orient(Point o, Point a, Point b)
{
    return cross(a - o, b - o);
}

} // namespace

LatticePolygon hull_normalize(std::span<const Point> points)
{
    if (points.empty()) {
        throw Error(ErrorCode::empty_input, "cannot take the hull of no points");
    }
    std::vector<Point> pts(points.begin(), points.end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    LatticePolygon out;
    if (pts.size() == 1) {
        out.m_vertices = pts;
        out.m_dim = 0;
        return out;
    }

    // Andrew's monotone chain, dropping collinear points.
    std::vector<Point> hull(2 * pts.size());
    std::size_t k = 0;
    for (const auto &p : pts) {
        while (k >= 2 && orient(hull[k - 2], hull[k - 1], p) <= 0) {
            --k;
        }
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && orient(hull[k - 2], hull[k - 1], pts[i]) <= 0) {
            --k;
        }
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);

    if (hull.size() == 2) {
        out.m_vertices = {pts.front(), pts.back()};
        out.m_dim = 1;
        return out;
    }
    out.m_vertices = std::move(hull);
    out.m_dim = 2;
    return out;
}

LatticePolygon hull_normalize(std::initializer_list<Point> points)
{
    return hull_normalize(std::span<const Point>(points.begin(), points.size()));
}

std::int64_t area2(const LatticePolygon &p)
{
    if (p.dim() < 2) {
        throw Error(ErrorCode::not_full_dimensional, "area of a lower dimensional polygon");
    }
    const auto &v = p.vertices();
    std::int64_t s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += cross(v[i], v[(i + 1) % v.size()]);
    }
    return s;
}

std::int64_t lattice_length(Point a, Point b)
{
    return std::gcd(std::abs(b.x - a.x), std::abs(b.y - a.y));
}

bool contains(const LatticePolygon &p, Point q)
{
    const auto &v = p.vertices();
    switch (p.dim()) {
        case 0:
            return q == v[0];
        case 1: {
            if (orient(v[0], v[1], q) != 0) {
                return false;
            }
            return std::min(v[0].x, v[1].x) <= q.x && q.x <= std::max(v[0].x, v[1].x)
                   && std::min(v[0].y, v[1].y) <= q.y && q.y <= std::max(v[0].y, v[1].y);
        }
        default:
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (orient(v[i], v[(i + 1) % v.size()], q) < 0) {
                    return false;
                }
            }
            return true;
    }
}

bool on_boundary(const LatticePolygon &p, Point q)
{
    if (!contains(p, q)) {
        return false;
    }
    if (p.dim() < 2) {
        return true;
    }
    const auto &v = p.vertices();
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (orient(v[i], v[(i + 1) % v.size()], q) == 0) {
            return true;
        }
    }
    return false;
}

std::vector<Point> lattice_points(const LatticePolygon &p)
{
    const auto &v = p.vertices();
    std::vector<Point> out;
    if (p.dim() == 0) {
        return v;
    }
    if (p.dim() == 1) {
        const auto n = lattice_length(v[0], v[1]);
        const Point step{(v[1].x - v[0].x) / n, (v[1].y - v[0].y) / n};
        for (std::int64_t k = 0; k <= n; ++k) {
            out.push_back({v[0].x + k * step.x, v[0].y + k * step.y});
        }
        std::sort(out.begin(), out.end());
        return out;
    }
    auto [xmin, xmax] = std::minmax_element(v.begin(), v.end(), [](Point a, Point b) { return a.x < b.x; });
    auto [ymin, ymax] = std::minmax_element(v.begin(), v.end(), [](Point a, Point b) { return a.y < b.y; });
    for (auto x = xmin->x; x <= xmax->x; ++x) {
        for (auto y = ymin->y; y <= ymax->y; ++y) {
            if (contains(p, {x, y})) {
                out.push_back({x, y});
            }
        }
    }
    return out;
}

std::vector<Point> boundary_lattice_points(const LatticePolygon &p)
{
    const auto &v = p.vertices();
    if (p.dim() == 0) {
        return v;
    }
    std::vector<Point> out;
    const std::size_t edges = p.dim() == 1 ? 1 : v.size();
    for (std::size_t i = 0; i < edges; ++i) {
        const Point a = v[i];
        const Point b = v[(i + 1) % v.size()];
        const auto n = lattice_length(a, b);
        const Point step{(b.x - a.x) / n, (b.y - a.y) / n};
        const auto last = p.dim() == 1 ? n : n - 1;
        for (std::int64_t k = 0; k <= last; ++k) {
            out.push_back({a.x + k * step.x, a.y + k * step.y});
        }
    }
    return out;
}

LatticePolygon dilate(const LatticePolygon &p, std::int64_t m)
{
    std::vector<Point> pts;
    for (const auto &v : p.vertices()) {
        pts.push_back({m * v.x, m * v.y});
    }
    return hull_normalize(pts);
}

LatticePolygon translate(const LatticePolygon &p, Point t)
{
    std::vector<Point> pts;
    for (const auto &v : p.vertices()) {
        pts.push_back(v + t);
    }
    return hull_normalize(pts);
}

LatticePolygon standard_triangle()
{
    return hull_normalize({{1, 0}, {0, 1}, {0, 0}});
}

LatticePolygon unit_square()
{
    return hull_normalize({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

std::size_t Triangulation::interior_edge_count() const
{
    return static_cast<std::size_t>(std::count_if(edges.begin(), edges.end(), [](const auto &e) { return e.interior; }));
}

Triangulation unimodular_triangulation(const LatticePolygon &p, std::optional<std::uint64_t> seed)
{
    if (p.dim() < 2) {
        throw Error(ErrorCode::not_full_dimensional, "triangulation needs a two-dimensional polygon");
    }
    Triangulation tri;
    tri.points = lattice_points(p);

    // Insertion order: lexicographic with respect to two independent
    // functionals. Any such order makes each new point extreme among the
    // points inserted so far.
    Point f1{1, 0};
    Point f2{0, 1};
    if (seed) {
        std::mt19937_64 rng(*seed);
        std::uniform_int_distribution<std::int64_t> dist(-5, 5);
        do {
            f1 = {dist(rng), dist(rng)};
        } while (f1.x == 0 && f1.y == 0);
        f2 = {-f1.y, f1.x};
    }
    std::vector<std::size_t> order(tri.points.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    const auto key = [&](std::size_t i) {
        const Point q = tri.points[i];
        return std::pair{f1.x * q.x + f1.y * q.y, f2.x * q.x + f2.y * q.y};
    };
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });

    const auto pt = [&](std::size_t i) { return tri.points[i]; };

    // Leading collinear run.
    std::vector<std::size_t> chain{order[0]};
    std::size_t next = 1;
    while (next < order.size()
           && (chain.size() < 2 || orient(pt(chain[0]), pt(chain[1]), pt(order[next])) == 0)) {
        chain.push_back(order[next++]);
    }
    const std::size_t apex = order[next++];
    for (std::size_t j = 0; j + 1 < chain.size(); ++j) {
        tri.triangles.push_back({chain[j], chain[j + 1], apex});
    }
    std::vector<std::size_t> hull;
    if (orient(pt(chain.front()), pt(chain.back()), pt(apex)) > 0) {
        hull = chain;
    } else {
        hull.assign(chain.rbegin(), chain.rend());
    }
    hull.push_back(apex);

    for (; next < order.size(); ++next) {
        const std::size_t q = order[next];
        const std::size_t n = hull.size();
        const auto visible = [&](std::size_t i) {
            return orient(pt(hull[i % n]), pt(hull[(i + 1) % n]), pt(q)) < 0;
        };
        std::size_t start = 0;
        while (!(visible(start) && !visible(start + n - 1))) {
            ++start;
        }
        std::size_t end = start;
        while (visible(end + 1)) {
            ++end;
        }
        for (std::size_t i = start; i <= end; ++i) {
            tri.triangles.push_back({hull[i % n], hull[(i + 1) % n], q});
        }
        // Drop hull[start+1 .. end] and put q after hull[start].
        std::vector<std::size_t> next_hull;
        next_hull.reserve(n + 1);
        for (std::size_t i = end + 1; i <= start + n; ++i) {
            next_hull.push_back(hull[i % n]);
        }
        next_hull.push_back(q);
        hull = std::move(next_hull);
    }

    std::map<std::pair<std::size_t, std::size_t>, int> edge_count;
    for (const auto &t : tri.triangles) {
        for (int k = 0; k < 3; ++k) {
            auto a = t[static_cast<std::size_t>(k)];
            auto b = t[static_cast<std::size_t>((k + 1) % 3)];
            if (a > b) {
                std::swap(a, b);
            }
            ++edge_count[{a, b}];
        }
    }
    for (const auto &[e, cnt] : edge_count) {
        tri.edges.push_back({e.first, e.second, cnt == 2});
    }
    for (std::size_t i = 0; i < tri.points.size(); ++i) {
        if (!on_boundary(p, tri.points[i])) {
            tri.interior_vertices.push_back(i);
        }
    }
    return tri;
}

std::vector<SplitPair> split_pairs(const LatticePolygon &p, std::size_t count)
{
    std::vector<SplitPair> out;
    if (p.dim() == 2) {
        const auto b = boundary_lattice_points(p);
        const auto &v = p.vertices();
        const auto n = b.size();
        // The chord enters the interior iff its midpoint does; test with
        // doubled coordinates to stay integral.
        const auto interior_midpoint = [&](Point a, Point c) {
            const Point m2 = a + c;
            for (std::size_t k = 0; k < v.size(); ++k) {
                const Point u = v[k];
                const Point w = v[(k + 1) % v.size()];
                if (cross(w - u, m2 - Point{2 * u.x, 2 * u.y}) <= 0) {
                    return false;
                }
            }
            return true;
        };
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (!interior_midpoint(b[i], b[j])) {
                    continue;
                }
                std::vector<Point> side1(b.begin() + static_cast<std::ptrdiff_t>(i),
                                         b.begin() + static_cast<std::ptrdiff_t>(j) + 1);
                std::vector<Point> side2(b.begin() + static_cast<std::ptrdiff_t>(j), b.end());
                side2.insert(side2.end(), b.begin(), b.begin() + static_cast<std::ptrdiff_t>(i) + 1);
                out.push_back({hull_normalize(side1), hull_normalize(side2), hull_normalize({b[i], b[j]})});
                if (count != 0 && out.size() == count) {
                    return out;
                }
            }
        }
    }
    if (out.empty()) {
        throw Error(ErrorCode::no_valid_chord, "no chord between boundary lattice points crosses the interior");
    }
    return out;
}

} // namespace latval
