#ifndef LATVAL_IO_HPP
#define LATVAL_IO_HPP

#include <filesystem>
#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include <latval/group_action.hpp>
#include <latval/laws.hpp>
#include <latval/lattice_geom.hpp>
#include <latval/series.hpp>
#include <latval/valuation.hpp>
#include <latval/vspace.hpp>

namespace latval::io
{

// Insertion-ordered so that equal values always serialize to equal bytes.
using Json = nlohmann::ordered_json;

// Parsing functions throw Error(malformed_input) with the offending path.

Json to_json(const Series2 &f);
Json to_json(const Series1 &g);
Series2 series2_from_json(const Json &j);
Series1 series1_from_json(const Json &j);
// Dispatches on "vars".
std::variant<Series1, Series2> series_from_json(const Json &j);

// {"vertices": [[x, y], ...]}; the hull of the listed points.
Json to_json(const LatticePolygon &p);
LatticePolygon polygon_from_json(const Json &j);

// {"m": [[a, b], [c, d]], "v": [alpha, beta]}.
Json to_json(const AffineUnimodular &g);
AffineUnimodular affine_from_json(const Json &j);

// {"c": "1", "g": {...}, "rho": {...}, "order": N}. "order" may be omitted,
// in which case default_order is used. g must be known to order N/2 and rho
// to order N. The spec is validated.
Json to_json(const ValuationSpec &spec);
ValuationSpec spec_from_json(const Json &j, int default_order);

Json to_json(const TriangleData &d);
Json to_json(const Mismatch &m);
Json to_json(const Comparison &c);
Json to_json(const LawReport &r);
Json to_json(const DilativeReport &r);
Json to_json(const DilativeComponents &parts);
Json to_json(const CalibrationReport &r);
Json to_json(const SurfaceReport &r);
Json to_json(const VdBasis &b);
Json to_json(const DimRow &row);
Json to_json(const EquivalenceReport &r);

Json parse_text(const std::string &text);
Json read_file(const std::filesystem::path &path);
// Two-space indented JSON followed by a newline.
std::string dump(const Json &j);
void write_file(const std::filesystem::path &path, const Json &j);

} // namespace latval::io

#endif
