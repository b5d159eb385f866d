#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "bhset/construct.hpp"
#include "bhset/epsilon.hpp"
#include "bhset/verify.hpp"

namespace bhset {

using nlohmann::json;

// Integers are emitted as JSON numbers when they fit in 64 bits and as
// decimal strings otherwise; readers accept both.
json mpz_to_json(const mpz_class& z);
mpz_class mpz_from_json(const json& j);

// Exact dyadic endpoint: decimal rendering plus man * 2^exp2.
json dyadic_to_json(const BigFloat& x, size_t digits);

// Exact rational: decimal rendering plus num/den.
json mpq_to_json(const mpq_class& q, size_t digits);

json multiindex_to_json(const MultiIndex& x);
json point_to_json(const Point& p);
json epsilon_to_json(const EpsilonBound& eps, size_t digits);
json params_to_json(const ConstructionParams& params);
json lattice_set_points_json(const LatticeSet& set);
json certificate_to_json(const ConstructionCertificate& cert, size_t digits);
json report_to_json(const VerificationReport& rep, const std::vector<Point>& points);

// Point-set container, the `verify --file` format:
//   JSON: { "d": int, "sets": [[[int, ...], ...], ...] }
//   text: one point per line, coordinates whitespace-separated (one set).
struct PointSetFile {
    int d = 1;
    std::vector<std::vector<Point>> sets;
};

PointSetFile read_point_sets(const std::string& path);
PointSetFile parse_inline_points(const std::string& text);
json point_set_file_to_json(const PointSetFile& file);

}  // namespace bhset
