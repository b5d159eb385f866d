#include "bhset/json_io.hpp"

#include <fstream>
#include <sstream>

#include "bhset/error.hpp"

namespace bhset {

json mpz_to_json(const mpz_class& z) {
    if (z.fits_slong_p()) return json(static_cast<std::int64_t>(z.get_si()));
    return json(z.get_str());
}

mpz_class mpz_from_json(const json& j) {
    if (j.is_number_integer()) return mpz_class(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_string()) return mpz_class(j.get<std::string>(), 10);
    throw Error::validation("expected integer or integer string in JSON, got " + j.dump());
}

json dyadic_to_json(const BigFloat& x, size_t digits) {
    auto [man, exp2] = x.to_man_exp2();
    return json{{"dec", x.to_decimal(digits)}, {"man", mpz_to_json(man)}, {"exp2", exp2}};
}

json mpq_to_json(const mpq_class& q, size_t digits) {
    BigFloat approx = BigFloat::from_q(q, 192, MPFR_RNDN);
    return json{{"dec", approx.to_decimal(digits)},
                {"num", mpz_to_json(q.get_num())},
                {"den", mpz_to_json(q.get_den())}};
}

json multiindex_to_json(const MultiIndex& x) {
    return json(x.coords);
}

json point_to_json(const Point& p) {
    json arr = json::array();
    for (const mpz_class& c : p) arr.push_back(mpz_to_json(c));
    return arr;
}

json epsilon_to_json(const EpsilonBound& eps, size_t digits) {
    return json{{"lo", dyadic_to_json(eps.lo, digits)},
                {"hi", dyadic_to_json(eps.hi, digits)},
                {"argmin", eps.argmin.coords},
                {"argmin_unique", eps.argmin_unique},
                {"h", eps.h},
                {"n", eps.n},
                {"precision_bits", static_cast<long>(eps.precision_bits_used)}};
}

json params_to_json(const ConstructionParams& params) {
    return json{{"h", params.h},
                {"m", mpz_to_json(params.m)},
                {"q", mpz_to_json(params.q)},
                {"positivity_mode", params.positivity_mode},
                {"q_certified", params.q_certified}};
}

json lattice_set_points_json(const LatticeSet& set) {
    json arr = json::array();
    for (const auto& p : set.points) arr.push_back(point_to_json(p));
    return arr;
}

json certificate_to_json(const ConstructionCertificate& cert, size_t digits) {
    json j{{"params", params_to_json(cert.params)},
           {"eps", epsilon_to_json(cert.eps, digits)},
           {"separation_lower_bound", mpq_to_json(cert.separation_lower_bound, digits)},
           {"certified", cert.certified}};
    if (!cert.note.empty()) j["note"] = cert.note;
    return j;
}

json report_to_json(const VerificationReport& rep, const std::vector<Point>& points) {
    json collisions = json::array();
    for (const Collision& c : rep.collisions) {
        json multisets = json::array();
        json multiindices = json::array();
        for (const MultiIndex& x : c.multiindices) {
            multiindices.push_back(multiindex_to_json(x));
            // Expand the multi-index into the multiset of points it selects.
            json pts = json::array();
            for (size_t i = 0; i < points.size(); ++i) {
                for (int k = 0; k < x.coords[i]; ++k) pts.push_back(point_to_json(points[i]));
            }
            multisets.push_back(pts);
        }
        collisions.push_back(json{{"sum", point_to_json(c.sum)},
                                  {"multisets", multisets},
                                  {"multiindices", multiindices}});
    }
    return json{{"h", rep.h},
                {"set_size", rep.set_size},
                {"sumset_size", rep.sumset_size},
                {"expected_max", mpz_to_json(rep.expected_max)},
                {"is_bh", rep.is_bh},
                {"max_representation_count", rep.max_representation_count},
                {"collisions", collisions}};
}

namespace {

Point parse_point_fields(const std::vector<std::string>& fields) {
    Point p;
    p.reserve(fields.size());
    for (const std::string& f : fields) {
        try {
            p.emplace_back(f, 10);
        } catch (const std::invalid_argument&) {
            throw Error::validation("invalid integer coordinate '" + f + "'");
        }
    }
    return p;
}

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

PointSetFile from_json_doc(const json& doc) {
    PointSetFile file;
    if (!doc.is_object() || !doc.contains("sets")) {
        throw Error::validation("point-set JSON must be an object with a 'sets' array");
    }
    for (const json& jset : doc.at("sets")) {
        std::vector<Point> set;
        for (const json& jpoint : jset) {
            Point p;
            if (jpoint.is_array()) {
                for (const json& c : jpoint) p.push_back(mpz_from_json(c));
            } else {
                p.push_back(mpz_from_json(jpoint));  // scalar shorthand for d = 1
            }
            set.push_back(std::move(p));
        }
        if (set.empty()) throw Error::validation("empty point set in file");
        file.sets.push_back(std::move(set));
    }
    if (file.sets.empty()) throw Error::validation("no point sets in file");
    file.d = doc.contains("d") ? doc.at("d").get<int>() : static_cast<int>(file.sets[0][0].size());
    for (const auto& set : file.sets) {
        for (const auto& p : set) {
            if (static_cast<int>(p.size()) != file.d) {
                throw Error::validation("point dimension mismatch in file");
            }
        }
    }
    return file;
}

}  // namespace

PointSetFile read_point_sets(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error::validation("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    std::string content = buf.str();

    // JSON if it looks like JSON; otherwise one point per line.
    size_t first = content.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (content[first] == '{' || content[first] == '[')) {
        json doc = json::parse(content);
        return from_json_doc(doc);
    }

    PointSetFile file;
    std::vector<Point> set;
    std::istringstream lines(content);
    std::string line;
    while (std::getline(lines, line)) {
        auto fields = split_ws(line);
        if (fields.empty()) continue;
        set.push_back(parse_point_fields(fields));
    }
    if (set.empty()) throw Error::validation("no points in '" + path + "'");
    file.d = static_cast<int>(set[0].size());
    for (const auto& p : set) {
        if (static_cast<int>(p.size()) != file.d) {
            throw Error::validation("point dimension mismatch in '" + path + "'");
        }
    }
    file.sets.push_back(std::move(set));
    return file;
}

PointSetFile parse_inline_points(const std::string& text) {
    // Whitespace separates points; commas separate coordinates.
    PointSetFile file;
    std::vector<Point> set;
    for (const std::string& tok : split_ws(text)) {
        std::vector<std::string> coords;
        size_t start = 0;
        for (;;) {
            size_t comma = tok.find(',', start);
            coords.push_back(tok.substr(start, comma == std::string::npos ? std::string::npos
                                                                          : comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        set.push_back(parse_point_fields(coords));
    }
    if (set.empty()) throw Error::validation("no points given");
    file.d = static_cast<int>(set[0].size());
    for (const auto& p : set) {
        if (static_cast<int>(p.size()) != file.d) {
            throw Error::validation("inconsistent point dimensions in inline points");
        }
    }
    file.sets.push_back(std::move(set));
    return file;
}

json point_set_file_to_json(const PointSetFile& file) {
    json sets = json::array();
    for (const auto& set : file.sets) {
        json jset = json::array();
        for (const auto& p : set) jset.push_back(point_to_json(p));
        sets.push_back(jset);
    }
    return json{{"d", file.d}, {"sets", sets}};
}

}  // namespace bhset
