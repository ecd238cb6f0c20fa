#include "heis/json_io.hpp"

#include <string>
#include <vector>

namespace heis::io {

namespace {

// Fetches a field or dies with a structured error (mapped to a usage error
// by the CLI).
const json& need(const json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end()) {
        throw Error(std::string("missing JSON field '") + key + "'");
    }
    return *it;
}

std::string need_string(const json& j, const char* key) {
    const json& v = need(j, key);
    if (!v.is_string()) {
        throw Error(std::string("JSON field '") + key + "' must be a string");
    }
    return v.get<std::string>();
}

int need_int(const json& j, const char* key) {
    const json& v = need(j, key);
    if (!v.is_number_integer()) {
        throw Error(std::string("JSON field '") + key + "' must be an integer");
    }
    return v.get<int>();
}

template <typename A, typename Parse>
HeisenbergPoint<A> parse_point(const json& j, Parse parse) {
    const int n = need_int(j, "n");
    const json& jx = need(j, "x");
    const json& jy = need(j, "y");
    if (!jx.is_array() || !jy.is_array() ||
        jx.size() != static_cast<std::size_t>(n) ||
        jy.size() != static_cast<std::size_t>(n)) {
        throw Error("point arrays x, y must have length n");
    }
    std::vector<A> x, y;
    x.reserve(static_cast<std::size_t>(n));
    y.reserve(static_cast<std::size_t>(n));
    for (const json& c : jx) {
        x.push_back(parse(c));
    }
    for (const json& c : jy) {
        y.push_back(parse(c));
    }
    return HeisenbergPoint<A>(std::move(x), std::move(y), parse(need(j, "t")));
}

std::string scalar_string(const json& c) {
    if (!c.is_string()) {
        throw Error("point coordinates must be decimal strings");
    }
    return c.get<std::string>();
}

template <typename A, typename Fmt>
json format_point(const HeisenbergPoint<A>& g, json ring, Fmt fmt) {
    json jx = json::array();
    json jy = json::array();
    for (int i = 0; i < g.dim(); ++i) {
        jx.push_back(fmt(g.x(i)));
        jy.push_back(fmt(g.y(i)));
    }
    return json{{"n", g.dim()},
                {"ring", std::move(ring)},
                {"x", std::move(jx)},
                {"y", std::move(jy)},
                {"t", fmt(g.t())}};
}

} // namespace

json residue_to_json(const Residue& a) {
    return json{{"value", format_int(a.value())},
                {"modulus", format_int(a.modulus())}};
}

Residue residue_from_json(const json& j) {
    return Residue(parse_int(need_string(j, "value")),
                   parse_int(need_string(j, "modulus")));
}

json product_to_json(const ProductElement& x) {
    json out = json::array();
    for (const Residue& level : x.levels()) {
        out.push_back(residue_to_json(level));
    }
    return out;
}

ProductElement product_from_json(const json& j) {
    if (!j.is_array() || j.empty()) {
        throw Error("product element must be a nonempty JSON array");
    }
    std::vector<Residue> levels;
    levels.reserve(j.size());
    for (const json& entry : j) {
        levels.push_back(residue_from_json(entry));
    }
    const Int radix = levels.front().modulus();
    return ProductElement(radix, std::move(levels));
}

json point_to_json(const HeisenbergPoint<Int>& g) {
    return format_point(g, json{{"type", "integer"}},
                        [](const Int& c) { return format_int(c); });
}

json point_to_json(const HeisenbergPoint<Rat>& g) {
    return format_point(g, json{{"type", "rational"}},
                        [](const Rat& c) { return format_rat(c); });
}

json point_to_json(const HeisenbergPoint<Residue>& g) {
    return format_point(
        g,
        json{{"type", "residue"}, {"modulus", format_int(g.t().modulus())}},
        [](const Residue& c) { return format_int(c.value()); });
}

json point_to_json(const HeisenbergPoint<RAdicInt>& g) {
    return format_point(g,
                        json{{"type", "radic"},
                             {"r", format_int(g.t().radix())},
                             {"L", g.t().depth()}},
                        [](const RAdicInt& c) { return format_int(c.digit()); });
}

AnyPoint point_from_json(const json& j) {
    const json& ring = need(j, "ring");
    const std::string type = need_string(ring, "type");
    if (type == "integer") {
        return parse_point<Int>(
            j, [](const json& c) { return parse_int(scalar_string(c)); });
    }
    if (type == "rational") {
        return parse_point<Rat>(
            j, [](const json& c) { return parse_rat(scalar_string(c)); });
    }
    if (type == "residue") {
        const Int modulus = parse_int(need_string(ring, "modulus"));
        return parse_point<Residue>(j, [&](const json& c) {
            return Residue(parse_int(scalar_string(c)), modulus);
        });
    }
    if (type == "radic") {
        const Int r = parse_int(need_string(ring, "r"));
        const int depth = need_int(ring, "L");
        return parse_point<RAdicInt>(j, [&](const json& c) {
            return RAdicInt(r, depth, parse_int(scalar_string(c)));
        });
    }
    throw Error("unknown ring type '" + type + "'");
}

json point_to_json(const AnyPoint& g) {
    return std::visit([](const auto& p) { return point_to_json(p); }, g);
}

HeisenbergPoint<Int> int_point_from_json(const json& j) {
    AnyPoint p = point_from_json(j);
    if (auto* q = std::get_if<HeisenbergPoint<Int>>(&p)) {
        return std::move(*q);
    }
    throw Error("expected a point over the integers");
}

HeisenbergPoint<Rat> rat_point_from_json(const json& j) {
    AnyPoint p = point_from_json(j);
    if (auto* q = std::get_if<HeisenbergPoint<Rat>>(&p)) {
        return std::move(*q);
    }
    if (auto* q = std::get_if<HeisenbergPoint<Int>>(&p)) {
        // Integer points embed into the rationals.
        return map_point(*q, [](const Int& c) { return Rat(c); });
    }
    throw Error("expected a point over the rationals");
}

json tower_to_json(const profinite::TowerPoint& w) {
    json levels = json::array();
    for (const HeisenbergPoint<Residue>& level : w.levels()) {
        levels.push_back(point_to_json(level));
    }
    return json{{"r", format_int(w.radix())},
                {"L", w.depth()},
                {"levels", std::move(levels)}};
}

profinite::TowerPoint tower_from_json(const json& j) {
    const Int r = parse_int(need_string(j, "r"));
    const int depth = need_int(j, "L");
    const json& jlevels = need(j, "levels");
    if (!jlevels.is_array() || jlevels.size() != static_cast<std::size_t>(depth)) {
        throw Error("tower must carry exactly L levels");
    }
    std::vector<HeisenbergPoint<Residue>> levels;
    levels.reserve(jlevels.size());
    for (const json& entry : jlevels) {
        AnyPoint p = point_from_json(entry);
        auto* q = std::get_if<HeisenbergPoint<Residue>>(&p);
        if (q == nullptr) {
            throw Error("tower levels must be residue points");
        }
        levels.push_back(std::move(*q));
    }
    return profinite::TowerPoint(r, std::move(levels));
}

json adic_point_from(const profinite::AdicPoint& p) {
    return point_to_json(p);
}

profinite::AdicPoint adic_point_from_json(const json& j) {
    AnyPoint p = point_from_json(j);
    if (auto* q = std::get_if<HeisenbergPoint<RAdicInt>>(&p)) {
        return std::move(*q);
    }
    throw Error("expected a point with r-adic coordinates");
}

json solenoid_to_json(const solenoid::Point& p) {
    return json{{"r", format_int(p.radix())},
                {"L", p.depth()},
                {"n", p.dim()},
                {"lattice", "standard"},
                {"rep", point_to_json(p.rep())}};
}

json solenoid_to_json(const solenoid::DilatedPoint& p) {
    return json{{"r", format_int(p.radix())},
                {"L", p.depth()},
                {"n", p.dim()},
                {"lattice", "dilated"},
                {"rep", point_to_json(p.rep())}};
}

solenoid::Point solenoid_from_json(const json& j) {
    AnySolenoidPoint p = any_solenoid_from_json(j);
    if (auto* q = std::get_if<solenoid::Point>(&p)) {
        return std::move(*q);
    }
    throw Error("expected a standard-lattice solenoid point");
}

AnySolenoidPoint any_solenoid_from_json(const json& j) {
    const Int r = parse_int(need_string(j, "r"));
    const int depth = need_int(j, "L");
    const HeisenbergPoint<Rat> rep = rat_point_from_json(need(j, "rep"));
    std::string lattice = "standard";
    if (j.contains("lattice")) {
        lattice = need_string(j, "lattice");
    }
    if (lattice == "standard") {
        return solenoid::Point(r, depth, rep);
    }
    if (lattice == "dilated") {
        return solenoid::DilatedPoint(r, depth, rep);
    }
    throw Error("unknown lattice kind '" + lattice + "'");
}

} // namespace heis::io
