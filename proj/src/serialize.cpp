#include "hutch/serialize.hpp"

namespace hutch {

Rational rational_from_json(const Json& j, const std::string& field) {
    if (!j.is_string()) throw ParseError(field + ": expected a \"p/q\" string");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const ParseError& e) {
        throw ParseError(field + ": " + e.what());
    }
}

namespace {

const Json& member(const Json& j, const char* key, const std::string& field) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(field + ": missing \"" + key + "\"");
    return j.at(key);
}

template <typename Fn>
auto wrap_invalid(const std::string& field, Fn&& fn) {
    try {
        return fn();
    } catch (const std::invalid_argument& e) {
        throw ParseError(field + ": " + e.what());
    }
}

Json optional_size(const std::optional<std::size_t>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

Json to_json(const Arc& a) {
    return Json{{"start", rational_to_json(a.start.value())}, {"length", rational_to_json(a.length)}};
}

Arc arc_from_json(const Json& j, const std::string& field) {
    Rational start = rational_from_json(member(j, "start", field), field + ".start");
    Rational length = rational_from_json(member(j, "length", field), field + ".length");
    return wrap_invalid(field, [&] { return Arc(CirclePoint(start), length); });
}

Json to_json(const ArcSet& a) {
    Json out = Json::array();
    for (const auto& arc : a.arcs()) out.push_back(to_json(arc));
    return out;
}

ArcSet arcset_from_json(const Json& j, const std::string& field) {
    if (!j.is_array()) throw ParseError(field + ": expected an array of arcs");
    std::vector<Arc> arcs;
    for (std::size_t i = 0; i < j.size(); ++i) arcs.push_back(arc_from_json(j[i], field + "[" + std::to_string(i) + "]"));
    return wrap_invalid(field, [&] { return normalize(std::move(arcs)); });
}

Json to_json(const PLHomeo& f) {
    Json bps = Json::array();
    for (const auto& k : f.knots()) bps.push_back(Json::array({rational_to_json(k.x), rational_to_json(k.y)}));
    return Json{{"offset", rational_to_json(f.is_rotation() ? f.offset() : Rational(0))}, {"breakpoints", bps}};
}

PLHomeo homeo_from_json(const Json& j, const std::string& field) {
    Rational offset = j.is_object() && j.contains("offset") ? rational_from_json(j.at("offset"), field + ".offset")
                                                            : Rational(0);
    std::vector<std::pair<Rational, Rational>> pts;
    if (j.is_object() && j.contains("breakpoints")) {
        const Json& bps = j.at("breakpoints");
        if (!bps.is_array()) throw ParseError(field + ".breakpoints: expected an array");
        for (std::size_t i = 0; i < bps.size(); ++i) {
            const std::string f = field + ".breakpoints[" + std::to_string(i) + "]";
            if (!bps[i].is_array() || bps[i].size() != 2) throw ParseError(f + ": expected [\"x\", \"y\"]");
            pts.emplace_back(rational_from_json(bps[i][0], f + "[0]"), rational_from_json(bps[i][1], f + "[1]"));
        }
    } else if (!j.is_object()) {
        throw ParseError(field + ": expected a map object");
    }
    return wrap_invalid(field, [&] { return PLHomeo::from_breakpoints(std::move(pts), offset); });
}

Json to_json(const IFS& system) {
    Json gens = Json::array();
    for (const auto& f : system.generators()) gens.push_back(to_json(f));
    return Json{{"label", system.label()}, {"generators", gens}};
}

IFS ifs_from_json(const Json& j, const std::string& field) {
    const Json& gens = member(j, "generators", field);
    if (!gens.is_array()) throw ParseError(field + ".generators: expected an array");
    std::vector<PLHomeo> maps;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        maps.push_back(homeo_from_json(gens[i], field + ".generators[" + std::to_string(i) + "]"));
    }
    std::string label = j.contains("label") && j.at("label").is_string() ? j.at("label").get<std::string>() : "ifs";
    return wrap_invalid(field, [&] { return IFS(std::move(label), std::move(maps)); });
}

Json to_json(const ConvergenceReport& r) {
    Json steps = Json::array();
    for (const auto& s : r.steps) {
        steps.push_back(Json{{"n", s.n},
                             {"gap_radius", rational_to_json(s.gap_radius)},
                             {"arc_count", s.arc_count},
                             {"coarsened", s.coarsened}});
    }
    std::optional<std::size_t> at;
    if (r.converged) at = r.steps.back().n;
    return Json{{"verdict", r.converged ? "converged" : "not-converged-within-budget"},
                {"converged_at", optional_size(at)},
                {"budget", r.budget},
                {"tol", rational_to_json(r.tol)},
                {"coarsened", r.any_coarsened()},
                {"steps", steps}};
}

Json to_json(const MinimalityReport& r) {
    return Json{{"base", rational_to_json(r.base.value())},
                {"depth", r.depth},
                {"depth_reached", r.depth_reached},
                {"epsilon", rational_to_json(r.epsilon)},
                {"verdict", r.verdict},
                {"largest_gap", rational_to_json(r.largest_gap)},
                {"orbit_size", r.orbit_size}};
}

Json to_json(const InvarianceReport& r) {
    Json d = Json::array();
    for (const auto& x : r.distances) d.push_back(rational_to_json(x));
    return Json{{"invariant", r.invariant}, {"distances", d}};
}

Json to_json(const ModulusReport& r) {
    Json entries = Json::array();
    for (const auto& e : r.entries) {
        entries.push_back(Json{{"delta", rational_to_json(e.delta)}, {"modulus", rational_to_json(e.modulus)}});
    }
    return Json{{"base", rational_to_json(r.base.value())},
                {"truncation", r.truncation},
                {"samples", r.samples},
                {"entries", entries}};
}

Json to_json(const SensitivityReport& r) {
    Json lengths = Json::array();
    for (const auto& l : r.lengths) lengths.push_back(rational_to_json(l));
    Json arcs = Json::array();
    for (const auto& a : r.arcs) {
        arcs.push_back(Json{{"length", rational_to_json(a.length)},
                            {"center", rational_to_json(a.center.value())},
                            {"diameter", rational_to_json(a.diameter)},
                            {"pair_estimate", rational_to_json(a.pair_estimate)},
                            {"covering_time", optional_size(a.covering_time)},
                            {"covering_bound", a.covering_bound ? rational_to_json(*a.covering_bound) : Json(nullptr)}});
    }
    return Json{{"verdict", r.verdict()},
                {"sensitive", r.sensitive},
                {"lower_bound", rational_to_json(r.lower_bound)},
                {"truncation", r.truncation},
                {"lengths", lengths},
                {"arcs", arcs}};
}

}  // namespace hutch
