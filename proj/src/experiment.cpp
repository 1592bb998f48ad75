#include "hutch/experiment.hpp"

#include <cctype>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace hutch {

namespace {

const Json* find(const Json& obj, const char* key) {
    if (!obj.is_object()) return nullptr;
    auto it = obj.find(key);
    return it == obj.end() || it->is_null() ? nullptr : &*it;
}

std::string sub(const std::string& path, const char* key) { return path + "." + key; }
std::string idx(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

Rational get_rational(const Json& obj, const char* key, const std::string& path, const Rational& fallback) {
    const Json* v = find(obj, key);
    return v ? rational_from_json(*v, sub(path, key)) : fallback;
}

std::uint64_t get_uint(const Json& obj, const char* key, const std::string& path, std::uint64_t fallback) {
    const Json* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_number_unsigned()) throw ParseError(sub(path, key) + ": expected a non-negative integer");
    return v->get<std::uint64_t>();
}

std::string get_string(const Json& obj, const char* key, const std::string& path, const std::string& fallback) {
    const Json* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_string()) throw ParseError(sub(path, key) + ": expected a string");
    return v->get<std::string>();
}

const Json& require(const Json& obj, const char* key, const std::string& path) {
    const Json* v = find(obj, key);
    if (!v) throw ParseError(sub(path, key) + ": required field missing");
    return *v;
}

std::vector<Rational> get_rationals(const Json& obj, const char* key, const std::string& path) {
    const Json& v = require(obj, key, path);
    const std::string p = sub(path, key);
    if (!v.is_array() || v.empty()) throw ParseError(p + ": expected a non-empty array of \"p/q\" strings");
    std::vector<Rational> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(rational_from_json(v[i], idx(p, i)));
    return out;
}

// Either an explicit array of points or {"stratified": n}.
std::vector<CirclePoint> get_points(const Json& obj, const char* key, const std::string& path) {
    const Json& v = require(obj, key, path);
    const std::string p = sub(path, key);
    if (v.is_object()) {
        const auto n = get_uint(v, "stratified", p, 0);
        if (n == 0) throw ParseError(p + ".stratified: expected a positive count");
        return stratified_points(n);
    }
    std::vector<CirclePoint> out;
    for (const auto& r : get_rationals(obj, key, path)) out.emplace_back(r);
    return out;
}

template <typename Fn>
auto checked(const std::string& path, Fn&& fn) {
    try {
        return fn();
    } catch (const std::invalid_argument& e) {
        throw ParseError(path + ": " + e.what());
    } catch (const std::out_of_range& e) {
        throw ParseError(path + ": " + e.what());
    }
}

SystemSource parse_system(const Json& j, const std::string& path) {
    SystemSource s;
    if (j.is_string()) {
        s.kind = j.get<std::string>();
    } else if (find(j, "file")) {
        s.kind = "file";
        s.path = get_string(j, "file", path, "");
    } else if (const Json* inl = find(j, "ifs")) {
        s.kind = "inline";
        s.inline_ifs = *inl;
    } else {
        s.kind = get_string(j, "builtin", path, "");
    }
    const Json empty = Json::object();
    const Json& o = j.is_object() ? j : empty;
    if (s.kind == "theorem1") {
        auto& d = s.theorem1.denjoy;
        d.alpha = get_rational(o, "alpha", path, d.alpha);
        d.lambda = get_rational(o, "lambda", path, d.lambda);
        d.mass = get_rational(o, "s", path, d.mass);
        d.stage = static_cast<unsigned>(get_uint(o, "stage", path, d.stage));
        d.x0 = get_rational(o, "x0", path, d.x0);
        d.generators = static_cast<unsigned>(get_uint(o, "generators", path, d.generators));
        s.theorem1.sigma = get_rational(o, "sigma", path, s.theorem1.sigma);
        const Json* gi = find(o, "gap_index");
        if (gi) {
            if (!gi->is_number_integer()) throw ParseError(sub(path, "gap_index") + ": expected an integer");
            s.theorem1.gap_index = gi->get<int>();
        }
        const auto dir = get_string(o, "direction", path, "forward");
        if (dir != "forward" && dir != "backward") {
            throw ParseError(sub(path, "direction") + ": expected \"forward\" or \"backward\"");
        }
        s.backward = dir == "backward";
    } else if (s.kind == "theorem2" || s.kind == "rotation") {
        s.alpha = get_rational(o, "alpha", path, s.alpha);
    } else if (s.kind != "identity" && s.kind != "file" && s.kind != "inline") {
        throw ParseError(path + ": unknown system \"" + s.kind + "\"");
    }
    return s;
}

Json system_to_json(const SystemSource& s) {
    if (s.kind == "file") return Json{{"file", s.path}};
    if (s.kind == "inline") return Json{{"ifs", s.inline_ifs}};
    Json out{{"builtin", s.kind}};
    if (s.kind == "theorem1") {
        const auto& d = s.theorem1.denjoy;
        out["direction"] = s.backward ? "backward" : "forward";
        out["alpha"] = rational_to_json(d.alpha);
        out["lambda"] = rational_to_json(d.lambda);
        out["s"] = rational_to_json(d.mass);
        out["stage"] = d.stage;
        out["x0"] = rational_to_json(d.x0);
        out["generators"] = d.generators;
        out["gap_index"] = s.theorem1.gap_index;
        out["sigma"] = rational_to_json(s.theorem1.sigma);
    } else if (s.kind == "theorem2" || s.kind == "rotation") {
        out["alpha"] = rational_to_json(s.alpha);
    }
    return out;
}

ProbeParams parse_probe_params(const Json& j, const std::string& type, const std::string& path) {
    if (type == "attractor") {
        AttractorSpec p;
        p.start = arcset_from_json(require(j, "start", path), sub(path, "start"));
        p.max_iter = get_uint(j, "max_iter", path, p.max_iter);
        p.tol = get_rational(j, "tol", path, p.tol);
        if (p.tol <= 0) throw ParseError(sub(path, "tol") + ": must be positive");
        if (p.max_iter < 1) throw ParseError(sub(path, "max_iter") + ": must be >= 1");
        return p;
    }
    if (type == "trajectory") {
        TrajectorySpec p;
        p.start = arcset_from_json(require(j, "start", path), sub(path, "start"));
        p.max_iter = get_uint(j, "max_iter", path, p.max_iter);
        return p;
    }
    if (type == "orbit_density") {
        OrbitSpec p;
        p.point = CirclePoint(rational_from_json(require(j, "point", path), sub(path, "point")));
        p.depth = get_uint(j, "depth", path, p.depth);
        p.epsilon = get_rational(j, "epsilon", path, p.epsilon);
        if (p.depth < 1) throw ParseError(sub(path, "depth") + ": must be >= 1");
        if (p.epsilon <= 0) throw ParseError(sub(path, "epsilon") + ": must be positive");
        return p;
    }
    if (type == "invariance") {
        InvarianceSpec p;
        p.set = arcset_from_json(require(j, "set", path), sub(path, "set"));
        p.tol = get_rational(j, "tol", path, p.tol);
        return p;
    }
    if (type == "df") {
        DFSpec p;
        p.x1 = CirclePoint(rational_from_json(require(j, "x1", path), sub(path, "x1")));
        p.x2 = CirclePoint(rational_from_json(require(j, "x2", path), sub(path, "x2")));
        p.max_iter = get_uint(j, "max_iter", path, p.max_iter);
        return p;
    }
    if (type == "equicontinuity") {
        EquicontinuitySpec p;
        p.points = get_points(j, "points", path);
        p.deltas = get_rationals(j, "deltas", path);
        p.max_iter = get_uint(j, "max_iter", path, p.max_iter);
        p.samples = get_uint(j, "samples", path, p.samples);
        p.random_samples = get_uint(j, "random_samples", path, p.random_samples);
        if (p.samples < 2) throw ParseError(sub(path, "samples") + ": must be >= 2");
        for (std::size_t i = 0; i < p.deltas.size(); ++i) {
            if (p.deltas[i] <= 0 || p.deltas[i] > Rational(1, 2) || (i > 0 && !(p.deltas[i] < p.deltas[i - 1]))) {
                throw ParseError(idx(sub(path, "deltas"), i) + ": deltas must be decreasing within (0, 1/2]");
            }
        }
        return p;
    }
    if (type == "covering") {
        CoveringSpec p;
        const Json& arcs = require(j, "arcs", path);
        if (!arcs.is_array() || arcs.empty()) throw ParseError(sub(path, "arcs") + ": expected a non-empty array");
        for (std::size_t i = 0; i < arcs.size(); ++i) {
            p.arcs.push_back(arc_from_json(arcs[i], idx(sub(path, "arcs"), i)));
            if (p.arcs.back().length <= 0) throw ParseError(idx(sub(path, "arcs"), i) + ": length must be positive");
        }
        p.max_iter = get_uint(j, "max_iter", path, p.max_iter);
        if (p.max_iter < 1) throw ParseError(sub(path, "max_iter") + ": must be >= 1");
        return p;
    }
    if (type == "sensitivity") {
        SensitivitySpec p;
        p.lengths = get_rationals(j, "lengths", path);
        p.centers = get_points(j, "centers", path);
        p.max_iter = get_uint(j, "max_iter", path, p.max_iter);
        p.samples = get_uint(j, "samples", path, p.samples);
        for (std::size_t i = 0; i < p.lengths.size(); ++i) {
            if (p.lengths[i] <= 0 || p.lengths[i] >= 1) {
                throw ParseError(idx(sub(path, "lengths"), i) + ": length must lie in (0, 1)");
            }
        }
        if (p.samples < 2) throw ParseError(sub(path, "samples") + ": must be >= 2");
        if (p.max_iter < 1) throw ParseError(sub(path, "max_iter") + ": must be >= 1");
        return p;
    }
    throw ParseError(sub(path, "type") + ": unknown probe type \"" + type + "\"");
}

template <typename T>
Json rationals_json(const std::vector<T>& xs) {
    Json out = Json::array();
    for (const auto& x : xs) {
        if constexpr (std::is_same_v<T, CirclePoint>) {
            out.push_back(rational_to_json(x.value()));
        } else {
            out.push_back(rational_to_json(x));
        }
    }
    return out;
}

struct ParamsToJson {
    Json operator()(const AttractorSpec& p) const {
        return {{"start", to_json(p.start)}, {"max_iter", p.max_iter}, {"tol", rational_to_json(p.tol)}};
    }
    Json operator()(const TrajectorySpec& p) const { return {{"start", to_json(p.start)}, {"max_iter", p.max_iter}}; }
    Json operator()(const OrbitSpec& p) const {
        return {{"point", rational_to_json(p.point.value())},
                {"depth", p.depth},
                {"epsilon", rational_to_json(p.epsilon)}};
    }
    Json operator()(const InvarianceSpec& p) const { return {{"set", to_json(p.set)}, {"tol", rational_to_json(p.tol)}}; }
    Json operator()(const DFSpec& p) const {
        return {{"x1", rational_to_json(p.x1.value())}, {"x2", rational_to_json(p.x2.value())}, {"max_iter", p.max_iter}};
    }
    Json operator()(const EquicontinuitySpec& p) const {
        return {{"points", rationals_json(p.points)},
                {"deltas", rationals_json(p.deltas)},
                {"max_iter", p.max_iter},
                {"samples", p.samples},
                {"random_samples", p.random_samples}};
    }
    Json operator()(const CoveringSpec& p) const {
        Json arcs = Json::array();
        for (const auto& a : p.arcs) arcs.push_back(to_json(a));
        return {{"arcs", arcs}, {"max_iter", p.max_iter}};
    }
    Json operator()(const SensitivitySpec& p) const {
        return {{"lengths", rationals_json(p.lengths)},
                {"centers", rationals_json(p.centers)},
                {"max_iter", p.max_iter},
                {"samples", p.samples}};
    }
};

void apply_overrides(ProbeParams& params, const ConfigOverrides& o) {
    std::visit(
        [&](auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (requires { p.max_iter; }) {
                if (o.max_iter) p.max_iter = *o.max_iter;
            }
            if constexpr (std::is_same_v<T, AttractorSpec> || std::is_same_v<T, InvarianceSpec>) {
                if (o.tol) p.tol = *o.tol;
            }
        },
        params);
}

}  // namespace

const char* probe_type(const ProbeParams& p) {
    static constexpr const char* names[] = {"attractor", "trajectory", "orbit_density", "invariance",
                                            "df",        "equicontinuity", "covering", "sensitivity"};
    return names[p.index()];
}

IFS resolve_system(const SystemSource& s) {
    if (s.kind == "theorem1") {
        auto sys = theorem1_system(s.theorem1);
        return s.backward ? sys.backward : sys.forward;
    }
    if (s.kind == "theorem2") return theorem2_ifs(s.alpha);
    if (s.kind == "identity") return IFS("identity", {PLHomeo::identity()});
    if (s.kind == "rotation") return IFS("rotation", {PLHomeo::rotation(s.alpha)});
    if (s.kind == "inline") return ifs_from_json(s.inline_ifs, "system.ifs");
    if (s.kind == "file") {
        std::ifstream in(s.path);
        if (!in) throw ParseError("system.file: cannot open '" + s.path + "'");
        Json j;
        try {
            j = Json::parse(in);
        } catch (const Json::parse_error& e) {
            throw ParseError("system.file: " + std::string(e.what()));
        }
        return ifs_from_json(j, "system.file");
    }
    throw ParseError("system: unknown source kind \"" + s.kind + "\"");
}

ExperimentConfig parse_config(const Json& j, const ConfigOverrides& overrides) {
    if (!j.is_object()) throw ParseError("config: expected a JSON object");
    ExperimentConfig c;
    c.system = parse_system(require(j, "system", "config"), "system");
    checked("system", [&] { return resolve_system(c.system); });

    if (const Json* p = find(j, "precision")) {
        const std::string path = "precision";
        if (const Json* d = find(*p, "denominator_limit")) {
            if (!d->is_number_unsigned() || d->get<std::uint64_t>() == 0) {
                throw ParseError("precision.denominator_limit: expected a positive integer");
            }
            c.precision.denominator_limit = Integer(std::to_string(d->get<std::uint64_t>()));
        }
        if (find(*p, "coarsen")) c.precision.coarsen = get_rational(*p, "coarsen", path, 0);
        c.precision.arc_cap = get_uint(*p, "arc_cap", path, c.precision.arc_cap);
        c.precision.slack = get_rational(*p, "slack", path, 0);
        if (const Json* cc = find(*p, "cover_coarsen")) {
            if (!cc->is_boolean()) throw ParseError("precision.cover_coarsen: expected a boolean");
            c.precision.cover_coarsen = cc->get<bool>();
        }
    }
    c.seed = get_uint(j, "seed", "config", 0);
    c.out = get_string(j, "out", "config", c.out);

    const Json* probes = find(j, "probes");
    if (probes) {
        if (!probes->is_array()) throw ParseError("probes: expected an array");
        std::set<std::string> names;
        for (std::size_t i = 0; i < probes->size(); ++i) {
            const std::string path = idx("probes", i);
            const Json& pj = (*probes)[i];
            const std::string type = get_string(pj, "type", path, "");
            if (type.empty()) throw ParseError(path + ".type: required field missing");
            ProbeSpec spec{get_string(pj, "name", path, type + "-" + std::to_string(i)),
                           parse_probe_params(pj, type, path)};
            for (char ch : spec.name) {
                if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_')) {
                    throw ParseError(path + ".name: only letters, digits, '-' and '_' are allowed");
                }
            }
            if (!names.insert(spec.name).second) throw ParseError(path + ".name: duplicate probe name");
            c.probes.push_back(std::move(spec));
        }
    }

    if (overrides.out) c.out = *overrides.out;
    if (overrides.seed) c.seed = *overrides.seed;
    if (overrides.denominator_limit) c.precision.denominator_limit = overrides.denominator_limit;
    if (overrides.coarsen) c.precision.coarsen = overrides.coarsen;
    for (auto& p : c.probes) apply_overrides(p.params, overrides);
    return c;
}

Json to_json(const ExperimentConfig& c) {
    Json precision{{"denominator_limit", c.precision.denominator_limit
                                             ? Json(std::stoull(c.precision.denominator_limit->get_str()))
                                             : Json(nullptr)},
                   {"coarsen", c.precision.coarsen ? rational_to_json(*c.precision.coarsen) : Json(nullptr)},
                   {"arc_cap", c.precision.arc_cap},
                   {"slack", rational_to_json(c.precision.slack)},
                   {"cover_coarsen", c.precision.cover_coarsen}};
    Json probes = Json::array();
    for (const auto& p : c.probes) {
        Json pj{{"name", p.name}, {"type", probe_type(p.params)}};
        const Json params = std::visit(ParamsToJson{}, p.params);
        for (const auto& [k, v] : params.items()) pj[k] = v;
        probes.push_back(std::move(pj));
    }
    return Json{{"system", system_to_json(c.system)},
                {"precision", precision},
                {"seed", c.seed},
                {"out", c.out},
                {"probes", probes}};
}

namespace {

std::string csv_rational(const Rational& r) { return to_decimal(r, 12) + "," + to_string(r); }

struct ProbeResult {
    Json report;
    std::vector<CsvFile> csv;
};

class ProbeRunner {
public:
    ProbeRunner(const IFS& system, const ProbeOptions& options, const std::string& name)
        : system_(system), options_(options), name_(name) {}

    ProbeResult operator()(const AttractorSpec& p) const {
        auto r = attractor_probe(system_, p.start, p.max_iter, p.tol, options_.iterate);
        std::ostringstream csv;
        csv << "n,gap_radius,gap_radius_exact,arc_count,coarsened\n";
        for (const auto& s : r.steps) {
            csv << s.n << "," << csv_rational(s.gap_radius) << "," << s.arc_count << "," << (s.coarsened ? 1 : 0)
                << "\n";
        }
        return {to_json(r), {{name_ + ".csv", csv.str()}}};
    }

    ProbeResult operator()(const TrajectorySpec& p) const {
        Json steps = Json::array();
        std::ostringstream csv;
        csv << "n,gap_radius,gap_radius_exact,arc_count,coarsened\n";
        auto emit = [&](std::size_t n, const Step& s) {
            const Rational gr = gap_radius(s.set);
            steps.push_back(Json{{"n", n},
                                 {"gap_radius", rational_to_json(gr)},
                                 {"arc_count", s.set.size()},
                                 {"coarsened", s.coarsened},
                                 {"set", to_json(s.set)}});
            csv << n << "," << csv_rational(gr) << "," << s.set.size() << "," << (s.coarsened ? 1 : 0) << "\n";
        };
        Step current{p.start, false};
        emit(0, current);
        std::string error;
        for (std::size_t n = 1; n <= p.max_iter; ++n) {
            try {
                current = advance(system_, current.set, options_.iterate);
            } catch (const ResourceError& e) {
                error = e.what();
                break;
            }
            emit(n, current);
        }
        Json report{{"steps", steps}};
        ProbeResult out{report, {{name_ + ".csv", csv.str()}}};
        if (!error.empty()) throw PartialResult{std::move(out), error};
        return out;
    }

    ProbeResult operator()(const OrbitSpec& p) const {
        return {to_json(orbit_density_probe(system_, p.point, p.depth, p.epsilon)), {}};
    }

    ProbeResult operator()(const InvarianceSpec& p) const { return {to_json(invariance_check(system_, p.set, p.tol)), {}}; }

    ProbeResult operator()(const DFSpec& p) const {
        Rational d = dF_estimate(system_, p.x1, p.x2, p.max_iter, options_.iterate);
        return {Json{{"x1", rational_to_json(p.x1.value())},
                     {"x2", rational_to_json(p.x2.value())},
                     {"truncation", p.max_iter},
                     {"estimate", rational_to_json(d)},
                     {"lower_bound_only", true}},
                {}};
    }

    ProbeResult operator()(const EquicontinuitySpec& p) const {
        ProbeOptions opts = options_;
        opts.random_samples = p.random_samples;
        Json reports = Json::array();
        std::ostringstream csv;
        csv << "base,base_exact,parameter,parameter_exact,estimate,estimate_exact,covering_time,N\n";
        Rational worst_at_smallest = 0;
        bool monotone = true;
        for (std::size_t i = 0; i < p.points.size(); ++i) {
            opts.seed = options_.seed + i;
            auto r = equicontinuity_probe(system_, p.points[i], p.deltas, p.max_iter, p.samples, opts);
            for (std::size_t k = 0; k < r.entries.size(); ++k) {
                const auto& e = r.entries[k];
                if (k > 0 && e.modulus > r.entries[k - 1].modulus) monotone = false;
                csv << csv_rational(p.points[i].value()) << "," << csv_rational(e.delta) << ","
                    << csv_rational(e.modulus) << ",," << p.max_iter << "\n";
            }
            worst_at_smallest = max(worst_at_smallest, r.entries.back().modulus);
            reports.push_back(to_json(r));
        }
        return {Json{{"monotone", monotone},
                     {"smallest_delta", rational_to_json(p.deltas.back())},
                     {"max_modulus_at_smallest_delta", rational_to_json(worst_at_smallest)},
                     {"coarsening", options_.iterate.coarsen.has_value()},
                     {"points", reports}},
                {{name_ + ".csv", csv.str()}}};
    }

    ProbeResult operator()(const CoveringSpec& p) const {
        Json arcs = Json::array();
        std::ostringstream csv;
        csv << "parameter,parameter_exact,length,length_exact,covering_time,N\n";
        std::string error;
        for (const auto& a : p.arcs) {
            Json entry{{"arc", to_json(a)}};
            std::optional<std::size_t> t;
            try {
                t = covering_time(system_, a, p.max_iter, options_);
                entry["covering_time"] = t ? Json(*t) : Json(nullptr);
            } catch (const ResourceError& e) {
                entry["covering_time"] = nullptr;
                entry["error"] = e.what();
                if (error.empty()) error = e.what();
            }
            arcs.push_back(std::move(entry));
            csv << csv_rational(a.start.value()) << "," << csv_rational(a.length) << ","
                << (t ? std::to_string(*t) : "") << "," << p.max_iter << "\n";
        }
        ProbeResult out{Json{{"budget", p.max_iter}, {"arcs", arcs}}, {{name_ + ".csv", csv.str()}}};
        if (!error.empty()) throw PartialResult{std::move(out), error};
        return out;
    }

    ProbeResult operator()(const SensitivitySpec& p) const {
        auto r = sensitivity_probe(system_, p.lengths, p.centers, p.max_iter, p.samples, options_);
        std::ostringstream csv;
        csv << "length,length_exact,parameter,parameter_exact,estimate,estimate_exact,covering_time,N\n";
        for (const auto& a : r.arcs) {
            csv << csv_rational(a.length) << "," << csv_rational(a.center.value()) << "," << csv_rational(a.diameter)
                << "," << (a.covering_time ? std::to_string(*a.covering_time) : "") << "," << p.max_iter << "\n";
        }
        Json j = to_json(r);
        j["coarsening"] = options_.iterate.coarsen.has_value();
        return {j, {{name_ + ".csv", csv.str()}}};
    }

    struct PartialResult {
        ProbeResult result;
        std::string error;
    };

private:
    const IFS& system_;
    const ProbeOptions& options_;
    const std::string& name_;
};

}  // namespace

ReportBundle run(const ExperimentConfig& config, unsigned threads) {
    const IFS system = resolve_system(config.system);
    ReportBundle out;
    Json echo = to_json(config);
    echo.erase("out");  // where the bundle lands does not change its content
    out.bundle = Json{{"tool", "hutch"}, {"version", kToolVersion}, {"config", std::move(echo)}};
    out.bundle["system"] = Json{{"label", system.label()}, {"generator_count", system.size()}};
    Json reports = Json::array();
    Json timings = Json::object();

    for (std::size_t i = 0; i < config.probes.size(); ++i) {
        const auto& spec = config.probes[i];
        ProbeOptions options;
        options.iterate.arc_cap = config.precision.arc_cap;
        options.iterate.coarsen = config.precision.coarsen;
        options.iterate.denominator_limit = config.precision.denominator_limit;
        options.cover.arc_cap = config.precision.arc_cap;
        if (config.precision.cover_coarsen) {
            options.cover.coarsen = config.precision.coarsen;
            options.cover.denominator_limit = config.precision.denominator_limit;
        }
        options.exactness_slack = config.precision.slack;
        options.threads = threads;
        options.seed = config.seed + 0x9e3779b97f4a7c15ULL * (i + 1);

        Json entry{{"name", spec.name}, {"type", probe_type(spec.params)}};
        const auto t0 = std::chrono::steady_clock::now();
        ProbeRunner runner(system, options, spec.name);
        try {
            auto result = std::visit(runner, spec.params);
            entry["status"] = "ok";
            entry["report"] = std::move(result.report);
            for (auto& f : result.csv) out.csv.push_back(std::move(f));
        } catch (ProbeRunner::PartialResult& partial) {
            entry["status"] = "partial";
            entry["error"] = partial.error;
            entry["report"] = std::move(partial.result.report);
            for (auto& f : partial.result.csv) out.csv.push_back(std::move(f));
            out.partial = true;
        } catch (const ResourceError& e) {
            entry["status"] = "partial";
            entry["error"] = e.what();
            entry["report"] = nullptr;
            out.partial = true;
        }
        timings[spec.name] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        reports.push_back(std::move(entry));
    }
    out.bundle["status"] = out.partial ? "partial" : "ok";
    out.bundle["reports"] = std::move(reports);
    out.timings = Json{{"tool_version", kToolVersion}, {"seconds", timings}};
    return out;
}

namespace {

void write_atomically(const std::filesystem::path& target, const std::string& content) {
    auto tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot write " + tmp.string());
        f << content;
    }
    std::filesystem::rename(tmp, target);
}

}  // namespace

void write_bundle(const ReportBundle& bundle, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    write_atomically(dir / "bundle.json", bundle.bundle.dump(2) + "\n");
    write_atomically(dir / "timings.json", bundle.timings.dump(2) + "\n");
    for (const auto& f : bundle.csv) write_atomically(dir / f.name, f.content);
}

Json describe(const IFS& system) {
    Json gens = Json::array();
    std::vector<PLHomeo> inverses;
    for (std::size_t i = 0; i < system.size(); ++i) {
        const auto& f = system[i];
        auto fixed = fixed_points(f);
        gens.push_back(Json{{"index", i + 1},
                            {"map", to_json(f)},
                            {"fixed_points", fixed ? to_json(*fixed) : Json(nullptr)}});
        inverses.push_back(invert(f));
    }
    Json pairs = Json::array();
    bool symmetric = true;
    for (std::size_t i = 0; i < system.size(); ++i) {
        bool found = false;
        for (std::size_t j = 0; j < system.size(); ++j) {
            if (same_map(system[j], inverses[i])) {
                found = true;
                if (i <= j) pairs.push_back(Json::array({i + 1, j + 1}));
                break;
            }
        }
        symmetric = symmetric && found;
    }
    return Json{{"label", system.label()},
                {"generator_count", system.size()},
                {"generators", gens},
                {"diagonal_containment", diagonal_containment_check(system).contained},
                {"inverse_diagonal_containment", diagonal_containment_check(inverse_system(system)).contained},
                {"symmetric", symmetric},
                {"inverse_pairs", pairs}};
}

unsigned threads_from_env() {
    const char* v = std::getenv("HUTCH_THREADS");
    if (!v) return 1;
    char* end = nullptr;
    const long n = std::strtol(v, &end, 10);
    if (end == v || *end != '\0' || n < 1) return 1;
    return static_cast<unsigned>(n);
}

}  // namespace hutch
