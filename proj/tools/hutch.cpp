#include "hutch/experiment.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace hutch;

namespace {

struct Flags {
    std::string config;
    std::string system;
    std::string out;
    std::string seed;
    std::string max_iter;
    std::string tol;
    std::string denominator_limit;
    std::string coarsen;
    std::string start;
    std::string probe;
};

Json read_json_file(const std::string& path, const std::string& field) {
    std::ifstream in(path);
    if (!in) throw ParseError(field + ": cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ParseError(field + ": " + e.what());
    }
}

std::uint64_t parse_count(const std::string& text, const std::string& flag) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        if (!text.empty() && text[0] != '-') v = std::stoull(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size()) throw ParseError(flag + ": expected a non-negative integer, got '" + text + "'");
    return v;
}

ConfigOverrides overrides_from(const Flags& f) {
    ConfigOverrides o;
    if (!f.out.empty()) o.out = f.out;
    if (!f.seed.empty()) o.seed = parse_count(f.seed, "--seed");
    if (!f.max_iter.empty()) o.max_iter = parse_count(f.max_iter, "--max-iter");
    if (!f.tol.empty()) o.tol = rational_from_json(f.tol, "--tol");
    if (!f.denominator_limit.empty()) {
        auto d = parse_count(f.denominator_limit, "--denominator-limit");
        if (d == 0) throw ParseError("--denominator-limit: must be positive");
        o.denominator_limit = Integer(std::to_string(d));
    }
    if (!f.coarsen.empty()) o.coarsen = rational_from_json(f.coarsen, "--coarsen");
    return o;
}

// --system accepts a built-in name or a path to an IFS JSON file.
Json system_json(const std::string& s) {
    if (s == "theorem1" || s == "theorem2" || s == "identity" || s == "rotation") return s;
    if (s == "theorem1-backward") return Json{{"builtin", "theorem1"}, {"direction", "backward"}};
    return Json{{"file", s}};
}

Json load_config_json(const Flags& f) {
    Json j = f.config.empty() ? Json::object() : read_json_file(f.config, "--config");
    if (!j.is_object()) throw ParseError("--config: expected a JSON object");
    if (!f.system.empty()) j["system"] = system_json(f.system);
    return j;
}

int finish(const ReportBundle& bundle, const std::string& out) {
    write_bundle(bundle, out);
    for (const auto& r : bundle.bundle["reports"]) {
        std::cout << r["name"].get<std::string>() << ": " << r["status"].get<std::string>();
        if (r.contains("error")) std::cout << " (" << r["error"].get<std::string>() << ")";
        const Json& rep = r["report"];
        if (rep.is_object() && rep.contains("verdict")) {
            const Json& v = rep["verdict"];
            std::cout << " - " << (v.is_string() ? v.get<std::string>() : "verdict " + v.dump());
        }
        std::cout << "\n";
    }
    std::cout << "wrote " << out << "\n";
    if (bundle.partial) {
        std::cerr << "error: resource cap reached; partial results written to " << out << "\n";
        return 3;
    }
    return 0;
}

int cmd_describe(const Flags& f) {
    Json j = load_config_json(f);
    Json sys = j.contains("system") ? j["system"] : Json("theorem2");
    Json cfg{{"system", sys}};
    IFS system = resolve_system(parse_config(cfg).system);
    Json summary = describe(system);
    std::cout << summary.dump(2) << "\n";
    if (!f.out.empty()) {
        std::filesystem::create_directories(f.out);
        std::ofstream(std::filesystem::path(f.out) / "describe.json") << summary.dump(2) << "\n";
    }
    return 0;
}

int cmd_run(const Flags& f) {
    ExperimentConfig c = parse_config(load_config_json(f), overrides_from(f));
    return finish(run(c, threads_from_env()), c.out);
}

int cmd_iterate(const Flags& f) {
    Json j = load_config_json(f);
    Json probe{{"name", "trajectory"}, {"type", "trajectory"}};
    probe["start"] = f.start.empty() ? Json::array({Json{{"start", "0/1"}, {"length", "0/1"}}})
                                     : [&] {
                                           try {
                                               return Json::parse(f.start);
                                           } catch (const Json::parse_error& e) {
                                               throw ParseError(std::string("--start: ") + e.what());
                                           }
                                       }();
    j["probes"] = Json::array({probe});
    ExperimentConfig c = parse_config(j, overrides_from(f));
    ReportBundle b = run(c, threads_from_env());
    for (const auto& csv : b.csv) std::cout << csv.content;
    write_bundle(b, c.out);
    if (b.partial) {
        std::cerr << "error: resource cap reached; partial trajectory written to " << c.out << "\n";
        return 3;
    }
    return 0;
}

int cmd_probe(const Flags& f) {
    Json j = load_config_json(f);
    Json probes = j.contains("probes") ? j["probes"] : Json::array();
    if (!probes.is_array()) throw ParseError("probes: expected an array");
    Json chosen;
    if (f.probe.empty()) {
        if (probes.size() != 1) throw ParseError("--probe: config has " + std::to_string(probes.size()) +
                                                 " probes; name one with --probe");
        chosen = probes[0];
    } else {
        for (std::size_t i = 0; i < probes.size(); ++i) {
            const Json& p = probes[i];
            const std::string name = p.contains("name") && p["name"].is_string()
                                         ? p["name"].get<std::string>()
                                         : (p.value("type", std::string()) + "-" + std::to_string(i));
            if (name == f.probe) {
                chosen = p;
                chosen["name"] = name;
            }
        }
        if (chosen.is_null()) throw ParseError("--probe: no probe named '" + f.probe + "'");
    }
    j["probes"] = Json::array({chosen});
    ExperimentConfig c = parse_config(j, overrides_from(f));
    return finish(run(c, threads_from_env()), c.out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Hutchinson-operator experiments for PL circle homeomorphisms"};
    app.require_subcommand(1);
    Flags f;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", f.config, "experiment config (JSON)");
        sub->add_option("--system", f.system, "built-in name (theorem1, theorem1-backward, theorem2, identity, rotation) or IFS file");
        sub->add_option("--out", f.out, "output directory");
        sub->add_option("--seed", f.seed, "random seed");
        sub->add_option("--max-iter", f.max_iter, "iteration budget for every probe");
        sub->add_option("--tol", f.tol, "convergence tolerance p/q");
        sub->add_option("--denominator-limit", f.denominator_limit, "round endpoints to denominators <= D");
        sub->add_option("--coarsen", f.coarsen, "fill gaps shorter than p/q");
    };
    auto* describe_cmd = app.add_subcommand("describe", "summarize a system");
    auto* run_cmd = app.add_subcommand("run", "run every probe in the config");
    auto* iterate_cmd = app.add_subcommand("iterate", "dump a Hutchinson trajectory");
    auto* probe_cmd = app.add_subcommand("probe", "run a single probe from the config");
    for (auto* s : {describe_cmd, run_cmd, iterate_cmd, probe_cmd}) common(s);
    iterate_cmd->add_option("--start", f.start, "starting ArcSet as JSON (default: the point 0)");
    probe_cmd->add_option("--probe", f.probe, "probe name");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*describe_cmd) return cmd_describe(f);
        if (*run_cmd) return cmd_run(f);
        if (*iterate_cmd) return cmd_iterate(f);
        return cmd_probe(f);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ResourceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
