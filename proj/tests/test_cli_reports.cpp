#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace hutch;

namespace {
Rational q(long p, long d) { return ratio(p, d); }

std::string parse_error_of(const Json& j, const ConfigOverrides& o = {}) {
    try {
        parse_config(j, o);
    } catch (const ParseError& e) {
        return e.what();
    }
    return "";
}

Json small_config() {
    return Json::parse(R"({
      "system": "theorem2",
      "seed": 5,
      "probes": [
        {"name": "attractor", "type": "attractor", "start": [{"start": "1/3", "length": "0/1"}], "tol": "1/256"},
        {"name": "equi", "type": "equicontinuity", "points": {"stratified": 2}, "deltas": ["1/8", "1/32"],
         "max_iter": 4, "samples": 2, "random_samples": 2},
        {"name": "sens", "type": "sensitivity", "lengths": ["1/2"], "centers": ["1/4"], "max_iter": 6},
        {"name": "cover", "type": "covering", "arcs": [{"start": "0/1", "length": "1/16"}], "max_iter": 32},
        {"name": "df", "type": "df", "x1": "0/1", "x2": "1/1024", "max_iter": 4},
        {"name": "orbit", "type": "orbit_density", "point": "1/3"},
        {"name": "inv", "type": "invariance", "set": [{"start": "0/1", "length": "1/1"}]},
        {"name": "traj", "type": "trajectory", "start": [{"start": "0/1", "length": "0/1"}], "max_iter": 3}
      ]
    })");
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(HUTCH_CLI) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::filesystem::path temp_dir(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("hutch-test-" + name);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}
}  // namespace

TEST_CASE("parse errors name the field") {
    Json bad = small_config();
    bad["probes"][0]["start"][0]["start"] = "0.3";
    CHECK(parse_error_of(bad).find("probes[0].start[0].start") != std::string::npos);
    CHECK(parse_error_of(bad).find("0.3") != std::string::npos);
    bad = small_config();
    bad["probes"][1]["deltas"] = Json::array({"1/32", "1/8"});
    CHECK(parse_error_of(bad).find("probes[1].deltas[1]") != std::string::npos);
    bad = small_config();
    bad["probes"][2]["type"] = "nonsense";
    CHECK(parse_error_of(bad).find("probes[2].type") != std::string::npos);
    CHECK(parse_error_of(Json::parse(R"({"system": "nope"})")).find("system") == 0);
    CHECK(parse_error_of(Json::parse(R"({"probes": []})")).find("config.system") == 0);
    CHECK(parse_error_of(Json::parse(R"({"system": {"builtin": "theorem1", "alpha": "1/3"}})")).find("system") == 0);
    CHECK(parse_error_of(Json::parse(R"({"system": {"builtin": "theorem1", "stage": "8"}})")).find("system.stage") == 0);
    CHECK(parse_error_of(Json::parse(R"({"system": {"file": "/nonexistent.json"}})")).find("system.file") == 0);
    CHECK(parse_error_of(Json::parse(R"({"system": {"ifs": {"generators": [{"breakpoints": [["0/1","1/2"],["1/2","1/4"]]}]}}})"))
              .find("system.ifs.generators[0]") == 0);
    bad = small_config();
    bad["probes"][1]["name"] = "attractor";
    CHECK(parse_error_of(bad).find("probes[1].name") == 0);
}

TEST_CASE("config echo is canonical and reparses to itself") {
    auto c = parse_config(small_config());
    Json echo = to_json(c);
    CHECK(to_json(parse_config(echo)).dump() == echo.dump());
    CHECK(echo["seed"] == 5);
    CHECK(echo["probes"][0]["max_iter"] == 64);
    CHECK(echo["probes"][1]["points"] == Json::array({"1/4", "3/4"}));
    Json t1 = Json::parse(R"({"system": {"builtin": "theorem1", "direction": "backward"}})");
    Json e1 = to_json(parse_config(t1));
    CHECK(e1["system"]["alpha"] == "34/55");
    CHECK(e1["system"]["direction"] == "backward");
    CHECK(to_json(parse_config(e1)).dump() == e1.dump());
}

TEST_CASE("overrides take precedence") {
    ConfigOverrides o;
    o.seed = 99;
    o.max_iter = 7;
    o.tol = q(1, 8);
    o.coarsen = q(1, 1024);
    o.denominator_limit = Integer(4096);
    o.out = "elsewhere";
    auto c = parse_config(small_config(), o);
    CHECK(c.seed == 99);
    CHECK(c.out == "elsewhere");
    CHECK(std::get<AttractorSpec>(c.probes[0].params).max_iter == 7);
    CHECK(std::get<AttractorSpec>(c.probes[0].params).tol == q(1, 8));
    CHECK(std::get<CoveringSpec>(c.probes[3].params).max_iter == 7);
    CHECK(*c.precision.coarsen == q(1, 1024));
    CHECK(*c.precision.denominator_limit == 4096);
}

TEST_CASE("run produces a deterministic bundle with consistent CSV") {
    auto c = parse_config(small_config());
    auto a = run(c);
    auto b = run(c, 4);
    CHECK(a.bundle.dump() == b.bundle.dump());
    CHECK_FALSE(a.partial);
    CHECK(a.bundle["status"] == "ok");
    Json echo = to_json(c);
    echo.erase("out");
    CHECK(a.bundle["config"].dump() == echo.dump());
    const Json& reports = a.bundle["reports"];
    REQUIRE(reports.size() == c.probes.size());
    for (std::size_t i = 0; i < reports.size(); ++i) {
        CHECK(reports[i]["name"] == c.probes[i].name);
        CHECK(reports[i]["status"] == "ok");
    }
    CHECK(reports[0]["report"]["verdict"] == "converged");
    CHECK(reports[0]["report"]["converged_at"] == 9);

    // every decimal in the attractor CSV is the 12-digit rendering of its exact sibling
    const auto& csv = a.csv.front();
    CHECK(csv.name == "attractor.csv");
    std::istringstream lines(csv.content);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "n,gap_radius,gap_radius_exact,arc_count,coarsened");
    std::size_t row = 0;
    while (std::getline(lines, line)) {
        std::vector<std::string> cells;
        std::stringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
        REQUIRE(cells.size() == 5);
        const Rational exact = parse_rational(cells[2]);
        CHECK(cells[1] == to_decimal(exact, 12));
        CHECK(reports[0]["report"]["steps"][row]["gap_radius"] == cells[2]);
        ++row;
    }
    CHECK(row == reports[0]["report"]["steps"].size());
}

TEST_CASE("resource caps mark the bundle partial") {
    Json j = Json::parse(R"({"system": "theorem2", "precision": {"arc_cap": 64},
      "probes": [{"name": "traj", "type": "trajectory", "start": [{"start": "1/3", "length": "0/1"}], "max_iter": 12},
                 {"name": "inv", "type": "invariance", "set": [{"start": "0/1", "length": "1/1"}]}]})");
    auto b = run(parse_config(j));
    CHECK(b.partial);
    CHECK(b.bundle["status"] == "partial");
    CHECK(b.bundle["reports"][0]["status"] == "partial");
    CHECK(b.bundle["reports"][0]["report"]["steps"].size() >= 2);
    CHECK(b.bundle["reports"][1]["status"] == "ok");
}

TEST_CASE("identity system is not sensitive") {
    Json j = Json::parse(R"({"system": "identity", "probes": [
      {"name": "s", "type": "sensitivity", "lengths": ["1/16"], "centers": {"stratified": 4}, "max_iter": 8}]})");
    auto b = run(parse_config(j));
    CHECK(b.bundle["reports"][0]["report"]["verdict"] == "not sensitive at tested scales");
}

TEST_CASE("IFS serialization round trip") {
    std::mt19937_64 rng(19);
    auto t1 = theorem1_system(Theorem1Params{});
    for (const auto& sys : {theorem2_ifs(ratio(34, 55)), t1.forward, t1.backward}) {
        auto back = ifs_from_json(Json::parse(to_json(sys).dump()), "ifs");
        REQUIRE(back.size() == sys.size());
        CHECK(back.label() == sys.label());
        for (int i = 0; i < 256; ++i) {
            auto x = testing::random_point(rng);
            for (std::size_t g = 0; g < sys.size(); ++g) CHECK(eval(back[g], x) == eval(sys[g], x));
        }
    }
    auto a = testing::random_arcset(rng);
    CHECK(arcset_from_json(to_json(a), "a") == a);
}

TEST_CASE("describe examples") {
    auto t2 = describe(theorem2_ifs(ratio(34, 55)));
    CHECK(t2["generator_count"] == 4);
    CHECK(t2["diagonal_containment"] == true);
    CHECK(t2["symmetric"] == false);
    auto t1 = describe(theorem1_system(Theorem1Params{}).forward);
    CHECK(t1["symmetric"] == false);
    CHECK(t1["inverse_pairs"] == Json::parse("[[1,2],[3,4]]"));
    auto r = describe(IFS("r", {PLHomeo::rotation(ratio(1, 3)), PLHomeo::rotation(ratio(2, 3))}));
    CHECK(r["symmetric"] == true);
}

TEST_CASE("threads_from_env") {
    setenv("HUTCH_THREADS", "3", 1);
    CHECK(threads_from_env() == 3);
    setenv("HUTCH_THREADS", "zero", 1);
    CHECK(threads_from_env() == 1);
    unsetenv("HUTCH_THREADS");
    CHECK(threads_from_env() == 1);
}

TEST_CASE("cli exit codes and outputs") {
    const auto dir = temp_dir("cli");
    const auto cfg = dir / "config.json";
    std::ofstream(cfg) << small_config().dump(2);
    CHECK(run_cli("run --config " + cfg.string() + " --out " + (dir / "a").string()) == 0);
    CHECK(run_cli("run --config " + cfg.string() + " --out " + (dir / "b").string()) == 0);
    CHECK(slurp(dir / "a" / "bundle.json") == slurp(dir / "b" / "bundle.json"));
    CHECK(slurp(dir / "a" / "sens.csv") == slurp(dir / "b" / "sens.csv"));
    CHECK(std::filesystem::exists(dir / "a" / "timings.json"));

    Json bad = small_config();
    bad["probes"][0]["tol"] = "0.3";
    std::ofstream(dir / "bad.json") << bad.dump();
    CHECK(run_cli("run --config " + (dir / "bad.json").string() + " --out " + (dir / "bad").string()) == 2);
    CHECK(run_cli("run --config " + cfg.string() + " --tol 0.5 --out " + (dir / "c").string()) == 2);
    CHECK(run_cli("run --config " + (dir / "missing.json").string()) == 2);
    CHECK(run_cli("bogus") == 2);

    CHECK(run_cli("iterate --system theorem2 --max-iter 20 --out " + (dir / "it").string()) == 3);
    const Json partial = Json::parse(slurp(dir / "it" / "bundle.json"));
    CHECK(partial["status"] == "partial");
    CHECK(run_cli("iterate --system theorem2 --max-iter 3 --out " + (dir / "it2").string()) == 0);
    CHECK(run_cli("probe --config " + cfg.string() + " --probe attractor --out " + (dir / "p").string()) == 0);
    CHECK(Json::parse(slurp(dir / "p" / "bundle.json"))["reports"].size() == 1);
    CHECK(run_cli("probe --config " + cfg.string() + " --probe nope --out " + (dir / "p2").string()) == 2);
    CHECK(run_cli("describe --system theorem1") == 0);
    CHECK(run_cli("describe --system /nonexistent.json") == 2);
    std::filesystem::remove_all(dir);
}
