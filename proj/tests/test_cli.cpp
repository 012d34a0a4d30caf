#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dsg/cli.hpp"

using namespace dsg;
using Catch::Approx;

namespace {

struct CliResult {
    int status;
    std::string out;
    std::string err;
};

CliResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int status = run_cli(std::move(args), out, err);
    return CliResult{status, out.str(), err.str()};
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name, const std::string& body)
        : path(std::string("/tmp/dsg_test_") + name) {
        std::ofstream f(path);
        f << body;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("solve prints the worked equilibrium as JSON", "[cli]") {
    const CliResult r = run({"solve", "--r-f", "1", "--r-g", "1", "--c", "0.32",
                             "--m", "-0.1"});
    REQUIRE(r.status == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("alpha").get<double>() == Approx(0.68).margin(1e-9));
    CHECK(j.at("x").get<double>() == 0.0);
    CHECK(j.at("U").get<double>() == Approx(0.252).margin(1e-9));
    CHECK(j.at("V").get<double>() == Approx(0.748).margin(1e-9));
    CHECK(j.at("kind").get<std::string>() == "indifference_point");

    const CliResult again = run({"solve", "--r-f", "1", "--r-g", "1", "--c", "0.32",
                                 "--m", "-0.1"});
    CHECK(again.out == r.out); // byte-identical repeat
}

TEST_CASE("solve covers the shut-down corner", "[cli]") {
    const CliResult r = run({"solve", "--r-f", "1", "--r-g", "1", "--c", "1.5",
                             "--m", "0.5"});
    REQUIRE(r.status == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("alpha").get<double>() == 0.0);
    CHECK(j.at("x").get<double>() == 0.0);
}

TEST_CASE("instance file and inline flags agree", "[cli]") {
    const TempFile f("inst.json", R"({"r_f":1,"r_g":1,"c":0.32,"m":-0.1,"gamma":1})");
    const CliResult from_file = run({"solve", "--instance", f.path});
    const CliResult inline_flags = run({"solve", "--r-f", "1", "--r-g", "1", "--c",
                                        "0.32", "--m", "-0.1"});
    REQUIRE(from_file.status == 0);
    CHECK(from_file.out == inline_flags.out);

    SECTION("gamma defaults to 1 when the file omits it") {
        const TempFile g("inst_nogamma.json", R"({"r_f":1,"r_g":1,"c":0.32,"m":-0.1})");
        const CliResult r = run({"solve", "--instance", g.path});
        CHECK(r.out == from_file.out);
    }

    SECTION("mixing the file with inline flags is a usage error") {
        const CliResult r = run({"solve", "--instance", f.path, "--r-f", "2"});
        CHECK(r.status == 2);
    }

    SECTION("a missing file is an I/O failure, not a usage error") {
        const CliResult r = run({"solve", "--instance", "/tmp/dsg_no_such_file.json"});
        CHECK(r.status == 1);
        CHECK(r.err.find("error:") != std::string::npos);
    }
}

TEST_CASE("oracle-check reports clean seeded runs", "[cli]") {
    const CliResult r = run({"oracle-check", "--seed", "7", "--n", "100",
                             "--grid-points", "10001"});
    REQUIRE(r.status == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("instances").get<int>() == 100);
    CHECK(j.at("max_alpha_err").get<double>() <= 2e-4);
    CHECK(j.at("failures").empty());

    const CliResult again = run({"oracle-check", "--seed", "7", "--n", "100",
                                 "--grid-points", "10001"});
    CHECK(again.out == r.out);

    const CliResult other_seed = run({"oracle-check", "--seed", "8", "--n", "50",
                                      "--grid-points", "2001"});
    CHECK(other_seed.status == 0);
}

TEST_CASE("pareto emits the interval set and an optional sweep", "[cli]") {
    const std::string sweep_path = "/tmp/dsg_test_pareto_sweep.csv";
    const CliResult r = run({"pareto", "--r-f", "1", "--r-g", "1", "--c", "0.32",
                             "--out", sweep_path, "--steps", "401"});
    REQUIRE(r.status == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.at("intervals").size() == 2);
    CHECK(j.at("intervals")[0].at("lo").get<double>() == Approx(-1.0).margin(1e-9));
    CHECK(j.at("intervals")[1].at("lo").get<double>() == Approx(-0.28).margin(1e-9));
    CHECK(j.at("intervals")[1].at("lo_closed").get<bool>() == false);

    std::ifstream csv(sweep_path);
    REQUIRE(csv.good());
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(csv, line)) lines.push_back(line);
    REQUIRE(lines.size() == 402);
    CHECK(lines[0] == "m,is_improving,U,V,kind");
    std::remove(sweep_path.c_str());
}

TEST_CASE("price solves the designer problem", "[cli]") {
    const CliResult r = run({"price", "--r-f", "1", "--r-g", "1", "--c", "0.2",
                             "--lambda", "0.7"});
    REQUIRE(r.status == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("method").get<std::string>() == "closed_form");
    CHECK(j.at("objective_value").get<double>() == Approx(0.88).margin(1e-9));
    CHECK(j.at("representative_m").get<double>() == Approx(0.2).margin(1e-9));

    SECTION("general overlap is flagged numeric") {
        const CliResult num = run({"price", "--r-f", "1", "--r-g", "1", "--c", "0.8",
                                   "--gamma", "0.5", "--lambda", "1"});
        REQUIRE(num.status == 0);
        CHECK(nlohmann::json::parse(num.out).at("method").get<std::string>() == "numeric");
    }
    SECTION("negative lambda is a solver error") {
        const CliResult bad = run({"price", "--r-f", "1", "--r-g", "1", "--c", "0.2",
                                   "--lambda", "-1"});
        CHECK(bad.status == 1);
    }
}

TEST_CASE("sweep writes CSV and SVG artifacts", "[cli]") {
    const TempFile spec("sweep_spec.json", R"({
        "base": {"r_f": 1, "r_g": 1, "c": 0.5, "m": 0},
        "axis1": {"param": "c", "min": 0.25, "max": 0.75, "steps": 4},
        "axis2": {"param": "m", "min": -1, "max": 1, "steps": 4},
        "quantities": ["U", "V", "kind"]})");

    const CliResult csv = run({"sweep", "--spec", spec.path});
    REQUIRE(csv.status == 0);
    CHECK(csv.out.rfind("axis1_value,", 0) == 0);

    const std::string svg_path = "/tmp/dsg_test_sweep.svg";
    const CliResult svg = run({"sweep", "--spec", spec.path, "--format", "svg",
                               "--quantity", "kind", "--out", svg_path});
    REQUIRE(svg.status == 0);
    std::ifstream f(svg_path);
    REQUIRE(f.good());
    std::stringstream body;
    body << f.rdbuf();
    CHECK(body.str().find("<svg") != std::string::npos);
    std::remove(svg_path.c_str());

    SECTION("rendering an undeclared quantity fails cleanly") {
        const CliResult bad = run({"sweep", "--spec", spec.path, "--format", "svg",
                                   "--quantity", "alpha"});
        CHECK(bad.status == 1);
    }
}

TEST_CASE("curve emits the value curve as CSV", "[cli]") {
    const CliResult r = run({"curve", "--r-f", "1", "--r-g", "1", "--c", "0.32",
                             "--m", "-0.1", "--steps", "5"});
    REQUIRE(r.status == 0);
    CHECK(r.out.rfind("alpha,U,x_reply", 0) == 0);
    CHECK(r.out.find("0.68,0.252,0") != std::string::npos);
}

TEST_CASE("exit codes distinguish usage from solver failures", "[cli]") {
    CHECK(run({"solve", "--bogus"}).status == 2);
    CHECK(run({}).status == 2);
    CHECK(run({"solve", "--r-f", "1", "--r-g", "1", "--m", "0"}).status == 2); // missing --c
    CHECK(run({"solve", "--r-f", "-1", "--r-g", "1", "--c", "0.5", "--m", "0"}).status == 1);
    CHECK(run({"--help"}).status == 0);
}
