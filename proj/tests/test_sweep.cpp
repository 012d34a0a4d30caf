#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "dsg/json_io.hpp"
#include "dsg/sweep.hpp"
#include "test_support.hpp"

using namespace dsg;
using Catch::Approx;

namespace {

SweepSpec cm_spec(int steps1, int steps2) {
    return SweepSpec{GameInstance(1.0, 1.0, 0.5, 0.0),
                     SweepAxis{SweepParam::c, 0.25, 0.75, steps1},
                     SweepAxis{SweepParam::m, -1.0, 1.0, steps2},
                     {Quantity::alpha, Quantity::x, Quantity::U, Quantity::V,
                      Quantity::kind}};
}

} // namespace

TEST_CASE("sweep spec validation", "[sweep]") {
    SweepSpec s = cm_spec(5, 5);
    CHECK_NOTHROW(s.validate());

    SweepSpec same_axes = s;
    same_axes.axis2.param = SweepParam::c;
    CHECK_THROWS_AS(same_axes.validate(), SpecError);

    SweepSpec bad_steps = s;
    bad_steps.axis1.steps = 1;
    CHECK_THROWS_AS(bad_steps.validate(), SpecError);

    SweepSpec bad_range = s;
    bad_range.axis1.min = 0.8;
    CHECK_THROWS_AS(bad_range.validate(), SpecError);

    SweepSpec nonpositive = s;
    nonpositive.axis1.min = -0.5;
    CHECK_THROWS_AS(nonpositive.validate(), SpecError);

    SweepSpec no_quantities = s;
    no_quantities.quantities.clear();
    CHECK_THROWS_AS(no_quantities.validate(), SpecError);
}

TEST_CASE("cells hold the equilibrium of the overridden instance", "[sweep]") {
    const SweepGrid grid = run_sweep(cm_spec(3, 3));
    REQUIRE(grid.cells.size() == 9);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const GameInstance g(1.0, 1.0, grid.spec.axis1.value(i),
                                 grid.spec.axis2.value(j));
            const SpeOutcome expect = solve_spe(g);
            const SpeOutcome& cell = grid.at(i, j);
            REQUIRE(cell.profile.alpha == expect.profile.alpha);
            REQUIRE(cell.firm_utility == expect.firm_utility);
            REQUIRE(cell.kind == expect.kind);
        }
    }
}

TEST_CASE("kind boundary tracks m = 1 - 4c within one cell", "[sweep]") {
    const SweepGrid grid = run_sweep(cm_spec(41, 41));
    const double cell_h = (1.0 - (-1.0)) / 41;
    int columns_checked = 0;
    for (int i = 0; i < 41; ++i) {
        const double c = grid.spec.axis1.value(i);
        int switch_j = -1;
        int switches = 0;
        for (int j = 0; j + 1 < 41; ++j) {
            if (grid.at(i, j).kind != grid.at(i, j + 1).kind) {
                switch_j = j;
                ++switches;
            }
        }
        if (switches != 1) continue;
        REQUIRE(grid.at(i, 0).kind == OutcomeKind::forced_completion);
        REQUIRE(grid.at(i, 40).kind == OutcomeKind::indifference_point);
        const double boundary_est =
            0.5 * (grid.spec.axis2.value(switch_j) + grid.spec.axis2.value(switch_j + 1));
        REQUIRE(std::abs(boundary_est - (1.0 - 4.0 * c)) <= cell_h);
        ++columns_checked;
    }
    REQUIRE(columns_checked >= 15);
}

TEST_CASE("reward sweep shows the documented monotonicities", "[sweep]") {
    const SweepSpec spec{GameInstance(2.0, 2.0, 1.0, 1.0),
                         SweepAxis{SweepParam::r_f, 1.05, 3.0, 21},
                         SweepAxis{SweepParam::r_g, 1.05, 3.0, 21},
                         {Quantity::U, Quantity::V, Quantity::kind}};
    const SweepGrid grid = run_sweep(spec);

    SECTION("shared fraction shrinks with the platform's reward") {
        // in the indifference region alpha = R_G = 1 - c / r_g
        for (int i = 0; i < 21; ++i) {
            for (int j = 0; j + 1 < 21; ++j) {
                const SpeOutcome& lo = grid.at(i, j);
                const SpeOutcome& hi = grid.at(i, j + 1);
                if (lo.kind == OutcomeKind::indifference_point &&
                    hi.kind == OutcomeKind::indifference_point)
                    REQUIRE(lo.profile.alpha <= hi.profile.alpha + 1e-12);
            }
        }
    }
    SECTION("forced-completion firm utility ignores r_g") {
        for (int i = 0; i < 21; ++i) {
            double u_ref = 0.0;
            bool seen = false;
            for (int j = 0; j < 21; ++j) {
                const SpeOutcome& cell = grid.at(i, j);
                if (cell.kind != OutcomeKind::forced_completion) continue;
                if (seen)
                    REQUIRE(cell.firm_utility == Approx(u_ref).epsilon(1e-12).margin(1e-12));
                u_ref = cell.firm_utility;
                seen = true;
            }
        }
    }
}

TEST_CASE("utility curve jumps at the indifference threshold", "[sweep]") {
    const GameInstance g = test::worked_instance();
    const auto curve = utility_curve(g, 2001);
    const double rg_t = thresholds(g).r_g_threshold;

    std::size_t at = curve.size();
    for (std::size_t i = 0; i < curve.size(); ++i)
        if (curve[i].alpha == rg_t) at = i;
    REQUIRE(at < curve.size());
    REQUIRE(at > 0);

    CHECK(curve[at].firm_utility == Approx(0.252).margin(1e-12));
    CHECK(curve[at].x_reply == 0.0);
    // just below the threshold the reply is still to buy everything and
    // the curve sits near its left limit 0.1496
    CHECK(curve[at - 1].x_reply == Approx(1.0 - curve[at - 1].alpha).margin(1e-12));
    CHECK(curve[at - 1].firm_utility == Approx(0.1496).margin(2e-3));

    SECTION("grid includes endpoints and both thresholds") {
        CHECK(curve.front().alpha == 0.0);
        CHECK(curve.back().alpha == 1.0);
        bool has_rf = false;
        for (const CurvePoint& pt : curve)
            if (pt.alpha == thresholds(g).r_f_threshold) has_rf = true;
        CHECK(has_rf);
    }

    SECTION("steps below 2 are rejected") {
        CHECK_THROWS_AS(utility_curve(g, 1), SpecError);
    }
}

TEST_CASE("curve peak location tracks the forced-completion level", "[sweep]") {
    SECTION("m = gamma r_f pushes the quadratic peak to alpha = 1") {
        const GameInstance g(1.0, 1.0, 0.05, 1.0);
        REQUIRE(thresholds(g).r_f_threshold == 1.0);
        const auto curve = utility_curve(g, 101);
        const double rg_t = thresholds(g).r_g_threshold;
        for (std::size_t i = 0; i + 1 < curve.size(); ++i)
            if (curve[i + 1].alpha < rg_t) // quadratic branch rises all the way
                REQUIRE(curve[i + 1].firm_utility >= curve[i].firm_utility - 1e-12);
    }
    SECTION("a deep subsidy makes the interior peak global") {
        const GameInstance g(1.0, 1.0, 0.1, -0.9);
        const auto curve = utility_curve(g, 2001);
        const double rf_t = thresholds(g).r_f_threshold; // 0.05
        double best_alpha = 0.0, best_u = -1e300;
        for (const CurvePoint& pt : curve) {
            if (pt.firm_utility > best_u) {
                best_u = pt.firm_utility;
                best_alpha = pt.alpha;
            }
        }
        CHECK(best_alpha == rf_t);
        CHECK(best_u == Approx(0.0025).margin(1e-12));
        CHECK(solve_spe(g).kind == OutcomeKind::forced_completion);
    }
}

TEST_CASE("curve is concave-quadratic then affine", "[sweep]") {
    Rng rng(61);
    for (int t = 0; t < 100; ++t) {
        const GameInstance g = test::sample_regular_gamma1(rng);
        const auto curve = utility_curve(g, 201);
        const double rg_t = thresholds(g).r_g_threshold;
        for (std::size_t i = 0; i + 2 < curve.size(); ++i) {
            const CurvePoint &p0 = curve[i], &p1 = curve[i + 1], &p2 = curve[i + 2];
            // very short gaps (injected threshold next to a grid point)
            // amplify rounding in the divided differences
            if (p1.alpha - p0.alpha < 1e-4 || p2.alpha - p1.alpha < 1e-4) continue;
            const double dd =
                ((p2.firm_utility - p1.firm_utility) / (p2.alpha - p1.alpha) -
                 (p1.firm_utility - p0.firm_utility) / (p1.alpha - p0.alpha)) /
                (p2.alpha - p0.alpha);
            if (p2.alpha < rg_t) {
                // second divided difference of the quadratic branch
                REQUIRE(dd == Approx(-g.gamma * g.r_f).epsilon(1e-9).margin(3e-8));
            } else if (p0.alpha >= rg_t) {
                REQUIRE(dd == Approx(0.0).margin(3e-8));
            }
        }
    }
}

TEST_CASE("CSV layout", "[sweep]") {
    const SweepGrid grid = run_sweep(cm_spec(3, 3));
    std::ostringstream out;
    emit_csv(grid, out);
    std::istringstream in(out.str());
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line)) lines.push_back(line);
    REQUIRE(lines.size() == 10); // header + 9 cells
    CHECK(lines[0] == "axis1_value,axis2_value,alpha,x,U,V,kind,case_id");
    CHECK(lines[1].find("forced_completion") != std::string::npos);

    CHECK_THROWS_AS(emit_csv(grid, std::string("/nonexistent-dir/x.csv")), IoError);
}

TEST_CASE("heatmap output", "[sweep]") {
    const SweepGrid grid = run_sweep(cm_spec(21, 21));

    SECTION("kind map shows exactly the two occurring families") {
        std::ostringstream out;
        emit_heatmap(grid, Quantity::kind, out);
        const std::string svg = out.str();
        CHECK(svg.find("#fde725") != std::string::npos); // indifference
        CHECK(svg.find("#440154") != std::string::npos); // forced completion
        CHECK(svg.find("#1f77b4") == std::string::npos);
        CHECK(svg.find("#7f7f7f") == std::string::npos);
        CHECK(svg.find("#2ca02c") == std::string::npos);
        CHECK(svg.find("<svg xmlns=") != std::string::npos);
        CHECK(svg.find("cell centers") != std::string::npos);
    }
    SECTION("numeric map renders one rect per cell") {
        std::ostringstream out;
        emit_heatmap(grid, Quantity::U, out);
        const std::string svg = out.str();
        std::size_t rects = 0, pos = 0;
        while ((pos = svg.find("<rect", pos)) != std::string::npos) {
            ++rects;
            pos += 5;
        }
        CHECK(rects == 21 * 21);
    }
    SECTION("undeclared quantities are rejected") {
        SweepSpec spec = cm_spec(3, 3);
        spec.quantities = {Quantity::U};
        const SweepGrid small = run_sweep(spec);
        std::ostringstream out;
        CHECK_THROWS_AS(emit_heatmap(small, Quantity::V, out), SpecError);
    }
}

TEST_CASE("utility fields break at the family boundary", "[sweep]") {
    const SweepGrid grid = run_sweep(cm_spec(41, 201));
    int qualified = 0;
    for (int i = 0; i < 41; ++i) {
        std::vector<double> u, v;
        std::vector<OutcomeKind> kinds;
        for (int j = 0; j < 201; ++j) {
            u.push_back(grid.at(i, j).firm_utility);
            v.push_back(grid.at(i, j).genai_utility);
            kinds.push_back(grid.at(i, j).kind);
        }
        const SliceStats vs = analyze_slice(v, kinds);
        if (!vs.boundary_found) continue;
        const SliceStats us = analyze_slice(u, kinds);
        ++qualified;
        REQUIRE(vs.boundary_jump > 10.0 * vs.within_jump);
        REQUIRE(us.boundary_curvature > 10.0 * us.within_curvature);
    }
    REQUIRE(qualified >= 15);
}

TEST_CASE("firm utility never drops below zero for admissible prices", "[sweep]") {
    const SweepGrid grid = run_sweep(cm_spec(41, 41));
    for (const SpeOutcome& cell : grid.cells)
        REQUIRE(cell.firm_utility >= -1e-12);
}

TEST_CASE("sweep spec JSON round trip", "[sweep]") {
    const auto j = nlohmann::json::parse(R"({
        "base": {"r_f": 1, "r_g": 1, "c": 0.5, "m": 0},
        "axis1": {"param": "c", "min": 0.25, "max": 0.75, "steps": 4},
        "axis2": {"param": "m", "min": -1, "max": 1, "steps": 5},
        "quantities": ["U", "kind"]})");
    const SweepSpec spec = jio::sweep_spec_from_json(j);
    CHECK(spec.axis1.param == SweepParam::c);
    CHECK(spec.axis2.steps == 5);
    CHECK(spec.quantities.size() == 2);
    CHECK(spec.base.gamma == 1.0);

    CHECK_THROWS_AS(jio::sweep_spec_from_json(nlohmann::json::parse(R"({"base":{}})")),
                    SpecError);
    auto bad = j;
    bad["quantities"] = nlohmann::json::array();
    CHECK_THROWS_AS(jio::sweep_spec_from_json(bad), SpecError);
    bad = j;
    bad["axis2"]["param"] = "c";
    CHECK_THROWS_AS(jio::sweep_spec_from_json(bad), SpecError);
}
