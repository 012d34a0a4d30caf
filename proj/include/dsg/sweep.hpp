#pragma once

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "dsg/spe.hpp"

namespace dsg {

enum class SweepParam { r_f, r_g, c, m };

inline const char* to_string(SweepParam p) {
    switch (p) {
        case SweepParam::r_f: return "r_f";
        case SweepParam::r_g: return "r_g";
        case SweepParam::c: return "c";
        case SweepParam::m: return "m";
    }
    return "unknown";
}

inline SweepParam parse_sweep_param(const std::string& s) {
    if (s == "r_f") return SweepParam::r_f;
    if (s == "r_g") return SweepParam::r_g;
    if (s == "c") return SweepParam::c;
    if (s == "m") return SweepParam::m;
    throw SpecError("unknown sweep parameter: " + s);
}

enum class Quantity { alpha, x, U, V, kind };

inline const char* to_string(Quantity q) {
    switch (q) {
        case Quantity::alpha: return "alpha";
        case Quantity::x: return "x";
        case Quantity::U: return "U";
        case Quantity::V: return "V";
        case Quantity::kind: return "kind";
    }
    return "unknown";
}

inline Quantity parse_quantity(const std::string& s) {
    if (s == "alpha") return Quantity::alpha;
    if (s == "x") return Quantity::x;
    if (s == "U") return Quantity::U;
    if (s == "V") return Quantity::V;
    if (s == "kind") return Quantity::kind;
    throw SpecError("unknown quantity: " + s);
}

/// One swept parameter with its range. Cells are evaluated at cell
/// centers: value(i) = min + (i + 0.5) (max - min) / steps, so rendered
/// region boundaries are accurate to half a cell.
struct SweepAxis {
    SweepParam param;
    double min;
    double max;
    int steps;

    double value(int i) const {
        return min + (static_cast<double>(i) + 0.5) * (max - min) / steps;
    }
};

inline GameInstance override_param(const GameInstance& base, SweepParam p, double v) {
    GameInstance g = base;
    switch (p) {
        case SweepParam::r_f: g = GameInstance(v, base.r_g, base.c, base.m, base.gamma); break;
        case SweepParam::r_g: g = GameInstance(base.r_f, v, base.c, base.m, base.gamma); break;
        case SweepParam::c: g = GameInstance(base.r_f, base.r_g, v, base.m, base.gamma); break;
        case SweepParam::m: g = GameInstance(base.r_f, base.r_g, base.c, v, base.gamma); break;
    }
    return g;
}

/// A 2-D sweep: base instance, two distinct axes, and the quantities of
/// interest for rendering.
struct SweepSpec {
    GameInstance base;
    SweepAxis axis1;
    SweepAxis axis2;
    std::vector<Quantity> quantities;

    void validate() const {
        if (axis1.param == axis2.param)
            throw SpecError("sweep axes must differ");
        for (const SweepAxis* ax : {&axis1, &axis2}) {
            if (ax->steps < 2) throw SpecError("sweep axis needs steps >= 2");
            if (!detail::finite(ax->min) || !detail::finite(ax->max) || !(ax->min < ax->max))
                throw SpecError("sweep axis needs min < max");
            if (ax->param != SweepParam::m && ax->min <= 0.0)
                throw SpecError(std::string("swept range for ") + to_string(ax->param) +
                                " must stay positive");
        }
        if (quantities.empty())
            throw SpecError("sweep spec lists no quantities");
        // Probing the corners validates the whole rectangle (constraints
        // are monotone in each parameter).
        override_param(override_param(base, axis1.param, axis1.value(0)),
                       axis2.param, axis2.value(0));
    }
};

/// Row-major lattice of equilibria: cell (i, j) solves the base instance
/// with axis1 = axis1.value(i) and axis2 = axis2.value(j).
struct SweepGrid {
    SweepSpec spec;
    std::vector<SpeOutcome> cells;

    const SpeOutcome& at(int i, int j) const {
        return cells[static_cast<std::size_t>(i) * spec.axis2.steps + j];
    }
};

inline SweepGrid run_sweep(const SweepSpec& spec) {
    spec.validate();
    SweepGrid grid{spec, {}};
    grid.cells.reserve(static_cast<std::size_t>(spec.axis1.steps) * spec.axis2.steps);
    for (int i = 0; i < spec.axis1.steps; ++i) {
        const GameInstance outer = override_param(spec.base, spec.axis1.param,
                                                  spec.axis1.value(i));
        for (int j = 0; j < spec.axis2.steps; ++j)
            grid.cells.push_back(solve_spe(
                override_param(outer, spec.axis2.param, spec.axis2.value(j))));
    }
    return grid;
}

/// One point of the leader's value curve U(alpha, x*(alpha)).
struct CurvePoint {
    double alpha;
    double firm_utility;
    double x_reply;
};

/// Leader's value curve on an even alpha grid, with the two thresholds
/// (clamped to [0, 1]) injected so the discontinuity at R_G and the
/// quadratic peak at R_F are sampled exactly. Quadratic on [0, R_G),
/// affine on [R_G, 1].
inline std::vector<CurvePoint> utility_curve(const GameInstance& g, int steps) {
    if (steps < 2) throw SpecError("utility_curve: steps must be >= 2");
    std::vector<double> alphas;
    alphas.reserve(static_cast<std::size_t>(steps) + 2);
    for (int i = 0; i < steps; ++i)
        alphas.push_back(static_cast<double>(i) / (steps - 1));
    alphas.push_back(std::clamp(indifference_threshold(g.params()), 0.0, 1.0));
    alphas.push_back(std::clamp(forced_completion_level(g), 0.0, 1.0));
    std::sort(alphas.begin(), alphas.end());
    alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());

    std::vector<CurvePoint> curve;
    curve.reserve(alphas.size());
    for (double a : alphas) {
        const double x = best_response(g, a);
        curve.push_back(CurvePoint{a, firm_utility(g, ActionProfile(a, x)), x});
    }
    return curve;
}

namespace detail {

inline std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

} // namespace detail

inline void emit_csv(const SweepGrid& grid, std::ostream& out) {
    out << "axis1_value,axis2_value,alpha,x,U,V,kind,case_id\n";
    for (int i = 0; i < grid.spec.axis1.steps; ++i) {
        for (int j = 0; j < grid.spec.axis2.steps; ++j) {
            const SpeOutcome& cell = grid.at(i, j);
            out << detail::fmt_g(grid.spec.axis1.value(i)) << ','
                << detail::fmt_g(grid.spec.axis2.value(j)) << ','
                << detail::fmt_g(cell.profile.alpha) << ','
                << detail::fmt_g(cell.profile.x) << ','
                << detail::fmt_g(cell.firm_utility) << ','
                << detail::fmt_g(cell.genai_utility) << ','
                << to_string(cell.kind) << ','
                << cell.case_id << '\n';
        }
    }
}

inline void emit_csv(const SweepGrid& grid, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    emit_csv(grid, out);
    if (!out) throw IoError("write failed: " + path);
}

namespace detail {

struct Rgb {
    double r, g, b;
};

inline std::string hex(const Rgb& c) {
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x",
                  static_cast<int>(c.r * 255.0 + 0.5),
                  static_cast<int>(c.g * 255.0 + 0.5),
                  static_cast<int>(c.b * 255.0 + 0.5));
    return buf;
}

inline std::string ramp_color(double t) {
    // dark violet -> yellow, roughly the usual sequential colormap ends
    const Rgb lo{0.267, 0.005, 0.329};
    const Rgb hi{0.993, 0.906, 0.144};
    t = std::clamp(t, 0.0, 1.0);
    return hex(Rgb{lo.r + t * (hi.r - lo.r), lo.g + t * (hi.g - lo.g),
                   lo.b + t * (hi.b - lo.b)});
}

inline const char* kind_color(OutcomeKind k) {
    switch (k) {
        case OutcomeKind::indifference_point: return "#fde725"; // yellow
        case OutcomeKind::forced_completion: return "#440154";  // purple
        case OutcomeKind::full_share: return "#1f77b4";
        case OutcomeKind::no_interaction: return "#7f7f7f";
        case OutcomeKind::expert_only: return "#2ca02c";
    }
    return "#000000";
}

inline double quantity_value(const SpeOutcome& cell, Quantity q) {
    switch (q) {
        case Quantity::alpha: return cell.profile.alpha;
        case Quantity::x: return cell.profile.x;
        case Quantity::U: return cell.firm_utility;
        case Quantity::V: return cell.genai_utility;
        case Quantity::kind: return static_cast<double>(cell.kind);
    }
    return 0.0;
}

} // namespace detail

/// Self-contained SVG heatmap of one quantity: a raster of rects, linear
/// color ramp for numeric quantities, discrete palette for kind. axis1
/// runs along x, axis2 along y (increasing upward).
inline void emit_heatmap(const SweepGrid& grid, Quantity quantity, std::ostream& out) {
    const SweepSpec& spec = grid.spec;
    if (std::find(spec.quantities.begin(), spec.quantities.end(), quantity) ==
        spec.quantities.end())
        throw SpecError(std::string("quantity not declared in sweep spec: ") +
                        to_string(quantity));

    const int n1 = spec.axis1.steps;
    const int n2 = spec.axis2.steps;
    const double margin_left = 60.0, margin_bottom = 40.0, margin_top = 30.0,
                 margin_right = 20.0;
    const double plot_w = 560.0, plot_h = 420.0;
    const double cell_w = plot_w / n1, cell_h = plot_h / n2;
    const double width = margin_left + plot_w + margin_right;
    const double height = margin_top + plot_h + margin_bottom;

    double vmin = 0.0, vmax = 1.0;
    if (quantity != Quantity::kind) {
        vmin = std::numeric_limits<double>::infinity();
        vmax = -vmin;
        for (const SpeOutcome& cell : grid.cells) {
            const double v = detail::quantity_value(cell, quantity);
            vmin = std::min(vmin, v);
            vmax = std::max(vmax, v);
        }
        if (vmax <= vmin) vmax = vmin + 1.0;
    }

    using detail::fmt_g;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt_g(width)
        << "\" height=\"" << fmt_g(height) << "\" viewBox=\"0 0 " << fmt_g(width) << ' '
        << fmt_g(height) << "\">\n";
    out << "  <title>" << to_string(quantity) << " over (" << to_string(spec.axis1.param)
        << ", " << to_string(spec.axis2.param) << ")</title>\n";
    out << "  <desc>Cells are sampled at parameter-cell centers; region boundaries are "
           "accurate to half a cell. axis1=" << to_string(spec.axis1.param) << " in ["
        << fmt_g(spec.axis1.min) << ", " << fmt_g(spec.axis1.max) << "], axis2="
        << to_string(spec.axis2.param) << " in [" << fmt_g(spec.axis2.min) << ", "
        << fmt_g(spec.axis2.max) << "]";
    if (quantity != Quantity::kind)
        out << ", range [" << fmt_g(vmin) << ", " << fmt_g(vmax) << "]";
    out << "</desc>\n";

    for (int i = 0; i < n1; ++i) {
        for (int j = 0; j < n2; ++j) {
            const SpeOutcome& cell = grid.at(i, j);
            const std::string fill =
                quantity == Quantity::kind
                    ? detail::kind_color(cell.kind)
                    : detail::ramp_color(
                          (detail::quantity_value(cell, quantity) - vmin) / (vmax - vmin));
            const double x = margin_left + i * cell_w;
            const double y = margin_top + (n2 - 1 - j) * cell_h;
            out << "  <rect x=\"" << fmt_g(x) << "\" y=\"" << fmt_g(y) << "\" width=\""
                << fmt_g(cell_w) << "\" height=\"" << fmt_g(cell_h) << "\" fill=\"" << fill
                << "\"/>\n";
        }
    }

    out << "  <text x=\"" << fmt_g(margin_left + plot_w / 2.0) << "\" y=\""
        << fmt_g(height - 10.0)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
        << to_string(spec.axis1.param) << " : " << fmt_g(spec.axis1.min) << " .. "
        << fmt_g(spec.axis1.max) << "</text>\n";
    out << "  <text x=\"15\" y=\"" << fmt_g(margin_top + plot_h / 2.0)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" "
           "transform=\"rotate(-90 15 "
        << fmt_g(margin_top + plot_h / 2.0) << ")\">" << to_string(spec.axis2.param)
        << " : " << fmt_g(spec.axis2.min) << " .. " << fmt_g(spec.axis2.max)
        << "</text>\n";
    out << "  <text x=\"" << fmt_g(margin_left + plot_w / 2.0)
        << "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"15\">"
        << to_string(quantity) << "</text>\n";
    out << "</svg>\n";
}

inline void emit_heatmap(const SweepGrid& grid, Quantity quantity, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    emit_heatmap(grid, quantity, out);
    if (!out) throw IoError("write failed: " + path);
}

/// Discontinuity statistics along one slice of a field, split by the kind
/// labels. A slice qualifies when the kinds form exactly two runs (one
/// switch). The leader's equilibrium utility is a maximum of continuous
/// functions and therefore continuous across the switch; its signature
/// there is a slope break, which the second differences pick up. The
/// follower's utility genuinely jumps, which the first differences pick
/// up.
struct SliceStats {
    bool boundary_found = false;
    int boundary_index = -1;       // switch between this cell and the next
    double boundary_jump = 0.0;    // |f[b+1] - f[b]|
    double within_jump = 0.0;      // median |df| within a region
    double boundary_curvature = 0.0; // max |d2f| on triples spanning the switch
    double within_curvature = 0.0;   // median |d2f| within a region
};

inline SliceStats analyze_slice(const std::vector<double>& field,
                                const std::vector<OutcomeKind>& kinds) {
    SliceStats stats;
    const std::size_t n = field.size();
    if (n != kinds.size() || n < 4) return stats;

    int switches = 0;
    std::size_t b = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (kinds[i] != kinds[i + 1]) {
            ++switches;
            b = i;
        }
    }
    if (switches != 1 || b == 0 || b + 2 >= n) return stats;

    auto median = [](std::vector<double> v) {
        if (v.empty()) return 0.0;
        std::sort(v.begin(), v.end());
        return v[v.size() / 2];
    };

    std::vector<double> jumps, curvatures;
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (i != b) jumps.push_back(std::abs(field[i + 1] - field[i]));
    for (std::size_t i = 0; i + 2 < n; ++i)
        if (i + 1 != b && i != b) // triple entirely inside one region
            curvatures.push_back(std::abs(field[i + 2] - 2.0 * field[i + 1] + field[i]));

    stats.boundary_found = true;
    stats.boundary_index = static_cast<int>(b);
    stats.boundary_jump = std::abs(field[b + 1] - field[b]);
    stats.within_jump = median(jumps);
    stats.boundary_curvature =
        std::max(std::abs(field[b + 1] - 2.0 * field[b] + field[b - 1]),
                 std::abs(field[b + 2] - 2.0 * field[b + 1] + field[b]));
    stats.within_curvature = median(curvatures);
    return stats;
}

} // namespace dsg
