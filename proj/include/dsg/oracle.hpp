#pragma once

#include <algorithm>
#include <limits>
#include <vector>

#include "dsg/spe.hpp"

namespace dsg {

/// Configuration of the exhaustive leader-grid search.
struct OracleConfig {
    int grid_points = 10001;               // evenly spaced alpha samples on [0, 1]
    bool include_analytic_candidates = true; // inject clamped R_G and R_F

    void validate() const {
        if (grid_points < 2)
            throw ConfigError("oracle: grid_points must be >= 2");
    }
};

namespace detail {

/// Follower reply at a fixed alpha by direct endpoint comparison. V is
/// affine in x, so the optimum is an endpoint; buying wins only when it
/// is better by more than floating-point noise, so an injected candidate
/// sitting exactly on the indifference threshold resolves to x = 0 like
/// the analytic tie-break.
inline double oracle_reply(const GameInstance& g, double alpha) {
    const ActionProfile none(alpha, 0.0);
    const ActionProfile all(alpha, 1.0 - alpha);
    const double tie_slack = 1e-12 * (g.r_g + g.c + std::abs(g.m) + 1.0);
    return genai_utility(g, all) > genai_utility(g, none) + tie_slack ? all.x : 0.0;
}

inline OutcomeKind nearest_kind(const GameInstance& g, double alpha, double x) {
    const double rg_t = std::clamp(indifference_threshold(g.params()), 0.0, 1.0);
    const double rf_t = std::clamp(forced_completion_level(g), 0.0, 1.0);
    struct Family { double alpha, x; OutcomeKind kind; };
    const Family families[] = {
        {1.0, 0.0, OutcomeKind::full_share},
        {0.0, 0.0, OutcomeKind::no_interaction},
        {0.0, 1.0, OutcomeKind::expert_only},
        {rg_t, 0.0, OutcomeKind::indifference_point},
        {rf_t, 1.0 - rf_t, OutcomeKind::forced_completion},
    };
    OutcomeKind best = families[0].kind;
    double best_dist = std::abs(alpha - families[0].alpha) + std::abs(x - families[0].x);
    for (const Family& f : families) {
        const double d = std::abs(alpha - f.alpha) + std::abs(x - f.x);
        if (d < best_dist) {
            best_dist = d;
            best = f.kind;
        }
    }
    return best;
}

} // namespace detail

/// Independent brute-force SPE: enumerate leader actions on a grid, reply
/// exactly in x, keep the best firm utility (ties toward smaller alpha).
/// kind is inferred by nearest match against the five profile families.
inline SpeOutcome oracle_spe(const GameInstance& g, const OracleConfig& cfg) {
    cfg.validate();

    std::vector<double> candidates;
    candidates.reserve(static_cast<std::size_t>(cfg.grid_points) + 2);
    for (int i = 0; i < cfg.grid_points; ++i)
        candidates.push_back(static_cast<double>(i) / (cfg.grid_points - 1));
    if (cfg.include_analytic_candidates) {
        candidates.push_back(std::clamp(indifference_threshold(g.params()), 0.0, 1.0));
        candidates.push_back(std::clamp(forced_completion_level(g), 0.0, 1.0));
    }
    std::sort(candidates.begin(), candidates.end());

    double best_alpha = 0.0;
    double best_x = 0.0;
    double best_u = -std::numeric_limits<double>::infinity();
    for (double alpha : candidates) {
        const double x = detail::oracle_reply(g, alpha);
        const double u = firm_utility(g, ActionProfile(alpha, x));
        if (u > best_u) {
            best_u = u;
            best_alpha = alpha;
            best_x = x;
        }
    }

    const ActionProfile profile(best_alpha, best_x);
    return SpeOutcome{profile, firm_utility(g, profile), genai_utility(g, profile),
                      detail::nearest_kind(g, best_alpha, best_x), "oracle/grid_argmax"};
}

/// One point of a price sweep: the price, whether its equilibrium weakly
/// improves both parties over the no-sharing baseline, and the
/// equilibrium itself.
struct ParetoSample {
    double m;
    bool is_improving;
    double firm_utility;
    double genai_utility;
    OutcomeKind kind;
};

/// Pointwise Pareto check over a price grid. The baseline is alpha = 0
/// with GenAI's best reply to it; improvement means both utilities are
/// at least the baseline minus 1e-12.
inline std::vector<ParetoSample> oracle_pareto(const GameParams& p,
                                               const std::vector<double>& m_grid) {
    std::vector<ParetoSample> out;
    out.reserve(m_grid.size());
    for (double m : m_grid) {
        const GameInstance g(p, m);
        const ActionProfile baseline(0.0, best_response(g, 0.0));
        const double u0 = firm_utility(g, baseline);
        const double v0 = genai_utility(g, baseline);
        const SpeOutcome eq = solve_spe(g);
        const bool improving =
            eq.firm_utility >= u0 - 1e-12 && eq.genai_utility >= v0 - 1e-12;
        out.push_back(ParetoSample{m, improving, eq.firm_utility, eq.genai_utility, eq.kind});
    }
    return out;
}

} // namespace dsg
