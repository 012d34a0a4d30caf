#pragma once

#include <string>

#include "dsg/model.hpp"

namespace dsg {

/// The five on-path outcome families of the game.
enum class OutcomeKind {
    full_share,        // (1, 0)
    no_interaction,    // (0, 0)
    expert_only,       // (0, 1)
    indifference_point,// (R_G, 0)
    forced_completion, // (R_F, 1 - R_F)
};

inline const char* to_string(OutcomeKind k) {
    switch (k) {
        case OutcomeKind::full_share: return "full_share";
        case OutcomeKind::no_interaction: return "no_interaction";
        case OutcomeKind::expert_only: return "expert_only";
        case OutcomeKind::indifference_point: return "indifference_point";
        case OutcomeKind::forced_completion: return "forced_completion";
    }
    return "unknown";
}

/// On-path subgame perfect equilibrium outcome.
struct SpeOutcome {
    ActionProfile profile;
    double firm_utility;
    double genai_utility;
    OutcomeKind kind;
    std::string case_id; // which branch of the case ladder selected it
};

/// GenAI's best response to a fixed sharing level: buy everything while
/// alpha < R_G, buy nothing from alpha = R_G on (ties resolve to the
/// minimal purchase, x = 0).
inline double best_response(const GameInstance& g, double alpha) {
    if (!detail::finite(alpha) || alpha < -kFeasibilityTol || alpha > 1.0 + kFeasibilityTol)
        throw DomainError("best_response: alpha must lie in [0, 1]");
    alpha = std::clamp(alpha, 0.0, 1.0);
    return alpha < indifference_threshold(g.params()) ? 1.0 - alpha : 0.0;
}

namespace detail {

inline SpeOutcome make_outcome(const GameInstance& g, double alpha, double x,
                               OutcomeKind kind, const char* case_id) {
    ActionProfile profile(alpha, x);
    return SpeOutcome{profile, firm_utility(g, profile), genai_utility(g, profile),
                      kind, case_id};
}

} // namespace detail

/// Computes the unique SPE outcome by the complete case ladder, valid for
/// every parameter regime (regular or not) and every gamma in (0, 1].
///
/// Branches are evaluated top to bottom; the first match wins. All
/// inequalities are applied literally on the floating-point values, so
/// behaviour on boundary equalities is exactly the documented precedence.
/// The comparison between the two interior candidates uses the closed
/// forms U(R_G, 0) = r_f + R_G (m - r_f) and
/// U(R_F, 1 - R_F) = (gamma r_f + m)^2 / (4 gamma r_f); at exact equality
/// the forced-completion profile is selected.
///
/// Two details keep the ladder total:
///   - The position of R_F relative to {0, 1} is tested on m itself
///     (R_F >= 1 as m >= gamma r_f, R_F >= 0 as m >= -gamma r_f). Testing
///     the rounded quotient instead can leave a one-ulp gap near
///     m = +-gamma r_f where no branch fires.
///   - The (R_G, 0) branch for R_F < 0 accepts R_G = 0, not just R_G > 0.
///     That covers c = r_g together with m < -gamma r_f, where the
///     follower never buys and the falling price makes alpha = 0 optimal,
///     i.e. the (R_G, 0) profile evaluated at R_G = 0.
inline SpeOutcome solve_spe(const GameInstance& g) {
    using K = OutcomeKind;
    const double rg_t = indifference_threshold(g.params()); // R_G
    const double rf_t = forced_completion_level(g);         // R_F
    const double gamma_rf = g.gamma * g.r_f;

    // Closed-form firm utilities of the two interior candidates.
    const double u_at_rg = g.r_f + rg_t * (g.m - g.r_f);
    const double u_at_rf = (gamma_rf + g.m) * (gamma_rf + g.m) / (4.0 * gamma_rf);

    // (1, 0): price at least matches the traffic value of the last unit.
    if (g.m >= g.r_f)
        return detail::make_outcome(g, 1.0, 0.0, K::full_share,
                                    "full_share/price_dominates");
    if (rg_t >= 1.0 && g.m >= gamma_rf)
        return detail::make_outcome(g, 1.0, 0.0, K::full_share,
                                    "full_share/saturated_threshold");

    // (0, 0): expert data is never profitable and selling is not either.
    if (g.c > g.r_g)
        return detail::make_outcome(g, 0.0, 0.0, K::no_interaction,
                                    "no_interaction/expert_too_costly");

    // (0, 1): sharing cannot be made profitable at this price.
    if (rg_t >= 1.0 && g.m < -gamma_rf)
        return detail::make_outcome(g, 0.0, 1.0, K::expert_only,
                                    "expert_only/saturated_threshold");
    if (rg_t < 1.0 && rg_t >= 0.0 && g.m < -gamma_rf && u_at_rg <= 0.0)
        return detail::make_outcome(g, 0.0, 1.0, K::expert_only,
                                    "expert_only/sharing_unprofitable");

    // (R_G, 0): share exactly to GenAI's indifference point.
    if (rg_t < 1.0 && rg_t > rf_t && g.m >= -gamma_rf && u_at_rg > u_at_rf)
        return detail::make_outcome(g, rg_t, 0.0, K::indifference_point,
                                    "indifference/beats_forced_completion");
    if (rg_t < 1.0 && rg_t >= 0.0 && g.m < -gamma_rf && u_at_rg > 0.0)
        return detail::make_outcome(g, rg_t, 0.0, K::indifference_point,
                                    "indifference/negative_forced_optimum");
    if (rg_t < 1.0 && rg_t >= 0.0 && g.m >= gamma_rf && g.m < g.r_f)
        return detail::make_outcome(g, rg_t, 0.0, K::indifference_point,
                                    "indifference/high_price");
    if (g.m < gamma_rf && rf_t >= rg_t && rg_t >= 0.0)
        return detail::make_outcome(g, rg_t, 0.0, K::indifference_point,
                                    "indifference/forced_optimum_beyond");

    // (R_F, 1 - R_F): share the forced-completion optimum, GenAI fills up.
    if (rg_t >= 1.0 && g.m < gamma_rf && g.m >= -gamma_rf)
        return detail::make_outcome(g, rf_t, 1.0 - rf_t, K::forced_completion,
                                    "forced_completion/saturated_threshold");
    if (rg_t < 1.0 && rg_t > rf_t && g.m >= -gamma_rf && u_at_rg <= u_at_rf)
        return detail::make_outcome(g, rf_t, 1.0 - rf_t, K::forced_completion,
                                    "forced_completion/beats_indifference");

    throw std::logic_error("solve_spe: case ladder did not match (unreachable)");
}

/// Price at which the equilibrium family flips between (R_F, 1 - R_F)
/// (for m <= boundary) and (R_G, 0) (for m > boundary):
/// m^b = r_f (4 R_G - 3). Closed form available for gamma = 1 only.
inline double boundary_price(const GameParams& p) {
    if (p.gamma != 1.0)
        throw UnsupportedParameterError(
            "boundary_price: closed form is available for gamma = 1 only");
    return p.r_f * (4.0 * indifference_threshold(p) - 3.0);
}

} // namespace dsg
