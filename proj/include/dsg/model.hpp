#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "dsg/errors.hpp"

namespace dsg {

/// Absolute slack for accepting action profiles whose coordinates were
/// corrupted by rounding (grid endpoints, 1 - alpha arithmetic). Values
/// inside the slack are clamped back onto the feasible set.
inline constexpr double kFeasibilityTol = 1e-9;

namespace detail {
inline bool finite(double v) { return std::isfinite(v); }
} // namespace detail

/// Market-side parameters of the game: everything except the data price.
///
///   r_f   marginal reward per unit of user traffic for Firm, > 0
///   r_g   marginal reward per unit of user traffic for GenAI, > 0
///   c     cost per data unit charged by external experts, > 0
///   gamma overlap between Firm data and expert data, in (0, 1];
///         gamma = 1 means the two sources are perfect substitutes
///
/// gamma = 0 is rejected: the game degenerates to a linear program and the
/// threshold formulas divide by gamma.
struct GameParams {
    double r_f;
    double r_g;
    double c;
    double gamma = 1.0;

    GameParams(double r_f_, double r_g_, double c_, double gamma_ = 1.0)
        : r_f(r_f_), r_g(r_g_), c(c_), gamma(gamma_) {
        if (!detail::finite(r_f) || r_f <= 0.0)
            throw InvalidParameterError("r_f must be finite and > 0");
        if (!detail::finite(r_g) || r_g <= 0.0)
            throw InvalidParameterError("r_g must be finite and > 0");
        if (!detail::finite(c) || c <= 0.0)
            throw InvalidParameterError("c must be finite and > 0");
        if (!detail::finite(gamma) || gamma <= 0.0 || gamma > 1.0)
            throw InvalidParameterError("gamma must lie in (0, 1]");
    }
};

/// One fully specified game: market parameters plus the per-unit data
/// price m. m may be negative (Firm pays GenAI to accept its data).
struct GameInstance {
    double r_f;
    double r_g;
    double c;
    double m;
    double gamma = 1.0;

    GameInstance(double r_f_, double r_g_, double c_, double m_, double gamma_ = 1.0)
        : r_f(r_f_), r_g(r_g_), c(c_), m(m_), gamma(gamma_) {
        GameParams check(r_f, r_g, c, gamma); // validates the shared fields
        if (!detail::finite(m))
            throw InvalidParameterError("m must be finite");
    }

    GameInstance(const GameParams& p, double m_)
        : GameInstance(p.r_f, p.r_g, p.c, m_, p.gamma) {}

    GameParams params() const { return GameParams(r_f, r_g, c, gamma); }
};

inline GameInstance with_price(const GameParams& p, double m) {
    return GameInstance(p, m);
}

/// A feasible pair of actions: Firm's shared fraction alpha in [0, 1] and
/// GenAI's expert purchase x in [0, 1 - alpha] (the aggregate dataset is
/// bounded). Construction clamps coordinates within kFeasibilityTol and
/// rejects anything farther out.
struct ActionProfile {
    double alpha;
    double x;

    ActionProfile(double alpha_, double x_) : alpha(alpha_), x(x_) {
        if (!detail::finite(alpha) || alpha < -kFeasibilityTol || alpha > 1.0 + kFeasibilityTol)
            throw FeasibilityError("alpha must lie in [0, 1]");
        alpha = std::clamp(alpha, 0.0, 1.0);
        const double x_cap = 1.0 - alpha;
        if (!detail::finite(x) || x < -kFeasibilityTol || x > x_cap + kFeasibilityTol)
            throw FeasibilityError("x must lie in [0, 1 - alpha]");
        x = std::clamp(x, 0.0, x_cap);
    }
};

/// The two decision thresholds of the game.
///
///   r_g_threshold  R_G = (r_g - c) / (gamma r_g): the sharing level at
///                  which GenAI is indifferent between buying all
///                  remaining expert data and buying none.
///   r_f_threshold  R_F = (gamma r_f + m) / (2 gamma r_f): Firm's
///                  unconstrained optimum assuming GenAI completes its
///                  dataset (x = 1 - alpha).
///   regular        true iff both thresholds lie in [0, 1].
struct Thresholds {
    double r_g_threshold;
    double r_f_threshold;
    bool regular;
};

/// GenAI's indifference threshold R_G. Needs no price, so it is defined on
/// the price-free parameters.
inline double indifference_threshold(const GameParams& p) {
    return (p.r_g - p.c) / (p.gamma * p.r_g);
}

/// Firm's sharing level under forced completion, R_F.
inline double forced_completion_level(const GameInstance& g) {
    return (g.gamma * g.r_f + g.m) / (2.0 * g.gamma * g.r_f);
}

inline Thresholds thresholds(const GameInstance& g) {
    const double rg_t = indifference_threshold(g.params());
    const double rf_t = forced_completion_level(g);
    const bool regular = rg_t >= 0.0 && rg_t <= 1.0 && rf_t >= 0.0 && rf_t <= 1.0;
    return Thresholds{rg_t, rf_t, regular};
}

/// Fraction of users that choose Firm: T(alpha, x) = 1 - alpha - x +
/// gamma * alpha * x. For gamma = 1 this factors as (1 - alpha)(1 - x).
/// The result is clamped to [0, 1]; the raw expression can dip a few ulp
/// below zero when x = 1 - alpha cancels.
inline double traffic(const GameInstance& g, const ActionProfile& a) {
    const double t = 1.0 - a.alpha - a.x + g.gamma * a.alpha * a.x;
    return std::clamp(t, 0.0, 1.0);
}

/// Firm's utility U(alpha, x) = T(alpha, x) r_f + m alpha.
inline double firm_utility(const GameInstance& g, const ActionProfile& a) {
    return traffic(g, a) * g.r_f + g.m * a.alpha;
}

/// GenAI's utility V(alpha, x) = (1 - T(alpha, x)) r_g - c x - m alpha.
inline double genai_utility(const GameInstance& g, const ActionProfile& a) {
    return (1.0 - traffic(g, a)) * g.r_g - g.c * a.x - g.m * a.alpha;
}

} // namespace dsg
