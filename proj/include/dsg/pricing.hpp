#pragma once

#include <string>
#include <vector>

#include "dsg/pareto.hpp"
#include "dsg/spe.hpp"

namespace dsg {

/// Solution of the designer's problem: choose m in [-r_f, r_f] to
/// maximize alpha + lambda x at the induced equilibrium.
struct PricingSolution {
    PriceIntervalSet optimal_prices; // every optimal m
    double objective_value;          // achieved alpha + lambda x
    double lambda;
    double representative_m;         // midpoint of the first interval
    std::string method;              // "closed_form" or "numeric"
};

/// Designer objective alpha^eq + lambda * x^eq at the equilibrium of g.
inline double objective(const GameInstance& g, double lambda) {
    if (!detail::finite(lambda) || lambda < 0.0)
        throw DomainError("objective: lambda must be finite and >= 0");
    const SpeOutcome eq = solve_spe(g);
    return eq.profile.alpha + lambda * eq.profile.x;
}

namespace detail {

inline PricingSolution finish(PriceIntervalSet set, double objective_value,
                              double lambda, std::string method) {
    const PriceInterval& first = set.intervals.front();
    return PricingSolution{std::move(set), objective_value, lambda,
                           0.5 * (first.lo + first.hi), std::move(method)};
}

} // namespace detail

/// Closed-form optimal price set, gamma = 1 and R_G in [0, 1] only.
///
/// If r_g < 2c the equilibrium is (R_G, 0) for every admissible price and
/// any m in [-r_f, r_f] is optimal. Otherwise, with m^b = r_f (4 R_G - 3):
///   lambda >= 1      -> { -r_f }          (maximal expert purchase)
///   lambda in (.5,1) -> { m^b }           (largest forced-completion share)
///   lambda == .5     -> [ m^b, r_f ]      (both families tie)
///   lambda <  .5     -> ( m^b, r_f ]      (indifference-point family)
inline PricingSolution optimal_price(const GameParams& p, double lambda) {
    if (!detail::finite(lambda) || lambda < 0.0)
        throw DomainError("optimal_price: lambda must be finite and >= 0");
    if (p.gamma != 1.0)
        throw UnsupportedParameterError(
            "optimal_price: closed form is available for gamma = 1 only");
    const double rg_t = indifference_threshold(p);
    if (rg_t < 0.0 || rg_t > 1.0)
        throw UnsupportedParameterError(
            "optimal_price: regularity requires c <= r_g");

    if (p.r_g < 2.0 * p.c) {
        PriceIntervalSet all({PriceInterval{-p.r_f, true, p.r_f, true}});
        return detail::finish(std::move(all), rg_t, lambda, "closed_form");
    }

    const double mb = boundary_price(p);
    if (lambda >= 1.0) {
        // At m = -r_f forced completion gives (0, 1): objective = lambda.
        PriceIntervalSet set({PriceInterval{-p.r_f, true, -p.r_f, true}});
        return detail::finish(std::move(set), lambda, lambda, "closed_form");
    }
    if (lambda > 0.5) {
        const double rf_at_mb = (p.r_f + mb) / (2.0 * p.r_f);
        PriceIntervalSet set({PriceInterval{mb, true, mb, true}});
        return detail::finish(std::move(set), rf_at_mb * (1.0 - lambda) + lambda,
                              lambda, "closed_form");
    }
    if (lambda == 0.5) {
        PriceIntervalSet set({PriceInterval{mb, true, p.r_f, true}});
        return detail::finish(std::move(set), rg_t, lambda, "closed_form");
    }
    PriceIntervalSet set({PriceInterval{mb, false, p.r_f, true}});
    return detail::finish(std::move(set), rg_t, lambda, "closed_form");
}

/// Numeric fallback for parameter regimes without a closed form: sweep
/// [-r_f, r_f] (endpoints included), keep every grid price within 1e-9 of
/// the best objective, and merge consecutive winners into intervals.
inline PricingSolution optimal_price_numeric(const GameParams& p, double lambda,
                                             int sweep_points = 2001) {
    if (!detail::finite(lambda) || lambda < 0.0)
        throw DomainError("optimal_price_numeric: lambda must be finite and >= 0");
    if (sweep_points < 2)
        throw ConfigError("optimal_price_numeric: sweep_points must be >= 2");

    std::vector<double> ms(static_cast<std::size_t>(sweep_points));
    std::vector<double> vals(static_cast<std::size_t>(sweep_points));
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < sweep_points; ++i) {
        const double t = static_cast<double>(i) / (sweep_points - 1);
        ms[i] = -p.r_f + t * (2.0 * p.r_f);
        vals[i] = objective(GameInstance(p, ms[i]), lambda);
        best = std::max(best, vals[i]);
    }

    std::vector<PriceInterval> parts;
    for (int i = 0; i < sweep_points;) {
        if (vals[i] < best - 1e-9) {
            ++i;
            continue;
        }
        int j = i;
        while (j + 1 < sweep_points && vals[j + 1] >= best - 1e-9) ++j;
        parts.push_back(PriceInterval{ms[i], true, ms[j], true});
        i = j + 1;
    }
    return detail::finish(PriceIntervalSet(std::move(parts)), best, lambda, "numeric");
}

/// Dispatch used by the CLI: closed form where it exists, numeric sweep
/// elsewhere.
inline PricingSolution solve_pricing(const GameParams& p, double lambda) {
    if (p.gamma == 1.0 && indifference_threshold(p) >= 0.0)
        return optimal_price(p, lambda);
    return optimal_price_numeric(p, lambda);
}

} // namespace dsg
