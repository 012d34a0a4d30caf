#pragma once

#include <algorithm>
#include <limits>
#include <utility>
#include <vector>

#include "dsg/spe.hpp"

namespace dsg {

/// One real interval with open/closed endpoint flags.
struct PriceInterval {
    double lo;
    bool lo_closed;
    double hi;
    bool hi_closed;

    bool empty() const { return lo > hi || (lo == hi && !(lo_closed && hi_closed)); }
    bool contains(double m) const {
        if (m < lo || m > hi) return false;
        if (m == lo && !lo_closed) return false;
        if (m == hi && !hi_closed) return false;
        return true;
    }
};

/// A finite union of disjoint intervals, sorted ascending. Construction
/// drops empty intervals and merges overlapping or exactly abutting ones
/// (abutting counts as connected when at least one touching endpoint is
/// closed).
struct PriceIntervalSet {
    std::vector<PriceInterval> intervals;

    PriceIntervalSet() = default;

    explicit PriceIntervalSet(std::vector<PriceInterval> raw) {
        raw.erase(std::remove_if(raw.begin(), raw.end(),
                                 [](const PriceInterval& iv) { return iv.empty(); }),
                  raw.end());
        std::sort(raw.begin(), raw.end(), [](const PriceInterval& a, const PriceInterval& b) {
            return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
        });
        for (const PriceInterval& iv : raw) {
            if (!intervals.empty()) {
                PriceInterval& last = intervals.back();
                const bool connected =
                    iv.lo < last.hi ||
                    (iv.lo == last.hi && (iv.lo_closed || last.hi_closed));
                if (connected) {
                    if (iv.hi > last.hi || (iv.hi == last.hi && iv.hi_closed)) {
                        last.hi = iv.hi;
                        last.hi_closed = iv.hi_closed;
                    }
                    continue;
                }
            }
            intervals.push_back(iv);
        }
    }

    bool empty() const { return intervals.empty(); }

    bool contains(double m) const {
        for (const PriceInterval& iv : intervals)
            if (iv.contains(m)) return true;
        return false;
    }

    /// Smallest distance from m to any interval endpoint (infinite when
    /// the set is empty). Used by sweep tests to skip boundary points.
    double endpoint_distance(double m) const {
        double d = std::numeric_limits<double>::infinity();
        for (const PriceInterval& iv : intervals) {
            d = std::min(d, std::abs(m - iv.lo));
            d = std::min(d, std::abs(m - iv.hi));
        }
        return d;
    }
};

/// Utilities of the no-sharing baseline: alpha = 0 with GenAI's best
/// reply. GenAI buys everything when R_G > 0, nothing otherwise.
inline std::pair<double, double> pareto_baseline(const GameInstance& g) {
    const ActionProfile baseline(0.0, best_response(g, 0.0));
    return {firm_utility(g, baseline), genai_utility(g, baseline)};
}

/// True iff the equilibrium outcome weakly dominates the no-sharing
/// baseline (both utilities, 1e-12 slack) and actually differs from it.
/// A price whose equilibrium is the baseline outcome itself improves
/// nothing and is not counted.
inline bool is_pareto_improving(const GameInstance& g) {
    const ActionProfile baseline(0.0, best_response(g, 0.0));
    const SpeOutcome eq = solve_spe(g);
    if (eq.profile.alpha == baseline.alpha && eq.profile.x == baseline.x)
        return false;
    return eq.firm_utility >= firm_utility(g, baseline) - 1e-12 &&
           eq.genai_utility >= genai_utility(g, baseline) - 1e-12;
}

/// Closed-form set of Pareto-improving prices.
///
/// gamma = 1: empty when R_G <= 0. Otherwise the union of
///   - the indifference-equilibrium interval
///       ( max{-r_f, -r_f (1 - R_G)/R_G, r_f (4 R_G - 3)}, 0 ]
///     which is always a candidate, and
///   - when r_g < 2 r_f, the forced-completion interval
///       [ -r_f, min{r_f (r_g - 2c)/(r_g - 2 r_f), r_f (4 R_G - 3)} ].
///   At r_g = 2 r_f the quotient is singular; GenAI's participation
///   condition is then evaluated before the division, where it reduces to
///   r_g <= 2c independently of m: the forced interval is [-r_f, m^b]
///   when r_g <= 2c and collapses to the single point {-r_f} otherwise.
/// Empty intervals are pruned silently.
///
/// gamma < 1: the single sufficient interval [m_lo, m_hi] with
///   m_hi = min{gamma r_f, r_g (1 - gamma), r_f (gamma r_g + 2c)/(r_g + 2 r_f)
///              [, r_f (gamma r_g - 2c)/(r_g - 2 r_f) when r_g < 2 r_f]}
///   m_lo = max{-gamma r_f, -r_f (1 - R_G)/R_G
///              [, r_f (gamma r_g - 2c)/(r_g - 2 r_f) when r_g > 2 r_f]}
/// which may extend to positive prices and is not clipped at zero.
inline PriceIntervalSet pareto_price_set(const GameParams& p) {
    const double rg_t = indifference_threshold(p);
    if (rg_t <= 0.0) return PriceIntervalSet{};

    std::vector<PriceInterval> parts;

    if (p.gamma == 1.0) {
        const double mb = boundary_price(p);
        const double firm_floor = -p.r_f * (1.0 - rg_t) / rg_t;
        const double lo = std::max({-p.r_f, firm_floor, mb});
        parts.push_back(PriceInterval{lo, false, 0.0, true});

        if (p.r_g < 2.0 * p.r_f) {
            const double genai_cap = p.r_f * (p.r_g - 2.0 * p.c) / (p.r_g - 2.0 * p.r_f);
            parts.push_back(PriceInterval{-p.r_f, true, std::min(genai_cap, mb), true});
        } else if (p.r_g == 2.0 * p.r_f) {
            if (p.r_g <= 2.0 * p.c)
                parts.push_back(PriceInterval{-p.r_f, true, mb, true});
            else
                parts.push_back(PriceInterval{-p.r_f, true, -p.r_f, true});
        }
        return PriceIntervalSet(std::move(parts));
    }

    const double gamma_rf = p.gamma * p.r_f;
    const double singular = p.r_g == 2.0 * p.r_f
                                ? 0.0
                                : p.r_f * (p.gamma * p.r_g - 2.0 * p.c) / (p.r_g - 2.0 * p.r_f);
    double hi = std::min({gamma_rf, p.r_g * (1.0 - p.gamma),
                          p.r_f * (p.gamma * p.r_g + 2.0 * p.c) / (p.r_g + 2.0 * p.r_f)});
    double lo = std::max(-gamma_rf, -p.r_f * (1.0 - rg_t) / rg_t);
    if (p.r_g < 2.0 * p.r_f) hi = std::min(hi, singular);
    if (p.r_g > 2.0 * p.r_f) lo = std::max(lo, singular);
    // r_g = 2 r_f: the participation condition behind the singular term is
    // m-free (it reduces to gamma r_g <= 2c); when it fails, only the
    // degenerate forced profile at m = -gamma r_f remains safe, so clamp.
    if (p.r_g == 2.0 * p.r_f && p.gamma * p.r_g > 2.0 * p.c) hi = std::min(hi, -gamma_rf);
    parts.push_back(PriceInterval{lo, true, hi, true});
    return PriceIntervalSet(std::move(parts));
}

} // namespace dsg
