#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "codet/errors.hpp"
#include "codet/stats.hpp"

namespace codet {

/// Thresholds that turn "decisively or vaguely" into numbers. Defaults are
/// tuned so the stock scenarios classify the way their trajectories read.
struct TrendParams {
    double tail_fraction = 0.25;
    double half_band = 0.05;
    double decisive_band = 0.02;
    double growth_ratio_hi = 1.3;
    double growth_ratio_lo = 1.05;
    std::size_t min_tail_points = 20;

    void validate() const {
        if (!(tail_fraction > 0.0) || tail_fraction > 1.0) {
            throw BadParametersError("tail_fraction must be in (0, 1]");
        }
        if (!(decisive_band > 0.0) || !(decisive_band < half_band)) {
            throw BadParametersError(
                "bands must satisfy 0 < decisive_band < half_band");
        }
        if (!(growth_ratio_lo > 0.0) ||
            !(growth_ratio_lo < growth_ratio_hi)) {
            throw BadParametersError(
                "ratios must satisfy 0 < growth_ratio_lo < growth_ratio_hi");
        }
        if (min_tail_points == 0) {
            throw BadParametersError("min_tail_points must be positive");
        }
    }
};

enum class ITrendLabel { ToHalfDecisive, ToHalfVague, AwayVague, AwayDecisive };
enum class BTrendLabel { GrowingDecisive, BoundedDecisive, Ambiguous };

/// Does the ratio statistic approach 1/2? `tail_mean_deviation` is the mean
/// of |I_k - 1/2| over the tail window.
struct ITrend {
    ITrendLabel label = ITrendLabel::AwayDecisive;
    double tail_mean_deviation = 0.0;
};

/// Does the variation statistic grow or stay bounded? `ratio` compares the
/// last-quarter window mean against the quarter ending at N/2; `slope` is
/// the least-squares coefficient of B_k on sqrt(k) over the tail.
struct BTrend {
    BTrendLabel label = BTrendLabel::Ambiguous;
    double ratio = 1.0;
    double slope = 0.0;
};

enum class Decision {
    IntrusionAbsent,
    IntrusionPresent,
    InterruptAndRerunDeterministic
};

enum class RuleCase { Case1i, Case1ii, Case2i, Case2ii, Case2iiiPresent, Case2iiiRerun };

inline std::string to_string(ITrendLabel l) {
    switch (l) {
        case ITrendLabel::ToHalfDecisive: return "ToHalfDecisive";
        case ITrendLabel::ToHalfVague: return "ToHalfVague";
        case ITrendLabel::AwayVague: return "AwayVague";
        case ITrendLabel::AwayDecisive: return "AwayDecisive";
    }
    return "?";
}

inline std::string to_string(BTrendLabel l) {
    switch (l) {
        case BTrendLabel::GrowingDecisive: return "GrowingDecisive";
        case BTrendLabel::BoundedDecisive: return "BoundedDecisive";
        case BTrendLabel::Ambiguous: return "Ambiguous";
    }
    return "?";
}

inline std::string to_string(Decision d) {
    switch (d) {
        case Decision::IntrusionAbsent: return "IntrusionAbsent";
        case Decision::IntrusionPresent: return "IntrusionPresent";
        case Decision::InterruptAndRerunDeterministic:
            return "InterruptAndRerunDeterministic";
    }
    return "?";
}

inline std::string to_string(RuleCase c) {
    switch (c) {
        case RuleCase::Case1i: return "1i";
        case RuleCase::Case1ii: return "1ii";
        case RuleCase::Case2i: return "2i";
        case RuleCase::Case2ii: return "2ii";
        case RuleCase::Case2iiiPresent: return "2iii_present";
        case RuleCase::Case2iiiRerun: return "2iii_rerun";
    }
    return "?";
}

/// Outcome of the rule of thumb, with the case that fired and a rationale
/// trace of both trend assessments (and the endpoint check when consulted).
struct Verdict {
    Decision decision = Decision::IntrusionAbsent;
    RuleCase fired_case = RuleCase::Case1i;
    double i_deviation = 0.0;
    double b_ratio = 0.0;
    std::optional<bool> endpoint_differs;
    std::string rationale;
};

/// Process exit code for a decision: 0 absent, 10 present, 20 rerun.
inline int exit_code(Decision d) {
    switch (d) {
        case Decision::IntrusionAbsent: return 0;
        case Decision::IntrusionPresent: return 10;
        case Decision::InterruptAndRerunDeterministic: return 20;
    }
    return 0;
}

namespace detail {

inline std::string format_num(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

} // namespace detail

/// Classify the tail behaviour of I_n against 1/2. Undefined points are
/// skipped; the tail window holds the last
/// max(min_tail_points, ceil(tail_fraction * #defined)) defined points.
inline ITrend assess_I_trend(const Trajectory& traj,
                             const TrendParams& p = {}) {
    p.validate();
    std::vector<double> defined;
    defined.reserve(traj.size());
    for (const auto& pt : traj.points) {
        if (pt.i) defined.push_back(*pt.i);
    }
    if (defined.size() < p.min_tail_points) {
        throw InsufficientDataError(
            "I-trend needs at least " + std::to_string(p.min_tail_points) +
            " defined points, have " + std::to_string(defined.size()));
    }
    const auto window = std::min(
        defined.size(),
        std::max(p.min_tail_points,
                 static_cast<std::size_t>(std::ceil(
                     p.tail_fraction * static_cast<double>(defined.size())))));
    double dev = 0.0;
    for (std::size_t k = defined.size() - window; k < defined.size(); ++k) {
        dev += std::abs(defined[k] - 0.5);
    }
    dev /= static_cast<double>(window);

    ITrend out;
    out.tail_mean_deviation = dev;
    if (dev <= p.decisive_band) {
        out.label = ITrendLabel::ToHalfDecisive;
    } else if (dev <= p.half_band) {
        out.label = ITrendLabel::ToHalfVague;
    } else if (dev >= 2.0 * p.half_band) {
        out.label = ITrendLabel::AwayDecisive;
    } else {
        out.label = ITrendLabel::AwayVague;
    }
    return out;
}

/// Classify the growth of B_n. The window ratio is primary; the sqrt(k)
/// regression slope guards the sign when declaring decisive growth.
inline BTrend assess_B_trend(const Trajectory& traj,
                             const TrendParams& p = {}) {
    p.validate();
    if (traj.empty()) throw InsufficientDataError("empty trajectory");
    const double N = static_cast<double>(traj.back().n);
    if (N < 2.0 * static_cast<double>(p.min_tail_points)) {
        throw InsufficientDataError(
            "B-trend needs a trajectory of length >= " +
            std::to_string(2 * p.min_tail_points));
    }
    const double quarter = N / 4.0;
    double last_sum = 0.0, mid_sum = 0.0;
    std::size_t last_cnt = 0, mid_cnt = 0;
    for (const auto& pt : traj.points) {
        const double n = static_cast<double>(pt.n);
        if (n > N - quarter && n <= N) {
            last_sum += pt.b;
            ++last_cnt;
        }
        if (n > N / 2.0 - quarter && n <= N / 2.0) {
            mid_sum += pt.b;
            ++mid_cnt;
        }
    }
    if (last_cnt == 0 || mid_cnt == 0) {
        throw InsufficientDataError("trend windows are empty");
    }
    const double last_mean = last_sum / static_cast<double>(last_cnt);
    const double mid_mean = mid_sum / static_cast<double>(mid_cnt);
    double ratio;
    if (mid_mean > 0.0) {
        ratio = last_mean / mid_mean;
    } else {
        ratio = last_mean > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
    }

    // sqrt(k) regression over the tail (same window rule as the I-trend).
    const auto window = std::min(
        traj.size(),
        std::max(p.min_tail_points,
                 static_cast<std::size_t>(std::ceil(
                     p.tail_fraction * static_cast<double>(traj.size())))));
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t k = traj.size() - window; k < traj.size(); ++k) {
        const double x = std::sqrt(static_cast<double>(traj.points[k].n));
        const double y = traj.points[k].b;
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double w = static_cast<double>(window);
    const double denom = w * sxx - sx * sx;
    const double slope = denom != 0.0 ? (w * sxy - sx * sy) / denom : 0.0;

    BTrend out;
    out.ratio = ratio;
    out.slope = slope;
    if (ratio >= p.growth_ratio_hi && slope > 0.0) {
        out.label = BTrendLabel::GrowingDecisive;
    } else if (ratio <= p.growth_ratio_lo) {
        out.label = BTrendLabel::BoundedDecisive;
    } else {
        out.label = BTrendLabel::Ambiguous;
    }
    return out;
}

/// Execute the rule of thumb.
///
/// Case 1 (I stays away from 1/2): decisive distance alone confirms absence;
/// a vague distance confirms absence only when B is decisively bounded.
/// A vague distance with any other B assessment has no case in the rule and
/// raises InsufficientDataError (artifact-defined escalation: if the supplied
/// deviation is actually within half_band, the trend is reinterpreted as
/// vaguely-toward-half and Case 2 proceeds).
///
/// Case 2 (I approaches 1/2): decisive B growth means presence, decisive
/// boundedness means absence. Otherwise the endpoint condition h(a) = h(b)
/// decides: unequal endpoints mean presence, equal endpoints mean the run
/// must be repeated with deterministic inputs. Reaching this point without
/// endpoint information raises EndpointInfoRequiredError.
inline Verdict rule_of_thumb(const ITrend& it, const BTrend& bt,
                             std::optional<bool> endpoint_differs,
                             const TrendParams& p = {}) {
    p.validate();
    std::ostringstream why;
    why << "I-trend: " << to_string(it.label) << ", mean tail |I - 1/2| = "
        << detail::format_num(it.tail_mean_deviation) << "\n";
    why << "B-trend: " << to_string(bt.label)
        << ", window ratio = " << detail::format_num(bt.ratio)
        << ", sqrt-n slope = " << detail::format_num(bt.slope) << "\n";

    Verdict v;
    v.i_deviation = it.tail_mean_deviation;
    v.b_ratio = bt.ratio;

    auto finish = [&](Decision d, RuleCase c, const std::string& note) {
        v.decision = d;
        v.fired_case = c;
        why << note << "\n";
        v.rationale = why.str();
        return v;
    };

    bool to_half = it.label == ITrendLabel::ToHalfDecisive ||
                   it.label == ITrendLabel::ToHalfVague;

    if (it.label == ITrendLabel::AwayDecisive) {
        return finish(Decision::IntrusionAbsent, RuleCase::Case1i,
                      "case 1(i): I decisively tends away from 1/2");
    }
    if (it.label == ITrendLabel::AwayVague) {
        if (bt.label == BTrendLabel::BoundedDecisive) {
            return finish(Decision::IntrusionAbsent, RuleCase::Case1ii,
                          "case 1(ii): I seems away from 1/2 and B is "
                          "asymptotically bounded");
        }
        if (it.tail_mean_deviation <= p.half_band) {
            why << "escalation: deviation within half band; treating I as "
                   "vaguely toward 1/2 (artifact-defined 1(ii) doubt branch)\n";
            to_half = true;
        } else {
            throw InsufficientDataError(
                "I vaguely away from 1/2 while B is not decisively bounded: "
                "no rule case applies (artifact-defined 1(ii) doubt branch)");
        }
    }

    if (to_half) {
        if (bt.label == BTrendLabel::GrowingDecisive) {
            return finish(Decision::IntrusionPresent, RuleCase::Case2i,
                          "case 2(i): I approaches 1/2 and B decisively grows");
        }
        if (bt.label == BTrendLabel::BoundedDecisive) {
            return finish(Decision::IntrusionAbsent, RuleCase::Case2ii,
                          "case 2(ii): I approaches 1/2 but B is definitely "
                          "asymptotically bounded");
        }
        if (!endpoint_differs.has_value()) {
            throw EndpointInfoRequiredError(
                "case 2(iii) reached: endpoint information h(a) vs h(b) "
                "required to resolve an ambiguous B-trend");
        }
        v.endpoint_differs = endpoint_differs;
        why << "endpoint check: h(a) and h(b) "
            << (*endpoint_differs ? "differ" : "coincide") << "\n";
        if (*endpoint_differs) {
            return finish(Decision::IntrusionPresent, RuleCase::Case2iiiPresent,
                          "case 2(iii): B ambiguous and h(a) != h(b)");
        }
        return finish(Decision::InterruptAndRerunDeterministic,
                      RuleCase::Case2iiiRerun,
                      "case 2(iii): B ambiguous and h(a) = h(b); rerun with "
                      "deterministic inputs");
    }

    // Unreachable: every label is handled above.
    throw Error("unhandled trend combination");
}

/// Machine-readable one-liner for a verdict.
inline std::string verdict_record(const Verdict& v) {
    std::ostringstream os;
    os << "decision=" << to_string(v.decision)
       << " case=" << to_string(v.fired_case)
       << " i_dev=" << detail::format_num(v.i_deviation)
       << " b_ratio=" << detail::format_num(v.b_ratio) << " endpoint=";
    if (v.endpoint_differs.has_value()) {
        os << (*v.endpoint_differs ? "true" : "false");
    } else {
        os << "n/a";
    }
    return os.str();
}

} // namespace codet
