#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "codet/compensated.hpp"
#include "codet/errors.hpp"
#include "codet/sample.hpp"
#include "codet/transfer.hpp"

namespace codet {

/// The scaled increment statistics of a concomitant series of length n:
///   a = (1/sqrt(n)) * sum of positive increments   (A_n)
///   b = (1/sqrt(n)) * sum of absolute increments   (B_n)
///   i = a / b                                      (I_n)
struct StatTriple {
    std::size_t n = 0;
    double a = 0.0;
    double b = 0.0;
    double i = 0.0;
};

/// One trajectory entry. `i` is empty when the prefix has zero total
/// variation (all outputs equal), so downstream consumers skip rather than
/// propagate NaN.
struct TrajectoryPoint {
    std::size_t n = 0;
    double a = 0.0;
    double b = 0.0;
    std::optional<double> i;
};

/// Statistics over every prefix n = 2..N of an arrival stream.
struct Trajectory {
    std::vector<TrajectoryPoint> points;

    std::size_t size() const noexcept { return points.size(); }
    bool empty() const noexcept { return points.empty(); }
    const TrajectoryPoint& back() const { return points.back(); }
};

namespace detail {

struct DiffSums {
    double pos = 0.0;
    double abs = 0.0;
};

// Left-to-right accumulation; compensated beyond 10^4 terms to keep the
// incremental/batch tolerance honest on long series.
inline DiffSums diff_sums(std::span<const double> y) {
    DiffSums s;
    if (y.size() <= 10000) {
        for (std::size_t k = 1; k < y.size(); ++k) {
            const double d = y[k] - y[k - 1];
            if (d > 0.0) s.pos += d;
            s.abs += std::abs(d);
        }
    } else {
        CompensatedSum pos, abs;
        for (std::size_t k = 1; k < y.size(); ++k) {
            const double d = y[k] - y[k - 1];
            if (d > 0.0) pos.add(d);
            abs.add(std::abs(d));
        }
        s.pos = pos.value();
        s.abs = abs.value();
    }
    return s;
}

} // namespace detail

/// Statistics of an ordered series with the undefined-ratio marker instead
/// of an error. Defined for any n >= 1 (n < 2 gives zero sums, empty i).
inline TrajectoryPoint stat_point(std::span<const double> y_ordered) {
    TrajectoryPoint p;
    p.n = y_ordered.size();
    if (p.n < 2) return p;
    const auto sums = detail::diff_sums(y_ordered);
    const double root_n = std::sqrt(static_cast<double>(p.n));
    p.a = sums.pos / root_n;
    p.b = sums.abs / root_n;
    if (p.b > 0.0) p.i = p.a / p.b;
    return p;
}

/// Statistics of an ordered series. Throws TooShortError for n < 2 and
/// NoVariationError when every output is equal (b = 0, ratio undefined).
inline StatTriple compute_stats(std::span<const double> y_ordered) {
    if (y_ordered.size() < 2) {
        throw TooShortError("statistics require at least 2 observations");
    }
    const TrajectoryPoint p = stat_point(y_ordered);
    if (!p.i) {
        throw NoVariationError(
            "all outputs equal: total variation is zero, ratio undefined");
    }
    return StatTriple{p.n, p.a, p.b, *p.i};
}

inline StatTriple compute_stats(const ConcomitantSeries& series) {
    return compute_stats(std::span<const double>(series.y_ordered));
}

/// Reasonable-order diagnostic over non-compromised outputs h(x):
///   (1/sqrt(n)) * sum |h(x_k) - h(x_{k-1})| for x sorted ascending.
/// Returns 0 for fewer than two points (empty sum).
inline double compute_B0(const TransferFunction& h,
                         std::span<const double> x_sorted) {
    for (std::size_t k = 0; k < x_sorted.size(); ++k) {
        if (!h.in_domain(x_sorted[k])) {
            throw DomainViolationError("input " + std::to_string(x_sorted[k]) +
                                       " outside transfer window of '" +
                                       h.name + "'");
        }
        if (k > 0 && !(x_sorted[k - 1] < x_sorted[k])) {
            throw BadParametersError("inputs must be strictly increasing");
        }
    }
    if (x_sorted.size() < 2) return 0.0;
    double sum = 0.0;
    double prev = h.eval(x_sorted[0]);
    for (std::size_t k = 1; k < x_sorted.size(); ++k) {
        const double cur = h.eval(x_sorted[k]);
        sum += std::abs(cur - prev);
        prev = cur;
    }
    return sum / std::sqrt(static_cast<double>(x_sorted.size()));
}

/// Statistics of every prefix (in arrival order) of the sample.
///
/// Each point equals the batch computation (concomitant_sort + stat_point)
/// on that prefix bit-for-bit: the sorted series is maintained by insertion
/// and the sums are recomputed left-to-right per prefix.
inline Trajectory prefix_trajectory(const PairedSample& sample) {
    if (sample.size() < 2) {
        throw TooShortError("trajectory requires at least 2 pairs");
    }
    std::vector<double> xs;
    std::vector<double> ys;
    xs.reserve(sample.size());
    ys.reserve(sample.size());
    Trajectory traj;
    traj.points.reserve(sample.size() - 1);
    for (std::size_t k = 0; k < sample.size(); ++k) {
        const auto [x, y] = sample.pairs[k];
        detail::require_finite_pair(x, y);
        const auto it = std::lower_bound(xs.begin(), xs.end(), x);
        if (it != xs.end() && !(x < *it)) throw DuplicateInputError(x);
        const auto idx = static_cast<std::size_t>(it - xs.begin());
        xs.insert(it, x);
        ys.insert(ys.begin() + static_cast<std::ptrdiff_t>(idx), y);
        if (k >= 1) traj.points.push_back(stat_point(ys));
    }
    return traj;
}

/// Streaming version of prefix statistics: each insert locates the new
/// input's neighbours in an ordered map, removes the bridged increment and
/// adds the two new ones, keeping both running sums in compensated form.
/// O(log n) per insert; agrees with batch recomputation to 1e-12 relative.
class IncrementalStats {
public:
    /// Insert one pair and return the statistics of the enlarged set.
    TrajectoryPoint insert(double x, double y) {
        detail::require_finite_pair(x, y);
        const auto [it, inserted] = by_x_.emplace(x, y);
        if (!inserted) throw DuplicateInputError(x);
        const auto next = std::next(it);
        const bool has_prev = it != by_x_.begin();
        const bool has_next = next != by_x_.end();
        if (has_prev && has_next) {
            const double bridged = next->second - std::prev(it)->second;
            pos_.subtract(std::max(bridged, 0.0));
            abs_.subtract(std::abs(bridged));
        }
        if (has_prev) {
            const double d = y - std::prev(it)->second;
            pos_.add(std::max(d, 0.0));
            abs_.add(std::abs(d));
        }
        if (has_next) {
            const double d = next->second - y;
            pos_.add(std::max(d, 0.0));
            abs_.add(std::abs(d));
        }
        return current();
    }

    /// Statistics of the points inserted so far.
    TrajectoryPoint current() const {
        TrajectoryPoint p;
        p.n = by_x_.size();
        if (p.n < 2) return p;
        const double root_n = std::sqrt(static_cast<double>(p.n));
        // Compensated removals can leave exact-zero sums at -1e-17 or so.
        p.a = std::max(pos_.value(), 0.0) / root_n;
        p.b = std::max(abs_.value(), 0.0) / root_n;
        if (p.b > 0.0) p.i = p.a / p.b;
        return p;
    }

    std::size_t size() const noexcept { return by_x_.size(); }

    /// Raw running sums (unscaled), mainly for diagnostics and tests.
    double positive_sum() const noexcept { return pos_.value(); }
    double absolute_sum() const noexcept { return abs_.value(); }

private:
    std::map<double, double> by_x_;
    CompensatedSum pos_;
    CompensatedSum abs_;
};

} // namespace codet
