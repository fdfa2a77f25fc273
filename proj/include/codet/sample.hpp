#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "codet/errors.hpp"

namespace codet {

namespace detail {

// NaN keys would break the ordering invariants silently; reject them loud.
inline void require_finite_pair(double x, double y) {
    if (!std::isfinite(x) || !std::isfinite(y)) {
        throw BadParametersError("non-finite observation (" +
                                 std::to_string(x) + ", " + std::to_string(y) +
                                 ")");
    }
}

} // namespace detail

/// Arrival-ordered (input, output) observations. Inputs must be pairwise
/// distinct; ties are rejected where the sample is consumed.
struct PairedSample {
    std::vector<std::pair<double, double>> pairs;

    std::size_t size() const noexcept { return pairs.size(); }
    bool empty() const noexcept { return pairs.empty(); }
};

/// Output values reordered by ascending input: y_ordered[k] accompanies the
/// (k+1)-th smallest x.
struct ConcomitantSeries {
    std::vector<double> y_ordered;

    std::size_t n() const noexcept { return y_ordered.size(); }
};

/// Sort the sample by input value and return the concomitant series.
/// Throws DuplicateInputError when two inputs compare equal.
inline ConcomitantSeries concomitant_sort(const PairedSample& sample) {
    if (sample.empty()) {
        throw TooShortError("sample must contain at least one pair");
    }
    for (const auto& [x, y] : sample.pairs) detail::require_finite_pair(x, y);
    auto sorted = sample.pairs;
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& l, const auto& r) { return l.first < r.first; });
    ConcomitantSeries series;
    series.y_ordered.reserve(sorted.size());
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        if (k > 0 && !(sorted[k - 1].first < sorted[k].first)) {
            throw DuplicateInputError(sorted[k].first);
        }
        series.y_ordered.push_back(sorted[k].second);
    }
    return series;
}

} // namespace codet
