#pragma once

#include <cmath>

namespace codet {

/// Neumaier compensated accumulator. Signed updates are supported, so a
/// running sum stays accurate when previously added terms are removed.
class CompensatedSum {
public:
    void add(double v) noexcept {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }

    void subtract(double v) noexcept { add(-v); }

    double value() const noexcept { return sum_ + comp_; }

    void reset() noexcept {
        sum_ = 0.0;
        comp_ = 0.0;
    }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

} // namespace codet
