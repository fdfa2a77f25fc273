#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace codet {

namespace detail {

inline double simpson(double fa, double fm, double fb, double width) {
    return width / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson_step(const std::function<double(double)>& f,
                                    double a, double fa, double b, double fb,
                                    double m, double fm, double whole,
                                    double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return adaptive_simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

} // namespace detail

/// Adaptive Simpson quadrature of f over [a, b] with absolute tolerance.
inline double adaptive_simpson(const std::function<double(double)>& f, double a,
                               double b, double abs_tol, int max_depth = 48) {
    if (!(b > a)) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(m);
    const double whole = detail::simpson(fa, fm, fb, b - a);
    return detail::adaptive_simpson_step(f, a, fa, b, fb, m, fm, whole, abs_tol,
                                         max_depth);
}

/// Locate the zero crossings of f on [a, b]: brackets are found on an
/// equispaced scan and refined by bisection to intervals of width x_tol.
/// Scan points where f is exactly zero are returned as-is. The result is
/// sorted and contains interior points only.
inline std::vector<double> isolate_sign_changes(
    const std::function<double(double)>& f, double a, double b,
    int scan_cells = 1024, double x_tol = 1e-12) {
    std::vector<double> roots;
    if (!(b > a) || scan_cells < 1) return roots;

    const double step = (b - a) / scan_cells;
    double x0 = a;
    double f0 = f(x0);
    for (int k = 1; k <= scan_cells; ++k) {
        const double x1 = (k == scan_cells) ? b : a + step * k;
        const double f1 = f(x1);
        if (f0 == 0.0 && x0 > a) {
            roots.push_back(x0);
        } else if (f0 * f1 < 0.0) {
            double lo = x0, hi = x1, flo = f0;
            while (hi - lo > x_tol) {
                const double mid = 0.5 * (lo + hi);
                const double fmid = f(mid);
                if (fmid == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if (flo * fmid < 0.0) {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fmid;
                }
            }
            roots.push_back(0.5 * (lo + hi));
        }
        x0 = x1;
        f0 = f1;
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

} // namespace codet
