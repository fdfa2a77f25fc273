#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "codet/errors.hpp"
#include "codet/quadrature.hpp"

namespace codet {

/// Static transfer function h on the window [a, b].
///
/// `deriv` is always callable: it is the analytic derivative when one was
/// supplied, otherwise a second-order finite-difference fallback built from
/// `eval` (step 1e-6 * (b - a), one-sided at the window ends).
struct TransferFunction {
    std::string name;
    double a = 0.0;
    double b = 1.0;
    std::function<double(double)> eval;
    std::function<double(double)> deriv;
    bool analytic_deriv = false;

    double operator()(double x) const { return eval(x); }

    bool in_domain(double x) const noexcept { return x >= a && x <= b; }
};

/// Second-order finite-difference derivative of f on [a, b].
/// Central inside the window, 3-point one-sided at the ends so the error
/// stays O(step^2) everywhere.
inline std::function<double(double)> finite_difference_deriv(
    std::function<double(double)> f, double a, double b) {
    const double step = 1e-6 * (b - a);
    return [f = std::move(f), a, b, step](double x) {
        if (x - step < a) {
            return (-3.0 * f(x) + 4.0 * f(x + step) - f(x + 2.0 * step)) /
                   (2.0 * step);
        }
        if (x + step > b) {
            return (3.0 * f(x) - 4.0 * f(x - step) + f(x - 2.0 * step)) /
                   (2.0 * step);
        }
        return (f(x + step) - f(x - step)) / (2.0 * step);
    };
}

/// Build a transfer function from callables. Passing no derivative installs
/// the finite-difference fallback.
inline TransferFunction make_custom_transfer(
    std::string name, double a, double b, std::function<double(double)> eval,
    std::function<double(double)> deriv = {}) {
    if (!(a < b)) throw BadParametersError("transfer window requires a < b");
    if (!eval) throw BadParametersError("transfer requires an eval callable");
    TransferFunction h;
    h.name = std::move(name);
    h.a = a;
    h.b = b;
    h.eval = std::move(eval);
    h.analytic_deriv = static_cast<bool>(deriv);
    h.deriv = h.analytic_deriv ? std::move(deriv)
                               : finite_difference_deriv(h.eval, a, b);
    return h;
}

/// Polynomial with coefficients in ascending-degree order.
inline TransferFunction make_polynomial(std::vector<double> coeffs, double a,
                                        double b) {
    if (coeffs.empty()) {
        throw BadParametersError("polynomial requires at least one coefficient");
    }
    std::vector<double> dcoeffs;
    for (std::size_t k = 1; k < coeffs.size(); ++k) {
        dcoeffs.push_back(static_cast<double>(k) * coeffs[k]);
    }
    auto horner = [](const std::vector<double>& c, double x) {
        double acc = 0.0;
        for (std::size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
        return acc;
    };
    auto eval = [c = std::move(coeffs), horner](double x) { return horner(c, x); };
    auto deriv = [c = std::move(dcoeffs), horner](double x) {
        return c.empty() ? 0.0 : horner(c, x);
    };
    return make_custom_transfer("polynomial", a, b, eval, deriv);
}

inline std::vector<std::string> transfer_registry() {
    return {"identity", "polynomial", "quadratic"};
}

/// Registry lookup by name. `coeffs` is consumed by "polynomial" only.
inline TransferFunction make_transfer(const std::string& name, double a,
                                      double b,
                                      std::vector<double> coeffs = {}) {
    if (name == "quadratic") {
        return make_custom_transfer(
            name, a, b,
            [](double x) { return 1.0 - (x - 4.0 / 5.0) * (x - 4.0 / 5.0); },
            [](double x) { return -2.0 * (x - 4.0 / 5.0); });
    }
    if (name == "identity") {
        return make_custom_transfer(
            name, a, b, [](double x) { return x; }, [](double) { return 1.0; });
    }
    if (name == "polynomial") {
        return make_polynomial(std::move(coeffs), a, b);
    }
    throw UnknownTransferError("unknown transfer function '" + name + "'");
}

/// Largest |analytic - finite difference| over equispaced probe points.
/// Returns 0 for functions without an analytic derivative.
inline double max_derivative_mismatch(const TransferFunction& h,
                                      int probes = 101) {
    if (!h.analytic_deriv || probes < 2) return 0.0;
    const auto fd = finite_difference_deriv(h.eval, h.a, h.b);
    double worst = 0.0;
    for (int k = 0; k < probes; ++k) {
        const double x = h.a + (h.b - h.a) * k / (probes - 1);
        worst = std::max(worst, std::abs(h.deriv(x) - fd(x)));
    }
    return worst;
}

/// No-intrusion limit of the ratio statistic: the positive variation of h
/// over its total variation,
///
///     integral of (h')_+ over [a, b]  /  integral of |h'| over [a, b].
///
/// Both integrals use adaptive Simpson quadrature after splitting [a, b] at
/// the sign changes of h', so the kink of (.)_+ never falls inside a panel.
/// Throws DegenerateTransferError when the total variation is below 1e-12.
inline double limit_I(const TransferFunction& h, double quad_tol = 1e-10) {
    const auto& d = h.deriv;
    const double x_tol = 1e-12 * std::max(1.0, h.b - h.a);
    std::vector<double> edges{h.a};
    for (double r : isolate_sign_changes(d, h.a, h.b, 1024, x_tol)) {
        edges.push_back(r);
    }
    edges.push_back(h.b);

    const double seg_tol =
        quad_tol / (4.0 * static_cast<double>(edges.size() - 1));
    double positive = 0.0;
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
        positive += adaptive_simpson(
            [&d](double x) { return std::max(d(x), 0.0); }, edges[k],
            edges[k + 1], seg_tol);
        total += adaptive_simpson([&d](double x) { return std::abs(d(x)); },
                                  edges[k], edges[k + 1], seg_tol);
    }
    if (total < 1e-12) {
        throw DegenerateTransferError(
            "transfer '" + h.name +
            "' has zero total variation on its window; limit undefined");
    }
    return std::clamp(positive / total, 0.0, 1.0);
}

/// Endpoint condition h(a) = h(b). Negative tol selects the default
/// 1e-9 * max(1, |h(a)|).
inline bool endpoint_equal(const TransferFunction& h, double tol = -1.0) {
    const double ha = h.eval(h.a);
    const double hb = h.eval(h.b);
    if (tol < 0.0) tol = 1e-9 * std::max(1.0, std::abs(ha));
    return std::abs(ha - hb) <= tol;
}

} // namespace codet
