#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "codet/quadrature.hpp"
#include "codet/transfer.hpp"

using Catch::Approx;
using namespace codet;

TEST_CASE("registry constructs the stock transfer functions") {
    const auto quad = make_transfer("quadratic", 0.0, 1.0);
    REQUIRE(quad.eval(0.8) == 1.0);
    REQUIRE(quad.eval(0.0) == Approx(0.36).margin(1e-15));
    REQUIRE(quad.deriv(0.3) == Approx(1.0).margin(1e-15));
    REQUIRE(quad.analytic_deriv);

    const auto id = make_transfer("identity", -2.0, 2.0);
    REQUIRE(id.eval(1.5) == 1.5);
    REQUIRE(id.deriv(-1.0) == 1.0);

    const auto poly = make_transfer("polynomial", 0.0, 1.0, {1.0, 2.0, 3.0});
    REQUIRE(poly.eval(0.5) == Approx(1.0 + 1.0 + 0.75).margin(1e-15));
    REQUIRE(poly.deriv(0.5) == Approx(2.0 + 3.0).margin(1e-15));

    REQUIRE(transfer_registry().size() == 3);
    REQUIRE_THROWS_AS(make_transfer("nope", 0.0, 1.0), UnknownTransferError);
    REQUIRE_THROWS_AS(make_transfer("polynomial", 0.0, 1.0), BadParametersError);
    REQUIRE_THROWS_AS(make_transfer("identity", 1.0, 1.0), BadParametersError);
}

TEST_CASE("analytic derivatives agree with finite differences") {
    for (const auto& h :
         {make_transfer("quadratic", 0.0, 1.0),
          make_transfer("quadratic", 0.0, 1.6),
          make_transfer("identity", 0.0, 1.0),
          make_transfer("polynomial", -1.0, 1.0, {0.0, -1.0, 0.0, 1.0})}) {
        INFO(h.name << " on [" << h.a << ", " << h.b << "]");
        REQUIRE(max_derivative_mismatch(h) <= 1e-6);
    }
}

TEST_CASE("finite-difference fallback is second order") {
    const auto h = make_custom_transfer("quartic", 0.0, 1.0, [](double x) {
        return x * x * x * x;
    });
    REQUIRE_FALSE(h.analytic_deriv);
    for (const double x : {0.0, 0.1, 0.5, 0.9, 1.0}) {
        REQUIRE(h.deriv(x) == Approx(4.0 * x * x * x).margin(1e-6));
    }
}

TEST_CASE("limit of the ratio statistic for the stock functions") {
    REQUIRE(limit_I(make_transfer("quadratic", 0.0, 1.0)) ==
            Approx(16.0 / 17.0).margin(1e-10));
    REQUIRE(limit_I(make_transfer("quadratic", 0.0, 1.6)) ==
            Approx(0.5).margin(1e-10));
    REQUIRE(limit_I(make_transfer("identity", -3.0, 5.0)) ==
            Approx(1.0).margin(1e-12));
    // cubic with equal endpoint values: positive and negative variation match
    REQUIRE(limit_I(make_transfer("polynomial", -1.0, 1.0,
                                  {0.0, -1.0, 0.0, 1.0})) ==
            Approx(0.5).margin(1e-10));
}

TEST_CASE("degenerate transfer is reported") {
    REQUIRE_THROWS_AS(limit_I(make_transfer("polynomial", 0.0, 1.0, {5.0})),
                      DegenerateTransferError);
}

TEST_CASE("endpoint condition") {
    REQUIRE(endpoint_equal(make_transfer("quadratic", 0.0, 1.6)));
    REQUIRE_FALSE(endpoint_equal(make_transfer("quadratic", 0.0, 1.0)));
    REQUIRE_FALSE(endpoint_equal(make_transfer("identity", 0.0, 1.0)));
}

TEST_CASE("endpoint condition is equivalent to the limit being 1/2") {
    const std::vector<TransferFunction> fns{
        make_transfer("quadratic", 0.0, 1.0),
        make_transfer("quadratic", 0.0, 1.6),
        make_transfer("identity", 0.0, 1.0),
        make_transfer("polynomial", -1.0, 1.0, {0.0, -1.0, 0.0, 1.0}),
        make_transfer("polynomial", 0.0, 2.0, {0.0, 2.0, -1.0}),
    };
    for (const auto& h : fns) {
        INFO(h.name << " on [" << h.a << ", " << h.b << "]");
        const bool equal = endpoint_equal(h);
        const bool at_half = std::abs(limit_I(h) - 0.5) <= 1e-8;
        REQUIRE(equal == at_half);
    }
}

TEST_CASE("limit is invariant under shift and positive scaling") {
    const auto base = make_transfer("polynomial", 0.0, 1.5, {0.2, -1.0, 1.0});
    const double l0 = limit_I(base);
    const auto shifted =
        make_transfer("polynomial", 0.0, 1.5, {0.2 + 9.0, -1.0, 1.0});
    REQUIRE(limit_I(shifted) == Approx(l0).margin(1e-9));
    const auto scaled =
        make_transfer("polynomial", 0.0, 1.5, {0.2 * 4.0, -4.0, 4.0});
    REQUIRE(limit_I(scaled) == Approx(l0).margin(1e-9));
}

TEST_CASE("reflection swaps positive and negative variation") {
    const auto h = make_transfer("quadratic", 0.0, 1.0);
    const auto reflected = make_custom_transfer(
        "reflected", 0.0, 1.0, [&h](double x) { return h.eval(1.0 - x); },
        [&h](double x) { return -h.deriv(1.0 - x); });
    REQUIRE(limit_I(h) + limit_I(reflected) == Approx(1.0).margin(1e-8));

    const auto cubic = make_transfer("polynomial", 0.0, 2.0, {0.0, 0.5, -1.0, 0.5});
    const auto cubic_r = make_custom_transfer(
        "reflected", 0.0, 2.0,
        [&cubic](double x) { return cubic.eval(2.0 - x); },
        [&cubic](double x) { return -cubic.deriv(2.0 - x); });
    REQUIRE(limit_I(cubic) + limit_I(cubic_r) == Approx(1.0).margin(1e-8));
}

TEST_CASE("adaptive Simpson integrates polynomials to tolerance") {
    REQUIRE(adaptive_simpson([](double x) { return x * x * x; }, 0.0, 1.0,
                             1e-12) == Approx(0.25).margin(1e-12));
    REQUIRE(adaptive_simpson([](double x) { return x * x * x * x * x; }, 0.0,
                             1.0, 1e-12) == Approx(1.0 / 6.0).margin(1e-11));
    REQUIRE(adaptive_simpson([](double) { return 2.0; }, -1.0, 3.0, 1e-12) ==
            Approx(8.0).margin(1e-12));
    REQUIRE(adaptive_simpson([](double x) { return x; }, 1.0, 1.0, 1e-12) ==
            0.0);
}

TEST_CASE("sign changes of the derivative are isolated by bisection") {
    const auto h = make_transfer("quadratic", 0.0, 1.6);
    const auto roots = isolate_sign_changes(h.deriv, 0.0, 1.6);
    REQUIRE(roots.size() == 1);
    REQUIRE(roots[0] == Approx(0.8).margin(1e-9));

    const auto id = make_transfer("identity", 0.0, 1.0);
    REQUIRE(isolate_sign_changes(id.deriv, 0.0, 1.0).empty());

    // two sign changes for a cubic's derivative
    const auto cubic = make_transfer("polynomial", -1.0, 1.0, {0.0, -1.0, 0.0, 1.0});
    const auto r2 = isolate_sign_changes(cubic.deriv, -1.0, 1.0);
    REQUIRE(r2.size() == 2);
    REQUIRE(r2[0] == Approx(-1.0 / std::sqrt(3.0)).margin(1e-9));
    REQUIRE(r2[1] == Approx(1.0 / std::sqrt(3.0)).margin(1e-9));
}
