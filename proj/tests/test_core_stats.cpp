#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "codet/csv.hpp"
#include "codet/sample.hpp"
#include "codet/stats.hpp"
#include "codet/transfer.hpp"
#include "oracles.hpp"

using Catch::Approx;
using namespace codet;

namespace {

ConcomitantSeries series_of(std::vector<double> y) {
    return ConcomitantSeries{std::move(y)};
}

} // namespace

TEST_CASE("concomitant_sort reorders outputs by ascending input") {
    PairedSample s{{{2.0, 20.0}, {1.0, 10.0}, {3.0, 30.0}}};
    const auto series = concomitant_sort(s);
    REQUIRE(series.y_ordered == std::vector<double>{10.0, 20.0, 30.0});
}

TEST_CASE("concomitant_sort handles a singleton") {
    PairedSample s{{{5.0, 7.0}}};
    REQUIRE(concomitant_sort(s).y_ordered == std::vector<double>{7.0});
}

TEST_CASE("concomitant_sort rejects tied inputs") {
    PairedSample s{{{1.0, 4.0}, {1.0, 9.0}}};
    REQUIRE_THROWS_AS(concomitant_sort(s), DuplicateInputError);
    try {
        concomitant_sort(s);
    } catch (const DuplicateInputError& e) {
        REQUIRE(e.x() == 1.0);
    }
}

TEST_CASE("concomitant_sort rejects an empty sample") {
    REQUIRE_THROWS_AS(concomitant_sort(PairedSample{}), TooShortError);
}

TEST_CASE("compute_stats on a monotone increasing series") {
    const auto t = compute_stats(series_of({0.0, 1.0, 2.0, 3.0}));
    REQUIRE(t.n == 4);
    REQUIRE(t.a == Approx(1.5).margin(1e-15));
    REQUIRE(t.b == Approx(1.5).margin(1e-15));
    REQUIRE(t.i == 1.0);
}

TEST_CASE("compute_stats on a monotone decreasing series") {
    const auto t = compute_stats(series_of({3.0, 2.0, 1.0, 0.0}));
    REQUIRE(t.a == 0.0);
    REQUIRE(t.b == Approx(1.5).margin(1e-15));
    REQUIRE(t.i == 0.0);
}

TEST_CASE("compute_stats on an alternating series") {
    // increments +1, -1, +1: positive sum 2, absolute sum 3, n = 4
    const auto t = compute_stats(series_of({0.0, 1.0, 0.0, 1.0}));
    REQUIRE(t.a == Approx(1.0).margin(1e-15));
    REQUIRE(t.b == Approx(1.5).margin(1e-15));
    REQUIRE(t.i == Approx(2.0 / 3.0).margin(1e-15));

    // cross-check against the independent loop
    const auto brute = oracles::brute_stats(
        {{1.0, 0.0}, {2.0, 1.0}, {3.0, 0.0}, {4.0, 1.0}});
    REQUIRE(t.a == brute.a);
    REQUIRE(t.b == brute.b);
    REQUIRE(t.i == brute.i);
}

TEST_CASE("compute_stats rejects flat series and short series") {
    REQUIRE_THROWS_AS(compute_stats(series_of({5.0, 5.0, 5.0})),
                      NoVariationError);
    REQUIRE_THROWS_AS(compute_stats(series_of({5.0})), TooShortError);
    REQUIRE_THROWS_AS(compute_stats(series_of({})), TooShortError);
}

TEST_CASE("compute_B0 telescopes for the identity transfer") {
    const auto h = make_transfer("identity", 0.0, 1.0);
    const std::vector<double> xs{0.0, 0.5, 1.0};
    REQUIRE(compute_B0(h, xs) == Approx(1.0 / std::sqrt(3.0)).margin(1e-15));
}

TEST_CASE("compute_B0 on the quadratic grid obeys the derivative bound") {
    const auto h = make_transfer("quadratic", 0.0, 1.0);
    const std::size_t n = 101;
    std::vector<double> xs;
    for (std::size_t k = 0; k < n; ++k) {
        xs.push_back(static_cast<double>(k) / static_cast<double>(n - 1));
    }
    const double b0 = compute_B0(h, xs);

    double direct = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
        direct += std::abs(h.eval(xs[k]) - h.eval(xs[k - 1]));
    }
    direct /= std::sqrt(static_cast<double>(n));
    REQUIRE(b0 == direct);
    REQUIRE(b0 <= 1.6 / std::sqrt(101.0));
    REQUIRE(b0 == Approx(0.06766252893427928).margin(1e-14));
}

TEST_CASE("compute_B0 edge cases") {
    const auto h = make_transfer("quadratic", 0.0, 1.0);
    REQUIRE(compute_B0(h, std::vector<double>{0.25}) == 0.0);
    REQUIRE(compute_B0(h, std::vector<double>{}) == 0.0);
    REQUIRE_THROWS_AS(compute_B0(h, std::vector<double>{0.5, 1.5}),
                      DomainViolationError);
    REQUIRE_THROWS_AS(compute_B0(h, std::vector<double>{0.5, 0.25}),
                      BadParametersError);
}

TEST_CASE("prefix_trajectory of a monotone stream is identically one") {
    PairedSample s{{{1.0, 0.0}, {2.0, 1.0}, {3.0, 2.0}, {4.0, 3.0}}};
    const auto traj = prefix_trajectory(s);
    REQUIRE(traj.size() == 3);
    for (std::size_t k = 0; k < traj.size(); ++k) {
        REQUIRE(traj.points[k].n == k + 2);
        REQUIRE(traj.points[k].i.has_value());
        REQUIRE(*traj.points[k].i == 1.0);
    }
}

TEST_CASE("prefix_trajectory hand trace") {
    PairedSample s{{{3.0, 0.0}, {1.0, 1.0}, {2.0, 0.0}}};
    const auto traj = prefix_trajectory(s);
    REQUIRE(traj.size() == 2);
    // n = 2: sorted series [1, 0]
    REQUIRE(traj.points[0].a == 0.0);
    REQUIRE(traj.points[0].b == Approx(1.0 / std::sqrt(2.0)).margin(1e-15));
    REQUIRE(*traj.points[0].i == 0.0);
    // n = 3: sorted series [1, 0, 0]
    REQUIRE(traj.points[1].a == 0.0);
    REQUIRE(traj.points[1].b == Approx(1.0 / std::sqrt(3.0)).margin(1e-15));
    REQUIRE(*traj.points[1].i == 0.0);
}

TEST_CASE("reversed arrival order changes prefixes, not the final point") {
    std::mt19937 gen(42);
    auto pairs = oracles::random_pairs(gen, 50);
    PairedSample fwd{pairs};
    std::reverse(pairs.begin(), pairs.end());
    PairedSample rev{pairs};

    const auto a = prefix_trajectory(fwd).back();
    const auto b = prefix_trajectory(rev).back();
    REQUIRE(a.n == b.n);
    REQUIRE(a.a == b.a);
    REQUIRE(a.b == b.b);
    REQUIRE(*a.i == *b.i);
}

TEST_CASE("prefix_trajectory is bit-identical to per-prefix batch") {
    std::mt19937 gen(7);
    const auto pairs = oracles::random_pairs(gen, 120);
    const PairedSample s{pairs};
    const auto traj = prefix_trajectory(s);
    for (std::size_t n = 2; n <= pairs.size(); ++n) {
        PairedSample prefix{
            {pairs.begin(), pairs.begin() + static_cast<std::ptrdiff_t>(n)}};
        const auto batch = compute_stats(concomitant_sort(prefix));
        const auto& pt = traj.points[n - 2];
        REQUIRE(pt.n == batch.n);
        REQUIRE(pt.a == batch.a);
        REQUIRE(pt.b == batch.b);
        REQUIRE(*pt.i == batch.i);
    }
}

TEST_CASE("prefixes with zero variation carry an undefined marker") {
    PairedSample s{{{1.0, 5.0}, {2.0, 5.0}, {3.0, 6.0}}};
    const auto traj = prefix_trajectory(s);
    REQUIRE_FALSE(traj.points[0].i.has_value());
    REQUIRE(traj.points[0].b == 0.0);
    REQUIRE(traj.points[1].i.has_value());
}

TEST_CASE("prefix_trajectory rejects duplicates and short streams") {
    REQUIRE_THROWS_AS(prefix_trajectory(PairedSample{{{1.0, 2.0}}}),
                      TooShortError);
    PairedSample dup{{{1.0, 2.0}, {2.0, 3.0}, {1.0, 4.0}}};
    REQUIRE_THROWS_AS(prefix_trajectory(dup), DuplicateInputError);
}

TEST_CASE("non-finite observations are rejected loudly") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double inf = std::numeric_limits<double>::infinity();
    REQUIRE_THROWS_AS(concomitant_sort(PairedSample{{{nan, 1.0}, {2.0, 3.0}}}),
                      BadParametersError);
    REQUIRE_THROWS_AS(
        prefix_trajectory(PairedSample{{{1.0, inf}, {2.0, 3.0}}}),
        BadParametersError);
    IncrementalStats inc;
    REQUIRE_THROWS_AS(inc.insert(nan, 0.0), BadParametersError);
    REQUIRE_THROWS_AS(inc.insert(0.0, -inf), BadParametersError);
}

TEST_CASE("statistic bounds and monotone characterisation") {
    std::mt19937 gen(11);
    for (int rep = 0; rep < 50; ++rep) {
        auto pairs = oracles::random_pairs(gen, 30);
        const auto t = compute_stats(concomitant_sort(PairedSample{pairs}));
        REQUIRE(t.i >= 0.0);
        REQUIRE(t.i <= 1.0);
        REQUIRE(t.a >= 0.0);
        REQUIRE(t.a <= t.b);
    }
    // sorted outputs give the extremes
    std::vector<double> ys{0.3, 0.9, 1.4, 2.2, 5.0};
    REQUIRE(compute_stats(series_of(ys)).i == 1.0);
    std::reverse(ys.begin(), ys.end());
    REQUIRE(compute_stats(series_of(ys)).i == 0.0);
}

TEST_CASE("scale equivariance and shift invariance") {
    std::mt19937 gen(13);
    const auto pairs = oracles::random_pairs(gen, 60);
    const auto base = compute_stats(concomitant_sort(PairedSample{pairs}));

    const double lambda = 3.75;
    auto scaled = pairs;
    for (auto& [x, y] : scaled) y *= lambda;
    const auto ts = compute_stats(concomitant_sort(PairedSample{scaled}));
    REQUIRE(oracles::close_rel(ts.a, lambda * base.a, 1e-12));
    REQUIRE(oracles::close_rel(ts.b, lambda * base.b, 1e-12));
    REQUIRE(ts.i == Approx(base.i).margin(1e-12));

    auto shifted = pairs;
    for (auto& [x, y] : shifted) y += 17.25;
    const auto th = compute_stats(concomitant_sort(PairedSample{shifted}));
    REQUIRE(oracles::close_rel(th.a, base.a, 1e-12));
    REQUIRE(oracles::close_rel(th.b, base.b, 1e-12));
    REQUIRE(th.i == Approx(base.i).margin(1e-12));

    auto negated = pairs;
    for (auto& [x, y] : negated) y = -y;
    const auto tn = compute_stats(concomitant_sort(PairedSample{negated}));
    REQUIRE(tn.i == Approx(1.0 - base.i).margin(1e-12));
}

TEST_CASE("trajectory CSV schema") {
    PairedSample s{{{1.0, 5.0}, {2.0, 5.0}, {3.0, 6.5}}};
    const auto traj = prefix_trajectory(s);
    const std::string csv = trajectory_csv(traj);

    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    REQUIRE(line == "n,A,B,I");
    std::getline(lines, line);
    REQUIRE(line == "2,0,0,"); // undefined I stays blank
    std::getline(lines, line);
    REQUIRE(line.substr(0, 2) == "3,");

    const auto parsed = [&] {
        std::istringstream in(csv);
        return parse_trajectory_csv(in);
    }();
    REQUIRE(parsed.size() == traj.size());
    REQUIRE_FALSE(parsed.points[0].i.has_value());
    REQUIRE(parsed.points[1].i.has_value());
    REQUIRE(*parsed.points[1].i == *traj.points[1].i);
}

TEST_CASE("twelve significant digits in CSV output") {
    REQUIRE(format_sig12(1.0 / 3.0) == "0.333333333333");
    REQUIRE(format_sig12(0.5) == "0.5");
    REQUIRE(format_sig12(16.0 / 17.0) == "0.941176470588");
}

TEST_CASE("xy CSV parses and round-trips") {
    PairedSample s{{{0.25, 1.5}, {0.75, -2.0}}};
    const std::string text = xy_csv(s);
    std::istringstream in(text);
    const auto parsed = parse_xy_csv(in);
    REQUIRE(parsed.pairs == s.pairs);

    std::istringstream bad_header("a,b\n1,2\n");
    REQUIRE_THROWS_AS(parse_xy_csv(bad_header), ParseError);
    std::istringstream bad_field("x,y\n1,two\n");
    REQUIRE_THROWS_AS(parse_xy_csv(bad_field), ParseError);
    std::istringstream missing_comma("x,y\n1\n");
    REQUIRE_THROWS_AS(parse_xy_csv(missing_comma), ParseError);
}
