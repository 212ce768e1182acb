#include <catch2/catch.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "gha/core.hpp"
#include "oracles.hpp"

using namespace gha;

TEST_CASE("one-point rule is the mean of gamma_1") {
    const auto g = gauss_hermite_grid(1, 1);
    REQUIRE(g.size() == 1);
    CHECK(g.node(0)[0] == Approx(0.0).margin(1e-15));
    CHECK(g.weight(0) == Approx(1.0).epsilon(1e-15));
}

TEST_CASE("two-point rule hits the degree-3 moments") {
    const auto g = gauss_hermite_grid(2, 1);
    REQUIRE(g.size() == 2);
    CHECK(std::abs(g.node(0)[0]) == Approx(1.0 / std::numbers::sqrt2).epsilon(1e-14));
    CHECK(g.weight(0) == Approx(0.5).epsilon(1e-14));
    CHECK(g.weight(1) == Approx(0.5).epsilon(1e-14));
    const double second = integrate([](std::span<const double> x) { return x[0] * x[0]; }, g);
    CHECK(second == Approx(0.5).epsilon(1e-14));  // gamma_1 has variance 1/2
}

TEST_CASE("tensor grid integrates mixed Gaussian moments") {
    const auto g = gauss_hermite_grid(8, 2);
    REQUIRE(g.size() == 64);
    const double v = integrate(
        [](std::span<const double> x) { return x[0] * x[0] * x[1] * x[1] * x[1] * x[1]; }, g);
    const double expected = oracles::gaussian_even_moment(1) * oracles::gaussian_even_moment(2);
    CHECK(expected == Approx(3.0 / 8.0).epsilon(1e-15));
    CHECK(v == Approx(expected).epsilon(1e-12));
}

TEST_CASE("weights are a probability measure") {
    for (int n : {1, 2, 3, 5, 8, 16, 33, 64}) {
        const auto g = gauss_hermite_grid(n, 1);
        double s = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) s += g.weight(i);
        CHECK(s == Approx(1.0).margin(1e-14));
    }
    for (int n : {2, 8, 16}) {
        const auto g = gauss_hermite_grid(n, 2);
        double s = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) s += g.weight(i);
        CHECK(s == Approx(1.0).margin(1e-14));
    }
}

TEST_CASE("grid exactness up to the stated degree") {
    const auto g = gauss_hermite_grid(6, 1);  // exact through degree 11
    for (int m = 0; m <= 5; ++m) {
        const double v =
            integrate([m](std::span<const double> x) { return std::pow(x[0], 2 * m); }, g);
        CHECK(v == Approx(oracles::gaussian_even_moment(m)).epsilon(1e-12));
    }
}

TEST_CASE("node budget is enforced") {
    CHECK_THROWS_AS(gauss_hermite_grid(2, 30), std::runtime_error);
    CHECK_THROWS_AS(gauss_hermite_grid(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(gauss_hermite_grid(4, 0), std::invalid_argument);
}

TEST_CASE("hermite_eval basic values") {
    std::vector<double> x{5.0};
    CHECK(hermite_eval(MultiIndex{0}, x) == 1.0);
    x[0] = 1.0;
    CHECK(hermite_eval(MultiIndex{1}, x) == Approx(std::numbers::sqrt2).epsilon(1e-15));
    CHECK(hermite_eval(MultiIndex{2}, x) == Approx(1.0 / std::numbers::sqrt2).epsilon(1e-15));
    std::vector<double> xy{1.0, 2.0};
    CHECK(hermite_eval(MultiIndex{1, 0}, xy) == Approx(std::numbers::sqrt2).epsilon(1e-15));
    CHECK_THROWS_AS(hermite_eval(MultiIndex{1, 2}, x), std::invalid_argument);
}

TEST_CASE("recurrence agrees with the symbolic Rodrigues expansion") {
    for (int n = 0; n <= 8; ++n) {
        for (double x = -4.0; x <= 4.0; x += 0.37) {
            const double direct = oracles::hermite_normalized_direct(n, x);
            CHECK(hermite_eval_1d(n, x) == Approx(direct).margin(1e-10 * std::max(1.0, std::abs(direct))));
        }
    }
}

TEST_CASE("orthonormality of the Hermite basis on the grid") {
    for (int d : {1, 2}) {
        const auto grid = gauss_hermite_grid(8, d);  // exact through per-axis degree 15
        const auto idx = multi_indices_up_to(d, 6);
        for (const auto& b1 : idx) {
            for (const auto& b2 : idx) {
                double s = 0.0;
                for (std::size_t i = 0; i < grid.size(); ++i)
                    s += grid.weight(i) * hermite_eval(b1, grid.node(i)) *
                         hermite_eval(b2, grid.node(i));
                CHECK(s == Approx(b1 == b2 ? 1.0 : 0.0).margin(1e-10));
            }
        }
    }
}

TEST_CASE("lp_norm on basis elements and edge cases") {
    const auto g = gauss_hermite_grid(8, 1);
    auto h1 = [](std::span<const double> x) { return std::numbers::sqrt2 * x[0]; };
    auto h2 = [](std::span<const double> x) {
        return (2.0 * x[0] * x[0] - 1.0) / std::numbers::sqrt2;
    };
    CHECK(lp_norm(h2, LpSpec::finite(2.0), g) == Approx(1.0).epsilon(1e-13));
    const double expected4 = std::pow(4.0 * oracles::gaussian_even_moment(2), 0.25);
    CHECK(expected4 == Approx(1.3160740129524924).epsilon(1e-14));
    CHECK(lp_norm(h1, LpSpec::finite(4.0), g) == Approx(expected4).epsilon(1e-13));
    CHECK(lp_norm([](std::span<const double>) { return 0.0; }, LpSpec::finite(3.5), g) == 0.0);

    // Grid-sup approximation for p = inf.
    double max_node = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) max_node = std::max(max_node, std::abs(g.node(i)[0]));
    CHECK(lp_norm(h1, LpSpec::inf(), g) == Approx(std::numbers::sqrt2 * max_node));
}

TEST_CASE("LpSpec validation") {
    CHECK_THROWS_AS(LpSpec::finite(1.0), std::invalid_argument);
    CHECK_THROWS_AS(LpSpec::finite(0.3), std::invalid_argument);
    CHECK(LpSpec::finite(2.5).p == 2.5);
    CHECK(LpSpec::inf().is_inf);
}

TEST_CASE("multi-index enumeration and invariants") {
    const auto idx = multi_indices_up_to(2, 2);
    CHECK(idx.size() == 6);
    CHECK(MultiIndex{1, 2, 3}.order() == 6);
    CHECK_THROWS_AS(MultiIndex{-1}, std::invalid_argument);
    CHECK(MultiIndex{0, 1} < MultiIndex{1, 0});
}
