#include <catch2/catch.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "gha/fractional.hpp"
#include "oracles.hpp"

using namespace gha;

namespace {

HermiteExpansion random_expansion(int dim, int max_degree, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    HermiteExpansion f(dim);
    for (const auto& beta : multi_indices_up_to(dim, max_degree)) {
        const double u = static_cast<double>(rng() >> 11) * 0x1p-53;
        f.set(beta, 2.0 * u - 1.0);
    }
    return f;
}

}  // namespace

TEST_CASE("Riesz potential multiplier") {
    CHECK(riesz_potential(basis_expansion(MultiIndex{4}), 1.0).coefficient(MultiIndex{4}) ==
          Approx(0.5).epsilon(1e-15));
    CHECK(riesz_potential(basis_expansion(MultiIndex{0}), 0.8).empty());
    CHECK(riesz_potential(basis_expansion(MultiIndex{1}), 2.7).coefficient(MultiIndex{1}) ==
          Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(riesz_potential(basis_expansion(MultiIndex{1}), 0.0), std::invalid_argument);
}

TEST_CASE("fractional derivative multiplier") {
    CHECK(fractional_derivative(basis_expansion(MultiIndex{4}), 2.0).coefficient(MultiIndex{4}) ==
          Approx(4.0).epsilon(1e-15));
    CHECK(fractional_derivative(basis_expansion(MultiIndex{0}), 1.0).empty());
    CHECK(fractional_derivative(basis_expansion(MultiIndex{9}), 1.0).coefficient(MultiIndex{9}) ==
          Approx(3.0).epsilon(1e-15));
}

TEST_CASE("Bessel potential multiplier and bijectivity") {
    CHECK(bessel_potential(basis_expansion(MultiIndex{3}), 2.0).coefficient(MultiIndex{3}) ==
          Approx(0.25).epsilon(1e-15));
    CHECK(bessel_potential(basis_expansion(MultiIndex{0}), 2.0).coefficient(MultiIndex{0}) ==
          Approx(1.0).epsilon(1e-15));

    const auto f = random_expansion(2, 5, 17);
    const auto back = bessel_potential_inverse(bessel_potential(f, 1.3), 1.3);
    for (const auto& [beta, c] : f.coeffs())
        CHECK(back.coefficient(beta) == Approx(c).epsilon(1e-14));
}

TEST_CASE("Bessel potentials form a semigroup") {
    const auto f = random_expansion(1, 6, 23);
    for (auto [a, b] : {std::pair{0.5, 2.0}, {1.0, 1.0}, {0.3, 0.45}}) {
        const auto two = bessel_potential(bessel_potential(f, a), b);
        const auto one = bessel_potential(f, a + b);
        for (const auto& [beta, c] : one.coeffs())
            CHECK(two.coefficient(beta) == Approx(c).epsilon(1e-14));
    }
}

TEST_CASE("composition identity recovers the mean-zero projection") {
    HermiteExpansion f(1);
    f.set(MultiIndex{0}, 1.0);
    f.set(MultiIndex{2}, 1.0);
    auto r = riesz_derivative_identity_check(f, 0.7);
    CHECK(r.ok);
    CHECK(r.residual <= 1e-14);

    auto empty = riesz_derivative_identity_check(HermiteExpansion(1), 1.0);
    CHECK(empty.ok);
    CHECK(empty.residual == 0.0);

    const auto g = random_expansion(2, 6, 5);
    auto rg = riesz_derivative_identity_check(g, 1.5);
    CHECK(rg.ok);
    CHECK(rg.residual <= 1e-12);
}

TEST_CASE("Riesz potential via the t-integral") {
    std::vector<double> x{1.0};
    const auto h1 = basis_expansion(MultiIndex{1});
    // int_0^inf e^{-t} dt = 1, so the integral form returns h_1(1) = sqrt(2).
    CHECK(riesz_via_integral(h1, 1.0, x) == Approx(std::numbers::sqrt2).margin(1e-6));

    CHECK(riesz_via_integral(basis_expansion(MultiIndex{0}), 1.0, x) == 0.0);

    // int_0^inf t e^{-2t} dt = 1/4 reproduces the 4^{-1} eigenvalue on h_4.
    std::vector<double> x2{0.3};
    const auto h4 = basis_expansion(MultiIndex{4});
    const double expected = expansion_eval(h4, x2) / 4.0;
    CHECK(riesz_via_integral(h4, 2.0, x2) == Approx(expected).margin(1e-6));
}

TEST_CASE("Bessel potential via the t-integral") {
    std::vector<double> x{1.0};
    CHECK(bessel_via_integral(basis_expansion(MultiIndex{0}), 1.0, x) == Approx(1.0).margin(1e-9));
    CHECK(bessel_via_integral(basis_expansion(MultiIndex{1}), 2.0, x) ==
          Approx(std::numbers::sqrt2 / 2.0).margin(1e-6));
    std::vector<double> zero{0.0};
    const auto h4 = basis_expansion(MultiIndex{4});
    CHECK(bessel_via_integral(h4, 1.0, zero) ==
          Approx(expansion_eval(h4, zero) / std::sqrt(5.0)).margin(1e-6));
}

TEST_CASE("spectral and integral paths agree across alpha") {
    for (int d : {1, 2}) {
        const auto f = random_expansion(d, 6, 1000 + static_cast<std::uint64_t>(d));
        std::vector<double> x(static_cast<std::size_t>(d), 0.8);
        if (d == 2) x[1] = -1.6;
        for (double alpha : {0.5, 1.0, 1.7, 3.0}) {
            const double riesz_spec = expansion_eval(riesz_potential(f, alpha), x);
            CHECK(riesz_via_integral(f, alpha, x) == Approx(riesz_spec).margin(1e-6));
            const double bessel_spec = expansion_eval(bessel_potential(f, alpha), x);
            CHECK(bessel_via_integral(f, alpha, x) == Approx(bessel_spec).margin(1e-6));
        }
    }
}

TEST_CASE("the d/dt Riesz form requires and matches on mean-zero input") {
    const auto f = pi0(random_expansion(1, 5, 88));
    std::vector<double> x{0.4};
    for (double alpha : {0.5, 1.0, 2.0}) {
        const double spec = expansion_eval(riesz_potential(f, alpha), x);
        CHECK(riesz_via_time_derivative_certified(f, alpha, x).value == Approx(spec).margin(1e-6));
    }
    HermiteExpansion with_mean(1);
    with_mean.set(MultiIndex{0}, 2.0);
    with_mean.set(MultiIndex{1}, 1.0);
    CHECK_THROWS_AS(riesz_via_time_derivative_certified(with_mean, 1.0, x),
                    std::invalid_argument);
}

TEST_CASE("certified errors cover the spectral truth") {
    const auto f = random_expansion(1, 4, 91);
    std::vector<double> x{1.1};
    for (double alpha : {0.5, 1.7}) {
        const auto r = riesz_via_integral_certified(f, alpha, x);
        const double truth = expansion_eval(riesz_potential(f, alpha), x);
        CHECK(std::abs(r.value - truth) <= r.err + 1e-9);
        const auto b = bessel_via_integral_certified(f, alpha, x);
        const double btruth = expansion_eval(bessel_potential(f, alpha), x);
        CHECK(std::abs(b.value - btruth) <= b.err + 1e-9);
    }
}
