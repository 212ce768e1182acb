#include <catch2/catch.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "gha/stable.hpp"
#include "oracles.hpp"

using namespace gha;

TEST_CASE("stable density point values and scaling") {
    // Direct evaluation of the closed form at (1, 1).
    const double expected = std::exp(-0.25) / (2.0 * std::sqrt(std::numbers::pi));
    CHECK(expected == Approx(0.219695644733861).epsilon(1e-12));
    CHECK(stable_density(1.0, 1.0) == Approx(expected).epsilon(1e-15));

    // Self-similarity g(t, t^2 u) t^2 = g(1, u) at t = 2, u = 1.
    CHECK(stable_density(2.0, 4.0) * 4.0 == Approx(stable_density(1.0, 1.0)).epsilon(1e-14));

    CHECK_THROWS_AS(stable_density(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(stable_density(1.0, -2.0), std::invalid_argument);
}

TEST_CASE("stable density is a probability measure (adaptive oracle)") {
    // Independent adaptive quadrature in the s variable.
    const double t = 1.0;
    const double mass = oracles::adaptive_simpson(
        [t](double s) { return stable_density(t, s); }, t * t / 240.0, 4e6, 1e-12);
    // Heavy 1/sqrt(s) tail beyond the cutoff, bounded by t/sqrt(pi S).
    const double tail = t / std::sqrt(std::numbers::pi * 4e6);
    CHECK(mass + tail == Approx(1.0).margin(2e-4));
    CHECK(mass == Approx(1.0).margin(2.0 * tail));
}

TEST_CASE("derivative form base cases") {
    const auto d0 = stable_derivative_form(0);
    REQUIRE(d0.terms().size() == 1);
    CHECK(d0.coefficient(0, 0) == 1.0);

    // k = 1 is the logarithmic-derivative factor (1/t - t/2s).
    const auto d1 = stable_derivative_form(1);
    REQUIRE(d1.terms().size() == 2);
    CHECK(d1.coefficient(-1, 0) == 1.0);
    CHECK(d1.coefficient(1, 1) == -0.5);

    // k = 2 against the symbolic differentiation oracle:
    // d2/dt2 g = (-3/(2s) + t^2/(4s^2)) g.
    const auto d2 = stable_derivative_form(2);
    REQUIRE(d2.terms().size() == 2);
    CHECK(d2.coefficient(0, 1) == -1.5);
    CHECK(d2.coefficient(2, 2) == 0.25);

    CHECK_THROWS_AS(stable_derivative_form(9), std::invalid_argument);
    CHECK_THROWS_AS(stable_derivative_form(-1), std::invalid_argument);
}

TEST_CASE("derivative form keys satisfy 2j - i = k with 0 <= j <= k") {
    for (int k = 0; k <= 8; ++k) {
        const auto form = stable_derivative_form(k);
        REQUIRE(!form.terms().empty());
        for (const auto& [key, a] : form.terms()) {
            CHECK(2 * key.second - key.first == k);
            CHECK(key.second >= 0);
            CHECK(key.second <= k);
        }
    }
}

TEST_CASE("derivative form matches finite differences") {
    std::mt19937_64 rng(424242);
    auto uniform = [&rng](double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1p-53);
    };
    for (int k = 1; k <= 6; ++k) {
        const auto form = stable_derivative_form(k);
        for (int trial = 0; trial < 12; ++trial) {
            const double t = uniform(0.1, 5.0);
            const double s = uniform(0.1, 5.0);
            const double exact = form.evaluate(t, s);
            // Ladder start: the largest step keeping the stencil in t > 0.
            const double h0 = 0.9 * std::min(2.0 * t / (k + 1.0), 1.0);
            const double fd = oracles::fd_derivative_auto(
                [s](long double tt) { return oracles::stable_density_ld(tt, s); }, t, k, h0);
            // No-cancellation magnitude of the derivative; keeps the relative
            // comparison meaningful near sign changes of the prefactor.
            double mag = 0.0;
            for (const auto& [key, a] : form.terms())
                mag += std::abs(a.value()) * std::pow(t, key.first) * std::pow(s, -key.second);
            const double scale = std::max(std::abs(exact), mag * stable_density(t, s));
            CHECK(fd == Approx(exact).margin(1e-6 * scale));
        }
    }
}

TEST_CASE("negative moments match the closed-form constants") {
    CHECK(stable_neg_moment(0, 3.0) == Approx(1.0).epsilon(1e-10));
    CHECK(stable_neg_moment(1, 1.0) == Approx(2.0).epsilon(1e-10));
    CHECK(stable_neg_moment(2, 2.0) == Approx(0.75).epsilon(1e-10));
    for (int k = 0; k <= 4; ++k) {
        // C_k = 2^{2k} Gamma(k + 1/2) / sqrt(pi) = 2^k (2k-1)!!.
        const double ck = std::pow(2.0, k) * oracles::double_factorial_odd(k);
        CHECK(stable_moment_closed_form(k) == Approx(ck).epsilon(1e-14));
        for (double t : {0.25, 1.0, 4.0}) {
            const auto r = stable_neg_moment_certified(k, t);
            const double expected = ck / std::pow(t, 2.0 * k);
            CHECK(std::abs(r.value - expected) / expected <= 1e-8);
        }
    }
    CHECK_THROWS_AS(stable_neg_moment(1, 0.0), std::invalid_argument);
}

TEST_CASE("absolute derivative mass: total mass, scaling, and bounds") {
    CHECK(stable_abs_deriv_mass(0, 0.7) == Approx(1.0).epsilon(1e-10));
    CHECK(stable_abs_deriv_mass(0, 3.0) == Approx(1.0).epsilon(1e-10));

    // t^k x mass is independent of t (exact self-similarity).
    for (int k = 1; k <= 4; ++k) {
        const double ref = stable_abs_deriv_mass(k, 1.0);
        for (double t : {0.5, 2.0}) {
            const double scaled = std::pow(t, k) * stable_abs_deriv_mass(k, t);
            CHECK(scaled == Approx(ref).epsilon(1e-8));
        }
    }

    // The sharp mass constant is dominated by the triangle-inequality chain.
    for (int k = 0; k <= 6; ++k) {
        const double mass = stable_deriv_mass_constant(k);
        const double chain = stable_deriv_chain_constant(k);
        CHECK(mass > 0.0);
        CHECK(mass <= chain * (1.0 + 1e-12));
    }
    CHECK(stable_deriv_chain_constant(1) == Approx(2.0).epsilon(1e-14));
    CHECK(stable_abs_deriv_mass(1, 1.0) <= 2.0);
}

TEST_CASE("Laplace transform of the stable measure") {
    const auto r11 = stable_laplace_certified(1.0, 1.0);
    CHECK(std::abs(r11.value - std::exp(-1.0)) <= 1e-10 + r11.err);
    CHECK(std::abs(r11.value - std::exp(-1.0)) <= 1e-6);

    const auto r24 = stable_laplace_certified(2.0, 4.0);
    CHECK(std::abs(r24.value - std::exp(-4.0)) <= 1e-6);

    // lambda -> 0+: approaches the total mass; compare against the closed
    // form, which itself tends to 1.
    const auto r0 = stable_laplace_certified(1.0, 1e-9);
    CHECK(std::abs(r0.value - std::exp(-std::sqrt(1e-9))) <= r0.err + 1e-9);
    CHECK(std::abs(r0.value - 1.0) <= 1e-4);

    // Independent adaptive quadrature oracle over the s variable.
    for (double t : {0.3, 1.0, 2.5}) {
        for (double lam : {1.0, 4.0, 9.0}) {
            const double upper = 90.0 / lam;
            const double oracle = oracles::adaptive_simpson(
                [t, lam](double s) { return stable_density(t, s) * std::exp(-lam * s); },
                t * t / 260.0, upper, 1e-13);
            CHECK(stable_laplace(t, lam) == Approx(oracle).margin(1e-8));
        }
    }
    CHECK_THROWS_AS(stable_laplace(1.0, 0.0), std::invalid_argument);
}
