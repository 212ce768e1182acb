#include <catch2/catch.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "gha/fractional.hpp"
#include "gha/spaces.hpp"
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

TEST_CASE("choose_k is the smallest integer strictly above alpha") {
    CHECK(choose_k(0.0) == 1);
    CHECK(choose_k(0.5) == 1);
    CHECK(choose_k(1.0) == 2);
    CHECK(choose_k(2.3) == 3);
    CHECK_THROWS_AS(choose_k(-0.1), std::invalid_argument);
}

TEST_CASE("space parameter validation") {
    CHECK(SpaceParams::make(0.5, LpSpec::finite(2.0), 2.0).k == 1);
    CHECK(SpaceParams::make(1.0, LpSpec::finite(2.0), 2.0).k == 2);
    CHECK_THROWS_AS(SpaceParams::with_k(1.5, LpSpec::finite(2.0), 2.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(SpaceParams::make(0.5, LpSpec::finite(2.0), 0.5), std::invalid_argument);

    const auto grid = gauss_hermite_grid(8, 1);
    const auto prm_inf = SpaceParams::with_k(0.5, LpSpec::finite(2.0), kQInf, 1);
    CHECK_THROWS_AS(triebel_seminorm(basis_expansion(MultiIndex{1}), prm_inf, grid),
                    std::invalid_argument);
    CHECK_THROWS_AS(besov_seminorm(basis_expansion(MultiIndex{1}), prm_inf, grid),
                    std::invalid_argument);
}

TEST_CASE("Besov seminorm spot value and homogeneity") {
    const auto grid = gauss_hermite_grid(16, 1);
    const auto prm = SpaceParams::make(0.5, LpSpec::finite(2.0), 2.0);
    const auto h2 = basis_expansion(MultiIndex{2});

    const double expected = std::pow(2.0, -0.25);
    CHECK(expected == Approx(0.8408964152537145).epsilon(1e-14));
    CHECK(besov_seminorm(h2, prm, grid) == Approx(expected).epsilon(1e-5));

    CHECK(besov_seminorm(basis_expansion(MultiIndex{0}), prm, grid) == 0.0);

    const auto scaled = 3.0 * h2;
    CHECK(besov_seminorm(scaled, prm, grid) ==
          Approx(3.0 * besov_seminorm(h2, prm, grid)).epsilon(1e-12));

    CHECK(besov_norm(h2, prm, grid) == Approx(1.0 + expected).epsilon(1e-5));
    CHECK(besov_norm(basis_expansion(MultiIndex{0}), prm, grid) == Approx(1.0).epsilon(1e-13));
    CHECK(besov_norm(HermiteExpansion(1), prm, grid) == 0.0);
}

TEST_CASE("closed-form norms on the basis match quadrature") {
    const auto grid = gauss_hermite_grid(16, 1);
    for (double alpha : {0.0, 0.5, 1.3}) {
        for (auto [pv, qv] : {std::pair{2.0, 2.0}, {4.0, 2.0}, {2.0, 4.0}}) {
            const auto prm = SpaceParams::make(alpha, LpSpec::finite(pv), qv);
            for (int b = 1; b <= 4; ++b) {
                const auto hb = basis_expansion(MultiIndex{b});
                const double closed = hermite_closed_form_seminorm(MultiIndex{b}, prm, grid);
                const double numeric_b = besov_seminorm(hb, prm, grid);
                const double numeric_f = triebel_seminorm(hb, prm, grid);
                CHECK(numeric_b == Approx(closed).epsilon(1e-5));
                CHECK(numeric_f == Approx(closed).epsilon(1e-5));
                CHECK(besov_norm(hb, prm, grid) ==
                      Approx(hermite_closed_form_norm(MultiIndex{b}, prm, grid)).epsilon(1e-5));
            }
        }
    }
    CHECK_THROWS_AS(hermite_closed_form_norm(MultiIndex{0},
                                             SpaceParams::make(0.5, LpSpec::finite(2.0), 2.0),
                                             grid),
                    std::invalid_argument);
}

TEST_CASE("closed-form norm arithmetic examples") {
    const auto grid = gauss_hermite_grid(16, 1);
    const auto prm = SpaceParams::make(0.5, LpSpec::finite(2.0), 2.0);
    CHECK(hermite_closed_form_norm(MultiIndex{2}, prm, grid) ==
          Approx(1.0 + std::pow(2.0, -0.25)).epsilon(1e-13));

    // alpha = 0: 1 + Gamma(2)^{1/2}/2 = 1.5.
    const auto prm0 = SpaceParams::make(0.0, LpSpec::finite(2.0), 2.0);
    CHECK(hermite_closed_form_norm(MultiIndex{1}, prm0, grid) == Approx(1.5).epsilon(1e-13));
}

TEST_CASE("A_k constant: spot value, closed form, homogeneity") {
    const auto grid = gauss_hermite_grid(16, 1);
    const auto prm = SpaceParams::make(0.5, LpSpec::finite(2.0), 2.0);
    const auto h1 = basis_expansion(MultiIndex{1});

    // max of t^{1/2} e^{-t} is attained at t = 1/2.
    const double expected = std::sqrt(0.5) * std::exp(-0.5);
    CHECK(expected == Approx(0.4288819424803531).epsilon(1e-12));
    CHECK(besov_infty_constant(h1, prm, grid) == Approx(expected).epsilon(1e-8));
    CHECK(hermite_closed_form_infty_constant(MultiIndex{1}, prm, grid) ==
          Approx(expected).epsilon(1e-13));

    CHECK(besov_infty_constant(basis_expansion(MultiIndex{0}), prm, grid) == 0.0);
    CHECK(besov_infty_constant(2.5 * h1, prm, grid) == Approx(2.5 * expected).epsilon(1e-8));
}

TEST_CASE("Triebel equals Besov on basis elements and at p = q") {
    const auto grid = gauss_hermite_grid(16, 1);
    for (auto [pv, qv] : {std::pair{2.0, 2.0}, {4.0, 2.0}, {2.0, 4.0}}) {
        const auto prm = SpaceParams::make(0.7, LpSpec::finite(pv), qv);
        const auto h3 = basis_expansion(MultiIndex{3});
        // The time factor of |d^k_t P_t h_beta(x)| does not depend on x.
        CHECK(triebel_norm(h3, prm, grid) == Approx(besov_norm(h3, prm, grid)).epsilon(1e-10));
    }
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto f = random_expansion(1, 4, seed);
        const auto prm = SpaceParams::make(0.5, LpSpec::finite(2.0), 2.0);
        CHECK(triebel_seminorm(f, prm, grid) ==
              Approx(besov_seminorm(f, prm, grid)).epsilon(1e-10));
    }
}

TEST_CASE("Besov/Triebel orderings by Minkowski") {
    const auto grid = gauss_hermite_grid(12, 1);
    for (std::uint64_t seed : {5u, 6u}) {
        const auto f = random_expansion(1, 5, seed);
        // p > q: F-norm dominated by B-norm.
        const auto prm_pq = SpaceParams::make(0.5, LpSpec::finite(4.0), 2.0);
        CHECK(triebel_norm(f, prm_pq, grid) <= besov_norm(f, prm_pq, grid) * (1.0 + 1e-9));
        // q > p: B-norm dominated by F-norm.
        const auto prm_qp = SpaceParams::make(0.5, LpSpec::finite(2.0), 4.0);
        CHECK(besov_norm(f, prm_qp, grid) <= triebel_norm(f, prm_qp, grid) * (1.0 + 1e-9));
    }
}

TEST_CASE("seminorm triangle inequality") {
    const auto grid = gauss_hermite_grid(12, 1);
    const auto prm = SpaceParams::make(0.5, LpSpec::finite(2.0), 2.0);
    const auto f = random_expansion(1, 4, 9);
    const auto g = random_expansion(1, 4, 10);
    CHECK(besov_seminorm(f + g, prm, grid) <=
          besov_seminorm(f, prm, grid) + besov_seminorm(g, prm, grid) + 1e-10);
    CHECK(triebel_seminorm(f + g, prm, grid) <=
          triebel_seminorm(f, prm, grid) + triebel_seminorm(g, prm, grid) + 1e-10);
}

TEST_CASE("g_k function values") {
    std::vector<double> x{1.0};
    CHECK(gk_function(basis_expansion(MultiIndex{0}), 1, x) == 0.0);

    // sqrt(2) (int t e^{-2t} dt)^{1/2} = sqrt(2)/2.
    CHECK(gk_function(basis_expansion(MultiIndex{1}), 1, x) ==
          Approx(std::numbers::sqrt2 / 2.0).epsilon(1e-8));

    // |h_4(x)| 4 (Gamma(4)/4^4)^{1/2}.
    std::vector<double> x2{0.3};
    const auto h4 = basis_expansion(MultiIndex{4});
    const double expected = std::abs(expansion_eval(h4, x2)) * 4.0 * std::sqrt(6.0 / 256.0);
    CHECK(gk_function(h4, 2, x2) == Approx(expected).epsilon(1e-8));
}

TEST_CASE("k-equivalence bracketing for the Besov seminorm") {
    const auto grid = gauss_hermite_grid(12, 1);
    for (double alpha : {0.5, 1.3}) {
        const int l = choose_k(alpha);
        const int k = l + 1;
        const double d_const = 1.0 / (l - alpha);                              // D_{k,l,alpha}
        const double a_const = stable_deriv_chain_constant(1) * std::pow(2.0, k - alpha);
        for (std::uint64_t seed : {21u, 22u, 23u}) {
            const auto f = random_expansion(1, 4, seed);
            const auto prm_l = SpaceParams::with_k(alpha, LpSpec::finite(2.0), 2.0, l);
            const auto prm_k = SpaceParams::with_k(alpha, LpSpec::finite(2.0), 2.0, k);
            const double s_l = besov_seminorm(f, prm_l, grid);
            const double s_k = besov_seminorm(f, prm_k, grid);
            CHECK(s_l <= d_const * s_k * (1.0 + 1e-9));
            CHECK(s_k <= a_const * s_l * (1.0 + 1e-9));

            // Same bracketing for the Triebel seminorm.
            const double f_l = triebel_seminorm(f, prm_l, grid);
            const double f_k = triebel_seminorm(f, prm_k, grid);
            CHECK(f_l <= d_const * f_k * (1.0 + 1e-9));
            CHECK(f_k <= a_const * f_l * (1.0 + 1e-9));
        }
    }
}

TEST_CASE("A_k bracketing across derivative orders") {
    const auto grid = gauss_hermite_grid(12, 1);
    for (double alpha : {0.5, 1.3}) {
        const int l = choose_k(alpha);
        const int k = l + 1;
        for (std::uint64_t seed : {31u, 32u}) {
            const auto f = random_expansion(1, 4, seed);
            const double a_l = besov_infty_constant(
                f, SpaceParams::with_k(alpha, LpSpec::finite(2.0), 2.0, l), grid);
            const double a_k = besov_infty_constant(
                f, SpaceParams::with_k(alpha, LpSpec::finite(2.0), 2.0, k), grid);
            CHECK(a_l <= a_k / (l - alpha) * (1.0 + 1e-9));
            CHECK(a_k <= stable_deriv_chain_constant(1) * std::pow(2.0, k - alpha) * a_l *
                             (1.0 + 1e-9));
        }
    }
}

TEST_CASE("two-dimensional closed forms and Tonelli equality") {
    const auto grid = gauss_hermite_grid(12, 2);
    for (auto [pv, qv] : {std::pair{2.0, 2.0}, {4.0, 2.0}}) {
        const auto prm = SpaceParams::make(0.5, LpSpec::finite(pv), qv);
        const MultiIndex b11{1, 1};  // |beta| = 2
        const auto hb = basis_expansion(b11);
        const double closed = hermite_closed_form_seminorm(b11, prm, grid);
        CHECK(besov_seminorm(hb, prm, grid) == Approx(closed).epsilon(1e-5));
        CHECK(triebel_seminorm(hb, prm, grid) == Approx(closed).epsilon(1e-5));
    }
    const auto f = random_expansion(2, 4, 77);
    const auto prm = SpaceParams::make(0.5, LpSpec::finite(2.0), 2.0);
    CHECK(triebel_norm(f, prm, grid) == Approx(besov_norm(f, prm, grid)).epsilon(1e-8));
}

TEST_CASE("bracketing holds two derivative orders apart") {
    const auto grid = gauss_hermite_grid(12, 1);
    for (double alpha : {0.5, 1.3}) {
        const int l = choose_k(alpha);
        const int k = l + 2;
        const double d_const = 1.0 / ((l - alpha) * (l + 1 - alpha));
        const double a_const = stable_deriv_chain_constant(2) * std::pow(2.0, k - alpha);
        for (std::uint64_t seed : {41u, 42u}) {
            const auto f = random_expansion(1, 4, seed);
            const double s_l =
                besov_seminorm(f, SpaceParams::with_k(alpha, LpSpec::finite(2.0), 2.0, l), grid);
            const double s_k =
                besov_seminorm(f, SpaceParams::with_k(alpha, LpSpec::finite(2.0), 2.0, k), grid);
            CHECK(s_l <= d_const * s_k * (1.0 + 1e-9));
            CHECK(s_k <= a_const * s_l * (1.0 + 1e-9));
        }
    }
}

TEST_CASE("constant expansions have vanishing seminorms") {
    const auto grid = gauss_hermite_grid(8, 1);
    HermiteExpansion c(1);
    c.set(MultiIndex{0}, -2.5);
    const auto prm = SpaceParams::make(0.5, LpSpec::finite(2.0), 2.0);
    CHECK(besov_seminorm(c, prm, grid) == 0.0);
    CHECK(triebel_seminorm(c, prm, grid) == 0.0);
    CHECK(besov_norm(c, prm, grid) == Approx(2.5).epsilon(1e-13));
    CHECK(triebel_norm(c, prm, grid) == Approx(2.5).epsilon(1e-13));
    CHECK(gk_function(c, 1, std::vector<double>{0.0}) == 0.0);
}

TEST_CASE("seminorm quadrature converges with the budget") {
    const auto grid = gauss_hermite_grid(16, 1);
    const auto prm = SpaceParams::make(0.5, LpSpec::finite(2.0), 2.0);
    for (int b : {1, 3}) {
        const auto hb = basis_expansion(MultiIndex{b});
        const double closed = hermite_closed_form_seminorm(MultiIndex{b}, prm, grid);
        const auto fine = TimeQuadrature::for_gap(b, 1e-10, 80, 12);
        CHECK(besov_seminorm(hb, prm, grid, &fine) == Approx(closed).epsilon(1e-9));
        CHECK(triebel_seminorm(hb, prm, grid, &fine) == Approx(closed).epsilon(1e-9));
    }
}

TEST_CASE("Lipschitz-space corner: p = q = inf") {
    const auto grid = gauss_hermite_grid(16, 1);
    const auto prm = SpaceParams::make(0.5, LpSpec::inf(), kQInf);
    const auto h1 = basis_expansion(MultiIndex{1});
    const double a_k = besov_infty_constant(h1, prm, grid);
    CHECK(a_k == Approx(hermite_closed_form_infty_constant(MultiIndex{1}, prm, grid))
                     .epsilon(1e-7));
    CHECK(besov_infty_norm(h1, prm, grid) ==
          Approx(lp_norm(h1, LpSpec::inf(), grid) + a_k).epsilon(1e-12));
}

TEST_CASE("p = inf Besov path uses the grid supremum") {
    const auto grid = gauss_hermite_grid(16, 1);
    const auto prm = SpaceParams::make(0.5, LpSpec::inf(), 2.0);
    const auto h1 = basis_expansion(MultiIndex{1});
    // ||h_1||_inf on the grid times the same closed-form time factor.
    const double time_factor = std::pow(2.0, -0.5) * std::sqrt(std::tgamma(1.0));
    const double sup = lp_norm(h1, LpSpec::inf(), grid);
    CHECK(besov_seminorm(h1, prm, grid) == Approx(time_factor * sup).epsilon(1e-6));
}
