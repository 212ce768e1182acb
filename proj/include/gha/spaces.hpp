#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gha/expansion.hpp"
#include "gha/semigroup.hpp"

// Gaussian Besov-Lipschitz and Triebel-Lizorkin seminorms and norms,
//
//   B: ( int_0^inf ( t^{k-a} || d^k_t P_t f ||_{p,gamma} )^q dt/t )^{1/q},
//   F: || ( int_0^inf ( t^{k-a} | d^k_t P_t f | )^q dt/t )^{1/q} ||_{p,gamma},
//
// with k any integer > alpha (default: the smallest such), plus the
// Littlewood-Paley g_k function and the closed-form norms on basis elements.
// Both seminorms share the same t-discretization for a given (f, params), so
// the Tonelli identity at p = q and the Minkowski orderings hold at the
// discrete level; truncation tails are certified into the reported error.

namespace gha {

constexpr double kQInf = std::numeric_limits<double>::infinity();

/// Smallest integer strictly greater than alpha.
inline int choose_k(double alpha) {
    if (!(alpha >= 0.0)) throw std::invalid_argument("choose_k: alpha must be >= 0");
    return static_cast<int>(std::floor(alpha)) + 1;
}

/// (alpha, p, q, k) defining a Besov/Triebel norm; k defaults per choose_k.
struct SpaceParams {
    double alpha = 0.0;
    LpSpec p = LpSpec::finite(2.0);
    double q = 2.0;  // in [1, inf) or kQInf
    int k = 1;

    static SpaceParams make(double alpha, LpSpec p, double q) {
        return with_k(alpha, p, q, choose_k(alpha));
    }
    static SpaceParams with_k(double alpha, LpSpec p, double q, int k) {
        if (!(alpha >= 0.0)) throw std::invalid_argument("SpaceParams: alpha must be >= 0");
        if (!(q >= 1.0)) throw std::invalid_argument("SpaceParams: q must be >= 1");
        if (!(static_cast<double>(k) > alpha))
            throw std::invalid_argument("SpaceParams: k must exceed alpha");
        return SpaceParams{alpha, p, q, k};
    }
    bool q_infinite() const { return std::isinf(q); }
};

struct NormResult {
    double value = 0.0;
    double err = 0.0;
};

namespace detail {

/// Per-coefficient data for d^k/dt^k P_t f: the decay rate sqrt|beta| and the
/// t-independent factor (-sqrt|beta|)^k fhat(beta), together with h_beta
/// values on the grid. Coefficients with beta = 0 drop out for k >= 1.
struct DerivativeTable {
    std::vector<double> rate;         // sqrt|beta|
    std::vector<double> factor;      // (-sqrt|beta|)^k fhat
    std::vector<double> basis_vals;  // [coeff][node], flattened
    std::vector<double> basis_norm;  // ||h_beta||_{p,gamma} on the grid
    std::size_t n_nodes = 0;

    double value_at(double t, std::size_t node) const {
        double acc = 0.0;
        for (std::size_t c = 0; c < rate.size(); ++c)
            acc += factor[c] * std::exp(-t * rate[c]) * basis_vals[c * n_nodes + node];
        return acc;
    }
};

inline DerivativeTable make_derivative_table(const HermiteExpansion& f, int k, LpSpec p,
                                             const GaussHermiteGrid& grid) {
    DerivativeTable tab;
    tab.n_nodes = grid.size();
    for (const auto& [beta, c] : f.coeffs()) {
        if (beta.order() == 0) continue;
        const double r = std::sqrt(static_cast<double>(beta.order()));
        tab.rate.push_back(r);
        tab.factor.push_back(std::pow(-r, k) * c);
        const auto hb = basis_expansion(beta);
        for (std::size_t i = 0; i < grid.size(); ++i)
            tab.basis_vals.push_back(expansion_eval(hb, grid.node(i)));
        tab.basis_norm.push_back(lp_norm(hb, p, grid));
    }
    return tab;
}

/// t-window shared by both seminorms for a given (f, params).
inline TimeQuadrature seminorm_window(const HermiteExpansion& f, const TimeQuadrature* user) {
    if (user) return *user;
    return TimeQuadrature::for_gap(f.spectral_gap());
}

/// Certified bound on int_T^inf t^{a-1} e^{-rho t} dt.
inline double exp_tail_bound(double a, double rho, double T) {
    const double X = rho * T;
    if (X <= 2.0 * std::max(a - 1.0, 0.0)) return std::numeric_limits<double>::infinity();
    return upper_gamma_bound(a, X) / std::pow(rho, a);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Besov-Lipschitz seminorm / norm.
// ---------------------------------------------------------------------------

inline NormResult besov_seminorm_certified(const HermiteExpansion& f, const SpaceParams& prm,
                                           const GaussHermiteGrid& grid,
                                           const TimeQuadrature* t_quad = nullptr) {
    if (prm.q_infinite())
        throw std::invalid_argument("besov_seminorm: q must be finite (use besov_infty_constant)");
    if (f.spectral_gap() == 0) return {0.0, 0.0};  // constants: d_t P_t f vanishes
    const TimeQuadrature tq = detail::seminorm_window(f, t_quad);
    const double a = (prm.k - prm.alpha) * prm.q;

    auto deriv_norm = [&](double t) {
        return lp_norm(poisson_time_derivative(f, t, prm.k), prm.p, grid);
    };
    double acc = 0.0;
    for (const auto& n : tq.nodes())
        acc += n.w * std::pow(n.x, a - 1.0) * std::pow(deriv_norm(n.x), prm.q);

    double tail = 0.0;
    if (tq.tail_policy == TailPolicy::analytic_bound) {
        // Lower: the norm is non-increasing, so its value at 0 dominates.
        const double n0 = deriv_norm(0.0);
        tail += std::pow(n0, prm.q) * std::pow(tq.t_min, a) / a;
        // Upper: triangle-inequality envelope decaying at the gap rate.
        const auto tab = detail::make_derivative_table(f, prm.k, prm.p, grid);
        double g_T = 0.0;
        for (std::size_t c = 0; c < tab.rate.size(); ++c)
            g_T += std::abs(tab.factor[c]) * tab.basis_norm[c] * std::exp(-tq.t_max * tab.rate[c]);
        const double rho = prm.q * std::sqrt(static_cast<double>(f.spectral_gap()));
        tail += std::pow(g_T, prm.q) * std::exp(rho * tq.t_max) *
                detail::exp_tail_bound(a, rho, tq.t_max);
    }
    const double value = std::pow(acc, 1.0 / prm.q);
    const double hi = std::pow(acc + tail, 1.0 / prm.q);
    return {value, hi - value};
}

inline double besov_seminorm(const HermiteExpansion& f, const SpaceParams& prm,
                             const GaussHermiteGrid& grid, const TimeQuadrature* t_quad = nullptr) {
    return besov_seminorm_certified(f, prm, grid, t_quad).value;
}

inline NormResult besov_norm_certified(const HermiteExpansion& f, const SpaceParams& prm,
                                       const GaussHermiteGrid& grid,
                                       const TimeQuadrature* t_quad = nullptr) {
    const auto semi = besov_seminorm_certified(f, prm, grid, t_quad);
    return {lp_norm(f, prm.p, grid) + semi.value, semi.err};
}

inline double besov_norm(const HermiteExpansion& f, const SpaceParams& prm,
                         const GaussHermiteGrid& grid, const TimeQuadrature* t_quad = nullptr) {
    return besov_norm_certified(f, prm, grid, t_quad).value;
}

/// A_k(f): the q = inf seminorm, i.e. sup_t t^{k-alpha} ||d^k_t P_t f||_p,
/// approximated on a log-spaced t-grid with golden-section refinement around
/// the grid maximum. Both endpoint limits vanish for k > alpha.
inline double besov_infty_constant(const HermiteExpansion& f, const SpaceParams& prm,
                                   const GaussHermiteGrid& grid,
                                   const TimeQuadrature* t_quad = nullptr) {
    if (f.spectral_gap() == 0) return 0.0;
    const TimeQuadrature tq = detail::seminorm_window(f, t_quad);
    auto profile = [&](double t) {
        return std::pow(t, prm.k - prm.alpha) *
               lp_norm(poisson_time_derivative(f, t, prm.k), prm.p, grid);
    };
    const int samples = 400;
    const double la = std::log(tq.t_min), lb = std::log(tq.t_max);
    double best = 0.0;
    int best_i = 0;
    std::vector<double> ts(samples);
    for (int i = 0; i < samples; ++i) {
        ts[static_cast<std::size_t>(i)] = std::exp(la + (lb - la) * i / (samples - 1));
        const double v = profile(ts[static_cast<std::size_t>(i)]);
        if (v > best) { best = v; best_i = i; }
    }
    double lo = ts[static_cast<std::size_t>(std::max(0, best_i - 1))];
    double hi = ts[static_cast<std::size_t>(std::min(samples - 1, best_i + 1))];
    const double gr = 0.618033988749894848;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = profile(x1), f2 = profile(x2);
    for (int it = 0; it < 80; ++it) {
        if (f1 < f2) {
            lo = x1; x1 = x2; f1 = f2;
            x2 = lo + gr * (hi - lo); f2 = profile(x2);
        } else {
            hi = x2; x2 = x1; f2 = f1;
            x1 = hi - gr * (hi - lo); f1 = profile(x1);
        }
    }
    return std::max({best, f1, f2});
}

/// ||f||_{B^alpha_{p,inf}} = ||f||_p + A_k(f).
inline double besov_infty_norm(const HermiteExpansion& f, const SpaceParams& prm,
                               const GaussHermiteGrid& grid,
                               const TimeQuadrature* t_quad = nullptr) {
    return lp_norm(f, prm.p, grid) + besov_infty_constant(f, prm, grid, t_quad);
}

// ---------------------------------------------------------------------------
// Triebel-Lizorkin seminorm / norm.
// ---------------------------------------------------------------------------

inline NormResult triebel_seminorm_certified(const HermiteExpansion& f, const SpaceParams& prm,
                                             const GaussHermiteGrid& grid,
                                             const TimeQuadrature* t_quad = nullptr) {
    if (prm.q_infinite())
        throw std::invalid_argument("triebel_seminorm: q = inf is outside the F-space definition");
    if (f.spectral_gap() == 0) return {0.0, 0.0};
    if (f.dim() != grid.dim()) throw std::invalid_argument("triebel_seminorm: dimension mismatch");
    const TimeQuadrature tq = detail::seminorm_window(f, t_quad);
    const double a = (prm.k - prm.alpha) * prm.q;
    const auto tab = detail::make_derivative_table(f, prm.k, prm.p, grid);

    std::vector<double> acc(grid.size(), 0.0);
    for (const auto& n : tq.nodes()) {
        const double wt = n.w * std::pow(n.x, a - 1.0);
        for (std::size_t i = 0; i < grid.size(); ++i)
            acc[i] += wt * std::pow(std::abs(tab.value_at(n.x, i)), prm.q);
    }

    std::vector<double> tail(grid.size(), 0.0);
    if (tq.tail_policy == TailPolicy::analytic_bound) {
        const double rho = prm.q * std::sqrt(static_cast<double>(f.spectral_gap()));
        const double upper_factor =
            std::exp(rho * tq.t_max) * detail::exp_tail_bound(a, rho, tq.t_max);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            double n0 = 0.0, g_T = 0.0;
            for (std::size_t c = 0; c < tab.rate.size(); ++c) {
                const double hv = std::abs(tab.factor[c] * tab.basis_vals[c * tab.n_nodes + i]);
                n0 += hv;
                g_T += hv * std::exp(-tq.t_max * tab.rate[c]);
            }
            tail[i] = std::pow(n0, prm.q) * std::pow(tq.t_min, a) / a +
                      std::pow(g_T, prm.q) * upper_factor;
        }
    }

    auto outer = [&](const std::vector<double>& inner_q) {
        if (prm.p.is_inf) {
            double m = 0.0;
            for (double v : inner_q) m = std::max(m, std::pow(v, 1.0 / prm.q));
            return m;
        }
        double s = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i)
            s += grid.weight(i) * std::pow(inner_q[i], prm.p.p / prm.q);
        return std::pow(s, 1.0 / prm.p.p);
    };
    const double value = outer(acc);
    std::vector<double> acc_hi(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) acc_hi[i] = acc[i] + tail[i];
    return {value, outer(acc_hi) - value};
}

inline double triebel_seminorm(const HermiteExpansion& f, const SpaceParams& prm,
                               const GaussHermiteGrid& grid,
                               const TimeQuadrature* t_quad = nullptr) {
    return triebel_seminorm_certified(f, prm, grid, t_quad).value;
}

inline NormResult triebel_norm_certified(const HermiteExpansion& f, const SpaceParams& prm,
                                         const GaussHermiteGrid& grid,
                                         const TimeQuadrature* t_quad = nullptr) {
    const auto semi = triebel_seminorm_certified(f, prm, grid, t_quad);
    return {lp_norm(f, prm.p, grid) + semi.value, semi.err};
}

inline double triebel_norm(const HermiteExpansion& f, const SpaceParams& prm,
                           const GaussHermiteGrid& grid, const TimeQuadrature* t_quad = nullptr) {
    return triebel_norm_certified(f, prm, grid, t_quad).value;
}

// ---------------------------------------------------------------------------
// Littlewood-Paley g_k function.
// ---------------------------------------------------------------------------

/// g_k(f)(x) = ( int_0^inf ( t^k |d^k_t P_t f(x)| )^2 dt/t )^{1/2}.
inline double gk_function(const HermiteExpansion& f, int k, std::span<const double> x,
                          const TimeQuadrature* t_quad = nullptr) {
    if (k < 1) throw std::invalid_argument("gk_function: k must be >= 1");
    if (f.spectral_gap() == 0) return 0.0;
    const TimeQuadrature tq = detail::seminorm_window(f, t_quad);
    std::vector<std::pair<double, double>> parts;
    for (const auto& [beta, c] : f.coeffs()) {
        if (beta.order() == 0) continue;
        const double r = std::sqrt(static_cast<double>(beta.order()));
        parts.emplace_back(r, std::pow(-r, k) * c * hermite_eval(beta, x));
    }
    double acc = 0.0;
    for (const auto& n : tq.nodes()) {
        double v = 0.0;
        for (const auto& [r, cv] : parts) v += cv * std::exp(-n.x * r);
        acc += n.w * std::pow(n.x, 2.0 * k - 1.0) * v * v;
    }
    return std::sqrt(acc);
}

// ---------------------------------------------------------------------------
// Closed forms on the Hermite basis.
// ---------------------------------------------------------------------------

/// Seminorm of h_beta in both B^alpha_{p,q} and F^alpha_{p,q}:
///   |beta|^{alpha/2} q^{-(k-alpha)} Gamma((k-alpha) q)^{1/q} ||h_beta||_p.
inline double hermite_closed_form_seminorm(const MultiIndex& beta, const SpaceParams& prm,
                                           const GaussHermiteGrid& grid) {
    if (beta.order() < 1)
        throw std::invalid_argument("hermite_closed_form: |beta| must be >= 1");
    if (prm.q_infinite())
        throw std::invalid_argument("hermite_closed_form: q must be finite");
    const double ka = prm.k - prm.alpha;
    const double time_factor =
        std::pow(prm.q, -ka) * std::pow(std::tgamma(ka * prm.q), 1.0 / prm.q);
    return std::pow(static_cast<double>(beta.order()), prm.alpha / 2.0) * time_factor *
           lp_norm(basis_expansion(beta), prm.p, grid);
}

/// ||h_beta||_{B^alpha_{p,q}} = (1 + |beta|^{alpha/2} q^{-(k-alpha)}
/// Gamma((k-alpha) q)^{1/q}) ||h_beta||_p; equals the F-norm for the same params.
inline double hermite_closed_form_norm(const MultiIndex& beta, const SpaceParams& prm,
                                       const GaussHermiteGrid& grid) {
    return lp_norm(basis_expansion(beta), prm.p, grid) +
           hermite_closed_form_seminorm(beta, prm, grid);
}

/// Closed-form A_k(h_beta) = sup_t t^{k-alpha} |beta|^{k/2} e^{-t sqrt|beta|}
/// ||h_beta||_p = |beta|^{alpha/2} ((k-alpha)/e)^{k-alpha} ||h_beta||_p.
inline double hermite_closed_form_infty_constant(const MultiIndex& beta, const SpaceParams& prm,
                                                 const GaussHermiteGrid& grid) {
    if (beta.order() < 1)
        throw std::invalid_argument("hermite_closed_form: |beta| must be >= 1");
    const double ka = prm.k - prm.alpha;
    return std::pow(static_cast<double>(beta.order()), prm.alpha / 2.0) *
           std::pow(ka / std::numbers::e, ka) * lp_norm(basis_expansion(beta), prm.p, grid);
}

}  // namespace gha
