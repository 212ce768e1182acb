#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "gha/expansion.hpp"
#include "gha/quadrature.hpp"
#include "gha/stable.hpp"

// Ornstein-Uhlenbeck and Poisson-Hermite semigroups. Spectral action is the
// primary computation path (exact in coefficients); the Mehler, subordination
// and kernel integral representations are validation paths.

namespace gha {

// ---------------------------------------------------------------------------
// Spectral forms: T_t h_beta = e^{-t|beta|} h_beta, P_t h_beta = e^{-t sqrt|beta|} h_beta.
// ---------------------------------------------------------------------------

inline HermiteExpansion ou_apply_spectral(const HermiteExpansion& f, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("ou_apply_spectral: t must be >= 0");
    return f.map_coefficients(
        [t](const MultiIndex& beta) { return std::exp(-t * beta.order()); });
}

inline HermiteExpansion poisson_apply_spectral(const HermiteExpansion& f, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("poisson_apply_spectral: t must be >= 0");
    return f.map_coefficients([t](const MultiIndex& beta) {
        return std::exp(-t * std::sqrt(static_cast<double>(beta.order())));
    });
}

/// d^k/dt^k P_t f: coefficient map beta -> (-sqrt|beta|)^k e^{-t sqrt|beta|}.
/// Constants vanish for k >= 1.
inline HermiteExpansion poisson_time_derivative(const HermiteExpansion& f, double t, int k) {
    if (!(t >= 0.0)) throw std::invalid_argument("poisson_time_derivative: t must be >= 0");
    if (k < 0) throw std::invalid_argument("poisson_time_derivative: k must be >= 0");
    return f.map_coefficients([t, k](const MultiIndex& beta) {
        const double r = std::sqrt(static_cast<double>(beta.order()));
        if (beta.order() == 0) return k == 0 ? 1.0 : 0.0;
        return std::pow(-r, k) * std::exp(-t * r);
    });
}

// ---------------------------------------------------------------------------
// Integral representations.
// ---------------------------------------------------------------------------

/// Mehler form: T_t f(x) = int f(sqrt(1 - e^{-2t}) u + e^{-t} x) gamma_d(du).
/// Exact for polynomials resolved by the grid.
template <class F>
double ou_apply_mehler(F&& f, double t, std::span<const double> x, const GaussHermiteGrid& grid) {
    if (!(t > 0.0)) throw std::invalid_argument("ou_apply_mehler: t must be positive");
    if (grid.dim() != static_cast<int>(x.size()))
        throw std::invalid_argument("ou_apply_mehler: dimension mismatch");
    const double decay = std::exp(-t);
    const double spread = std::sqrt(1.0 - decay * decay);
    std::vector<double> y(x.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto u = grid.node(i);
        for (std::size_t a = 0; a < x.size(); ++a) y[a] = spread * u[a] + decay * x[a];
        acc += grid.weight(i) * f(std::span<const double>(y));
    }
    return acc;
}

/// Direct kernel form of T_t (first display of the OU integral): the Mehler
/// kernel against gamma_d(dy), evaluated on the supplied grid. A quadrature
/// approximation (the integrand is not polynomial), kept as a cross-check.
template <class F>
double ou_apply_kernel(F&& f, double t, std::span<const double> x, const GaussHermiteGrid& grid) {
    if (!(t > 0.0)) throw std::invalid_argument("ou_apply_kernel: t must be positive");
    if (grid.dim() != static_cast<int>(x.size()))
        throw std::invalid_argument("ou_apply_kernel: dimension mismatch");
    const double e = std::exp(-t);
    const double one_m = 1.0 - e * e;
    double xx = 0.0;
    for (double xi : x) xx += xi * xi;
    double acc = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto yv = grid.node(i);
        double yy = 0.0, xy = 0.0;
        for (std::size_t a = 0; a < yv.size(); ++a) {
            yy += yv[a] * yv[a];
            xy += x[a] * yv[a];
        }
        const double expo = -(e * e * (xx + yy) - 2.0 * e * xy) / one_m;
        acc += grid.weight(i) * std::exp(expo) * f(yv);
    }
    return acc / std::pow(one_m, grid.dim() / 2.0);
}

/// Subordination form: P_t f(x) = int_0^inf T_s f(x) mu_t(ds), computed in
/// the u = t^2/4s variable. T_s acts spectrally on the expansion. Contract:
/// matches poisson_apply_spectral evaluated at x within quadrature tolerance.
inline double poisson_apply_subordination(const HermiteExpansion& f, double t,
                                          std::span<const double> x, const StableQuad& sq = {}) {
    if (!(t > 0.0)) throw std::invalid_argument("poisson_apply_subordination: t must be positive");
    // Cache c_beta = fhat(beta) h_beta(x) so each u-node only pays for the
    // eigenvalue factors e^{-s |beta|}.
    std::vector<std::pair<int, double>> parts;
    for (const auto& [beta, c] : f.coeffs())
        parts.emplace_back(beta.order(), c * hermite_eval(beta, x));
    double acc = 0.0;
    for (const auto& n : sq.nodes()) {
        const double s = t * t / (4.0 * n.x);
        double ts = 0.0;
        for (const auto& [order, cv] : parts) ts += cv * std::exp(-s * order);
        acc += n.w * std::pow(n.x, -0.5) * std::exp(-n.x) * ts;
    }
    // Below u_min the OU flow has reached its mean: T_s f -> fhat(0).
    acc += mean_coefficient(f) * lower_gamma_series(0.5, sq.u_min);
    return detail::kInvSqrtPi * acc;
}

// ---------------------------------------------------------------------------
// Kernels.
// ---------------------------------------------------------------------------

/// Mehler kernel k_t(x, y) of T_t with respect to Lebesgue dy.
inline double ou_kernel_density(double t, std::span<const double> x, std::span<const double> y) {
    if (!(t > 0.0)) throw std::invalid_argument("ou_kernel_density: t must be positive");
    if (x.size() != y.size()) throw std::invalid_argument("ou_kernel_density: dimension mismatch");
    const double e = std::exp(-t);
    const double one_m = 1.0 - e * e;
    double q = 0.0;
    for (std::size_t a = 0; a < x.size(); ++a) {
        const double r = y[a] - e * x[a];
        q += r * r;
    }
    const double d = static_cast<double>(x.size());
    return std::exp(-q / one_m) / std::pow(std::numbers::pi * one_m, d / 2.0);
}

/// Poisson-Hermite kernel p(t, x, y) = int_0^inf k_v(x, y) mu_t(dv), the
/// r = e^{-v} substitution of the one-dimensional r-integral form. Computed
/// in the u = t^2/4v variable with an embedded refinement error estimate.
inline QuadResult poisson_kernel_certified(double t, std::span<const double> x,
                                           std::span<const double> y, const StableQuad& sq = {}) {
    if (!(t > 0.0)) throw std::invalid_argument("poisson_kernel: t must be positive");
    if (x.size() != y.size()) throw std::invalid_argument("poisson_kernel: dimension mismatch");
    auto sum_with = [&](int points) {
        double acc = 0.0;
        for (const auto& n : log_panel_nodes(sq.u_min, sq.u_max, sq.panels, points)) {
            const double v = t * t / (4.0 * n.x);
            acc += n.w * std::pow(n.x, -0.5) * std::exp(-n.x) * ou_kernel_density(v, x, y);
        }
        return acc;
    };
    const double coarse = sum_with(sq.points);
    const double fine = sum_with(sq.points + 4);
    // v -> inf limit of the kernel is the stationary Gaussian density.
    double yy = 0.0;
    for (double yi : y) yy += yi * yi;
    const double d = static_cast<double>(x.size());
    const double k_limit = std::exp(-yy) / std::pow(std::numbers::pi, d / 2.0);
    const double low = k_limit * lower_gamma_series(0.5, sq.u_min);
    // Near u_max the kernel grows at most like (4u/t^2)^{d/2}.
    const double tail = upper_gamma_bound((d + 1.0) / 2.0, sq.u_max) *
                        std::pow(4.0 / (t * t), d / 2.0) /
                        std::pow(std::numbers::pi, d / 2.0);
    const double value = detail::kInvSqrtPi * (fine + low);
    const double err = detail::kInvSqrtPi * (std::abs(fine - coarse) + tail) +
                       detail::kInvSqrtPi * low * sq.u_min;  // curvature of the low piece
    return {value, err};
}

inline double poisson_kernel(double t, std::span<const double> x, std::span<const double> y,
                             const StableQuad& sq = {}) {
    return poisson_kernel_certified(t, x, y, sq).value;
}

// ---------------------------------------------------------------------------
// Maximal function.
// ---------------------------------------------------------------------------

/// T* f(x) = sup_{t>0} |T_t f(x)|, approximated over the supplied t-grid plus
/// both analytic endpoints: |f(x)| (t -> 0) and |fhat(0)| (t -> inf).
inline double ou_maximal(const HermiteExpansion& f, std::span<const double> x,
                         std::span<const double> t_grid) {
    if (t_grid.empty()) throw std::invalid_argument("ou_maximal: t grid must be nonempty");
    double best = std::max(std::abs(expansion_eval(f, x)), std::abs(mean_coefficient(f)));
    for (double t : t_grid)
        best = std::max(best, std::abs(expansion_eval(ou_apply_spectral(f, t), x)));
    return best;
}

/// Default maximal-function t-grid: 200 log-spaced points on [1e-4, 20].
inline std::vector<double> default_maximal_grid() {
    std::vector<double> g(200);
    const double la = std::log(1e-4), lb = std::log(20.0);
    for (std::size_t i = 0; i < g.size(); ++i)
        g[i] = std::exp(la + (lb - la) * static_cast<double>(i) / (g.size() - 1));
    return g;
}

inline double ou_maximal(const HermiteExpansion& f, std::span<const double> x) {
    const auto g = default_maximal_grid();
    return ou_maximal(f, x, g);
}

// ---------------------------------------------------------------------------
// Time quadrature for the dt/t integrals downstream.
// ---------------------------------------------------------------------------

enum class TailPolicy { analytic_bound, truncate };

/// Log-spaced panel discretization of (t_min, t_max) for the semi-infinite
/// t-integrals; tails outside the window are either certified analytically
/// by the caller or silently truncated.
struct TimeQuadrature {
    double t_min = 1e-8;
    double t_max = 50.0;
    int panels = 40;
    int points_per_panel = 8;
    TailPolicy tail_policy = TailPolicy::analytic_bound;

    std::vector<QuadNode> nodes() const {
        if (!(t_min > 0.0) || !(t_max > t_min))
            throw std::invalid_argument("TimeQuadrature: need 0 < t_min < t_max");
        if (panels < 1 || points_per_panel < 1)
            throw std::invalid_argument("TimeQuadrature: panels and points must be >= 1");
        return log_panel_nodes(t_min, t_max, panels, points_per_panel);
    }

    /// Window sized from the spectral gap m: e^{-t sqrt(m)} has decayed below
    /// the noise floor at t_max, with headroom for polynomial prefactors.
    static TimeQuadrature for_gap(int gap, double t_min = 1e-8, int panels = 40, int points = 8) {
        const double m = std::max(1, gap);
        TimeQuadrature q;
        q.t_min = t_min;
        q.t_max = (40.0 + 14.0) / std::sqrt(m);
        q.panels = panels;
        q.points_per_panel = points;
        return q;
    }
};

}  // namespace gha
