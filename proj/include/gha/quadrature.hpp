#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

// Panel quadrature building blocks shared by the semi-infinite integrals in
// this library: Gauss-Legendre rules, log-spaced panel decompositions, and
// certified bounds for gamma-type integral tails.

namespace gha {

/// A quadrature node/weight pair for a plain dx integral.
struct QuadNode {
    double x;
    double w;
};

/// Value with a certified (or estimated, where documented) error bound.
struct QuadResult {
    double value = 0.0;
    double err = 0.0;
};

namespace detail {

/// n-point Gauss-Legendre rule on [-1, 1] via Newton iteration on the
/// Legendre recurrence.
inline std::vector<QuadNode> gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    std::vector<QuadNode> rule(static_cast<std::size_t>(n));
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 64; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= 1e-15) break;
        }
        const std::size_t lo = static_cast<std::size_t>(i);
        const std::size_t hi = static_cast<std::size_t>(n - 1 - i);
        if (lo == hi) z = 0.0;
        rule[lo] = {-z, 2.0 / ((1.0 - z * z) * pp * pp)};
        rule[hi] = {z, rule[lo].w};
    }
    return rule;
}

}  // namespace detail

/// Nodes for int_a^b f(x) dx with `panels` log-spaced panels of
/// `points` Gauss-Legendre points each. Requires 0 < a < b.
inline std::vector<QuadNode> log_panel_nodes(double a, double b, int panels, int points) {
    if (!(a > 0.0) || !(b > a)) throw std::invalid_argument("log_panel_nodes: need 0 < a < b");
    if (panels < 1 || points < 1)
        throw std::invalid_argument("log_panel_nodes: panels and points must be >= 1");
    const auto gl = detail::gauss_legendre(points);
    const double la = std::log(a), lb = std::log(b);
    std::vector<QuadNode> nodes;
    nodes.reserve(static_cast<std::size_t>(panels) * static_cast<std::size_t>(points));
    for (int p = 0; p < panels; ++p) {
        const double x0 = std::exp(la + (lb - la) * p / panels);
        const double x1 = std::exp(la + (lb - la) * (p + 1) / panels);
        const double mid = 0.5 * (x0 + x1);
        const double half = 0.5 * (x1 - x0);
        for (const auto& g : gl) nodes.push_back({mid + half * g.x, half * g.w});
    }
    return nodes;
}

/// Panel nodes with extra breakpoints inserted (e.g. sign changes of the
/// integrand), so each sub-interval is smooth. Breakpoints outside (a, b)
/// are ignored; each resulting piece gets a log-spaced panel decomposition
/// proportional to its log-length.
inline std::vector<QuadNode> log_panel_nodes_split(double a, double b, int panels, int points,
                                                   std::vector<double> breakpoints) {
    std::vector<double> cuts{a, b};
    for (double c : breakpoints)
        if (c > a * (1.0 + 1e-12) && c < b * (1.0 - 1e-12)) cuts.push_back(c);
    std::sort(cuts.begin(), cuts.end());
    const double ltotal = std::log(b) - std::log(a);
    std::vector<QuadNode> nodes;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double frac = (std::log(cuts[i + 1]) - std::log(cuts[i])) / ltotal;
        const int np = std::max(2, static_cast<int>(std::ceil(frac * panels)));
        auto piece = log_panel_nodes(cuts[i], cuts[i + 1], np, points);
        nodes.insert(nodes.end(), piece.begin(), piece.end());
    }
    return nodes;
}

// ---------------------------------------------------------------------------
// Certified tails of gamma-type integrals.
// ---------------------------------------------------------------------------

/// int_0^x u^{a-1} e^{-u} du by the alternating series
/// sum_m (-1)^m x^{a+m} / (m! (a+m)), valid for small x (converges in a few
/// terms once x < 1). a > 0.
inline double lower_gamma_series(double a, double x) {
    if (!(a > 0.0) || !(x >= 0.0)) throw std::invalid_argument("lower_gamma_series: need a > 0, x >= 0");
    if (x == 0.0) return 0.0;
    double sum = std::pow(x, a) / a;  // m = 0
    double coeff = 1.0;               // (-x)^m / m!
    for (int m = 1; m < 60; ++m) {
        coeff *= -x / m;
        const double term = coeff * std::pow(x, a) / (a + m);
        sum += term;
        if (std::abs(term) < 1e-300 || std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

/// Upper bound on int_X^infty u^{a-1} e^{-u} du, valid for X > max(a-1, 0):
/// the integrand is dominated by its value at X times e^{-(u-X)} shape.
inline double upper_gamma_bound(double a, double X) {
    if (!(X > 0.0)) throw std::invalid_argument("upper_gamma_bound: need X > 0");
    if (a <= 1.0) return std::pow(X, a - 1.0) * std::exp(-X);
    if (X <= 2.0 * (a - 1.0))
        throw std::invalid_argument("upper_gamma_bound: X too small for certified bound");
    // u^{a-1} <= X^{a-1} e^{(a-1)(u-X)/X}, so the tail is bounded by a
    // geometric-rate exponential integral.
    const double rate = 1.0 - (a - 1.0) / X;
    return std::pow(X, a - 1.0) * std::exp(-X) / rate;
}

}  // namespace gha
