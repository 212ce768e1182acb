#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gha/quadrature.hpp"

// One-sided stable measure of order 1/2 on (0, infinity),
//
//   mu_t(ds) = g(t, s) ds,   g(t, s) = t e^{-t^2/4s} / (2 sqrt(pi) s^{3/2}),
//
// its t-derivative calculus, negative moments, and total-variation masses.
// All s-integrals are computed after the change of variable u = t^2 / 4s,
// which turns mu_t into the fixed measure u^{-1/2} e^{-u} du / sqrt(pi) and
// makes every truncation error certifiable.

namespace gha {

/// Density g(t, s) of mu_t with respect to ds.
inline double stable_density(double t, double s) {
    if (!(t > 0.0) || !(s > 0.0))
        throw std::invalid_argument("stable_density: t and s must be positive");
    return t / (2.0 * std::sqrt(std::numbers::pi)) * std::exp(-t * t / (4.0 * s)) *
           std::pow(s, -1.5);
}

namespace detail {

/// Exact dyadic rational: the derivative recursion only multiplies by small
/// integers and halves, so denominators stay powers of two.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    void normalize() {
        if (den < 0) { num = -num; den = -den; }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
        if (num == 0) den = 1;
    }
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

inline Rational rat_add(Rational a, Rational b) {
    Rational r{a.num * b.den + b.num * a.den, a.den * b.den};
    r.normalize();
    return r;
}
inline Rational rat_scale(Rational a, std::int64_t m) {
    Rational r{a.num * m, a.den};
    r.normalize();
    return r;
}
inline Rational rat_half(Rational a) {
    Rational r{a.num, a.den * 2};
    r.normalize();
    return r;
}

}  // namespace detail

/// Coefficient table for the k-th t-derivative of the stable density:
///
///   d^k/dt^k g(t, s) = ( sum a_{i,j} t^i s^{-j} ) g(t, s),
///
/// where every key satisfies 0 <= j <= k and 2j - i = k. Coefficients are
/// exact dyadic rationals generated by the recursion below.
class StableDerivativeForm {
public:
    using Key = std::pair<int, int>;  // (i, j)

    int k() const { return k_; }
    const std::map<Key, detail::Rational>& terms() const { return terms_; }

    double coefficient(int i, int j) const {
        auto it = terms_.find({i, j});
        return it == terms_.end() ? 0.0 : it->second.value();
    }

    /// sum a_{i,j} t^i s^{-j}  (the prefactor of g in the derivative).
    double prefactor(double t, double s) const {
        double acc = 0.0;
        for (const auto& [key, a] : terms_)
            acc += a.value() * std::pow(t, key.first) * std::pow(s, -key.second);
        return acc;
    }

    /// d^k/dt^k g(t, s).
    double evaluate(double t, double s) const {
        return prefactor(t, s) * stable_density(t, s);
    }

    /// Under u = t^2/4s the prefactor becomes t^{-k} Q(u) with
    /// Q(u) = sum_j a_{i(j),j} 4^j u^j; returns Q's coefficients by power of u.
    std::vector<double> u_polynomial() const {
        std::vector<double> q(static_cast<std::size_t>(k_) + 1, 0.0);
        for (const auto& [key, a] : terms_)
            q[static_cast<std::size_t>(key.second)] =
                a.value() * std::pow(4.0, key.second);
        return q;
    }

    static StableDerivativeForm build(int k, int k_max);

private:
    int k_ = 0;
    std::map<Key, detail::Rational> terms_;
};

/// Derivative coefficients by induction on k. A term a at (i, j) contributes
/// a (i+1) at (i-1, j) and -a/2 at (i+1, j+1); base case {(0,0) -> 1}, which
/// is d/dt log g = 1/t - t/2s applied repeatedly.
inline StableDerivativeForm StableDerivativeForm::build(int k, int k_max) {
    if (k < 0) throw std::invalid_argument("stable_derivative_form: k must be >= 0");
    if (k > k_max) throw std::invalid_argument("stable_derivative_form: k exceeds configured maximum");
    StableDerivativeForm form;
    form.k_ = 0;
    form.terms_[{0, 0}] = detail::Rational{1, 1};
    for (int step = 0; step < k; ++step) {
        std::map<Key, detail::Rational> next;
        auto add = [&next](int i, int j, detail::Rational v) {
            if (v.num == 0) return;
            auto [it, inserted] = next.try_emplace({i, j}, v);
            if (!inserted) it->second = detail::rat_add(it->second, v);
        };
        for (const auto& [key, a] : form.terms_) {
            add(key.first - 1, key.second, detail::rat_scale(a, key.first + 1));
            add(key.first + 1, key.second + 1, detail::rat_half(detail::rat_scale(a, -1)));
        }
        for (auto it = next.begin(); it != next.end();) {
            if (it->second.num == 0) it = next.erase(it);
            else ++it;
        }
        form.terms_ = std::move(next);
        form.k_ += 1;
    }
    return form;
}

inline StableDerivativeForm stable_derivative_form(int k, int k_max = 8) {
    return StableDerivativeForm::build(k, k_max);
}

// ---------------------------------------------------------------------------
// s-quadrature configuration (in the u = t^2/4s variable).
// ---------------------------------------------------------------------------

struct StableQuad {
    double u_min = 1e-8;
    double u_max = 50.0;
    int panels = 40;
    int points = 8;

    std::vector<QuadNode> nodes() const { return log_panel_nodes(u_min, u_max, panels, points); }
};

namespace detail {

constexpr double kInvSqrtPi = 0.5641895835477562869;  // 1/sqrt(pi)

/// Closed-form constant C_k = 2^{2k} Gamma(k + 1/2) / sqrt(pi) = 2^k (2k-1)!!.
inline double stable_moment_constant(int k) {
    double c = 1.0;
    for (int j = 1; j <= k; ++j) c *= 2.0 * (2.0 * j - 1.0);
    return c;
}

/// Positive roots of a polynomial (coefficients by ascending power) inside
/// (a, b), located by sign scanning on a log grid plus bisection. Degrees
/// here are <= 8 with well-separated roots.
inline std::vector<double> positive_roots(const std::vector<double>& coeffs, double a, double b) {
    auto eval = [&coeffs](double u) {
        double acc = 0.0;
        for (std::size_t m = coeffs.size(); m-- > 0;) acc = acc * u + coeffs[m];
        return acc;
    };
    std::vector<double> roots;
    const int samples = 4000;
    const double la = std::log(a), lb = std::log(b);
    double u_prev = a, f_prev = eval(a);
    for (int i = 1; i <= samples; ++i) {
        const double u = std::exp(la + (lb - la) * i / samples);
        const double f = eval(u);
        if (f_prev == 0.0) roots.push_back(u_prev);
        else if ((f_prev < 0.0) != (f < 0.0)) {
            double lo = u_prev, hi = u;
            for (int it = 0; it < 100; ++it) {
                const double mid = 0.5 * (lo + hi);
                if ((eval(lo) < 0.0) != (eval(mid) < 0.0)) hi = mid;
                else lo = mid;
            }
            roots.push_back(0.5 * (lo + hi));
        }
        u_prev = u;
        f_prev = f;
    }
    return roots;
}

}  // namespace detail

/// Numeric int_0^inf s^{-k} mu_t(ds). Contract: matches C_k / t^{2k} with
/// C_k = 2^{2k} Gamma(k+1/2) / sqrt(pi) to quadrature accuracy.
inline QuadResult stable_neg_moment_certified(int k, double t, const StableQuad& sq = {}) {
    if (k < 0) throw std::invalid_argument("stable_neg_moment: k must be >= 0");
    if (!(t > 0.0)) throw std::invalid_argument("stable_neg_moment: t must be positive");
    // s^{-k} mu_t(ds) = (4^k / t^{2k}) u^{k-1/2} e^{-u} du / sqrt(pi).
    double integral = 0.0;
    for (const auto& n : sq.nodes())
        integral += n.w * std::pow(n.x, k - 0.5) * std::exp(-n.x);
    integral += lower_gamma_series(k + 0.5, sq.u_min);
    const double tail = upper_gamma_bound(k + 0.5, sq.u_max);
    const double scale = std::pow(4.0, k) / std::pow(t, 2.0 * k) * detail::kInvSqrtPi;
    return {scale * integral, scale * tail};
}

inline double stable_neg_moment(int k, double t, const StableQuad& sq = {}) {
    return stable_neg_moment_certified(k, t, sq).value;
}

/// int_0^inf |d^k/dt^k g(t, s)| ds. Exactly self-similar: t^k times the
/// result is independent of t. Sign changes of the u-polynomial are inserted
/// as panel breakpoints so each piece is smooth.
inline QuadResult stable_abs_deriv_mass_certified(int k, double t, const StableQuad& sq = {}) {
    if (!(t > 0.0)) throw std::invalid_argument("stable_abs_deriv_mass: t must be positive");
    const auto form = stable_derivative_form(k);
    const auto q = form.u_polynomial();
    auto qeval = [&q](double u) {
        double acc = 0.0;
        for (std::size_t m = q.size(); m-- > 0;) acc = acc * u + q[m];
        return acc;
    };
    const auto roots = detail::positive_roots(q, sq.u_min, sq.u_max);
    double integral = 0.0;
    for (const auto& n : log_panel_nodes_split(sq.u_min, sq.u_max, sq.panels, sq.points, roots))
        integral += n.w * std::abs(qeval(n.x)) * std::pow(n.x, -0.5) * std::exp(-n.x);
    // Lower piece: |Q| ~ |Q(0)| near u = 0; the next Taylor term is certified.
    integral += std::abs(q[0]) * lower_gamma_series(0.5, sq.u_min);
    // Upper tail: |Q(u)| <= sum |q_j| u^j termwise.
    double err = 0.0;
    for (std::size_t j = 0; j < q.size(); ++j)
        err += std::abs(q[j]) * upper_gamma_bound(j + 0.5, sq.u_max);
    if (q.size() > 1) err += std::abs(q[1]) * lower_gamma_series(1.5, sq.u_min);
    const double scale = std::pow(t, -static_cast<double>(k)) * detail::kInvSqrtPi;
    return {scale * integral, scale * err};
}

inline double stable_abs_deriv_mass(int k, double t, const StableQuad& sq = {}) {
    return stable_abs_deriv_mass_certified(k, t, sq).value;
}

/// Scale-invariant mass constant: t^k int |d^k_t g| ds, independent of t.
/// This is the sharp constant in the derivative bound.
inline double stable_deriv_mass_constant(int k, const StableQuad& sq = {}) {
    return stable_abs_deriv_mass_certified(k, 1.0, sq).value;
}

/// Triangle-inequality chain constant: sum |a_{i,j}| C_j over the derivative
/// form. Since 2j - i = k, this bounds t^k int |d^k_t g| ds from above (and
/// dominates the sharp mass constant).
inline double stable_deriv_chain_constant(int k) {
    const auto form = stable_derivative_form(k);
    double c = 0.0;
    for (const auto& [key, a] : form.terms())
        c += std::abs(a.value()) * detail::stable_moment_constant(key.second);
    return c;
}

/// Laplace transform int_0^inf e^{-lambda s} mu_t(ds); equals e^{-t sqrt(lambda)}.
inline QuadResult stable_laplace_certified(double t, double lambda, const StableQuad& sq = {}) {
    if (!(t > 0.0) || !(lambda > 0.0))
        throw std::invalid_argument("stable_laplace: t and lambda must be positive");
    const double c = lambda * t * t / 4.0;  // e^{-lambda s} = e^{-c/u}
    double integral = 0.0;
    for (const auto& n : sq.nodes())
        integral += n.w * std::pow(n.x, -0.5) * std::exp(-n.x - c / n.x);
    // Lower piece: e^{-c/u} increases in u, so on (0, u_min] the integrand is
    // bounded by its value at u_min; take the midpoint of [0, bound].
    const double p = lower_gamma_series(0.5, sq.u_min);
    const double hi = p * std::exp(-c / sq.u_min);
    integral += 0.5 * hi;
    double err = 0.5 * hi + upper_gamma_bound(0.5, sq.u_max) * std::exp(-c / sq.u_max);
    return {detail::kInvSqrtPi * integral, detail::kInvSqrtPi * err};
}

inline double stable_laplace(double t, double lambda, const StableQuad& sq = {}) {
    return stable_laplace_certified(t, lambda, sq).value;
}

/// Closed-form C_k of the negative-moment identity (public counterpart of the
/// tested quadrature path).
inline double stable_moment_closed_form(int k) { return detail::stable_moment_constant(k); }

}  // namespace gha
