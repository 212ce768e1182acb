#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <concepts>
#include <functional>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Core substrate: multi-indices, normalized Hermite polynomials, the Gaussian
// probability measure gamma_d = e^{-|x|^2} / pi^{d/2} dx, tensor Gauss-Hermite
// quadrature targeting gamma_d, and L^p(gamma_d) norms on a grid.

namespace gha {

/// Multi-index beta in N^d. Indexes the Hermite basis h_beta = prod_i h_{beta_i}.
class MultiIndex {
public:
    MultiIndex() = default;

    explicit MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
        if (entries_.empty())
            throw std::invalid_argument("MultiIndex: dimension must be >= 1");
        for (int e : entries_)
            if (e < 0)
                throw std::invalid_argument("MultiIndex: entries must be >= 0");
    }

    MultiIndex(std::initializer_list<int> entries)
        : MultiIndex(std::vector<int>(entries)) {}

    int dim() const { return static_cast<int>(entries_.size()); }

    /// |beta| = sum of entries.
    int order() const {
        int s = 0;
        for (int e : entries_) s += e;
        return s;
    }

    int operator[](int i) const { return entries_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& entries() const { return entries_; }

    friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
        return a.entries_ == b.entries_;
    }
    friend bool operator!=(const MultiIndex& a, const MultiIndex& b) { return !(a == b); }
    // Lexicographic; gives expansions a canonical deterministic key order.
    friend bool operator<(const MultiIndex& a, const MultiIndex& b) {
        return a.entries_ < b.entries_;
    }

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(entries_[i]);
        }
        return s + ")";
    }

private:
    std::vector<int> entries_;
};

/// All multi-indices of dimension `dim` with |beta| <= max_degree, in
/// lexicographic order. Deterministic; used by analysis and fuzzing.
inline std::vector<MultiIndex> multi_indices_up_to(int dim, int max_degree) {
    if (dim < 1) throw std::invalid_argument("multi_indices_up_to: dim must be >= 1");
    if (max_degree < 0) throw std::invalid_argument("multi_indices_up_to: max_degree must be >= 0");
    std::vector<MultiIndex> out;
    std::vector<int> cur(static_cast<std::size_t>(dim), 0);
    std::function<void(int, int)> rec = [&](int axis, int budget) {
        if (axis == dim - 1) {
            for (int e = 0; e <= budget; ++e) {
                cur[static_cast<std::size_t>(axis)] = e;
                out.emplace_back(cur);
            }
            return;
        }
        for (int e = 0; e <= budget; ++e) {
            cur[static_cast<std::size_t>(axis)] = e;
            rec(axis + 1, budget - e);
        }
    };
    rec(0, max_degree);
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Normalized Hermite polynomials.
//
// h_n = H_n / sqrt(2^n n!) with H_n the physicists' polynomials, so that
// {h_n} is orthonormal in L^2(gamma_1). Evaluation uses the stable normalized
// three-term recurrence
//   h_{n+1}(x) = x sqrt(2/(n+1)) h_n(x) - sqrt(n/(n+1)) h_{n-1}(x),
// not the Rodrigues form (which is kept as a test oracle only).
// ---------------------------------------------------------------------------

/// Evaluate h_0..h_{n_max} at x in one recurrence pass. out.size() must be n_max+1.
inline void hermite_eval_1d_all(int n_max, double x, std::span<double> out) {
    out[0] = 1.0;
    if (n_max == 0) return;
    out[1] = std::numbers::sqrt2 * x;
    for (int n = 1; n < n_max; ++n) {
        const double a = std::sqrt(2.0 / (n + 1));
        const double b = std::sqrt(static_cast<double>(n) / (n + 1));
        out[static_cast<std::size_t>(n) + 1] =
            a * x * out[static_cast<std::size_t>(n)] - b * out[static_cast<std::size_t>(n) - 1];
    }
}

inline double hermite_eval_1d(int n, double x) {
    if (n < 0) throw std::invalid_argument("hermite_eval_1d: order must be >= 0");
    std::vector<double> vals(static_cast<std::size_t>(n) + 1);
    hermite_eval_1d_all(n, x, vals);
    return vals[static_cast<std::size_t>(n)];
}

/// h_beta(x) = prod_i h_{beta_i}(x_i).
inline double hermite_eval(const MultiIndex& beta, std::span<const double> x) {
    if (beta.dim() != static_cast<int>(x.size()))
        throw std::invalid_argument("hermite_eval: dimension mismatch");
    double prod = 1.0;
    for (int i = 0; i < beta.dim(); ++i)
        prod *= hermite_eval_1d(beta[i], x[static_cast<std::size_t>(i)]);
    return prod;
}

// ---------------------------------------------------------------------------
// L^p exponent.
// ---------------------------------------------------------------------------

/// p in (1, infinity) or the symbolic value INF (grid-sup norm).
struct LpSpec {
    double p = 2.0;
    bool is_inf = false;

    static LpSpec finite(double p) {
        if (!(p > 1.0) || !std::isfinite(p))
            throw std::invalid_argument("LpSpec: finite p must satisfy p > 1");
        return LpSpec{p, false};
    }
    static LpSpec inf() { return LpSpec{0.0, true}; }
};

// ---------------------------------------------------------------------------
// Tensor Gauss-Hermite quadrature for gamma_d.
// ---------------------------------------------------------------------------

/// Tensor-product Gauss-Hermite rule with weights normalized so that
/// sum_i w_i f(x_i) approximates the gamma_d integral of f. Polynomials of
/// per-axis degree <= exact_degree integrate exactly.
class GaussHermiteGrid {
public:
    GaussHermiteGrid(int dim, int exact_degree, std::vector<double> nodes,
                     std::vector<double> weights)
        : dim_(dim), exact_degree_(exact_degree), nodes_(std::move(nodes)),
          weights_(std::move(weights)) {
        if (dim_ < 1 || weights_.empty() ||
            nodes_.size() != weights_.size() * static_cast<std::size_t>(dim_))
            throw std::invalid_argument("GaussHermiteGrid: inconsistent node/weight data");
    }

    int dim() const { return dim_; }
    int exact_degree() const { return exact_degree_; }
    std::size_t size() const { return weights_.size(); }

    std::span<const double> node(std::size_t i) const {
        return {nodes_.data() + i * static_cast<std::size_t>(dim_),
                static_cast<std::size_t>(dim_)};
    }
    double weight(std::size_t i) const { return weights_[i]; }
    const std::vector<double>& weights() const { return weights_; }

private:
    int dim_;
    int exact_degree_;
    std::vector<double> nodes_;   // flat, size() * dim
    std::vector<double> weights_;
};

namespace detail {

/// One-dimensional Gauss-Hermite nodes/weights for the physicists' weight
/// e^{-x^2}, computed by Newton iteration on the orthonormal recurrence, then
/// rescaled so the weights sum to 1 (the gamma_1 normalization).
inline void gauss_hermite_1d(int n, std::vector<double>& x, std::vector<double>& w) {
    constexpr double kEps = 1e-15;
    constexpr int kMaxIt = 64;
    const double pim4 = 0.751125544464942483;  // pi^{-1/4}

    x.assign(static_cast<std::size_t>(n), 0.0);
    w.assign(static_cast<std::size_t>(n), 0.0);
    const int m = (n + 1) / 2;
    double z = 0.0;
    // Roots are located in descending order (x[0] largest), as the initial
    // guesses extrapolate from the previously found positive roots.
    for (int i = 0; i < m; ++i) {
        if (i == 0)
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        else if (i == 1)
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        else if (i == 2)
            z = 1.86 * z - 0.86 * x[0];
        else if (i == 3)
            z = 1.91 * z - 0.91 * x[1];
        else
            z = 2.0 * z - x[static_cast<std::size_t>(i) - 2];

        double pp = 0.0;
        for (int it = 0; it < kMaxIt; ++it) {
            double p1 = pim4;
            double p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1)) * p2 -
                     std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= kEps) break;
        }
        const std::size_t lo = static_cast<std::size_t>(i);
        const std::size_t hi = static_cast<std::size_t>(n - 1 - i);
        if (lo == hi) z = 0.0;  // middle node of an odd rule
        x[lo] = z;
        x[hi] = -z;
        w[lo] = w[hi] = 2.0 / (pp * pp);
    }
    std::reverse(x.begin(), x.end());  // ascending nodes
    std::reverse(w.begin(), w.end());
    // Weights currently sum to sqrt(pi); rescale to the probability measure.
    double total = 0.0;
    for (double wi : w) total += wi;
    for (double& wi : w) wi /= total;
}

}  // namespace detail

/// Tensor grid with n_per_axis^d nodes, exact for per-axis degree
/// <= 2 n_per_axis - 1. Throws if the node count exceeds node_budget.
inline GaussHermiteGrid gauss_hermite_grid(int n_per_axis, int dim,
                                           std::size_t node_budget = (1u << 22)) {
    if (n_per_axis < 1) throw std::invalid_argument("gauss_hermite_grid: n_per_axis must be >= 1");
    if (dim < 1) throw std::invalid_argument("gauss_hermite_grid: dim must be >= 1");
    double count = 1.0;
    for (int a = 0; a < dim; ++a) {
        count *= n_per_axis;
        if (count > static_cast<double>(node_budget))
            throw std::runtime_error("gauss_hermite_grid: node budget exceeded");
    }
    std::vector<double> x1, w1;
    detail::gauss_hermite_1d(n_per_axis, x1, w1);

    const std::size_t total = static_cast<std::size_t>(count);
    std::vector<double> nodes(total * static_cast<std::size_t>(dim));
    std::vector<double> weights(total, 1.0);
    std::vector<int> idx(static_cast<std::size_t>(dim), 0);
    for (std::size_t i = 0; i < total; ++i) {
        double w = 1.0;
        for (int a = 0; a < dim; ++a) {
            const std::size_t j = static_cast<std::size_t>(idx[static_cast<std::size_t>(a)]);
            nodes[i * static_cast<std::size_t>(dim) + static_cast<std::size_t>(a)] = x1[j];
            w *= w1[j];
        }
        weights[i] = w;
        for (int a = dim - 1; a >= 0; --a) {
            if (++idx[static_cast<std::size_t>(a)] < n_per_axis) break;
            idx[static_cast<std::size_t>(a)] = 0;
        }
    }
    return GaussHermiteGrid(dim, 2 * n_per_axis - 1, std::move(nodes), std::move(weights));
}

/// gamma_d integral of f on the grid.
template <class F>
double integrate(F&& f, const GaussHermiteGrid& grid) {
    double s = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        s += grid.weight(i) * f(grid.node(i));
    return s;
}

/// ||f||_{p,gamma_d} on the grid: (sum w_i |f(x_i)|^p)^{1/p}, or the grid
/// supremum for p = INF. Exact for polynomial |f|^p resolved by the grid;
/// otherwise a quadrature approximation at grid resolution.
template <class F>
    requires std::invocable<F&, std::span<const double>>
double lp_norm(F&& f, LpSpec spec, const GaussHermiteGrid& grid) {
    if (grid.size() == 0) throw std::invalid_argument("lp_norm: empty grid");
    if (spec.is_inf) {
        double m = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i)
            m = std::max(m, std::abs(f(grid.node(i))));
        return m;
    }
    double s = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        s += grid.weight(i) * std::pow(std::abs(f(grid.node(i))), spec.p);
    return std::pow(s, 1.0 / spec.p);
}

}  // namespace gha
