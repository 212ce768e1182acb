#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gha/core.hpp"

// Finite Hermite expansions f = sum_beta fhat(beta) h_beta, chaos projection,
// coefficient extraction against gamma_d, and the Gaussian Sobolev norm.

namespace gha {

/// Coefficients below this threshold are pruned when expansions are built;
/// keeps round-tripped expansions canonical (below quadrature noise floor).
constexpr double kCoeffPruneThreshold = 1e-12;

class HermiteExpansion {
public:
    explicit HermiteExpansion(int dim) : dim_(dim) {
        if (dim < 1) throw std::invalid_argument("HermiteExpansion: dim must be >= 1");
    }

    HermiteExpansion(int dim, std::map<MultiIndex, double> coeffs)
        : HermiteExpansion(dim) {
        for (auto& [beta, c] : coeffs) set(beta, c);
    }

    int dim() const { return dim_; }
    const std::map<MultiIndex, double>& coeffs() const { return coeffs_; }
    bool empty() const { return coeffs_.empty(); }

    /// max |beta| over stored keys; 0 for the empty expansion.
    int degree() const {
        int d = 0;
        for (const auto& [beta, c] : coeffs_) d = std::max(d, beta.order());
        return d;
    }

    double coefficient(const MultiIndex& beta) const {
        auto it = coeffs_.find(beta);
        return it == coeffs_.end() ? 0.0 : it->second;
    }

    /// Stores the coefficient, pruning entries below the canonical threshold.
    void set(const MultiIndex& beta, double c) {
        if (beta.dim() != dim_)
            throw std::invalid_argument("HermiteExpansion: key dimension mismatch");
        if (std::abs(c) < kCoeffPruneThreshold) coeffs_.erase(beta);
        else coeffs_[beta] = c;
    }

    /// Applies m(beta) to every coefficient (spectral multiplier), pruning zeros.
    template <class Multiplier>
    HermiteExpansion map_coefficients(Multiplier&& m) const {
        HermiteExpansion out(dim_);
        for (const auto& [beta, c] : coeffs_) out.set(beta, m(beta) * c);
        return out;
    }

    friend HermiteExpansion operator+(const HermiteExpansion& a, const HermiteExpansion& b) {
        if (a.dim_ != b.dim_) throw std::invalid_argument("HermiteExpansion: dimension mismatch");
        HermiteExpansion out = a;
        for (const auto& [beta, c] : b.coeffs_) out.set(beta, out.coefficient(beta) + c);
        return out;
    }
    friend HermiteExpansion operator*(double s, const HermiteExpansion& f) {
        return f.map_coefficients([s](const MultiIndex&) { return s; });
    }

    /// Smallest nonzero |beta| carrying a coefficient (the spectral gap);
    /// 0 if only the constant term is present or the expansion is empty.
    int spectral_gap() const {
        int m = 0;
        for (const auto& [beta, c] : coeffs_) {
            const int n = beta.order();
            if (n > 0 && (m == 0 || n < m)) m = n;
        }
        return m;
    }

private:
    int dim_;
    std::map<MultiIndex, double> coeffs_;
};

/// Single basis element h_beta.
inline HermiteExpansion basis_expansion(const MultiIndex& beta) {
    HermiteExpansion f(beta.dim());
    f.set(beta, 1.0);
    return f;
}

/// f(x) = sum fhat(beta) h_beta(x). Shares one recurrence pass per axis
/// across all coefficients.
inline double expansion_eval(const HermiteExpansion& f, std::span<const double> x) {
    if (f.dim() != static_cast<int>(x.size()))
        throw std::invalid_argument("expansion_eval: dimension mismatch");
    if (f.empty()) return 0.0;
    const int d = f.dim();
    int max_order = 0;
    for (const auto& [beta, c] : f.coeffs())
        for (int i = 0; i < d; ++i) max_order = std::max(max_order, beta[i]);
    std::vector<double> table(static_cast<std::size_t>(d) * (static_cast<std::size_t>(max_order) + 1));
    const std::size_t stride = static_cast<std::size_t>(max_order) + 1;
    for (int i = 0; i < d; ++i)
        hermite_eval_1d_all(max_order, x[static_cast<std::size_t>(i)],
                            std::span<double>(table.data() + static_cast<std::size_t>(i) * stride, stride));
    double acc = 0.0;
    for (const auto& [beta, c] : f.coeffs()) {
        double prod = c;
        for (int i = 0; i < d; ++i)
            prod *= table[static_cast<std::size_t>(i) * stride + static_cast<std::size_t>(beta[i])];
        acc += prod;
    }
    return acc;
}

/// Fourier-Hermite analysis: fhat(beta) = <f, h_beta>_{gamma_d} for all
/// |beta| <= max_degree, by quadrature on the supplied grid. Exact when the
/// grid resolves degree(f) + max_degree. The caller states max_degree; there
/// is no automatic degree detection.
template <class F>
HermiteExpansion analyze(F&& f, int max_degree, const GaussHermiteGrid& grid) {
    if (max_degree < 0) throw std::invalid_argument("analyze: max_degree must be >= 0");
    const int d = grid.dim();
    HermiteExpansion out(d);
    std::vector<double> fvals(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) fvals[i] = f(grid.node(i));

    // One recurrence table per (node, axis), shared across all beta.
    const std::size_t stride = static_cast<std::size_t>(max_degree) + 1;
    std::vector<double> table(grid.size() * static_cast<std::size_t>(d) * stride);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto x = grid.node(i);
        for (int a = 0; a < d; ++a)
            hermite_eval_1d_all(
                max_degree, x[static_cast<std::size_t>(a)],
                std::span<double>(table.data() + (i * static_cast<std::size_t>(d) +
                                                  static_cast<std::size_t>(a)) * stride,
                                  stride));
    }
    for (const auto& beta : multi_indices_up_to(d, max_degree)) {
        double acc = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            double hb = 1.0;
            for (int a = 0; a < d; ++a)
                hb *= table[(i * static_cast<std::size_t>(d) + static_cast<std::size_t>(a)) * stride +
                            static_cast<std::size_t>(beta[a])];
            acc += grid.weight(i) * fvals[i] * hb;
        }
        out.set(beta, acc);
    }
    return out;
}

/// Pi_0 f = f - integral of f: removes the beta = 0 coefficient.
inline HermiteExpansion pi0(const HermiteExpansion& f) {
    HermiteExpansion out = f;
    out.set(MultiIndex(std::vector<int>(static_cast<std::size_t>(f.dim()), 0)), 0.0);
    return out;
}

/// Mean of f under gamma_d (the beta = 0 coefficient).
inline double mean_coefficient(const HermiteExpansion& f) {
    return f.coefficient(MultiIndex(std::vector<int>(static_cast<std::size_t>(f.dim()), 0)));
}

/// L^p(gamma_d) norm of the expansion on the grid.
inline double lp_norm(const HermiteExpansion& f, LpSpec spec, const GaussHermiteGrid& grid) {
    if (f.dim() != grid.dim()) throw std::invalid_argument("lp_norm: dimension mismatch");
    return lp_norm([&f](std::span<const double> x) { return expansion_eval(f, x); }, spec, grid);
}

/// Gaussian Sobolev norm ||(I - L)^{alpha/2} f||_{p,gamma_d}: the spectral
/// multiplier (1 + |beta|)^{alpha/2} followed by the L^p norm.
inline double sobolev_norm(const HermiteExpansion& f, double alpha, LpSpec spec,
                           const GaussHermiteGrid& grid) {
    if (!(alpha >= 0.0)) throw std::invalid_argument("sobolev_norm: alpha must be >= 0");
    const auto g = f.map_coefficients(
        [alpha](const MultiIndex& beta) { return std::pow(1.0 + beta.order(), alpha / 2.0); });
    return lp_norm(g, spec, grid);
}

}  // namespace gha
