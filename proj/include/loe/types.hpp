// types.hpp — scalar aliases and the bipartite chain geometry used everywhere.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <utility>

namespace loe {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Bipartition of an L-site chain of q-level systems. Subsystem A holds the
// leftmost n_a sites, so A is the leading tensor factor and a basis index
// splits as  idx = j*dim_b + alpha  with j over A and alpha over B.
struct HilbertGeometry {
    int sites = 0;       // L
    int sites_a = 0;     // n_A
    int local_dim = 2;   // q
    Index dim_a = 0;
    Index dim_b = 0;
    Index dim = 0;

    static HilbertGeometry chain(int length, int sites_in_a, int q = 2) {
        if (length < 2) throw std::invalid_argument("HilbertGeometry: need at least 2 sites");
        if (sites_in_a < 1 || sites_in_a >= length)
            throw std::invalid_argument("HilbertGeometry: 1 <= n_A < L required");
        if (q < 2) throw std::invalid_argument("HilbertGeometry: local dimension must be >= 2");
        HilbertGeometry g;
        g.sites = length;
        g.sites_a = sites_in_a;
        g.local_dim = q;
        g.dim_a = 1;
        for (int i = 0; i < sites_in_a; ++i) g.dim_a *= q;
        g.dim_b = 1;
        for (int i = 0; i < length - sites_in_a; ++i) g.dim_b *= q;
        g.dim = g.dim_a * g.dim_b;
        return g;
    }

    Index index(Index j, Index alpha) const { return j * dim_b + alpha; }
    std::pair<Index, Index> factor(Index idx) const { return {idx / dim_b, idx % dim_b}; }
};

inline bool is_hermitian(const Matrix& a, double tol = 1e-12) {
    if (a.rows() != a.cols()) return false;
    double scale = a.norm();
    return (a - a.adjoint()).norm() <= tol * std::max(1.0, scale);
}

// Infinite-temperature norm  sqrt(Tr(O^dag O)/d).
inline double inf_temp_norm(const Matrix& o) {
    return std::sqrt(o.squaredNorm() / static_cast<double>(o.rows()));
}

}  // namespace loe
