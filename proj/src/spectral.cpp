#include "loe/spectral.hpp"

#include <algorithm>
#include <array>
#include <cstdint>

#ifdef LOE_HAVE_LAPACKE
#include <lapacke.h>
#endif

namespace loe {

namespace {

constexpr Index kLapackThreshold = 256;

SpectralData from_eigen_solver(const Matrix& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigendecompose: solver failed");
    return SpectralData{solver.eigenvalues(), solver.eigenvectors()};
}

}  // namespace

SpectralData eigendecompose(const Matrix& h) {
    if (h.rows() != h.cols()) throw std::invalid_argument("eigendecompose: square matrix required");
    if (!is_hermitian(h, 1e-12))
        throw std::invalid_argument("eigendecompose: input is not Hermitian");
#ifdef LOE_HAVE_LAPACKE
    if (h.rows() >= kLapackThreshold) {
        const lapack_int n = static_cast<lapack_int>(h.rows());
        Matrix v = h;
        RealVector w(n);
        lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n,
                                         reinterpret_cast<lapack_complex_double*>(v.data()), n,
                                         w.data());
        if (info != 0) throw std::runtime_error("eigendecompose: zheevd failed");
        return SpectralData{std::move(w), std::move(v)};
    }
#endif
    return from_eigen_solver(h);
}

SpectralData eigendecompose(const RealMatrix& h) {
    if (h.rows() != h.cols()) throw std::invalid_argument("eigendecompose: square matrix required");
    if ((h - h.transpose()).norm() > 1e-12 * std::max(1.0, h.norm()))
        throw std::invalid_argument("eigendecompose: input is not symmetric");
#ifdef LOE_HAVE_LAPACKE
    if (h.rows() >= kLapackThreshold) {
        const lapack_int n = static_cast<lapack_int>(h.rows());
        RealMatrix v = h;
        RealVector w(n);
        lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, v.data(), n, w.data());
        if (info != 0) throw std::runtime_error("eigendecompose: dsyevd failed");
        return SpectralData{std::move(w), v.cast<Complex>()};
    }
#endif
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(h);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigendecompose: solver failed");
    return SpectralData{solver.eigenvalues(), solver.eigenvectors().cast<Complex>()};
}

Matrix to_energy_basis(const Matrix& o_site, const SpectralData& spec) {
    if (o_site.rows() != spec.dim() || o_site.cols() != spec.dim())
        throw std::invalid_argument("to_energy_basis: dimension mismatch");
    return spec.eigenvectors.adjoint() * o_site * spec.eigenvectors;
}

EnergyWindow select_window(const SpectralData& spec, Index window_dim) {
    const Index d = spec.dim();
    if (window_dim < 1 || window_dim > d)
        throw std::invalid_argument("select_window: window dimension out of range");
    EnergyWindow w;
    w.first = (d - window_dim) / 2;
    w.count = window_dim;
    w.center_energy = 0.5 * (spec.eigenvalues(w.first) + spec.eigenvalues(w.last()));
    return w;
}

EnergyWindow select_window_energy(const SpectralData& spec, double energy_width) {
    if (energy_width < 0) throw std::invalid_argument("select_window_energy: width must be >= 0");
    const Index d = spec.dim();
    const double e0 = 0.5 * (spec.eigenvalues(0) + spec.eigenvalues(d - 1));
    const double lo = e0 - 0.5 * energy_width;
    const double hi = e0 + 0.5 * energy_width;
    Index first = 0;
    while (first < d && spec.eigenvalues(first) < lo) ++first;
    Index past = first;
    while (past < d && spec.eigenvalues(past) <= hi) ++past;
    if (past == first) throw std::invalid_argument("select_window_energy: window contains no states");
    EnergyWindow w;
    w.first = first;
    w.count = past - first;
    w.center_energy = e0;
    return w;
}

namespace {

// Subset enumeration: sums plus packed index tuples (k <= 4).
struct SubsetSum {
    double sum;
    std::array<std::int16_t, 4> idx;
};

void enumerate_subsets(const RealVector& eigs, int k, std::vector<SubsetSum>& out) {
    const int n = static_cast<int>(eigs.size());
    std::array<std::int16_t, 4> idx{};
    auto rec = [&](auto&& self, int start, int depth, double acc) -> void {
        if (depth == k) {
            SubsetSum s;
            s.sum = acc;
            s.idx = idx;
            out.push_back(s);
            return;
        }
        for (int i = start; i < n; ++i) {
            idx[depth] = static_cast<std::int16_t>(i);
            self(self, i + 1, depth + 1, acc + eigs(i));
        }
    };
    rec(rec, 0, 0, 0.0);
}

}  // namespace

std::vector<ResonanceViolation> check_nonresonance(const RealVector& eigs, int k, double tol,
                                                   bool allow_large) {
    if (k < 1) throw std::invalid_argument("check_nonresonance: k >= 1 required");
    if (k > 4 && !allow_large)
        throw std::invalid_argument("check_nonresonance: k > 4 refused (set allow_large to override)");
    if (k > static_cast<int>(eigs.size()))
        throw std::invalid_argument("check_nonresonance: k exceeds spectrum size");

    const double width = eigs.size() ? eigs.maxCoeff() - eigs.minCoeff() : 0.0;
    const double eff_tol = tol * std::max(1.0, width);

    std::vector<SubsetSum> sums;
    sums.reserve(1024);
    enumerate_subsets(eigs, k, sums);
    std::sort(sums.begin(), sums.end(),
              [](const SubsetSum& a, const SubsetSum& b) { return a.sum < b.sum; });

    std::vector<ResonanceViolation> violations;
    for (std::size_t i = 0; i + 1 < sums.size(); ++i) {
        for (std::size_t j = i + 1; j < sums.size() && sums[j].sum - sums[i].sum < eff_tol; ++j) {
            ResonanceViolation v;
            v.subset_a.assign(sums[i].idx.begin(), sums[i].idx.begin() + k);
            v.subset_b.assign(sums[j].idx.begin(), sums[j].idx.begin() + k);
            v.sum_a = sums[i].sum;
            v.sum_b = sums[j].sum;
            violations.push_back(std::move(v));
            if (violations.size() > 1000) return violations;  // enough evidence
        }
    }
    return violations;
}

}  // namespace loe
