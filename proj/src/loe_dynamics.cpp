#include "loe/loe_dynamics.hpp"

#include "loe/liouville.hpp"

#include <cmath>
#include <numbers>

namespace loe {

Matrix bipartite_reshape(const Matrix& o_site, const HilbertGeometry& geom) {
    const Index da = geom.dim_a, db = geom.dim_b, d = geom.dim;
    if (o_site.rows() != d || o_site.cols() != d)
        throw std::invalid_argument("bipartite_reshape: geometry mismatch");
    const double f = 1.0 / std::sqrt(static_cast<double>(d));
    Matrix m(da * da, db * db);
    for (Index jp = 0; jp < da; ++jp)
        for (Index j = 0; j < da; ++j)
            for (Index bp = 0; bp < db; ++bp)
                for (Index b = 0; b < db; ++b)
                    m(j * da + jp, b * db + bp) = f * o_site(j * db + b, jp * db + bp);
    return m;
}

ReducedOperatorState reduced_density(const Matrix& o_site, const HilbertGeometry& geom) {
    Matrix m = bipartite_reshape(o_site, geom);
    return ReducedOperatorState{m * m.adjoint(), geom};
}

double purity(const ReducedOperatorState& state) { return state.rho.squaredNorm(); }

double renyi(const ReducedOperatorState& state, double alpha) {
    if (alpha < 1.0) throw std::invalid_argument("renyi: alpha >= 1 required");
    if (alpha == 2.0) return -std::log(purity(state));
    Eigen::SelfAdjointEigenSolver<Matrix> es(state.rho);
    const RealVector lam = es.eigenvalues();
    if (alpha == 1.0) {
        double s = 0.0;
        for (Index i = 0; i < lam.size(); ++i)
            if (lam(i) > 1e-15) s -= lam(i) * std::log(lam(i));
        return s;
    }
    double z = 0.0;
    for (Index i = 0; i < lam.size(); ++i)
        if (lam(i) > 0) z += std::pow(lam(i), alpha);
    return std::log(z) / (1.0 - alpha);
}

namespace {

// Evolved reduced purity from a frame (columns) and the operator block in that
// frame. The normalization uses the block dimension so windowed operators give
// unit-trace reduced states after renormalization.
double purity_at_time(const Matrix& frame, const Matrix& o_block, const RealVector& eigs_block,
                      const HilbertGeometry& geom, double t) {
    const Index dw = o_block.rows();
    Vector phase(dw);
    for (Index a = 0; a < dw; ++a) phase(a) = std::polar(1.0, eigs_block(a) * t);
    Matrix ot = phase.asDiagonal() * o_block * phase.conjugate().asDiagonal();
    Matrix o_site = frame * ot * frame.adjoint();
    const Index da = geom.dim_a, db = geom.dim_b;
    const double f = 1.0 / std::sqrt(static_cast<double>(dw));
    Matrix m(da * da, db * db);
    for (Index jp = 0; jp < da; ++jp)
        for (Index j = 0; j < da; ++j)
            for (Index bp = 0; bp < db; ++bp)
                for (Index b = 0; b < db; ++b)
                    m(j * da + jp, b * db + bp) = f * o_site(j * db + b, jp * db + bp);
    if (m.rows() <= m.cols()) return (m * m.adjoint()).squaredNorm();
    return (m.adjoint() * m).squaredNorm();
}

}  // namespace

std::vector<TimePoint> loe_timeseries(const SpectralData& spec, const Matrix& o_ab,
                                      const HilbertGeometry& geom,
                                      const std::vector<double>& times) {
    std::vector<TimePoint> out;
    out.reserve(times.size());
    for (double t : times) {
        const double p =
            purity_at_time(spec.eigenvectors, o_ab, spec.eigenvalues, geom, t);
        out.push_back(TimePoint{t, p, -std::log(p)});
    }
    return out;
}

double time_average_purity_numeric(const SpectralData& spec, const Matrix& o_ab,
                                   const HilbertGeometry& geom, double t_max, int n_samples,
                                   const EnergyWindow* window) {
    if (t_max <= 0) throw std::invalid_argument("time_average_purity_numeric: t_max > 0 required");
    if (n_samples < 1) throw std::invalid_argument("time_average_purity_numeric: n_samples >= 1");
    Matrix frame;
    Matrix block;
    RealVector eigs;
    if (window) {
        frame = spec.eigenvectors.middleCols(window->first, window->count);
        block = o_ab.block(window->first, window->first, window->count, window->count);
        const double n2 = block.squaredNorm() / static_cast<double>(window->count);
        if (n2 <= 1e-28)
            throw std::invalid_argument("time_average_purity_numeric: zero norm in window");
        block /= std::sqrt(n2);
        eigs = spec.eigenvalues.segment(window->first, window->count);
    } else {
        frame = spec.eigenvectors;
        block = o_ab;
        eigs = spec.eigenvalues;
    }
    double acc = 0.0;
    for (int k = 0; k < n_samples; ++k) {
        const double t = (k + 0.5) * t_max / n_samples;
        acc += purity_at_time(frame, block, eigs, geom, t);
    }
    return acc / n_samples;
}

double default_time_average_horizon(const SpectralData& spec) {
    const double spacing = spec.mean_level_spacing();
    if (spacing <= 0) throw std::invalid_argument("default_time_average_horizon: flat spectrum");
    return 100.0 * 2.0 * std::numbers::pi / spacing;
}

}  // namespace loe
