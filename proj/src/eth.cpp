#include "loe/eth.hpp"

#include "loe/rng.hpp"

#include <cmath>

namespace loe {

EthStatistics compute_stats(const Matrix& o_ab, const EnergyWindow* window) {
    Index first = 0, count = o_ab.rows();
    if (window) {
        first = window->first;
        count = window->count;
        if (first + count > o_ab.rows())
            throw std::invalid_argument("compute_stats: window outside operator");
    }
    if (count < 2) throw std::invalid_argument("compute_stats: need at least 2 states");
    const auto block = o_ab.block(first, first, count, count);
    EthStatistics s;
    s.count_diag = count;
    s.count_offdiag = count * (count - 1);
    const double nd = static_cast<double>(count);
    const double noff = static_cast<double>(s.count_offdiag);

    double dsum = 0.0, dsq = 0.0;
    for (Index a = 0; a < count; ++a) {
        const double v = block(a, a).real();
        dsum += v;
        dsq += v * v;
    }
    s.diag_mean = dsum / nd;
    s.diag_var = dsq / nd - s.diag_mean * s.diag_mean;

    Complex osum{0.0, 0.0};
    double osq = 0.0;
    for (Index a = 0; a < count; ++a)
        for (Index b = 0; b < count; ++b) {
            if (a == b) continue;
            osum += block(a, b);
            osq += std::norm(block(a, b));
        }
    s.offdiag_mean = osum / noff;
    s.offdiag_var = osq / noff - std::norm(s.offdiag_mean);
    return s;
}

Matrix synth_eth_operator(Index dim, const std::function<double(double, double)>& f_profile,
                          const std::function<double(double)>& entropy_profile,
                          const std::function<double(double)>& microc_profile,
                          const RealVector& eigs, std::uint64_t seed, bool project_traceless) {
    if (eigs.size() != dim) throw std::invalid_argument("synth_eth_operator: spectrum size");
    Matrix o(dim, dim);
    for (Index a = 0; a < dim; ++a) {
        for (Index b = a; b < dim; ++b) {
            const double emean = 0.5 * (eigs(a) + eigs(b));
            const double omega = eigs(a) - eigs(b);
            const double amp = std::exp(-0.5 * entropy_profile(emean)) * f_profile(emean, omega);
            CounterRng rng(seed, static_cast<std::uint64_t>(a) * dim + b);
            if (a == b) {
                o(a, a) = microc_profile(eigs(a)) + amp * rng.next_gaussian();
            } else {
                // complex fluctuation with unit total variance
                const double re = rng.next_gaussian() / std::sqrt(2.0);
                const double im = rng.next_gaussian() / std::sqrt(2.0);
                o(a, b) = amp * Complex(re, im);
                o(b, a) = std::conj(o(a, b));
            }
        }
    }
    if (project_traceless) {
        o -= (o.trace() / static_cast<double>(dim)) * Matrix::Identity(dim, dim);
        const double n = inf_temp_norm(o);
        if (n > 1e-14) o /= n;
    }
    return o;
}

}  // namespace loe
