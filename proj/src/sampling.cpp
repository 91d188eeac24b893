#include "loe/sampling.hpp"

#include "loe/rng.hpp"

#include <cmath>

namespace loe {

namespace {

Matrix ginibre(Index rows, Index cols, CounterRng& rng) {
    Matrix g(rows, cols);
    for (Index c = 0; c < cols; ++c)
        for (Index r = 0; r < rows; ++r)
            g(r, c) = Complex(rng.next_gaussian(), rng.next_gaussian());
    return g;
}

Matrix qr_haar(const Matrix& g) {
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(g.rows(), g.cols());
    Matrix r = qr.matrixQR().topRows(g.cols()).triangularView<Eigen::Upper>();
    for (Index i = 0; i < g.cols(); ++i) {
        const Complex rii = r(i, i);
        const double mag = std::abs(rii);
        q.col(i) *= (mag > 0) ? rii / mag : Complex(1, 0);
    }
    return q;
}

struct Accumulator {
    double sum = 0.0;
    double sumsq = 0.0;
    int n = 0;
    void add(double v) {
        sum += v;
        sumsq += v * v;
        ++n;
    }
    MonteCarloEstimate estimate() const {
        MonteCarloEstimate e;
        e.samples = n;
        e.mean = n ? sum / n : 0.0;
        if (n > 1) {
            const double var = std::max(0.0, (sumsq - sum * sum / n) / (n - 1));
            e.stderr_of_mean = std::sqrt(var / n);
        }
        return e;
    }
};

}  // namespace

Matrix haar_unitary(Index dim, std::uint64_t seed, std::uint64_t stream) {
    CounterRng rng(seed, stream);
    return qr_haar(ginibre(dim, dim, rng));
}

Matrix haar_frame(Index dim, Index cols, std::uint64_t seed, std::uint64_t stream) {
    if (cols > dim) throw std::invalid_argument("haar_frame: cols > dim");
    CounterRng rng(seed, stream);
    return qr_haar(ginibre(dim, cols, rng));
}

Vector haar_state(Index dim, std::uint64_t seed, std::uint64_t stream) {
    CounterRng rng(seed, stream);
    Vector v(dim);
    for (Index i = 0; i < dim; ++i) v(i) = Complex(rng.next_gaussian(), rng.next_gaussian());
    v /= v.norm();
    return v;
}

MonteCarloEstimate monte_carlo_haar_purity(const Matrix& o_block, const HilbertGeometry& geom,
                                           int n_samples, std::uint64_t seed) {
    std::vector<Matrix> one{o_block};
    return monte_carlo_haar_purity_batch(one, geom, n_samples, seed)[0];
}

std::vector<MonteCarloEstimate> monte_carlo_haar_purity_batch(const std::vector<Matrix>& o_blocks,
                                                              const HilbertGeometry& geom,
                                                              int n_samples, std::uint64_t seed) {
    if (o_blocks.empty()) return {};
    if (n_samples < 2) throw std::invalid_argument("monte_carlo_haar_purity: n_samples >= 2");
    const Index dw = o_blocks[0].rows();
    for (const auto& o : o_blocks)
        if (o.rows() != dw || o.cols() != dw)
            throw std::invalid_argument("monte_carlo_haar_purity: block sizes differ");
    if (dw > geom.dim) throw std::invalid_argument("monte_carlo_haar_purity: block exceeds dimension");

    LateTimeEvaluator evaluator(geom);
    std::vector<Accumulator> acc(o_blocks.size());
    for (int s = 0; s < n_samples; ++s) {
        Matrix frame = haar_frame(geom.dim, dw, seed, static_cast<std::uint64_t>(s));
        evaluator.set_frame(frame);
        for (std::size_t k = 0; k < o_blocks.size(); ++k)
            acc[k].add(evaluator.evaluate(o_blocks[k]).total);
    }
    std::vector<MonteCarloEstimate> out;
    out.reserve(acc.size());
    for (const auto& a : acc) out.push_back(a.estimate());
    return out;
}

MonteCarloEstimate haar_state_entanglement(Index dim_a, Index dim, double alpha, int n_samples,
                                           std::uint64_t seed) {
    if (dim % dim_a != 0) throw std::invalid_argument("haar_state_entanglement: d_A must divide d");
    if (alpha < 1.0) throw std::invalid_argument("haar_state_entanglement: alpha >= 1");
    const Index dim_b = dim / dim_a;
    Accumulator acc;
    for (int s = 0; s < n_samples; ++s) {
        Vector psi = haar_state(dim, seed, static_cast<std::uint64_t>(s));
        Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
            m(psi.data(), dim_a, dim_b);
        Eigen::JacobiSVD<Matrix> svd(m);
        RealVector lam = svd.singularValues().array().square();
        double s_alpha = 0.0;
        if (alpha == 1.0) {
            for (Index i = 0; i < lam.size(); ++i)
                if (lam(i) > 1e-15) s_alpha -= lam(i) * std::log(lam(i));
        } else {
            double z = 0.0;
            for (Index i = 0; i < lam.size(); ++i)
                if (lam(i) > 0) z += std::pow(lam(i), alpha);
            s_alpha = std::log(z) / (1.0 - alpha);
        }
        acc.add(s_alpha);
    }
    return acc.estimate();
}

}  // namespace loe
