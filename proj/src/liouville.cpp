#include "loe/liouville.hpp"

#include <algorithm>

namespace loe {

RealMatrix bohr_frequencies(const RealVector& eigs) {
    const Index d = eigs.size();
    RealMatrix w(d, d);
    for (Index b = 0; b < d; ++b)
        for (Index a = 0; a < d; ++a) w(a, b) = eigs(a) - eigs(b);
    return w;
}

Matrix evolve_in_energy_basis(const Matrix& o_ab, const RealVector& eigs, double t) {
    const Index d = eigs.size();
    if (o_ab.rows() != d || o_ab.cols() != d)
        throw std::invalid_argument("evolve_in_energy_basis: dimension mismatch");
    Vector phase(d);
    for (Index a = 0; a < d; ++a) phase(a) = std::polar(1.0, eigs(a) * t);
    // exp(i(E_a - E_b)t) O_ab = phase_a O_ab conj(phase_b)
    return phase.asDiagonal() * o_ab * phase.conjugate().asDiagonal();
}

double OmegaBasis::completeness() const {
    double s = 0.0;
    for (const auto& g : groups) s += g.norm * g.norm;
    return s;
}

OmegaBasis build_omega_basis(const Matrix& o_ab, const RealVector& eigs, double group_tol) {
    const Index d = eigs.size();
    if (o_ab.rows() != d || o_ab.cols() != d)
        throw std::invalid_argument("build_omega_basis: dimension mismatch");
    const double width = d > 1 ? eigs(d - 1) - eigs(0) : 0.0;
    if (group_tol < 0) group_tol = 1e-9 * std::max(1.0, width);
    const double drop = 1e-14 * o_ab.cwiseAbs().maxCoeff();

    struct Entry {
        double omega;
        int a, b;
    };
    std::vector<Entry> entries;
    entries.reserve(static_cast<std::size_t>(d) * d);
    for (Index a = 0; a < d; ++a)
        for (Index b = 0; b < d; ++b)
            if (std::abs(o_ab(a, b)) > drop)
                entries.push_back({eigs(a) - eigs(b), static_cast<int>(a), static_cast<int>(b)});
    std::sort(entries.begin(), entries.end(),
              [](const Entry& x, const Entry& y) { return x.omega < y.omega; });

    OmegaBasis basis;
    basis.dim = d;
    std::size_t i = 0;
    while (i < entries.size()) {
        OmegaGroup g;
        g.omega = entries[i].omega;
        std::size_t j = i;
        while (j < entries.size() && entries[j].omega - entries[i].omega <= group_tol) {
            g.pairs.emplace_back(entries[j].a, entries[j].b);
            g.coeffs.push_back(o_ab(entries[j].a, entries[j].b));
            ++j;
        }
        bool has_diag = false, has_off = false;
        double n2 = 0.0;
        for (const auto& [a, b] : g.pairs) {
            (a == b ? has_diag : has_off) = true;
            n2 += std::norm(o_ab(a, b));
        }
        if (has_diag && has_off)
            throw std::runtime_error(
                "build_omega_basis: a frequency group mixes diagonal and off-diagonal pairs "
                "(resonance conflict)");
        g.norm = std::sqrt(n2 / static_cast<double>(d));
        basis.groups.push_back(std::move(g));
        i = j;
    }
    return basis;
}

}  // namespace loe
