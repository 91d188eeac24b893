// spectral.hpp — Hermitian eigendecomposition, basis changes, spectral-bulk
// windows, and the k non-resonance scan.

#pragma once

#include "loe/types.hpp"

#include <vector>

namespace loe {

struct SpectralData {
    RealVector eigenvalues;  // ascending
    Matrix eigenvectors;     // column a = |E_a>

    Index dim() const { return eigenvalues.size(); }
    double spectral_width() const {
        return dim() ? eigenvalues(dim() - 1) - eigenvalues(0) : 0.0;
    }
    double mean_level_spacing() const {
        return dim() > 1 ? spectral_width() / static_cast<double>(dim() - 1) : 0.0;
    }
};

SpectralData eigendecompose(const Matrix& h);
SpectralData eigendecompose(const RealMatrix& h);  // real-symmetric fast path

// O_ab = V^dag O V. Preserves Frobenius norm, trace, hermiticity.
Matrix to_energy_basis(const Matrix& o_site, const SpectralData& spec);

// Contiguous block of eigenstates around the middle of the spectrum.
struct EnergyWindow {
    Index first = 0;
    Index count = 0;
    double center_energy = 0.0;

    Index last() const { return first + count - 1; }
    bool contains(Index a) const { return a >= first && a < first + count; }
};

EnergyWindow select_window(const SpectralData& spec, Index window_dim);
// Largest centered block with energies inside [E0 - dE/2, E0 + dE/2],
// E0 the midpoint of the spectral range.
EnergyWindow select_window_energy(const SpectralData& spec, double energy_width);

// One collision between two distinct k-subsets of eigenvalues whose sums agree
// within the tolerance.
struct ResonanceViolation {
    std::vector<int> subset_a;
    std::vector<int> subset_b;
    double sum_a = 0.0;
    double sum_b = 0.0;
};

// Sorted subset-sum scan over all k-subsets. Two sums collide when
// |s - s'| < tol * max(1, spectral width). Empty result = condition holds.
std::vector<ResonanceViolation> check_nonresonance(const RealVector& eigs, int k, double tol,
                                                   bool allow_large = false);

}  // namespace loe
