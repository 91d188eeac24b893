// liouville.hpp — Bohr frequencies, phase evolution in the energy basis, and
// the frequency-grouped effective basis of the commutator superoperator.

#pragma once

#include "loe/types.hpp"

#include <vector>

namespace loe {

// omega_ab = E_a - E_b. Antisymmetric, zero diagonal.
RealMatrix bohr_frequencies(const RealVector& eigs);

// O_ab(t) = exp(i (E_a - E_b) t) O_ab.
Matrix evolve_in_energy_basis(const Matrix& o_ab, const RealVector& eigs, double t);

// One frequency group: all (a,b) with omega_ab = omega, restricted to pairs
// where O has a non-vanishing projection. coeffs holds the matching O_ab, and
// norm is N_m of the unit vector built from the group,
// N_m^2 = (1/d) sum_{(a,b)} |O_ab|^2.
struct OmegaGroup {
    double omega = 0.0;
    std::vector<std::pair<int, int>> pairs;
    std::vector<Complex> coeffs;
    double norm = 0.0;
};

struct OmegaBasis {
    std::vector<OmegaGroup> groups;
    Index dim = 0;  // Hilbert dimension d used in the norms

    int krylov_dim() const { return static_cast<int>(groups.size()); }
    // sum_m N_m^2; equals 1 for a unit-norm operator.
    double completeness() const;
};

// Groups Bohr frequencies within group_tol (default 1e-9 * spectral width) and
// drops matrix elements below 1e-14 * max|O|. Throws if a group mixes diagonal
// and off-diagonal pairs, which contradicts non-resonance.
OmegaBasis build_omega_basis(const Matrix& o_ab, const RealVector& eigs, double group_tol = -1.0);

}  // namespace loe
