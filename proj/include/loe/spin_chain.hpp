// spin_chain.hpp — dense spin-1/2 chain operators. Site 0 is the leftmost
// tensor factor (most significant bit of the basis index).

#pragma once

#include "loe/types.hpp"

namespace loe {

struct MfimParams {
    double coupling = 1.0;   // J
    double field_x = 1.1;    // h_x
    double field_z = 0.3;    // h_z
    double edge_left = 0.25;   // g_0 on site 0
    double edge_right = -0.25; // g_l on site L-1

    // The maximally chaotic benchmark point.
    static MfimParams chaotic() { return MfimParams{}; }
};

enum class PauliAxis { X, Y, Z };

// Mixed-field Ising chain with open boundaries and edge fields; real symmetric.
RealMatrix mixed_field_ising(int sites, const MfimParams& p);

// Pauli on one site, identity elsewhere. Traceless and unit norm by construction.
Matrix site_pauli(int sites, int site, PauliAxis axis);

// P * M without forming P, using the single-site bit structure.
Matrix apply_site_pauli_left(int sites, int site, PauliAxis axis, const Matrix& m);

int center_site(int sites);

}  // namespace loe
