// oracles.hpp — independent reference implementations used only by tests:
// naive Kronecker assembly, literal index-sum purity evaluators, a
// Durand-Kerner polynomial root finder, and random ensembles.

#pragma once

#include "loe/types.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace loe::oracle {

Matrix kron(const Matrix& a, const Matrix& b);

// Pauli / identity chain assembled factor by factor with naive kron.
Matrix chain_operator(int sites, const std::vector<std::pair<int, char>>& placements);

// Mixed-field Ising Hamiltonian assembled term by term with naive kron.
Matrix mfim_by_kron(int sites, double coupling, double field_x, double field_z, double edge_left,
                    double edge_right);

// Six-term late-time purity by the literal index sums (no factorization).
// Loops over all bipartite indices; use only for dim <= 8.
std::array<double, 6> purity_terms_literal(const Matrix& eigvecs, const Matrix& o_ab, long dim_a,
                                           long dim_b);

// Six-term late-time purity contracting the vectorized pair matrices
// explicitly (independent of the pair-overlap factorization); fine up to
// dim ~ 16 and arbitrary frames of dw columns.
std::array<double, 6> purity_terms_pairwise(const Matrix& frame, const Matrix& o_block, long dim_a,
                                            long dim_b);

// Roots of a monic polynomial with complex coefficients (Durand-Kerner).
std::vector<Complex> polynomial_roots(const std::vector<Complex>& monic_coeffs_low_to_high);

// Characteristic polynomial coefficients by Faddeev-LeVerrier (monic, low to high).
std::vector<Complex> characteristic_polynomial(const Matrix& a);

// Random Hermitian (GUE-like) and real-symmetric (GOE-like) matrices.
Matrix random_hermitian(long dim, std::uint64_t seed);
RealMatrix random_symmetric(long dim, std::uint64_t seed);
// Random traceless unit-norm Hermitian operator.
Matrix random_observable(long dim, std::uint64_t seed, bool traceless = true);

}  // namespace loe::oracle
