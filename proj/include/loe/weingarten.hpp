// weingarten.hpp — degree <= 4 Haar-moment evaluation for the unitary group:
// permutation tables, Weingarten coefficients from Gram inversion, and a small
// symbolic delta network for moments with structured index sums.

#pragma once

#include "loe/types.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace loe {

using Perm = std::array<std::uint8_t, 4>;  // images of 0..n-1, identity beyond n

struct PermutationTable {
    int n = 0;
    std::vector<Perm> perms;  // all n! permutations

    static const PermutationTable& of(int n);

    static Perm compose(const Perm& p, const Perm& q);  // (p*q)(i) = p(q(i))
    static Perm inverse(const Perm& p);
    static int cycles(const Perm& p, int n);
    int index_of(const Perm& p) const;
};

struct WeingartenTable {
    int n = 0;
    long d = 0;
    Eigen::MatrixXd inv_gram;  // inv_gram(s, t) = Wg(sigma_s sigma_t^{-1}, d)

    double wg(const Perm& p) const;
    double wg_pair(int sigma_idx, int tau_idx) const { return inv_gram(sigma_idx, tau_idx); }
};

// Invert the Gram matrix G[s][t] = d^{cycles(sigma_s sigma_t^{-1})}. Requires
// d >= n so the Gram matrix is invertible.
WeingartenTable weingarten(int n, long d);

// Symbolic moment of a product of unitary matrix entries. Each factor selects
// its row and column through symbols; a symbol is a fixed concrete index, a
// summed index of a declared dimension, or an external label left to the
// caller. Composite rows/columns carry several symbols (deltas act per
// component).
struct NetSymbol {
    enum class Kind { Fixed, Summed, External };
    Kind kind = Kind::Summed;
    long value_or_dim = 0;  // fixed index value, or dimension of the sum
};

struct MomentFactor {
    std::vector<int> row_syms;
    std::vector<int> col_syms;
};

struct DeltaNetwork {
    std::vector<NetSymbol> symbols;
    std::vector<MomentFactor> u;       // unconjugated factors
    std::vector<MomentFactor> u_conj;  // conjugated factors
    // extra slot identifications applied before counting
    std::vector<std::pair<int, int>> equalities;

    int add_fixed(long value);
    int add_summed(long dim);
    int degree() const { return static_cast<int>(u.size()); }
};

struct MomentResult {
    double value = 0.0;
    bool balanced = true;
};

// E[prod U prod conj(U)] with the declared index sums folded in. Unbalanced
// networks return {0, false}. Requires d >= degree and no external symbols.
MomentResult haar_moment(const DeltaNetwork& net, long d);

}  // namespace loe
