// sampling.hpp — Haar-random unitaries, frames, and states, plus the Monte
// Carlo oracle that replaces eigenvectors with random frames in the late-time
// purity evaluator.

#pragma once

#include "loe/latetime.hpp"
#include "loe/types.hpp"

#include <cstdint>
#include <vector>

namespace loe {

// Ginibre + QR with the diagonal phase correction that makes the distribution
// exactly Haar.
Matrix haar_unitary(Index dim, std::uint64_t seed, std::uint64_t stream = 0);
// First `cols` columns of a Haar unitary (Haar-random orthonormal frame).
Matrix haar_frame(Index dim, Index cols, std::uint64_t seed, std::uint64_t stream = 0);
Vector haar_state(Index dim, std::uint64_t seed, std::uint64_t stream = 0);

struct MonteCarloEstimate {
    double mean = 0.0;
    double stderr_of_mean = 0.0;
    int samples = 0;
};

// Mean late-time purity over Haar frames: per sample, a d_w-column frame in
// dimension d replaces the eigenvectors and the six-term evaluator runs with
// the given operator block. Deterministic per seed.
MonteCarloEstimate monte_carlo_haar_purity(const Matrix& o_block, const HilbertGeometry& geom,
                                           int n_samples, std::uint64_t seed);

// Same frames shared across several operator blocks (all of equal size).
std::vector<MonteCarloEstimate> monte_carlo_haar_purity_batch(const std::vector<Matrix>& o_blocks,
                                                              const HilbertGeometry& geom,
                                                              int n_samples, std::uint64_t seed);

// Mean Renyi-alpha entanglement entropy of Haar states across the d_A | d/d_A cut.
MonteCarloEstimate haar_state_entanglement(Index dim_a, Index dim, double alpha, int n_samples,
                                           std::uint64_t seed);

}  // namespace loe
