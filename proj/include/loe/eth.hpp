// eth.hpp — matrix-element statistics of an operator in the energy eigenbasis
// and a synthetic generator that realizes the smooth-plus-fluctuation ansatz.

#pragma once

#include "loe/spectral.hpp"
#include "loe/types.hpp"

#include <cstdint>
#include <functional>

namespace loe {

struct EthStatistics {
    double diag_mean = 0.0;
    double diag_var = 0.0;
    Complex offdiag_mean{0.0, 0.0};
    double offdiag_var = 0.0;  // second moment of |O_ab| minus |mean|^2
    Index count_diag = 0;
    Index count_offdiag = 0;
};

EthStatistics compute_stats(const Matrix& o_ab, const EnergyWindow* window = nullptr);

// O_ab = microc(Emean) delta_ab + exp(-S(Emean)/2) f(Emean, omega_ab) Delta_ab
// with Delta a Hermitian Gaussian matrix (unit variance, counter-seeded so the
// fill order never matters). Optionally projects out the trace and rescales to
// unit infinite-temperature norm.
Matrix synth_eth_operator(Index dim, const std::function<double(double, double)>& f_profile,
                          const std::function<double(double)>& entropy_profile,
                          const std::function<double(double)>& microc_profile,
                          const RealVector& eigs, std::uint64_t seed,
                          bool project_traceless = false);

}  // namespace loe
