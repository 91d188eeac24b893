// loe_dynamics.hpp — the vectorized operator as a pure state: bipartite
// reshape, reduced density matrix, Renyi entropies, and time averages.

#pragma once

#include "loe/spectral.hpp"
#include "loe/types.hpp"

#include <vector>

namespace loe {

// Reshape a site-basis operator into the (A A') x (B B') coefficient matrix of
// its vectorization, including the 1/sqrt(d) infinite-temperature factor.
// Row index (j j'), column index (alpha alpha').
Matrix bipartite_reshape(const Matrix& o_site, const HilbertGeometry& geom);

struct ReducedOperatorState {
    Matrix rho;  // dim_a^2 x dim_a^2, Hermitian, unit trace for unit-norm input
    HilbertGeometry geom;
};

ReducedOperatorState reduced_density(const Matrix& o_site, const HilbertGeometry& geom);

double purity(const ReducedOperatorState& state);
// alpha = 2: -ln Tr rho^2; alpha = 1: von Neumann; general alpha >= 1.
double renyi(const ReducedOperatorState& state, double alpha);

struct TimePoint {
    double t = 0.0;
    double purity = 0.0;
    double s2 = 0.0;
};

std::vector<TimePoint> loe_timeseries(const SpectralData& spec, const Matrix& o_ab,
                                      const HilbertGeometry& geom,
                                      const std::vector<double>& times);

// Uniform-grid average of Tr rho_A(t)^2 over [0, t_max] (midpoint samples).
// With a window the operator is projected and renormalized first and the
// window columns replace the full frame.
double time_average_purity_numeric(const SpectralData& spec, const Matrix& o_ab,
                                   const HilbertGeometry& geom, double t_max, int n_samples,
                                   const EnergyWindow* window = nullptr);

// Default grid from the mean level spacing: t_max = 100 * 2*pi/delta_bar.
double default_time_average_horizon(const SpectralData& spec);

}  // namespace loe
