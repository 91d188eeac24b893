// haar.hpp — analytic Haar average of the late-time purity. The six
// eigenstate contractions are integrated over the unitary group with
// Weingarten calculus; the resulting delta networks are collected symbolically
// into 13 operator statistics with geometry-dependent weights.

#pragma once

#include "loe/latetime.hpp"
#include "loe/spectral.hpp"
#include "loe/types.hpp"

#include <array>
#include <string>

namespace loe {

struct WeightTable {
    Index dim_a = 0;
    Index dim_b = 0;
    Index dim = 0;
    std::array<double, 13> weights{};
};

// T_0..T_12 for a Hermitian block, in the fixed order:
//   sum O_aa^4; sum O_aa^3 TrO; (sum O_aa^2)^2; sum O_aa^2 (TrO)^2; (TrO)^4;
//   sum_{a!=c} O_aa O_cc |O_ac|^2; sum_{a!=c} O_aa^2 |O_ac|^2;
//   sum O_aa^2 * sum_{e!=f} |O_ef|^2; sum_{e!=f} |O_ef|^2 (TrO)^2;
//   sum_{c!=f} O_cc |O_cf|^2 TrO; sum_{a!=b} |O_ab|^4;
//   (sum_{a!=b} |O_ab|^2)^2; sum over pairwise-distinct (a,b,c) |O_ab|^2 |O_bc|^2.
std::array<double, 13> operator_statistics(const Matrix& o);

// Weights of the full six-term average; cached per geometry.
const WeightTable& derive_weights(Index dim_a, Index dim_b);
// Weights of the all-diagonal contraction alone (the F term) and of the
// off-diagonal double sum alone (the G term), raw (no 1/d^2 prefactor).
const std::array<double, 13>& term_f_weights(Index dim_a, Index dim_b);
const std::array<double, 13>& term_g_weights(Index dim_a, Index dim_b);

// (1/d_w^2) sum_n w_n T_n over the (windowed, renormalized) block.
double haar_purity_exact(const Matrix& o_ab, const HilbertGeometry& geom,
                         const EnergyWindow* window = nullptr,
                         WindowNorm norm = WindowNorm::Renormalize);
double haar_term_f(const Matrix& o_ab, const HilbertGeometry& geom,
                   const EnergyWindow* window = nullptr,
                   WindowNorm norm = WindowNorm::Renormalize);
double haar_term_g(const Matrix& o_ab, const HilbertGeometry& geom,
                   const EnergyWindow* window = nullptr,
                   WindowNorm norm = WindowNorm::Renormalize);

enum class AsymptoticRegime { SmallSubsystem, HalfCut };

// Leading-order late-time entropy from the matrix-element variances.
double asymptotic_s2(AsymptoticRegime regime, double var_diag, double var_offdiag, Index dim,
                     Index dim_a);

std::string weight_table_json(const WeightTable& table);

}  // namespace loe
