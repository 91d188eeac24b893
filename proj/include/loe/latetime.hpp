// latetime.hpp — exact late-time averaged purity of the vectorized operator.
//
// The six-term eigenstate formula is evaluated through pair-overlap tables:
// every eight-eigenvector contraction factorizes into products of the d_A x d_A
// overlaps M^{ac} = E^(a) E^(c)^dag (eigenvectors reshaped across the cut) and
// their d_B x d_B counterparts, turning the naive d^8 sum into table builds of
// cost O(d_w^2 d_A^2 d_B) plus small GEMMs.

#pragma once

#include "loe/liouville.hpp"
#include "loe/spectral.hpp"
#include "loe/types.hpp"

#include <array>
#include <optional>

namespace loe {

enum class WindowNorm { Renormalize, Raw };

// Extract the window block of O_ab; Renormalize rescales so that
// (1/d_w) sum |O_ab|^2 = 1 inside the window.
Matrix window_block(const Matrix& o_ab, const EnergyWindow& window, WindowNorm norm);

struct PurityBreakdown {
    // Summands of the late-time purity, in order: diagonal-ensemble term,
    // the two diagonal/off-diagonal cross terms, the two off-diagonal double
    // sums, and the negative same-pair correction.
    std::array<double, 6> terms{};
    double total = 0.0;
};

// Pair-overlap scalar tables for a frame of orthonormal columns reshaped
// d_A x d_B across the cut:
//   q[a]    = |M^{aa}|_F^2
//   qa[a,c] = Tr(M^{aa} M^{cc})   (B-side analogue |N^{ac}|_F^2)
//   qb[a,c] = |M^{ac}|_F^2        (= Tr(M^{ac} M^{ca}))
// plus the diagonal overlap matrices themselves and, depending on geometry,
// per-column trace stacks used by the two cross terms.
class LateTimeEvaluator {
  public:
    explicit LateTimeEvaluator(const HilbertGeometry& geom);

    // frame: d x d_w orthonormal columns (eigenvectors or synthetic frames).
    void set_frame(const Eigen::Ref<const Matrix>& frame);

    // Test hook: pick the reshuffled-Gram route (true) or the per-column trace
    // stacks (false) for the two cross terms. Call before set_frame.
    void force_routes(bool collapse_cross_a, bool collapse_cross_b);

    // o_block: d_w x d_w Hermitian operator in the frame basis.
    PurityBreakdown evaluate(const Eigen::Ref<const Matrix>& o_block) const;

    // Raw all-diagonal and off-diagonal contractions (no 1/d_w^2 prefactor).
    double term_f(const Eigen::Ref<const Matrix>& o_block) const;
    double term_g(const Eigen::Ref<const Matrix>& o_block) const;

    Index frame_dim() const { return dw_; }
    const RealMatrix& table_qa() const { return qa_; }
    const RealMatrix& table_qb() const { return qb_; }

  private:
    double cross_term_diag_offdiag(const RealVector& o, const RealMatrix& p,
                                   const Matrix& gt) const;  // term 2 / 2
    double cross_term_offdiag_diag(const RealVector& o, const RealMatrix& p,
                                   const Matrix& gt) const;  // term 4 / 2
    Matrix gtilde(const Eigen::Ref<const Matrix>& o_block) const;

    HilbertGeometry geom_;
    Index dw_ = 0;
    Matrix frame_;
    std::vector<Matrix> m_diag_;  // M^{aa}
    std::vector<Matrix> n_diag_;  // N^{aa}, kept when the collapse route is used
    RealVector q_;
    RealMatrix qa_, qb_;
    bool collapse2_ = true;  // reshuffled-Gram route for term 2
    bool collapse4_ = true;  // reshuffled-Gram route for term 4
    Matrix t_stack_;         // d_w x d_w^2 rows: vec over (c,a) of Tr(M^{ac} M^{ee})
    Matrix s_stack_;         // d_w x d_w^2 rows: vec over (g,a) of Tr(M^{ac} M^{cg})
};

// Late-time averaged purity via the factorized six-term formula. With a window
// the sums restrict to window indices, the prefactor becomes 1/d_w^2, and the
// operator block is renormalized (configurable). Refuses degenerate
// off-diagonal Bohr frequencies unless verify_nonresonance is off.
PurityBreakdown latetime_purity_ed(const SpectralData& spec, const Matrix& o_ab,
                                   const HilbertGeometry& geom,
                                   const EnergyWindow* window = nullptr,
                                   WindowNorm norm = WindowNorm::Renormalize,
                                   bool verify_nonresonance = true);

double term_F(const SpectralData& spec, const Matrix& o_ab, const HilbertGeometry& geom,
              const EnergyWindow* window = nullptr, WindowNorm norm = WindowNorm::Renormalize);
double term_G(const SpectralData& spec, const Matrix& o_ab, const HilbertGeometry& geom,
              const EnergyWindow* window = nullptr, WindowNorm norm = WindowNorm::Renormalize);

struct OmegaPuritySplit {
    double same_group = 0.0;  // m = n = p = q
    double cross_a = 0.0;     // m = n, p = q, m != p
    double cross_b = 0.0;     // m = q, n = p, m != p
    double total() const { return same_group + cross_a + cross_b; }
};

// Three-term late-time purity evaluated directly from the frequency groups.
// Intended as an independent cross-check of the six-term evaluator at small d.
OmegaPuritySplit omega_purity(const OmegaBasis& basis, const SpectralData& spec,
                              const HilbertGeometry& geom);

// Residual of the subsystem-purity decomposition identity against the
// six-term evaluator (full space).
double mutual_info_identity(const SpectralData& spec, const Matrix& o_ab,
                            const HilbertGeometry& geom);

// Late-time purity of a Schroedinger-evolved pure state.
double state_latetime_purity(const SpectralData& spec, const Vector& psi,
                             const HilbertGeometry& geom);

// Haar averages of the three partial-swap matrix elements for states.
struct PageWeights {
    double dia = 0.0;
    double semi = 0.0;
    double perm = 0.0;
};

PageWeights page_weights(Index dim_a, Index dim);
double page_s2(int sites_a, Index dim);

}  // namespace loe
