#include "loe/latetime.hpp"

#include <algorithm>
#include <cmath>

namespace loe {

namespace {

// View of column vector v as the d_A x d_B matrix E[j, alpha] = v[j*d_B + alpha].
using RowMajorMap =
    Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

RowMajorMap cut_view(const Matrix& frame, Index col, const HilbertGeometry& g) {
    return RowMajorMap(frame.col(col).data(), g.dim_a, g.dim_b);
}

// Reshape a d x d operator into the (A A') x (B B') coefficient matrix, no
// normalization factor.
Matrix reshape_unscaled(const Matrix& o_site, const HilbertGeometry& g) {
    const Index da = g.dim_a, db = g.dim_b;
    Matrix m(da * da, db * db);
    for (Index jp = 0; jp < da; ++jp)
        for (Index j = 0; j < da; ++j)
            for (Index bp = 0; bp < db; ++bp)
                for (Index b = 0; b < db; ++b)
                    m(j * da + jp, b * db + bp) = o_site(j * db + b, jp * db + bp);
    return m;
}

constexpr Index kCollapseCap = 48;  // reshuffled Grams up to this side dimension

}  // namespace

Matrix window_block(const Matrix& o_ab, const EnergyWindow& window, WindowNorm norm) {
    if (window.count < 2) throw std::invalid_argument("window_block: window smaller than 2 states");
    if (window.first < 0 || window.first + window.count > o_ab.rows())
        throw std::invalid_argument("window_block: window outside operator");
    Matrix block = o_ab.block(window.first, window.first, window.count, window.count);
    if (norm == WindowNorm::Renormalize) {
        const double n2 = block.squaredNorm() / static_cast<double>(window.count);
        if (n2 <= 1e-28)
            throw std::invalid_argument("window_block: operator has zero norm in the window");
        block /= std::sqrt(n2);
    }
    return block;
}

LateTimeEvaluator::LateTimeEvaluator(const HilbertGeometry& geom) : geom_(geom) {
    collapse2_ = geom_.dim_a <= kCollapseCap;
    collapse4_ = geom_.dim_b <= kCollapseCap;
}

void LateTimeEvaluator::force_routes(bool collapse_cross_a, bool collapse_cross_b) {
    collapse2_ = collapse_cross_a;
    collapse4_ = collapse_cross_b;
}

void LateTimeEvaluator::set_frame(const Eigen::Ref<const Matrix>& frame) {
    if (frame.rows() != geom_.dim)
        throw std::invalid_argument("LateTimeEvaluator: frame rows != Hilbert dimension");
    dw_ = frame.cols();
    frame_ = frame;
    const Index da = geom_.dim_a, db = geom_.dim_b;

    m_diag_.assign(dw_, Matrix());
    for (Index a = 0; a < dw_; ++a) {
        auto ea = cut_view(frame_, a, geom_);
        m_diag_[a] = ea * ea.adjoint();
    }
    q_.resize(dw_);
    for (Index a = 0; a < dw_; ++a) q_(a) = m_diag_[a].squaredNorm();

    // qa from the diagonal overlaps: Tr(M^aa M^cc) = <M^cc, M^aa>_F (Hermitian).
    Matrix mvec(da * da, dw_);
    for (Index a = 0; a < dw_; ++a)
        mvec.col(a) = Eigen::Map<const Vector>(m_diag_[a].data(), da * da);
    qa_ = (mvec.adjoint() * mvec).real();

    n_diag_.clear();
    if (collapse4_) {
        n_diag_.assign(dw_, Matrix());
        for (Index a = 0; a < dw_; ++a) {
            auto ea = cut_view(frame_, a, geom_);
            n_diag_[a] = ea.adjoint() * ea;
        }
    }

    // Pair pass: per column c build the stack of M^{ac} over a. Yields qb and,
    // when needed, the per-column trace tables for the cross terms.
    qb_.setZero(dw_, dw_);
    const bool need_s = !collapse4_;
    const bool need_t = !collapse2_;
    if (need_s) s_stack_.resize(dw_, dw_ * dw_);
    if (need_t) t_stack_.resize(dw_, dw_ * dw_);

    Matrix xc(da * da, dw_);
    for (Index c = 0; c < dw_; ++c) {
        auto ec = cut_view(frame_, c, geom_);
        Matrix ec_adj = ec.adjoint();
        for (Index a = 0; a < dw_; ++a) {
            auto ea = cut_view(frame_, a, geom_);
            Matrix mac = ea * ec_adj;
            xc.col(a) = Eigen::Map<const Vector>(mac.data(), da * da);
            qb_(a, c) = mac.squaredNorm();
        }
        if (need_s) {
            // S_c[g,a] = Tr(M^{ac} M^{cg}) = <M^{gc}, M^{ac}>_F
            Matrix sc = xc.adjoint() * xc;
            s_stack_.row(c) = Eigen::Map<const Vector>(sc.data(), dw_ * dw_).transpose();
        }
    }

    if (need_t) {
        // T_e[c,a] = Tr(M^{ac} M^{ee}) = v_c^dag (M^{ee} x I_B) v_a
        Matrix y(geom_.dim, dw_);
        for (Index e = 0; e < dw_; ++e) {
            for (Index a = 0; a < dw_; ++a) {
                auto ea = cut_view(frame_, a, geom_);
                Matrix prod = m_diag_[e] * ea;  // d_A x d_B
                // back to a column in the site ordering (row-major across the cut)
                for (Index j = 0; j < da; ++j)
                    y.block(j * db, a, db, 1) = prod.row(j).transpose();
            }
            Matrix te = frame_.adjoint() * y;  // [c, a]
            t_stack_.row(e) = Eigen::Map<const Vector>(te.data(), dw_ * dw_).transpose();
        }
    }
}

Matrix LateTimeEvaluator::gtilde(const Eigen::Ref<const Matrix>& o_block) const {
    Vector o_diag = o_block.diagonal();
    Matrix d_site = (frame_ * o_diag.asDiagonal()) * frame_.adjoint();
    return reshape_unscaled(d_site, geom_);
}

double LateTimeEvaluator::cross_term_diag_offdiag(const RealVector& o, const RealMatrix& p,
                                                  const Matrix& gt) const {
    const Index da = geom_.dim_a;
    Matrix lambda(dw_, dw_);
    if (collapse2_) {
        Matrix gamma = gt * gt.adjoint();  // (j j') x (k k')
        // reshuffle to (k + j dA) x (k' + j' dA)
        Matrix shuf(da * da, da * da);
        for (Index j = 0; j < da; ++j)
            for (Index jp = 0; jp < da; ++jp)
                for (Index k = 0; k < da; ++k)
                    for (Index kp = 0; kp < da; ++kp)
                        shuf(k + j * da, kp + jp * da) = gamma(j * da + jp, k * da + kp);
        Matrix mhat(da * da, dw_);
        for (Index e = 0; e < dw_; ++e)
            mhat.col(e) = Eigen::Map<const Vector>(m_diag_[e].data(), da * da);
        lambda = mhat.transpose() * (shuf * mhat.conjugate());
    } else {
        // lambda[e,f] = sum_{c,a} o_c o_a T_e[c,a] conj(T_f[c,a])
        RealVector w(dw_ * dw_);
        for (Index a = 0; a < dw_; ++a)
            for (Index c = 0; c < dw_; ++c) w(c + a * dw_) = o(c) * o(a);
        Matrix weighted = t_stack_.array().rowwise() * w.transpose().array().cast<Complex>();
        lambda = weighted * t_stack_.adjoint();
    }
    return (p.array() * lambda.real().array()).sum();
}

double LateTimeEvaluator::cross_term_offdiag_diag(const RealVector& o, const RealMatrix& p,
                                                  const Matrix& gt) const {
    const Index db = geom_.dim_b;
    Matrix psi(dw_, dw_);
    if (collapse4_) {
        Matrix omega = gt.adjoint() * gt;  // (alpha alpha') x (beta beta')
        Matrix shuf(db * db, db * db);
        for (Index al = 0; al < db; ++al)
            for (Index alp = 0; alp < db; ++alp)
                for (Index be = 0; be < db; ++be)
                    for (Index bep = 0; bep < db; ++bep)
                        shuf(be + al * db, bep + alp * db) = omega(al * db + alp, be * db + bep);
        Matrix nhat(db * db, dw_);
        for (Index c = 0; c < dw_; ++c)
            nhat.col(c) = Eigen::Map<const Vector>(n_diag_[c].data(), db * db);
        psi = nhat.transpose() * (shuf * nhat.conjugate());
    } else {
        // psi[c,d] = sum_{g,a} o_g o_a S_c[g,a] conj(S_d[g,a])
        RealVector w(dw_ * dw_);
        for (Index a = 0; a < dw_; ++a)
            for (Index g = 0; g < dw_; ++g) w(g + a * dw_) = o(g) * o(a);
        Matrix weighted = s_stack_.array().rowwise() * w.transpose().array().cast<Complex>();
        psi = weighted * s_stack_.adjoint();
    }
    return (p.array() * psi.real().array()).sum();
}

PurityBreakdown LateTimeEvaluator::evaluate(const Eigen::Ref<const Matrix>& o_block) const {
    if (o_block.rows() != dw_ || o_block.cols() != dw_)
        throw std::invalid_argument("LateTimeEvaluator: operator block size mismatch");
    const double pref = 1.0 / (static_cast<double>(dw_) * static_cast<double>(dw_));
    const RealVector o = o_block.diagonal().real();
    RealMatrix p = o_block.cwiseAbs2().real();
    p.diagonal().setZero();

    Matrix gt = gtilde(o_block);
    PurityBreakdown out;
    // Tr[(G G^dag)^2] as |G^dag G|_F^2 on the smaller side
    if (gt.rows() <= gt.cols())
        out.terms[0] = pref * (gt * gt.adjoint()).squaredNorm();
    else
        out.terms[0] = pref * (gt.adjoint() * gt).squaredNorm();
    out.terms[1] = 2.0 * pref * cross_term_diag_offdiag(o, p, gt);
    out.terms[2] = pref * (qa_.array() * (p * qa_ * p).array()).sum();
    out.terms[3] = 2.0 * pref * cross_term_offdiag_diag(o, p, gt);
    out.terms[4] = pref * (qb_.array() * (p * qb_ * p).array()).sum();
    out.terms[5] = -pref * (q_.transpose() * (p.cwiseProduct(p)) * q_).value();
    out.total = 0.0;
    for (double t : out.terms) out.total += t;
    return out;
}

double LateTimeEvaluator::term_f(const Eigen::Ref<const Matrix>& o_block) const {
    Matrix gt = gtilde(o_block);
    if (gt.rows() <= gt.cols()) return (gt * gt.adjoint()).squaredNorm();
    return (gt.adjoint() * gt).squaredNorm();
}

double LateTimeEvaluator::term_g(const Eigen::Ref<const Matrix>& o_block) const {
    RealMatrix p = o_block.cwiseAbs2().real();
    p.diagonal().setZero();
    return (qb_.array() * (p * qb_ * p).array()).sum();
}

namespace {

void require_offdiag_nonresonance(const RealVector& eigs, Index first, Index count) {
    std::vector<double> omegas;
    omegas.reserve(static_cast<std::size_t>(count) * (count - 1) / 2);
    for (Index a = first; a < first + count; ++a)
        for (Index b = a + 1; b < first + count; ++b) omegas.push_back(eigs(a) - eigs(b));
    std::sort(omegas.begin(), omegas.end());
    const double width = eigs(eigs.size() - 1) - eigs(0);
    const double tol = 1e-9 * std::max(1.0, width);
    for (std::size_t i = 0; i + 1 < omegas.size(); ++i)
        if (omegas[i + 1] - omegas[i] < tol)
            throw std::runtime_error(
                "latetime_purity_ed: degenerate off-diagonal Bohr frequencies; the six-term "
                "formula does not apply (disable verify_nonresonance to force)");
    // off-diagonal frequency colliding with zero is the same failure
    for (double w : omegas)
        if (std::abs(w) < tol)
            throw std::runtime_error(
                "latetime_purity_ed: off-diagonal Bohr frequency at zero (degenerate spectrum)");
}

struct BlockAndFrame {
    Matrix block;
    Matrix frame;
    Index first = 0;
    Index count = 0;
};

BlockAndFrame resolve_window(const SpectralData& spec, const Matrix& o_ab,
                             const HilbertGeometry& geom, const EnergyWindow* window,
                             WindowNorm norm) {
    if (o_ab.rows() != geom.dim || o_ab.cols() != geom.dim)
        throw std::invalid_argument("latetime: operator dimension mismatch");
    if (spec.dim() != geom.dim) throw std::invalid_argument("latetime: spectrum dimension mismatch");
    BlockAndFrame r;
    if (window) {
        r.block = window_block(o_ab, *window, norm);
        r.frame = spec.eigenvectors.middleCols(window->first, window->count);
        r.first = window->first;
        r.count = window->count;
    } else {
        r.block = o_ab;
        r.frame = spec.eigenvectors;
        r.first = 0;
        r.count = geom.dim;
    }
    return r;
}

}  // namespace

PurityBreakdown latetime_purity_ed(const SpectralData& spec, const Matrix& o_ab,
                                   const HilbertGeometry& geom, const EnergyWindow* window,
                                   WindowNorm norm, bool verify_nonresonance) {
    BlockAndFrame bf = resolve_window(spec, o_ab, geom, window, norm);
    if (verify_nonresonance) require_offdiag_nonresonance(spec.eigenvalues, bf.first, bf.count);
    LateTimeEvaluator ev(geom);
    ev.set_frame(bf.frame);
    return ev.evaluate(bf.block);
}

double term_F(const SpectralData& spec, const Matrix& o_ab, const HilbertGeometry& geom,
              const EnergyWindow* window, WindowNorm norm) {
    BlockAndFrame bf = resolve_window(spec, o_ab, geom, window, norm);
    LateTimeEvaluator ev(geom);
    ev.set_frame(bf.frame);
    return ev.term_f(bf.block);
}

double term_G(const SpectralData& spec, const Matrix& o_ab, const HilbertGeometry& geom,
              const EnergyWindow* window, WindowNorm norm) {
    BlockAndFrame bf = resolve_window(spec, o_ab, geom, window, norm);
    LateTimeEvaluator ev(geom);
    ev.set_frame(bf.frame);
    return ev.term_g(bf.block);
}

namespace {

// Unnormalized group coefficient matrices U_m (sum_m Tr U_m U_m^dag = 1 for a
// unit-norm operator); small-d helper for the omega-basis evaluators.
std::vector<Matrix> group_matrices(const OmegaBasis& basis, const SpectralData& spec,
                                   const HilbertGeometry& geom) {
    const Index da = geom.dim_a, db = geom.dim_b;
    const double f = 1.0 / std::sqrt(static_cast<double>(geom.dim));
    std::vector<Matrix> mats;
    mats.reserve(basis.groups.size());
    for (const auto& g : basis.groups) {
        Matrix u = Matrix::Zero(da * da, db * db);
        for (std::size_t i = 0; i < g.pairs.size(); ++i) {
            const auto [a, b] = g.pairs[i];
            auto ea = cut_view(spec.eigenvectors, a, geom);
            auto eb = cut_view(spec.eigenvectors, b, geom);
            const Complex c = f * g.coeffs[i];
            for (Index j = 0; j < da; ++j)
                for (Index jp = 0; jp < da; ++jp)
                    for (Index al = 0; al < db; ++al)
                        for (Index alp = 0; alp < db; ++alp)
                            u(j * da + jp, al * db + alp) +=
                                c * ea(j, al) * std::conj(eb(jp, alp));
        }
        mats.push_back(std::move(u));
    }
    return mats;
}

}  // namespace

OmegaPuritySplit omega_purity(const OmegaBasis& basis, const SpectralData& spec,
                              const HilbertGeometry& geom) {
    if (basis.dim != geom.dim)
        throw std::invalid_argument("omega_purity: basis/geometry dimension mismatch");
    std::vector<Matrix> mats = group_matrices(basis, spec, geom);
    const Index da2 = geom.dim_a * geom.dim_a;
    const Index db2 = geom.dim_b * geom.dim_b;
    double same = 0.0;
    Matrix rho_a = Matrix::Zero(da2, da2);
    Matrix rho_b = Matrix::Zero(db2, db2);
    for (const auto& u : mats) {
        Matrix ua = u * u.adjoint();
        same += ua.squaredNorm();
        rho_a += ua;
        rho_b += u.adjoint() * u;
    }
    OmegaPuritySplit s;
    s.same_group = same;
    s.cross_a = rho_a.squaredNorm() - same;
    s.cross_b = rho_b.squaredNorm() - same;
    return s;
}

double mutual_info_identity(const SpectralData& spec, const Matrix& o_ab,
                            const HilbertGeometry& geom) {
    OmegaBasis basis = build_omega_basis(o_ab, spec.eigenvalues);
    std::vector<Matrix> mats = group_matrices(basis, spec, geom);
    const Index da2 = geom.dim_a * geom.dim_a;
    const Index db2 = geom.dim_b * geom.dim_b;
    Matrix rho_a = Matrix::Zero(da2, da2);
    Matrix rho_b = Matrix::Zero(db2, db2);
    double projected = 0.0;
    for (const auto& u : mats) {
        rho_a += u * u.adjoint();
        Matrix ub = u.adjoint() * u;
        rho_b += ub;
        projected += ub.squaredNorm();
    }
    const double identity_value = rho_a.squaredNorm() + rho_b.squaredNorm() - projected;
    PurityBreakdown bd = latetime_purity_ed(spec, o_ab, geom, nullptr,
                                            WindowNorm::Renormalize, false);
    return std::abs(identity_value - bd.total);
}

double state_latetime_purity(const SpectralData& spec, const Vector& psi,
                             const HilbertGeometry& geom) {
    if (psi.size() != geom.dim) throw std::invalid_argument("state_latetime_purity: dimension");
    if (std::abs(psi.norm() - 1.0) > 1e-10)
        throw std::invalid_argument("state_latetime_purity: state is not normalized");
    LateTimeEvaluator ev(geom);
    ev.set_frame(spec.eigenvectors);
    const Index d = geom.dim;
    RealVector p(d);
    Vector amps = spec.eigenvectors.adjoint() * psi;
    for (Index m = 0; m < d; ++m) p(m) = std::norm(amps(m));
    const RealMatrix& qa = ev.table_qa();
    const RealMatrix& qb = ev.table_qb();
    double total = p.transpose() * (qa + qb) * p;
    for (Index m = 0; m < d; ++m) total -= p(m) * p(m) * qa(m, m);
    return total;
}

PageWeights page_weights(Index dim_a, Index dim) {
    if (dim_a < 1 || dim_a > dim) throw std::invalid_argument("page_weights: d_A out of range");
    if (dim % dim_a != 0) throw std::invalid_argument("page_weights: d_A must divide d");
    const double da = static_cast<double>(dim_a);
    const double d = static_cast<double>(dim);
    PageWeights w;
    w.dia = (d / da + da) / (d + 1.0);
    w.semi = (d * d / da - da) / (d * d - 1.0);
    w.perm = (d * da - d / da) / (d * d - 1.0);
    return w;
}

double page_s2(int sites_a, Index dim) {
    if (sites_a < 0) throw std::invalid_argument("page_s2: n_A >= 0 required");
    const double da = std::pow(2.0, sites_a);
    const double d = static_cast<double>(dim);
    if (da > d) throw std::invalid_argument("page_s2: 2^n_A exceeds d");
    return sites_a * std::log(2.0) - std::log((d + da * da) / (d + 1.0));
}

}  // namespace loe
