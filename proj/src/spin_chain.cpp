#include "loe/spin_chain.hpp"

namespace loe {

namespace {

inline int bit_of_site(int sites, int site) { return sites - 1 - site; }

// sigma_z eigenvalue of `site` in basis state n: +1 for bit 0, -1 for bit 1.
inline double zsign(Index n, int bit) { return ((n >> bit) & 1) ? -1.0 : 1.0; }

}  // namespace

RealMatrix mixed_field_ising(int sites, const MfimParams& p) {
    if (sites < 2) throw std::invalid_argument("mixed_field_ising: L >= 2 required");
    const Index d = Index{1} << sites;
    RealMatrix h = RealMatrix::Zero(d, d);
    for (Index n = 0; n < d; ++n) {
        double diag = 0.0;
        for (int s = 0; s < sites - 1; ++s)
            diag += p.coupling * zsign(n, bit_of_site(sites, s)) * zsign(n, bit_of_site(sites, s + 1));
        for (int s = 0; s < sites; ++s) diag += p.field_z * zsign(n, bit_of_site(sites, s));
        diag += p.edge_left * zsign(n, bit_of_site(sites, 0));
        diag += p.edge_right * zsign(n, bit_of_site(sites, sites - 1));
        h(n, n) = diag;
        for (int s = 0; s < sites; ++s) {
            const Index flipped = n ^ (Index{1} << bit_of_site(sites, s));
            h(flipped, n) += p.field_x;
        }
    }
    return h;
}

Matrix site_pauli(int sites, int site, PauliAxis axis) {
    if (site < 0 || site >= sites) throw std::invalid_argument("site_pauli: site out of range");
    const Index d = Index{1} << sites;
    const int bit = bit_of_site(sites, site);
    Matrix o = Matrix::Zero(d, d);
    for (Index n = 0; n < d; ++n) {
        switch (axis) {
            case PauliAxis::X:
                o(n ^ (Index{1} << bit), n) = 1.0;
                break;
            case PauliAxis::Y:
                // sigma_y |0> = i|1>, sigma_y |1> = -i|0>
                o(n ^ (Index{1} << bit), n) = ((n >> bit) & 1) ? Complex(0, -1) : Complex(0, 1);
                break;
            case PauliAxis::Z:
                o(n, n) = zsign(n, bit);
                break;
        }
    }
    return o;
}

Matrix apply_site_pauli_left(int sites, int site, PauliAxis axis, const Matrix& m) {
    if (site < 0 || site >= sites) throw std::invalid_argument("apply_site_pauli_left: site out of range");
    const Index d = Index{1} << sites;
    if (m.rows() != d) throw std::invalid_argument("apply_site_pauli_left: dimension mismatch");
    const int bit = bit_of_site(sites, site);
    Matrix out(m.rows(), m.cols());
    for (Index n = 0; n < d; ++n) {
        const Index src = n ^ (Index{1} << bit);
        switch (axis) {
            case PauliAxis::X:
                out.row(n) = m.row(src);
                break;
            case PauliAxis::Y:
                // <n|sigma_y|src>: -i when the target bit is 0, +i when it is 1
                out.row(n) = (((n >> bit) & 1) ? Complex(0, 1) : Complex(0, -1)) * m.row(src);
                break;
            case PauliAxis::Z:
                out.row(n) = zsign(n, bit) * m.row(n);
                break;
        }
    }
    return out;
}

int center_site(int sites) { return sites / 2; }

}  // namespace loe
