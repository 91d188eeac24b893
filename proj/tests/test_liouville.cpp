#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "loe/liouville.hpp"
#include "loe/spectral.hpp"
#include "loe/spin_chain.hpp"

#include "support/oracles.hpp"

using namespace loe;

TEST_CASE("bohr frequency matrix is antisymmetric with zero diagonal") {
    RealVector eigs(4);
    eigs << -1, -1, 1, 1;
    RealMatrix w = bohr_frequencies(eigs);
    CHECK((w + w.transpose()).norm() == 0.0);
    CHECK(w.diagonal().cwiseAbs().maxCoeff() == 0.0);
    for (Index a = 0; a < 4; ++a)
        for (Index b = 0; b < 4; ++b) {
            const double v = std::abs(w(a, b));
            CHECK((v == 0.0 || v == 2.0));
        }
}

TEST_CASE("evolution is the identity at t = 0 and norm preserving") {
    RealMatrix h = mixed_field_ising(3, MfimParams::chaotic());
    auto spec = eigendecompose(h);
    Matrix o = to_energy_basis(site_pauli(3, 1, PauliAxis::X), spec);
    CHECK((evolve_in_energy_basis(o, spec.eigenvalues, 0.0) - o).norm() < 1e-14);
    for (double t : {0.3, 2.7, 50.0}) {
        Matrix ot = evolve_in_energy_basis(o, spec.eigenvalues, t);
        CHECK(std::abs(ot.squaredNorm() - o.squaredNorm()) < 1e-10);
    }
}

TEST_CASE("evolution satisfies the group property") {
    Matrix h = oracle::random_hermitian(8, 5);
    auto spec = eigendecompose(h);
    Matrix o = oracle::random_observable(8, 6);
    Matrix oab = to_energy_basis(o, spec);
    Matrix a = evolve_in_energy_basis(oab, spec.eigenvalues, 1.3 + 0.9);
    Matrix b = evolve_in_energy_basis(evolve_in_energy_basis(oab, spec.eigenvalues, 1.3),
                                      spec.eigenvalues, 0.9);
    CHECK((a - b).norm() < 1e-12);
}

TEST_CASE("two-level Heisenberg evolution matches the hand solution") {
    // H = sigma_z, O = sigma_x: O(t) = sigma_x cos(2t) - sigma_y sin(2t)
    Matrix h(2, 2);
    h << 1, 0, 0, -1;
    auto spec = eigendecompose(h);
    Matrix ox(2, 2), oy(2, 2);
    ox << 0, 1, 1, 0;
    oy << 0, Complex(0, -1), Complex(0, 1), 0;
    Matrix oab = to_energy_basis(ox, spec);
    for (double t : {0.0, 0.4, 1.9}) {
        Matrix ot_energy = evolve_in_energy_basis(oab, spec.eigenvalues, t);
        Matrix ot_site = spec.eigenvectors * ot_energy * spec.eigenvectors.adjoint();
        Matrix expect = std::cos(2 * t) * ox - std::sin(2 * t) * oy;
        CHECK((ot_site - expect).norm() < 1e-12);
    }
}

TEST_CASE("operator commuting with H collapses to a single zero-frequency group") {
    // H diagonal with distinct eigenvalues, O = normalized sigma_z string in
    // the same basis.
    RealMatrix h = RealMatrix::Zero(4, 4);
    h.diagonal() << 0.1, 0.7, 1.9, 2.4;
    auto spec = eigendecompose(h);
    Matrix o = Matrix::Zero(4, 4);
    o.diagonal() << 1, -1, 1, -1;
    Matrix oab = to_energy_basis(o, spec);
    auto basis = build_omega_basis(oab, spec.eigenvalues);
    CHECK(basis.krylov_dim() == 1);
    CHECK(basis.groups[0].omega == doctest::Approx(0.0));
    CHECK(basis.groups[0].norm == doctest::Approx(1.0));
}

TEST_CASE("completeness and Krylov bound for the benchmark chain") {
    RealMatrix h = mixed_field_ising(6, MfimParams::chaotic());
    auto spec = eigendecompose(h);
    Matrix o = to_energy_basis(site_pauli(6, center_site(6), PauliAxis::X), spec);
    auto basis = build_omega_basis(o, spec.eigenvalues);
    CHECK(std::abs(basis.completeness() - 1.0) < 1e-10);
    CHECK(basis.krylov_dim() <= 64 * 64 - 64 + 1);
    // exactly one degenerate group, at zero frequency
    int degenerate = 0;
    for (const auto& g : basis.groups)
        if (g.pairs.size() > 1) {
            ++degenerate;
            CHECK(std::abs(g.omega) < 1e-9);
        }
    CHECK(degenerate == 1);
}

TEST_CASE("group reconstruction reassembles the operator") {
    Matrix h = oracle::random_hermitian(8, 11);
    auto spec = eigendecompose(h);
    Matrix oab = to_energy_basis(oracle::random_observable(8, 12), spec);
    auto basis = build_omega_basis(oab, spec.eigenvalues);
    Matrix rebuilt = Matrix::Zero(8, 8);
    for (const auto& g : basis.groups)
        for (std::size_t i = 0; i < g.pairs.size(); ++i)
            rebuilt(g.pairs[i].first, g.pairs[i].second) += g.coeffs[i];
    CHECK((rebuilt - oab).norm() < 1e-10);
}

TEST_CASE("resonance conflict is reported") {
    RealVector eigs(3);
    // omega_01 = 0 with distinct diagonal: group at zero mixes pair types
    eigs << 1.0, 1.0, 2.0;
    Matrix o = oracle::random_observable(3, 9);
    CHECK_THROWS_AS(build_omega_basis(o, eigs), std::runtime_error);
}
