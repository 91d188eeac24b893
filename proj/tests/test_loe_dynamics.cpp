#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "loe/liouville.hpp"
#include "loe/latetime.hpp"
#include "loe/loe_dynamics.hpp"
#include "loe/spectral.hpp"
#include "loe/spin_chain.hpp"

#include "support/oracles.hpp"

using namespace loe;

TEST_CASE("product operators across the cut are pure") {
    auto g = HilbertGeometry::chain(2, 1);
    Matrix o = site_pauli(2, 0, PauliAxis::X);
    auto state = reduced_density(o, g);
    CHECK(std::abs(state.rho.trace().real() - 1.0) < 1e-12);
    CHECK(purity(state) == doctest::Approx(1.0));
    CHECK(renyi(state, 2.0) == doctest::Approx(0.0));
    CHECK(renyi(state, 1.0) == doctest::Approx(0.0));

    // sigma_x (x) sigma_x is still a product across the cut
    Matrix oxx = oracle::chain_operator(2, {{0, 'x'}, {1, 'x'}});
    CHECK(purity(reduced_density(oxx, g)) == doctest::Approx(1.0));
}

TEST_CASE("renyi entropies of simple spectra") {
    auto g = HilbertGeometry::chain(2, 1);
    ReducedOperatorState mixed;
    mixed.geom = g;
    mixed.rho = Matrix::Identity(4, 4) / 4.0;
    for (double alpha : {1.0, 2.0, 3.0}) CHECK(renyi(mixed, alpha) == doctest::Approx(std::log(4.0)));
    CHECK_THROWS_AS(renyi(mixed, 0.5), std::invalid_argument);
    // entropy bound ln(d_A^2)
    Matrix o = oracle::random_observable(4, 21);
    auto st = reduced_density(o, g);
    CHECK(renyi(st, 2.0) <= std::log(4.0) + 1e-12);
}

TEST_CASE("trace of the reduced state equals the squared norm") {
    auto g = HilbertGeometry::chain(3, 1);
    Matrix o = oracle::random_observable(8, 31);
    auto st = reduced_density(o, g);
    CHECK(std::abs(st.rho.trace().real() - 1.0) < 1e-12);
    CHECK(st.rho.trace().imag() < 1e-14);
    Eigen::SelfAdjointEigenSolver<Matrix> es(st.rho);
    CHECK(es.eigenvalues().minCoeff() > -1e-10);
}

TEST_CASE("initial operator inside A starts unentangled; purity stays in (0,1]") {
    const int L = 4;
    auto g = HilbertGeometry::chain(L, 1);
    RealMatrix h = mixed_field_ising(L, MfimParams::chaotic());
    auto spec = eigendecompose(h);
    Matrix oab = to_energy_basis(site_pauli(L, 0, PauliAxis::X), spec);
    std::vector<double> times{0.0, 0.5, 1.0, 3.0, 10.0, 40.0};
    auto series = loe_timeseries(spec, oab, g, times);
    CHECK(series[0].s2 == doctest::Approx(0.0).epsilon(1e-10));
    for (const auto& pt : series) {
        CHECK(pt.purity > 0.0);
        CHECK(pt.purity <= 1.0 + 1e-12);
    }
}

TEST_CASE("tracing over either side of the cut gives the same purity") {
    const int L = 4;
    RealMatrix h = mixed_field_ising(L, MfimParams::chaotic());
    auto spec = eigendecompose(h);
    Matrix oab = to_energy_basis(site_pauli(L, 1, PauliAxis::X), spec);
    auto g = HilbertGeometry::chain(L, 1);
    for (double t : {0.7, 2.1, 9.3}) {
        Matrix ot = evolve_in_energy_basis(oab, spec.eigenvalues, t);
        Matrix ot_site = spec.eigenvectors * ot * spec.eigenvectors.adjoint();
        Matrix m = bipartite_reshape(ot_site, g);
        const double pa = (m * m.adjoint()).squaredNorm();
        const double pb = (m.adjoint() * m).squaredNorm();
        CHECK(pa == doctest::Approx(pb).epsilon(1e-10));
    }
}

TEST_CASE("time reversal leaves the purity invariant for real H and O") {
    const int L = 4;
    RealMatrix h = mixed_field_ising(L, MfimParams::chaotic());
    auto spec = eigendecompose(h);
    Matrix oab = to_energy_basis(site_pauli(L, 2, PauliAxis::X), spec);
    auto g = HilbertGeometry::chain(L, 2);
    for (double t : {0.3, 1.1, 2.9, 7.7, 19.0}) {
        auto pf = loe_timeseries(spec, oab, g, {t})[0].purity;
        auto pb = loe_timeseries(spec, oab, g, {-t})[0].purity;
        CHECK(pf == doctest::Approx(pb).epsilon(1e-9));
    }
}

TEST_CASE("single-sample average equals the instantaneous purity") {
    const int L = 3;
    RealMatrix h = mixed_field_ising(L, MfimParams::chaotic());
    auto spec = eigendecompose(h);
    auto g = HilbertGeometry::chain(L, 1);
    Matrix oab = to_energy_basis(site_pauli(L, 1, PauliAxis::X), spec);
    const double t0 = 1e-9;
    double avg = time_average_purity_numeric(spec, oab, g, 2.0 * t0, 1);
    double inst = loe_timeseries(spec, oab, g, {t0})[0].purity;
    CHECK(avg == doctest::Approx(inst).epsilon(1e-8));
}

TEST_CASE("windowed time average uses the projected renormalized block") {
    const int L = 4;
    RealMatrix h = mixed_field_ising(L, MfimParams::chaotic());
    auto spec = eigendecompose(h);
    auto g = HilbertGeometry::chain(L, 1);
    Matrix oab = to_energy_basis(site_pauli(L, 1, PauliAxis::X), spec);
    auto w = select_window(spec, 8);
    // single early sample equals the instantaneous purity of the windowed state
    const double t0 = 1e-9;
    const double avg = time_average_purity_numeric(spec, oab, g, 2.0 * t0, 1, &w);
    Matrix block = window_block(oab, w, WindowNorm::Renormalize);
    Matrix frame = spec.eigenvectors.middleCols(w.first, w.count);
    Matrix o_site = frame * block * frame.adjoint();
    Matrix m(g.dim_a * g.dim_a, g.dim_b * g.dim_b);
    for (Index jp = 0; jp < g.dim_a; ++jp)
        for (Index j = 0; j < g.dim_a; ++j)
            for (Index bp = 0; bp < g.dim_b; ++bp)
                for (Index b = 0; b < g.dim_b; ++b)
                    m(j * g.dim_a + jp, b * g.dim_b + bp) =
                        o_site(j * g.dim_b + b, jp * g.dim_b + bp) / std::sqrt(8.0);
    CHECK(avg == doctest::Approx((m * m.adjoint()).squaredNorm()).epsilon(1e-8));
}

TEST_CASE("doubling the sample count moves the average less than the sampling scatter") {
    const int L = 4;
    RealMatrix h = mixed_field_ising(L, MfimParams::chaotic());
    auto spec = eigendecompose(h);
    auto g = HilbertGeometry::chain(L, 2);
    Matrix oab = to_energy_basis(site_pauli(L, center_site(L), PauliAxis::X), spec);
    const double tmax = 500.0;
    double a1 = time_average_purity_numeric(spec, oab, g, tmax, 400);
    double a2 = time_average_purity_numeric(spec, oab, g, tmax, 800);
    CHECK(std::abs(a1 - a2) < 0.05 * a2);
}
