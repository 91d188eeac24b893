#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "loe/latetime.hpp"
#include "loe/sampling.hpp"
#include "loe/weingarten.hpp"

using namespace loe;

TEST_CASE("permutation table basics") {
    for (int n = 1; n <= 4; ++n) {
        const auto& tab = PermutationTable::of(n);
        int fact = 1;
        for (int i = 2; i <= n; ++i) fact *= i;
        CHECK(static_cast<int>(tab.perms.size()) == fact);
        // identity has n cycles; composition with inverse gives identity
        Perm id{0, 1, 2, 3};
        CHECK(PermutationTable::cycles(id, n) == n);
        for (const auto& p : tab.perms) {
            CHECK(PermutationTable::compose(p, PermutationTable::inverse(p)) == id);
            for (const auto& q : tab.perms) {
                for (const auto& r : tab.perms) {
                    auto left = PermutationTable::compose(PermutationTable::compose(p, q), r);
                    auto right = PermutationTable::compose(p, PermutationTable::compose(q, r));
                    CHECK(left == right);
                }
                if (n > 3) break;  // exhaustive associativity only for small n
            }
        }
    }
}

TEST_CASE("closed forms for n = 1 and n = 2") {
    for (long d : {2L, 5L, 16L}) {
        auto w1 = weingarten(1, d);
        CHECK(w1.wg(Perm{0, 1, 2, 3}) == doctest::Approx(1.0 / d).epsilon(1e-14));
        auto w2 = weingarten(2, d);
        const double dd = static_cast<double>(d);
        CHECK(w2.wg(Perm{0, 1, 2, 3}) == doctest::Approx(1.0 / (dd * dd - 1.0)).epsilon(1e-12));
        CHECK(w2.wg(Perm{1, 0, 2, 3}) ==
              doctest::Approx(-1.0 / (dd * (dd * dd - 1.0))).epsilon(1e-12));
    }
}

TEST_CASE("gram inverse identity at n = 4") {
    for (long d : {8L, 64L}) {
        const auto& tab = PermutationTable::of(4);
        auto w = weingarten(4, d);
        const int m = static_cast<int>(tab.perms.size());
        Eigen::MatrixXd gram(m, m);
        for (int s = 0; s < m; ++s)
            for (int t = 0; t < m; ++t)
                gram(s, t) = std::pow(
                    static_cast<double>(d),
                    PermutationTable::cycles(
                        PermutationTable::compose(tab.perms[s],
                                                  PermutationTable::inverse(tab.perms[t])),
                        4));
        Eigen::MatrixXd should_be_id = gram * w.inv_gram;
        CHECK((should_be_id - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff() < 1e-10);
    }
    CHECK_THROWS_AS(weingarten(4, 3), std::invalid_argument);
}

TEST_CASE("weingarten is a class function") {
    auto w = weingarten(4, 9);
    const auto& tab = PermutationTable::of(4);
    // all 4-cycles share one value, all transpositions share another
    double four_cycle = 0.0, transposition = 0.0;
    bool first4 = true, first2 = true;
    for (const auto& p : tab.perms) {
        const int c = PermutationTable::cycles(p, 4);
        // count fixed structure: transpositions have cycle type (2,1,1): 3 cycles
        int moved = 0;
        for (int i = 0; i < 4; ++i) moved += (p[i] != i);
        if (c == 1) {  // 4-cycles
            if (first4) {
                four_cycle = w.wg(p);
                first4 = false;
            }
            CHECK(w.wg(p) == doctest::Approx(four_cycle).epsilon(1e-12));
        } else if (c == 3 && moved == 2) {
            if (first2) {
                transposition = w.wg(p);
                first2 = false;
            }
            CHECK(w.wg(p) == doctest::Approx(transposition).epsilon(1e-12));
        }
    }
}

namespace {

// E[U_{r1 c1} ... conj(U_{r1' c1'}) ...] with all indices fixed.
double fixed_moment(const std::vector<std::pair<long, long>>& u,
                    const std::vector<std::pair<long, long>>& uc, long d) {
    DeltaNetwork net;
    for (const auto& [r, c] : u)
        net.u.push_back({{net.add_fixed(r)}, {net.add_fixed(c)}});
    for (const auto& [r, c] : uc)
        net.u_conj.push_back({{net.add_fixed(r)}, {net.add_fixed(c)}});
    return haar_moment(net, d).value;
}

}  // namespace

TEST_CASE("basic fixed-index moments") {
    const long d = 7;
    CHECK(fixed_moment({{0, 0}}, {{0, 0}}, d) == doctest::Approx(1.0 / d).epsilon(1e-13));
    CHECK(fixed_moment({{0, 0}}, {{0, 1}}, d) == doctest::Approx(0.0));
    CHECK(fixed_moment({{0, 0}, {0, 0}}, {{0, 0}, {0, 0}}, d) ==
          doctest::Approx(2.0 / (d * (d + 1.0))).epsilon(1e-13));
    // E|U11|^2 |U12|^2 = 1/(d(d+1))
    CHECK(fixed_moment({{0, 0}, {0, 1}}, {{0, 0}, {0, 1}}, d) ==
          doctest::Approx(1.0 / (d * (d + 1.0))).epsilon(1e-13));
    // unbalanced network flags
    DeltaNetwork unb;
    unb.u.push_back({{unb.add_fixed(0)}, {unb.add_fixed(0)}});
    auto r = haar_moment(unb, d);
    CHECK(!r.balanced);
    CHECK(r.value == 0.0);
}

TEST_CASE("unitarity sum rule via a summed column index") {
    const long d = 9;
    DeltaNetwork net;
    const int row = net.add_fixed(2);
    const int col = net.add_summed(d);
    net.u.push_back({{row}, {col}});
    net.u_conj.push_back({{row}, {col}});
    CHECK(haar_moment(net, d).value == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("page weights re-derived from degree-2 networks") {
    // DIA/SEMI/PERM as moments of eigenvector overlaps across an (a,b) cut:
    // rows carry the state labels, columns the composite (j, alpha) indices.
    const long da = 4, db = 8, d = da * db;
    auto make = [&](long m_label, long p_label, int pattern) {
        DeltaNetwork net;
        const int m = net.add_fixed(m_label);
        const int p = net.add_fixed(p_label);
        const int j = net.add_summed(da);
        const int k = net.add_summed(da);
        const int al = net.add_summed(db);
        const int be = net.add_summed(db);
        if (pattern == 0) {
            // Tr_A[(E^m E^m+)(E^p E^p+)] = sum E^m_{j al} E^p*_{j be}... rows m,p
            net.u.push_back({{m}, {j, al}});
            net.u_conj.push_back({{m}, {k, al}});
            net.u.push_back({{p}, {k, be}});
            net.u_conj.push_back({{p}, {j, be}});
        } else {
            // Tr_B[(E^m+ E^m)(E^p+ E^p)]
            net.u.push_back({{m}, {j, al}});
            net.u_conj.push_back({{m}, {j, be}});
            net.u.push_back({{p}, {k, be}});
            net.u_conj.push_back({{p}, {k, al}});
        }
        return haar_moment(net, d).value;
    };
    auto w = page_weights(da, d);
    CHECK(make(0, 0, 0) == doctest::Approx(w.dia).epsilon(1e-12));
    CHECK(make(0, 1, 0) == doctest::Approx(w.semi).epsilon(1e-12));
    CHECK(make(0, 1, 1) == doctest::Approx(w.perm).epsilon(1e-12));
}

TEST_CASE("sampled moments agree with the symbolic engine") {
    const long d = 6;
    const int n = 20000;
    double m2 = 0.0, m4 = 0.0;
    for (int s = 0; s < n; ++s) {
        Matrix u = haar_unitary(d, 2024, s);
        m2 += std::norm(u(1, 2));
        m4 += std::norm(u(1, 2)) * std::norm(u(1, 2));
    }
    m2 /= n;
    m4 /= n;
    CHECK(m2 == doctest::Approx(1.0 / d).epsilon(0.05));
    CHECK(m4 == doctest::Approx(2.0 / (d * (d + 1.0))).epsilon(0.1));
}
