#include "loe/weingarten.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace loe {

const PermutationTable& PermutationTable::of(int n) {
    if (n < 1 || n > 4) throw std::invalid_argument("PermutationTable: n in 1..4");
    static std::array<PermutationTable, 5> cache = [] {
        std::array<PermutationTable, 5> c{};
        for (int n = 1; n <= 4; ++n) {
            c[n].n = n;
            std::array<std::uint8_t, 4> base{0, 1, 2, 3};
            std::vector<std::uint8_t> head(base.begin(), base.begin() + n);
            std::sort(head.begin(), head.end());
            do {
                Perm p{0, 1, 2, 3};
                for (int i = 0; i < n; ++i) p[i] = head[i];
                c[n].perms.push_back(p);
            } while (std::next_permutation(head.begin(), head.end()));
        }
        return c;
    }();
    return cache[n];
}

Perm PermutationTable::compose(const Perm& p, const Perm& q) {
    Perm r{};
    for (int i = 0; i < 4; ++i) r[i] = p[q[i]];
    return r;
}

Perm PermutationTable::inverse(const Perm& p) {
    Perm r{};
    for (int i = 0; i < 4; ++i) r[p[i]] = static_cast<std::uint8_t>(i);
    return r;
}

int PermutationTable::cycles(const Perm& p, int n) {
    std::array<bool, 4> seen{};
    int count = 0;
    for (int i = 0; i < n; ++i) {
        if (seen[i]) continue;
        ++count;
        int j = i;
        while (!seen[j]) {
            seen[j] = true;
            j = p[j];
        }
    }
    return count;
}

int PermutationTable::index_of(const Perm& p) const {
    for (std::size_t i = 0; i < perms.size(); ++i)
        if (perms[i] == p) return static_cast<int>(i);
    throw std::logic_error("PermutationTable: permutation not found");
}

WeingartenTable weingarten(int n, long d) {
    if (d < n) throw std::invalid_argument("weingarten: d >= n required (singular Gram matrix)");
    const auto& tab = PermutationTable::of(n);
    const int m = static_cast<int>(tab.perms.size());
    Eigen::MatrixXd gram(m, m);
    for (int s = 0; s < m; ++s)
        for (int t = 0; t < m; ++t) {
            const Perm rel = PermutationTable::compose(tab.perms[s],
                                                       PermutationTable::inverse(tab.perms[t]));
            gram(s, t) = std::pow(static_cast<double>(d), PermutationTable::cycles(rel, n));
        }
    WeingartenTable w;
    w.n = n;
    w.d = d;
    w.inv_gram = gram.fullPivLu().inverse();
    return w;
}

double WeingartenTable::wg(const Perm& p) const {
    const auto& tab = PermutationTable::of(n);
    Perm id{0, 1, 2, 3};
    return inv_gram(tab.index_of(p), tab.index_of(id));
}

int DeltaNetwork::add_fixed(long value) {
    symbols.push_back({NetSymbol::Kind::Fixed, value});
    return static_cast<int>(symbols.size()) - 1;
}

int DeltaNetwork::add_summed(long dim) {
    symbols.push_back({NetSymbol::Kind::Summed, dim});
    return static_cast<int>(symbols.size()) - 1;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Count index assignments to the symbol classes after imposing the deltas of
// the pairing. Returns 0 on a fixed-value clash.
double count_assignments(const DeltaNetwork& net, const std::vector<MomentFactor>& lhs,
                         const std::vector<MomentFactor>& rhs, const Perm& pairing,
                         bool use_rows) {
    const int ns = static_cast<int>(net.symbols.size());
    UnionFind uf(ns);
    for (const auto& [a, b] : net.equalities) uf.unite(a, b);
    const int deg = static_cast<int>(lhs.size());
    for (int k = 0; k < deg; ++k) {
        const auto& sa = use_rows ? lhs[k].row_syms : lhs[k].col_syms;
        const auto& sb = use_rows ? rhs[pairing[k]].row_syms : rhs[pairing[k]].col_syms;
        if (sa.size() != sb.size())
            throw std::invalid_argument("haar_moment: composite slot arity mismatch");
        for (std::size_t i = 0; i < sa.size(); ++i) uf.unite(sa[i], sb[i]);
    }
    // per-class: fixed values must agree; a class with any fixed value counts 1,
    // otherwise its (common) dimension
    std::map<int, long> fixed_value;
    std::map<int, long> dim;
    std::map<int, bool> touched;
    auto visit = [&](int s) {
        const int r = uf.find(s);
        const auto& sym = net.symbols[s];
        touched[r] = true;
        if (sym.kind == NetSymbol::Kind::Fixed) {
            auto it = fixed_value.find(r);
            if (it != fixed_value.end() && it->second != sym.value_or_dim) {
                fixed_value[r] = -1;  // clash marker
            } else if (it == fixed_value.end()) {
                fixed_value[r] = sym.value_or_dim;
            }
        } else if (sym.kind == NetSymbol::Kind::Summed) {
            auto it = dim.find(r);
            if (it != dim.end() && it->second != sym.value_or_dim)
                throw std::invalid_argument("haar_moment: delta between different dimensions");
            dim[r] = sym.value_or_dim;
        } else {
            throw std::invalid_argument("haar_moment: external symbols not allowed here");
        }
    };
    for (int k = 0; k < deg; ++k) {
        const auto& fa = lhs[k];
        const auto& fb = rhs[pairing[k]];
        for (int s : (use_rows ? fa.row_syms : fa.col_syms)) visit(s);
        for (int s : (use_rows ? fb.row_syms : fb.col_syms)) visit(s);
    }
    double factor = 1.0;
    for (const auto& [root, is] : touched) {
        (void)is;
        auto fv = fixed_value.find(root);
        if (fv != fixed_value.end()) {
            if (fv->second == -1) return 0.0;  // two different fixed indices forced equal
            continue;                          // pinned class
        }
        factor *= static_cast<double>(dim.at(root));
    }
    return factor;
}

}  // namespace

MomentResult haar_moment(const DeltaNetwork& net, long d) {
    if (net.u.size() != net.u_conj.size()) return {0.0, false};
    const int deg = net.degree();
    if (deg == 0) return {1.0, true};
    if (deg > 4) throw std::invalid_argument("haar_moment: degree > 4 unsupported");
    if (d < deg) throw std::invalid_argument("haar_moment: d >= degree required");
    const auto& tab = PermutationTable::of(deg);
    const WeingartenTable wg = weingarten(deg, d);
    double total = 0.0;
    for (std::size_t si = 0; si < tab.perms.size(); ++si) {
        const double rf = count_assignments(net, net.u, net.u_conj, tab.perms[si], true);
        if (rf == 0.0) continue;
        for (std::size_t ti = 0; ti < tab.perms.size(); ++ti) {
            const double cf = count_assignments(net, net.u, net.u_conj, tab.perms[ti], false);
            if (cf == 0.0) continue;
            total += wg.wg_pair(static_cast<int>(si), static_cast<int>(ti)) * rf * cf;
        }
    }
    return {total, true};
}

}  // namespace loe
