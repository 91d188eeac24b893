#include "loe/haar.hpp"

#include "loe/weingarten.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace loe {

namespace {

// ---------------------------------------------------------------------------
// Constrained label sums. A monomial prod O_{u v} over integer labels with
// pairwise != constraints expands, by inclusion-exclusion, into "strict"
// patterns whose labels are all distinct. Strict patterns are canonicalized up
// to relabeling, which makes them comparable across the engine output and the
// definitions of the 13 statistics. Conjugated factors are rewritten through
// hermiticity, O*_{uv} = O_{vu}, before anything else.
// ---------------------------------------------------------------------------

struct Edge {
    int u = 0, v = 0;
    bool operator<(const Edge& o) const { return std::pair{u, v} < std::pair{o.u, o.v}; }
    bool operator==(const Edge& o) const { return u == o.u && v == o.v; }
};

struct ConstrainedSum {
    std::vector<Edge> edges;
    int num_labels = 0;
    std::vector<std::pair<int, int>> distinct;  // normalized (lo, hi)

    bool is_distinct(int a, int b) const {
        if (a > b) std::swap(a, b);
        for (auto [x, y] : distinct)
            if (x == a && y == b) return true;
        return false;
    }
};

std::string canonical_key(const std::vector<Edge>& edges, int num_labels) {
    std::vector<int> perm(num_labels);
    std::iota(perm.begin(), perm.end(), 0);
    std::string best;
    do {
        std::vector<Edge> relabeled;
        relabeled.reserve(edges.size());
        for (const Edge& e : edges) relabeled.push_back({perm[e.u], perm[e.v]});
        std::sort(relabeled.begin(), relabeled.end());
        std::string key;
        for (const Edge& e : relabeled) {
            key += static_cast<char>('0' + e.u);
            key += static_cast<char>('0' + e.v);
            key += '|';
        }
        if (best.empty() || key < best) best = key;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

using PatternMap = std::map<std::string, double>;

void expand_into(const ConstrainedSum& s, double coeff, PatternMap& out) {
    // find a label pair not yet related
    for (int a = 0; a < s.num_labels; ++a) {
        for (int b = a + 1; b < s.num_labels; ++b) {
            if (s.is_distinct(a, b)) continue;
            // branch 1: force a != b
            ConstrainedSum ne = s;
            ne.distinct.emplace_back(a, b);
            expand_into(ne, coeff, out);
            // branch 2: merge b -> a, compact labels above b
            ConstrainedSum eq;
            eq.num_labels = s.num_labels - 1;
            auto remap = [&](int x) {
                if (x == b) x = a;
                return x > b ? x - 1 : x;
            };
            for (const Edge& e : s.edges) eq.edges.push_back({remap(e.u), remap(e.v)});
            for (auto [x, y] : s.distinct) {
                int nx = remap(x), ny = remap(y);
                if (nx == ny) continue;  // cannot happen for merges of unrelated labels
                if (nx > ny) std::swap(nx, ny);
                if (!eq.is_distinct(nx, ny)) eq.distinct.emplace_back(nx, ny);
            }
            expand_into(eq, coeff, out);
            return;
        }
    }
    out[canonical_key(s.edges, s.num_labels)] += coeff;
}

PatternMap expand(const ConstrainedSum& s) {
    PatternMap out;
    expand_into(s, 1.0, out);
    return out;
}

// ---------------------------------------------------------------------------
// The 13 statistics as constrained sums (order matches operator_statistics).
// ---------------------------------------------------------------------------

std::array<ConstrainedSum, 13> statistic_definitions() {
    auto cs = [](std::vector<Edge> e, int n, std::vector<std::pair<int, int>> d) {
        return ConstrainedSum{std::move(e), n, std::move(d)};
    };
    return {
        cs({{0, 0}, {0, 0}, {0, 0}, {0, 0}}, 1, {}),                    // T0
        cs({{0, 0}, {0, 0}, {0, 0}, {1, 1}}, 2, {}),                    // T1
        cs({{0, 0}, {0, 0}, {1, 1}, {1, 1}}, 2, {}),                    // T2
        cs({{0, 0}, {0, 0}, {1, 1}, {2, 2}}, 3, {}),                    // T3
        cs({{0, 0}, {1, 1}, {2, 2}, {3, 3}}, 4, {}),                    // T4
        cs({{0, 0}, {1, 1}, {0, 1}, {1, 0}}, 2, {{0, 1}}),              // T5
        cs({{0, 0}, {0, 0}, {0, 1}, {1, 0}}, 2, {{0, 1}}),              // T6
        cs({{0, 0}, {0, 0}, {1, 2}, {2, 1}}, 3, {{1, 2}}),              // T7
        cs({{0, 1}, {1, 0}, {2, 2}, {3, 3}}, 4, {{0, 1}}),              // T8
        cs({{0, 0}, {0, 1}, {1, 0}, {2, 2}}, 3, {{0, 1}}),              // T9
        cs({{0, 1}, {1, 0}, {0, 1}, {1, 0}}, 2, {{0, 1}}),              // T10
        cs({{0, 1}, {1, 0}, {2, 3}, {3, 2}}, 4, {{0, 1}, {2, 3}}),      // T11
        cs({{0, 1}, {1, 0}, {1, 2}, {2, 1}}, 3, {{0, 1}, {1, 2}, {0, 2}}),  // T12
    };
}

// ---------------------------------------------------------------------------
// The six contractions as Haar-moment specifications. Labels index the
// operator monomial; each unitary slot carries the label plus one A-type and
// one B-type summed column symbol (A symbols 0..3 = j j' k k', B symbols
// 0..3 = alpha alpha' beta beta').
// ---------------------------------------------------------------------------

struct SlotU {
    int label;   // eigenstate label carried by this factor
    int col_a;   // A-type column symbol
    int col_b;   // B-type column symbol
};

struct TermSpec {
    double prefactor = 1.0;
    ConstrainedSum monomial;                  // hermitian-rewritten coefficient
    std::array<SlotU, 4> u;                   // unconjugated factors
    std::array<SlotU, 4> u_conj;              // conjugated factors
};

// symbol ids
constexpr int J = 0, Jp = 1, K = 2, Kp = 3;      // A side
constexpr int AL = 0, ALp = 1, BE = 2, BEp = 3;  // B side

std::array<TermSpec, 6> term_definitions() {
    std::array<TermSpec, 6> t{};
    // labels per term: listed in the comments
    // term 0: diag^4, labels a b c d
    t[0].prefactor = 1.0;
    t[0].monomial = {{{0, 0}, {1, 1}, {2, 2}, {3, 3}}, 4, {}};
    t[0].u = {SlotU{0, J, AL}, SlotU{1, Kp, ALp}, SlotU{2, K, BE}, SlotU{3, Jp, BEp}};
    t[0].u_conj = {SlotU{0, Jp, ALp}, SlotU{1, K, AL}, SlotU{2, Kp, BEp}, SlotU{3, J, BE}};
    // term 1: O_aa O_cc |O_ef|^2, labels a=0 c=1 e=2 f=3, e != f, prefactor 2
    t[1].prefactor = 2.0;
    t[1].monomial = {{{0, 0}, {1, 1}, {2, 3}, {3, 2}}, 4, {{2, 3}}};
    t[1].u = {SlotU{0, J, AL}, SlotU{1, Kp, ALp}, SlotU{2, K, BE}, SlotU{3, Jp, BEp}};
    t[1].u_conj = {SlotU{0, Jp, ALp}, SlotU{1, K, AL}, SlotU{3, Kp, BEp}, SlotU{2, J, BE}};
    // term 2: |O_ab|^2 |O_cd|^2 with the A-side cross pattern, labels a b c d
    t[2].prefactor = 1.0;
    t[2].monomial = {{{0, 1}, {1, 0}, {2, 3}, {3, 2}}, 4, {{0, 1}, {2, 3}}};
    t[2].u = {SlotU{0, J, AL}, SlotU{1, Kp, ALp}, SlotU{2, K, BE}, SlotU{3, Jp, BEp}};
    t[2].u_conj = {SlotU{1, Jp, ALp}, SlotU{0, K, AL}, SlotU{3, Kp, BEp}, SlotU{2, J, BE}};
    // term 3: O_aa |O_cd|^2 O_gg, labels a=0 g=1 c=2 d=3, c != d, prefactor 2
    t[3].prefactor = 2.0;
    t[3].monomial = {{{0, 0}, {1, 1}, {2, 3}, {3, 2}}, 4, {{2, 3}}};
    t[3].u = {SlotU{0, J, AL}, SlotU{3, Kp, ALp}, SlotU{2, K, BE}, SlotU{1, Jp, BEp}};
    t[3].u_conj = {SlotU{0, Jp, ALp}, SlotU{2, K, AL}, SlotU{3, Kp, BEp}, SlotU{1, J, BE}};
    // term 4: |O_ab|^2 |O_cd|^2 with the B-side cross pattern, labels a b c d
    t[4].prefactor = 1.0;
    t[4].monomial = {{{0, 1}, {1, 0}, {2, 3}, {3, 2}}, 4, {{0, 1}, {2, 3}}};
    t[4].u = {SlotU{0, J, AL}, SlotU{3, Kp, ALp}, SlotU{2, K, BE}, SlotU{1, Jp, BEp}};
    t[4].u_conj = {SlotU{1, Jp, ALp}, SlotU{2, K, AL}, SlotU{3, Kp, BEp}, SlotU{0, J, BE}};
    // term 5: -|O_ab|^4, labels a b
    t[5].prefactor = -1.0;
    t[5].monomial = {{{0, 1}, {1, 0}, {0, 1}, {1, 0}}, 2, {{0, 1}}};
    t[5].u = {SlotU{0, J, AL}, SlotU{1, Kp, ALp}, SlotU{0, K, BE}, SlotU{1, Jp, BEp}};
    t[5].u_conj = {SlotU{1, Jp, ALp}, SlotU{0, K, AL}, SlotU{1, Kp, BEp}, SlotU{0, J, BE}};
    return t;
}

struct MiniUf {
    std::array<int, 8> p{};
    MiniUf() { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

// d_A^{#A components} * d_B^{#B components} after the column deltas of tau.
double column_factor(const TermSpec& t, const Perm& tau, double da, double db) {
    MiniUf ufa, ufb;
    for (int k = 0; k < 4; ++k) {
        ufa.unite(t.u[k].col_a, t.u_conj[tau[k]].col_a);
        ufb.unite(t.u[k].col_b, t.u_conj[tau[k]].col_b);
    }
    int ca = 0, cb = 0;
    for (int s = 0; s < 4; ++s) {
        if (ufa.find(s) == s) ++ca;
        if (ufb.find(s) == s) ++cb;
    }
    return std::pow(da, ca) * std::pow(db, cb);
}

// Merge the eigenstate labels according to the row deltas of sigma; empty
// optional when a merge hits a != constraint (zero contribution).
bool merged_monomial(const TermSpec& t, const Perm& sigma, ConstrainedSum& out) {
    MiniUf uf;
    for (int k = 0; k < 4; ++k) uf.unite(t.u[k].label, t.u_conj[sigma[k]].label);
    const int n = t.monomial.num_labels;
    for (auto [a, b] : t.monomial.distinct)
        if (uf.find(a) == uf.find(b)) return false;
    std::array<int, 8> compact{};
    compact.fill(-1);
    int next = 0;
    for (int x = 0; x < n; ++x) {
        const int r = uf.find(x);
        if (compact[r] < 0) compact[r] = next++;
    }
    out.edges.clear();
    out.distinct.clear();
    out.num_labels = next;
    for (const Edge& e : t.monomial.edges)
        out.edges.push_back({compact[uf.find(e.u)], compact[uf.find(e.v)]});
    for (auto [a, b] : t.monomial.distinct) {
        int x = compact[uf.find(a)], y = compact[uf.find(b)];
        if (x > y) std::swap(x, y);
        if (!out.is_distinct(x, y)) out.distinct.emplace_back(x, y);
    }
    return true;
}

// Solve engine = sum_n w_n * T_n in the strict-pattern space.
std::array<double, 13> solve_weights(const PatternMap& engine) {
    static const std::array<ConstrainedSum, 13> defs = statistic_definitions();
    std::array<PatternMap, 13> texp;
    std::map<std::string, int> pattern_index;
    for (int n = 0; n < 13; ++n) {
        texp[n] = expand(defs[n]);
        for (const auto& [k, v] : texp[n])
            if (!pattern_index.count(k)) pattern_index[k] = static_cast<int>(pattern_index.size());
    }
    for (const auto& [k, v] : engine)
        if (std::abs(v) > 1e-12 && !pattern_index.count(k))
            throw std::runtime_error("derive_weights: pattern outside the statistic span: " + k);
    const int rows = static_cast<int>(pattern_index.size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows, 13);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(rows);
    for (int n = 0; n < 13; ++n)
        for (const auto& [k, v] : texp[n]) a(pattern_index.at(k), n) += v;
    for (const auto& [k, v] : engine)
        if (pattern_index.count(k)) b(pattern_index.at(k)) += v;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    if (qr.rank() < 13) throw std::runtime_error("derive_weights: statistics not independent");
    Eigen::VectorXd w = qr.solve(b);
    const double resid = (a * w - b).norm();
    if (resid > 1e-9 * std::max(1.0, b.norm()))
        throw std::runtime_error("derive_weights: engine output is not in the statistic span");
    std::array<double, 13> out{};
    for (int n = 0; n < 13; ++n) out[n] = w(n);
    return out;
}

// Haar-integrate a subset of the six contractions.
std::array<double, 13> integrate_terms(Index dim_a, Index dim_b, int first_term, int last_term,
                                       bool apply_prefactors) {
    const long d = static_cast<long>(dim_a) * static_cast<long>(dim_b);
    if (d < 4) throw std::invalid_argument("derive_weights: d >= 4 required");
    const WeingartenTable wg = weingarten(4, d);
    const auto& perms = PermutationTable::of(4).perms;
    static const std::array<TermSpec, 6> terms = term_definitions();
    PatternMap engine;
    for (int ti = first_term; ti <= last_term; ++ti) {
        const TermSpec& t = terms[ti];
        const double pref = apply_prefactors ? t.prefactor : 1.0;
        for (std::size_t si = 0; si < perms.size(); ++si) {
            ConstrainedSum merged;
            if (!merged_monomial(t, perms[si], merged)) continue;
            double weight_sum = 0.0;
            for (std::size_t taui = 0; taui < perms.size(); ++taui)
                weight_sum += wg.wg_pair(static_cast<int>(si), static_cast<int>(taui)) *
                              column_factor(t, perms[taui], static_cast<double>(dim_a),
                                            static_cast<double>(dim_b));
            if (std::abs(weight_sum) < 1e-300) continue;
            expand_into(merged, pref * weight_sum, engine);
        }
    }
    return solve_weights(engine);
}

std::map<std::pair<Index, Index>, WeightTable>& weight_cache() {
    static std::map<std::pair<Index, Index>, WeightTable> cache;
    return cache;
}

std::map<std::pair<Index, Index>, std::array<double, 13>>& f_cache() {
    static std::map<std::pair<Index, Index>, std::array<double, 13>> cache;
    return cache;
}

std::map<std::pair<Index, Index>, std::array<double, 13>>& g_cache() {
    static std::map<std::pair<Index, Index>, std::array<double, 13>> cache;
    return cache;
}

Matrix resolve_block(const Matrix& o_ab, const HilbertGeometry& geom, const EnergyWindow* window,
                     WindowNorm norm) {
    if (o_ab.rows() != geom.dim || o_ab.cols() != geom.dim)
        throw std::invalid_argument("haar purity: operator dimension mismatch");
    if (window) return window_block(o_ab, *window, norm);
    return o_ab;
}

}  // namespace

std::array<double, 13> operator_statistics(const Matrix& o) {
    const Index d = o.rows();
    RealVector diag = o.diagonal().real();
    RealMatrix p = o.cwiseAbs2().real();
    p.diagonal().setZero();
    const double tr = diag.sum();
    const double s2 = diag.squaredNorm();
    double s3 = 0.0, s4 = 0.0;
    for (Index a = 0; a < d; ++a) {
        s3 += diag(a) * diag(a) * diag(a);
        s4 += diag(a) * diag(a) * diag(a) * diag(a);
    }
    const double off = p.sum();
    RealVector row = p.rowwise().sum();
    std::array<double, 13> t{};
    t[0] = s4;
    t[1] = s3 * tr;
    t[2] = s2 * s2;
    t[3] = s2 * tr * tr;
    t[4] = tr * tr * tr * tr;
    t[5] = diag.transpose() * p * diag;
    t[6] = diag.cwiseAbs2().transpose() * row;
    t[7] = s2 * off;
    t[8] = off * tr * tr;
    t[9] = (diag.transpose() * row).value() * tr;
    t[10] = p.cwiseProduct(p).sum();
    t[11] = off * off;
    t[12] = row.squaredNorm() - p.cwiseProduct(p.transpose()).sum();
    return t;
}

const WeightTable& derive_weights(Index dim_a, Index dim_b) {
    static std::mutex m;
    std::lock_guard<std::mutex> lock(m);
    auto key = std::make_pair(dim_a, dim_b);
    auto& cache = weight_cache();
    auto it = cache.find(key);
    if (it == cache.end()) {
        WeightTable t;
        t.dim_a = dim_a;
        t.dim_b = dim_b;
        t.dim = dim_a * dim_b;
        t.weights = integrate_terms(dim_a, dim_b, 0, 5, true);
        it = cache.emplace(key, t).first;
    }
    return it->second;
}

const std::array<double, 13>& term_f_weights(Index dim_a, Index dim_b) {
    static std::mutex m;
    std::lock_guard<std::mutex> lock(m);
    auto key = std::make_pair(dim_a, dim_b);
    auto& cache = f_cache();
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, integrate_terms(dim_a, dim_b, 0, 0, false)).first;
    return it->second;
}

const std::array<double, 13>& term_g_weights(Index dim_a, Index dim_b) {
    static std::mutex m;
    std::lock_guard<std::mutex> lock(m);
    auto key = std::make_pair(dim_a, dim_b);
    auto& cache = g_cache();
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, integrate_terms(dim_a, dim_b, 4, 4, false)).first;
    return it->second;
}

double haar_purity_exact(const Matrix& o_ab, const HilbertGeometry& geom,
                         const EnergyWindow* window, WindowNorm norm) {
    Matrix block = resolve_block(o_ab, geom, window, norm);
    const auto& table = derive_weights(geom.dim_a, geom.dim_b);
    const auto stats = operator_statistics(block);
    const double dw = static_cast<double>(block.rows());
    double acc = 0.0;
    for (int n = 0; n < 13; ++n) acc += table.weights[n] * stats[n];
    return acc / (dw * dw);
}

double haar_term_f(const Matrix& o_ab, const HilbertGeometry& geom, const EnergyWindow* window,
                   WindowNorm norm) {
    Matrix block = resolve_block(o_ab, geom, window, norm);
    const auto& w = term_f_weights(geom.dim_a, geom.dim_b);
    const auto stats = operator_statistics(block);
    double acc = 0.0;
    for (int n = 0; n < 13; ++n) acc += w[n] * stats[n];
    return acc;
}

double haar_term_g(const Matrix& o_ab, const HilbertGeometry& geom, const EnergyWindow* window,
                   WindowNorm norm) {
    Matrix block = resolve_block(o_ab, geom, window, norm);
    const auto& w = term_g_weights(geom.dim_a, geom.dim_b);
    const auto stats = operator_statistics(block);
    double acc = 0.0;
    for (int n = 0; n < 13; ++n) acc += w[n] * stats[n];
    return acc;
}

double asymptotic_s2(AsymptoticRegime regime, double var_diag, double var_offdiag, Index dim,
                     Index dim_a) {
    const double d = static_cast<double>(dim);
    double arg = 0.0;
    double lead = 0.0;
    if (regime == AsymptoticRegime::SmallSubsystem) {
        lead = 2.0 * std::log(static_cast<double>(dim_a));
        arg = 1.0 + (d - 1.0) * var_offdiag * (var_diag - 1.0);
    } else {
        lead = std::log(d);
        arg = 1.0 + var_diag * (1.0 + (d - 1.0) * var_offdiag);
    }
    if (arg <= 0.0)
        throw std::domain_error("asymptotic_s2: non-positive logarithm argument (unphysical variances)");
    return lead - std::log(arg);
}

std::string weight_table_json(const WeightTable& table) {
    nlohmann::json j;
    j["d_A"] = table.dim_a;
    j["d_B"] = table.dim_b;
    j["d"] = table.dim;
    j["weights"] = table.weights;
    return j.dump(2);
}

}  // namespace loe
