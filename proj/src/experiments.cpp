#include "loe/experiments.hpp"

#include "loe/eth.hpp"
#include "loe/haar.hpp"
#include "loe/latetime.hpp"
#include "loe/loe_dynamics.hpp"
#include "loe/sampling.hpp"
#include "loe/spectral.hpp"

#include "json.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

namespace loe {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr int kFullSpaceGuard = 8;

PauliAxis axis_from_string(const std::string& s) {
    if (s == "x" || s == "X") return PauliAxis::X;
    if (s == "y" || s == "Y") return PauliAxis::Y;
    if (s == "z" || s == "Z") return PauliAxis::Z;
    throw std::invalid_argument("axis must be one of x, y, z");
}

std::string axis_to_string(PauliAxis a) {
    switch (a) {
        case PauliAxis::X: return "x";
        case PauliAxis::Y: return "y";
        default: return "z";
    }
}

json config_to_json(const ExperimentConfig& c) {
    json j;
    j["experiment"] = c.experiment;
    j["L"] = c.sites;
    j["L_list"] = c.sites_list;
    j["params"] = {{"J", c.params.coupling},
                   {"h_x", c.params.field_x},
                   {"h_z", c.params.field_z},
                   {"g_0", c.params.edge_left},
                   {"g_l", c.params.edge_right}};
    j["site"] = c.site;
    j["axis"] = axis_to_string(c.axis);
    j["n_A"] = c.sites_a;
    j["d_w"] = c.window_dims;
    j["delta_E"] = c.window_widths;
    j["error_metric"] = c.error_metric;
    j["seed"] = c.seed;
    j["out_dir"] = c.out_dir;
    j["override_size_guard"] = c.override_size_guard;
    return j;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    long ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - t0)
            .count();
    }
};

struct Model {
    SpectralData spec;
    Matrix o_ab;
    int sites = 0;
    int op_site = 0;
};

Model build_model(int sites, const ExperimentConfig& c) {
    Model m;
    m.sites = sites;
    m.op_site = c.site >= 0 ? c.site : center_site(sites);
    RealMatrix h = mixed_field_ising(sites, c.params);
    m.spec = eigendecompose(h);
    // O V is a signed row permutation of V, so only one dense product is needed
    Matrix ov = apply_site_pauli_left(sites, m.op_site, c.axis, m.spec.eigenvectors);
    m.o_ab = m.spec.eigenvectors.adjoint() * ov;
    return m;
}

double pick_error(const std::string& metric, double purity_ed, double purity_haar) {
    if (metric == "purity_relative") return std::abs(purity_ed - purity_haar) / std::abs(purity_ed);
    const double s2e = -std::log(purity_ed);
    const double s2h = -std::log(purity_haar);
    return std::abs(s2e - s2h) / std::abs(s2e);
}

std::vector<EnergyWindow> config_windows(const ExperimentConfig& c, const SpectralData& spec) {
    std::vector<EnergyWindow> windows;
    for (long dw : c.window_dims) windows.push_back(select_window(spec, dw));
    for (double de : c.window_widths) windows.push_back(select_window_energy(spec, de));
    return windows;
}

// ------------------------------- experiments -------------------------------

std::vector<std::string> figure_tags(const std::string& experiment) {
    if (experiment == "full_space") return {"fig2", "fig3"};
    if (experiment == "window_sweep") return {"fig4", "fig5", "fig6", "fig9", "fig10", "fig11"};
    if (experiment == "fg_terms") return {"fig7", "fig8"};
    if (experiment == "timeseries") return {};
    if (experiment == "eth_scaling") return {"fig19"};
    if (experiment == "page_check") return {"fig13"};
    if (experiment == "eigenstate_entanglement") return {"fig12"};
    return {};
}

std::vector<ResultRow> run_full_space(const ExperimentConfig& c) {
    if (c.sites > kFullSpaceGuard && !c.override_size_guard)
        throw std::invalid_argument(
            "full_space with L > 8 refused; pass the size-guard override to force");
    Model m = build_model(c.sites, c);
    std::vector<ResultRow> rows;
    for (int na : c.sites_a) {
        Timer timer;
        auto geom = HilbertGeometry::chain(c.sites, na);
        auto bd = latetime_purity_ed(m.spec, m.o_ab, geom);
        const double haar = haar_purity_exact(m.o_ab, geom);
        auto st = compute_stats(m.o_ab);
        ResultRow r;
        r.experiment = c.experiment;
        r.sites = c.sites;
        r.sites_a = na;
        r.window_dim = 0;
        r.seed = c.seed;
        r.purity_ed = bd.total;
        r.purity_haar = haar;
        r.s2_ed = -std::log(bd.total);
        r.s2_haar = -std::log(haar);
        r.f_ed = term_F(m.spec, m.o_ab, geom);
        r.f_haar = haar_term_f(m.o_ab, geom);
        r.g_ed = term_G(m.spec, m.o_ab, geom);
        r.g_haar = haar_term_g(m.o_ab, geom);
        r.rel_error = pick_error(c.error_metric, bd.total, haar);
        r.var_diag = st.diag_var;
        r.var_offdiag = st.offdiag_var;
        r.runtime_ms = timer.ms();
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<ResultRow> run_window_sweep(const ExperimentConfig& c) {
    Model m = build_model(c.sites, c);
    std::vector<ResultRow> rows;
    for (const auto& w : config_windows(c, m.spec)) {
        for (int na : c.sites_a) {
            Timer timer;
            auto geom = HilbertGeometry::chain(c.sites, na);
            auto bd = latetime_purity_ed(m.spec, m.o_ab, geom, &w);
            const double haar = haar_purity_exact(m.o_ab, geom, &w);
            auto st = compute_stats(m.o_ab, &w);
            ResultRow r;
            r.experiment = c.experiment;
            r.sites = c.sites;
            r.sites_a = na;
            r.window_dim = w.count;
            r.seed = c.seed;
            r.purity_ed = bd.total;
            r.purity_haar = haar;
            r.s2_ed = -std::log(bd.total);
            r.s2_haar = -std::log(haar);
            r.f_ed = term_F(m.spec, m.o_ab, geom, &w);
            r.f_haar = haar_term_f(m.o_ab, geom, &w);
            r.g_ed = term_G(m.spec, m.o_ab, geom, &w);
            r.g_haar = haar_term_g(m.o_ab, geom, &w);
            r.rel_error = pick_error(c.error_metric, bd.total, haar);
            r.var_diag = st.diag_var;
            r.var_offdiag = st.offdiag_var;
            r.runtime_ms = timer.ms();
            rows.push_back(std::move(r));
        }
    }
    return rows;
}

std::vector<ResultRow> run_fg_terms(const ExperimentConfig& c) {
    std::vector<int> ls = c.sites_list.empty() ? std::vector<int>{c.sites} : c.sites_list;
    std::vector<ResultRow> rows;
    for (int sites : ls) {
        Model m = build_model(sites, c);
        for (const auto& w : config_windows(c, m.spec)) {
            for (int na : c.sites_a) {
                if (na >= sites) continue;
                Timer timer;
                auto geom = HilbertGeometry::chain(sites, na);
                ResultRow r;
                r.experiment = c.experiment;
                r.sites = sites;
                r.sites_a = na;
                r.window_dim = w.count;
                r.seed = c.seed;
                r.f_ed = term_F(m.spec, m.o_ab, geom, &w);
                r.f_haar = haar_term_f(m.o_ab, geom, &w);
                r.g_ed = term_G(m.spec, m.o_ab, geom, &w);
                r.g_haar = haar_term_g(m.o_ab, geom, &w);
                r.rel_error = std::abs(*r.f_ed - *r.f_haar) / std::abs(*r.f_ed);
                r.runtime_ms = timer.ms();
                rows.push_back(std::move(r));
            }
        }
    }
    return rows;
}

fs::path run_timeseries(const ExperimentConfig& c, const fs::path& dir) {
    Model m = build_model(c.sites, c);
    const int na = c.sites_a.front();
    auto geom = HilbertGeometry::chain(c.sites, na);
    const double horizon = default_time_average_horizon(m.spec);
    std::vector<double> times;
    const int npoints = 400;
    for (int i = 0; i <= npoints; ++i)
        times.push_back(0.05 * horizon * static_cast<double>(i) / npoints);
    auto series = loe_timeseries(m.spec, m.o_ab, geom, times);
    const double late = latetime_purity_ed(m.spec, m.o_ab, geom).total;
    fs::path file = dir / "timeseries.csv";
    std::ofstream out(file, std::ios::binary);
    out << "t,purity,s2,late_time_purity\n";
    for (const auto& p : series)
        out << format_double(p.t) << ',' << format_double(p.purity) << ','
            << format_double(p.s2) << ',' << format_double(late) << "\n";
    return file;
}

std::vector<ResultRow> run_eth_scaling(const ExperimentConfig& c) {
    std::vector<int> ls = c.sites_list.empty() ? std::vector<int>{c.sites} : c.sites_list;
    std::vector<ResultRow> rows;
    for (int sites : ls) {
        Timer timer;
        Model m = build_model(sites, c);
        auto st = compute_stats(m.o_ab);
        ResultRow r;
        r.experiment = c.experiment;
        r.sites = sites;
        r.sites_a = 0;
        r.window_dim = 0;
        r.seed = c.seed;
        r.var_diag = st.diag_var;
        r.var_offdiag = st.offdiag_var;
        r.runtime_ms = timer.ms();
        rows.push_back(std::move(r));
    }
    return rows;
}

bool run_page_check(const ExperimentConfig& c, const fs::path& dir,
                    std::vector<fs::path>& files) {
    bool ok = true;
    // three swap matrix elements vs sampling at d = 16
    {
        const Index da = 4, d = 16;
        auto w = page_weights(da, d);
        const int n = 20000;
        double dia = 0, semi = 0, perm = 0, dia2 = 0, semi2 = 0, perm2 = 0;
        for (int s = 0; s < n; ++s) {
            Matrix frame = haar_frame(d, 2, c.seed + 11, s);
            Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                           Eigen::RowMajor>>
                e0(frame.col(0).data(), da, d / da),
                e1(frame.col(1).data(), da, d / da);
            Matrix m00 = e0 * e0.adjoint();
            Matrix m11 = e1 * e1.adjoint();
            const double vd = (m00 * m00).trace().real();
            const double vs = (m00 * m11).trace().real();
            const double vp = (e0 * e1.adjoint()).squaredNorm();
            dia += vd;
            semi += vs;
            perm += vp;
            dia2 += vd * vd;
            semi2 += vs * vs;
            perm2 += vp * vp;
        }
        auto se = [n](double s, double s2) {
            return std::sqrt(std::max(0.0, (s2 / n - (s / n) * (s / n)) / n));
        };
        ok &= std::abs(dia / n - w.dia) <= 3.0 * se(dia, dia2);
        ok &= std::abs(semi / n - w.semi) <= 3.0 * se(semi, semi2);
        ok &= std::abs(perm / n - w.perm) <= 3.0 * se(perm, perm2);
    }
    // closed-form entropy vs Haar-state sampling at d = 1024
    {
        const double target = page_s2(2, 1024);
        auto mc = haar_state_entanglement(4, 1024, 2.0, 3000, c.seed + 13);
        ok &= std::abs(mc.mean - target) / target < 0.01;
    }
    // full/partial combination curves
    {
        fs::path file = dir / "page_curves.csv";
        std::ofstream out(file, std::ios::binary);
        out << "L,n_A,d_w,full,dia_only,semi_only,perm_only\n";
        const int sites = 10;
        const Index d = Index{1} << sites;
        for (long dw : {20L, 40L}) {
            for (int na = 1; na <= sites / 2; ++na) {
                auto w = page_weights(Index{1} << na, d);
                const double fdw = static_cast<double>(dw);
                const double full = (1.0 / fdw) * w.dia + (1.0 - 1.0 / fdw) * (w.semi + w.perm);
                out << sites << ',' << na << ',' << dw << ',' << format_double(-std::log(full))
                    << ',' << format_double(-std::log(w.dia / fdw)) << ','
                    << format_double(-std::log((1.0 - 1.0 / fdw) * w.semi)) << ','
                    << format_double(-std::log((1.0 - 1.0 / fdw) * w.perm)) << "\n";
            }
        }
        files.push_back(file);
    }
    return ok;
}

void run_weights_dump(const ExperimentConfig& c, const fs::path& dir,
                      std::vector<fs::path>& files) {
    for (int na : c.sites_a) {
        auto geom = HilbertGeometry::chain(c.sites, na);
        const auto& table = derive_weights(geom.dim_a, geom.dim_b);
        fs::path file = dir / ("weights_dA" + std::to_string(geom.dim_a) + "_dB" +
                               std::to_string(geom.dim_b) + ".json");
        std::ofstream out(file, std::ios::binary);
        out << weight_table_json(table) << "\n";
        files.push_back(file);
    }
}

fs::path run_eigenstate_entanglement(const ExperimentConfig& c, const fs::path& dir) {
    Model m = build_model(c.sites, c);
    const Index d = m.spec.dim();
    auto w = select_window(m.spec, std::max<Index>(2, d / 5));  // middle 20%
    fs::path file = dir / "eigenstate_entanglement.csv";
    std::ofstream out(file, std::ios::binary);
    out << "alpha,n_A,mean_eigenstates,mean_haar\n";
    for (double alpha : {1.0, 2.0, 3.0, 4.0}) {
        for (int na : c.sites_a) {
            auto geom = HilbertGeometry::chain(c.sites, na);
            double acc = 0.0;
            for (Index a = w.first; a <= w.last(); ++a) {
                Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                               Eigen::RowMajor>>
                    e(m.spec.eigenvectors.col(a).data(), geom.dim_a, geom.dim_b);
                Eigen::JacobiSVD<Matrix> svd(e);
                RealVector lam = svd.singularValues().array().square();
                if (alpha == 1.0) {
                    double s = 0.0;
                    for (Index i = 0; i < lam.size(); ++i)
                        if (lam(i) > 1e-15) s -= lam(i) * std::log(lam(i));
                    acc += s;
                } else {
                    double z = 0.0;
                    for (Index i = 0; i < lam.size(); ++i)
                        if (lam(i) > 0) z += std::pow(lam(i), alpha);
                    acc += std::log(z) / (1.0 - alpha);
                }
            }
            acc /= static_cast<double>(w.count);
            auto haar = haar_state_entanglement(geom.dim_a, geom.dim, alpha, 600, c.seed + 17);
            out << format_double(alpha) << ',' << na << ',' << format_double(acc) << ','
                << format_double(haar.mean) << "\n";
        }
    }
    return file;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    json j = json::parse(text);
    ExperimentConfig c;
    c.experiment = j.at("experiment").get<std::string>();
    c.sites = j.value("L", 6);
    c.sites_list = j.value("L_list", std::vector<int>{});
    if (j.contains("params")) {
        const auto& p = j["params"];
        c.params.coupling = p.value("J", 1.0);
        c.params.field_x = p.value("h_x", 1.1);
        c.params.field_z = p.value("h_z", 0.3);
        c.params.edge_left = p.value("g_0", 0.25);
        c.params.edge_right = p.value("g_l", -0.25);
    }
    c.site = j.value("site", -1);
    c.axis = axis_from_string(j.value("axis", std::string("x")));
    c.sites_a = j.value("n_A", std::vector<int>{1});
    c.window_dims = j.value("d_w", std::vector<long>{});
    c.window_widths = j.value("delta_E", std::vector<double>{});
    c.error_metric = j.value("error_metric", std::string("s2_relative"));
    c.seed = j.value("seed", std::uint64_t{1});
    c.out_dir = j.value("out_dir", std::string("out"));
    c.override_size_guard = j.value("override_size_guard", false);
    if (c.error_metric != "s2_relative" && c.error_metric != "purity_relative")
        throw std::invalid_argument("error_metric must be s2_relative or purity_relative");
    if (c.sites_a.empty()) throw std::invalid_argument("need at least one bipartition");
    return c;
}

ExperimentConfig ExperimentConfig::from_json_file(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open config " + file.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

std::string ExperimentConfig::to_json() const { return config_to_json(*this).dump(2); }

std::string ExperimentConfig::canonical_hash() const {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a(config_to_json(*this).dump())));
    return buf;
}

std::string describe_plan(const ExperimentConfig& c) {
    std::ostringstream out;
    out << "experiment: " << c.experiment << "\n";
    std::vector<int> ls = c.sites_list.empty() ? std::vector<int>{c.sites} : c.sites_list;
    for (int sites : ls) {
        const long d = 1L << sites;
        out << "  L = " << sites << " (d = " << d << "): eigensolve ~" << (d * d * d / 500000000)
            << " s";
        const long grid = static_cast<long>(c.sites_a.size()) *
                          std::max<std::size_t>(1, c.window_dims.size() + c.window_widths.size());
        out << ", " << grid << " grid cells\n";
    }
    return out.str();
}

RunResult run(const ExperimentConfig& c) {
    Timer wall;
    fs::path dir(c.out_dir);
    fs::create_directories(dir);
    RunResult result;

    std::vector<ResultRow> rows;
    if (c.experiment == "full_space")
        rows = run_full_space(c);
    else if (c.experiment == "window_sweep")
        rows = run_window_sweep(c);
    else if (c.experiment == "fg_terms")
        rows = run_fg_terms(c);
    else if (c.experiment == "eth_scaling")
        rows = run_eth_scaling(c);
    else if (c.experiment == "timeseries")
        result.files.push_back(run_timeseries(c, dir));
    else if (c.experiment == "page_check")
        result.assertions_ok = run_page_check(c, dir, result.files);
    else if (c.experiment == "weights_dump")
        run_weights_dump(c, dir, result.files);
    else if (c.experiment == "eigenstate_entanglement")
        result.files.push_back(run_eigenstate_entanglement(c, dir));
    else
        throw std::invalid_argument("unknown experiment '" + c.experiment + "'");

    if (!rows.empty()) {
        fs::path file = dir / (c.experiment + ".csv");
        emit_series(rows, file);
        result.files.push_back(file);
    }

    json manifest;
    manifest["config"] = json::parse(c.to_json());
    manifest["config_hash"] = c.canonical_hash();
    manifest["figure_tags"] = figure_tags(c.experiment);
    manifest["wall_time_ms"] = wall.ms();
    manifest["assertions_ok"] = result.assertions_ok;
    std::vector<std::string> names;
    for (const auto& f : result.files) names.push_back(f.filename().string());
    manifest["outputs"] = names;
    fs::path mf = dir / "run_manifest.json";
    std::ofstream out(mf, std::ios::binary);
    out << manifest.dump(2) << "\n";
    result.files.push_back(mf);
    return result;
}

}  // namespace loe
