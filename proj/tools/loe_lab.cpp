// loe-lab — command line front end: runs experiments from JSON configs, dumps
// analytic weight tables, and executes quick self-checks.

#include "loe/experiments.hpp"
#include "loe/haar.hpp"
#include "loe/latetime.hpp"
#include "loe/sampling.hpp"
#include "loe/spectral.hpp"
#include "loe/spin_chain.hpp"

#include "loe/rng.hpp"
#include "CLI11.hpp"

#include <iostream>

#ifdef LOE_HAVE_LAPACKE
extern "C" void openblas_set_num_threads(int);
#endif

namespace {

using namespace loe;

Matrix random_hermitian(Index dim, std::uint64_t seed) {
    CounterRng rng(seed);
    Matrix a(dim, dim);
    for (Index j = 0; j < dim; ++j)
        for (Index i = 0; i < dim; ++i) a(i, j) = Complex(rng.next_gaussian(), rng.next_gaussian());
    return 0.5 * (a + a.adjoint());
}

Matrix random_unit_observable(Index dim, std::uint64_t seed) {
    Matrix o = random_hermitian(dim, seed);
    o -= (o.trace() / static_cast<double>(dim)) * Matrix::Identity(dim, dim);
    return o / inf_temp_norm(o);
}

int run_checks(const std::string& suite, int sites, double tol, std::uint64_t seed) {
    bool ok = true;
    if (suite == "identities") {
        // omega-basis form, decomposition identity, and side symmetry on small
        // random systems
        for (std::uint64_t s = seed; s < seed + 3; ++s) {
            auto spec = eigendecompose(random_hermitian(16, s));
            auto geom = HilbertGeometry::chain(4, 1 + static_cast<int>(s % 2));
            Matrix o = random_unit_observable(16, s + 100);
            Matrix oab = to_energy_basis(o, spec);
            auto bd = latetime_purity_ed(spec, oab, geom);
            auto split = omega_purity(build_omega_basis(oab, spec.eigenvalues), spec, geom);
            const double gap = std::abs(split.total() - bd.total);
            const double resid = mutual_info_identity(spec, oab, geom);
            std::cout << "identities seed=" << s << " omega_gap=" << gap
                      << " decomposition_residual=" << resid << "\n";
            ok &= gap < 1e-10 && resid < 1e-10;
        }
    } else if (suite == "nonresonance") {
        RealMatrix h = mixed_field_ising(sites, MfimParams::chaotic());
        auto spec = eigendecompose(h);
        for (int k = 1; k <= (sites <= 7 ? 4 : 2); ++k) {
            auto v = check_nonresonance(spec.eigenvalues, k, tol);
            std::cout << "k=" << k << " violations=" << v.size() << " at tol=" << tol << "\n";
            if (k <= 2) ok &= v.empty();
        }
    } else if (suite == "oracle") {
        auto geom = HilbertGeometry::chain(3, 1);
        Matrix o = random_unit_observable(8, seed);
        const double exact = haar_purity_exact(o, geom);
        auto mc = monte_carlo_haar_purity(o, geom, 20000, seed + 1);
        std::cout << "haar purity exact=" << exact << " sampled=" << mc.mean << " +- "
                  << mc.stderr_of_mean << "\n";
        ok &= std::abs(exact - mc.mean) < 4.0 * mc.stderr_of_mean;
    } else {
        std::cerr << "unknown suite '" << suite << "'\n";
        return 1;
    }
    std::cout << (ok ? "OK" : "FAILED") << "\n";
    return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Late-time local operator entanglement laboratory"};
    app.require_subcommand(1);

    // run
    auto* run_cmd = app.add_subcommand("run", "Run an experiment from a JSON config");
    std::string config_file;
    std::string out_dir;
    int threads = 0;
    std::uint64_t seed_override = 0;
    bool have_seed = false;
    bool override_guard = false;
    bool dry_run = false;
    run_cmd->add_option("--config", config_file, "JSON config file")->required();
    run_cmd->add_option("--out", out_dir, "output directory (overrides config)");
    run_cmd->add_option("--threads", threads, "BLAS thread count");
    run_cmd->add_option("--seed", seed_override, "seed (overrides config)")
        ->each([&](const std::string&) { have_seed = true; });
    run_cmd->add_flag("--override-size-guard", override_guard, "allow large full-space runs");
    run_cmd->add_flag("--dry-run", dry_run, "print the experiment plan and exit");

    // weights
    auto* weights_cmd = app.add_subcommand("weights", "Print a 13-weight table as JSON");
    long dim_a = 0, dim_b = 0;
    weights_cmd->add_option("--dA", dim_a, "subsystem A dimension")->required();
    weights_cmd->add_option("--dB", dim_b, "subsystem B dimension")->required();

    // check
    auto* check_cmd = app.add_subcommand("check", "Quick self-checks");
    std::string suite = "identities";
    int check_sites = 6;
    double check_tol = 1e-12;
    std::uint64_t check_seed = 7;
    check_cmd->add_option("--suite", suite, "identities | nonresonance | oracle")->required();
    check_cmd->add_option("--L", check_sites, "chain length for nonresonance");
    check_cmd->add_option("--tol", check_tol, "nonresonance tolerance");
    check_cmd->add_option("--seed", check_seed, "seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*run_cmd) {
#ifdef LOE_HAVE_LAPACKE
            if (threads > 0) openblas_set_num_threads(threads);
#endif
            auto config = loe::ExperimentConfig::from_json_file(config_file);
            if (!out_dir.empty()) config.out_dir = out_dir;
            if (have_seed) config.seed = seed_override;
            if (override_guard) config.override_size_guard = true;
            if (dry_run) {
                std::cout << loe::describe_plan(config);
                return 0;
            }
            auto result = loe::run(config);
            for (const auto& f : result.files) std::cout << "wrote " << f.string() << "\n";
            if (!result.assertions_ok) {
                std::cerr << "assertions failed\n";
                return 2;
            }
            return 0;
        }
        if (*weights_cmd) {
            std::cout << loe::weight_table_json(loe::derive_weights(dim_a, dim_b)) << "\n";
            return 0;
        }
        if (*check_cmd) return run_checks(suite, check_sites, check_tol, check_seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
