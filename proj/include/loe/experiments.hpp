// experiments.hpp — experiment orchestration: named desk-scale studies with
// CSV artifacts and a JSON run manifest.

#pragma once

#include "loe/csv.hpp"
#include "loe/spin_chain.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace loe {

struct ExperimentConfig {
    std::string experiment;  // full_space | window_sweep | fg_terms | timeseries |
                             // eth_scaling | page_check | weights_dump |
                             // eigenstate_entanglement
    int sites = 6;
    std::vector<int> sites_list;  // Used by eth_scaling / fg_terms; empty = {sites}
    MfimParams params{};
    int site = -1;  // -1 = center of the chain
    PauliAxis axis = PauliAxis::X;
    std::vector<int> sites_a{1};
    std::vector<long> window_dims;      // empty = full space
    std::vector<double> window_widths;  // alternative energy-width windows
    std::string error_metric = "s2_relative";  // or purity_relative
    std::uint64_t seed = 1;
    std::string out_dir = "out";
    bool override_size_guard = false;

    static ExperimentConfig from_json_file(const std::filesystem::path& file);
    static ExperimentConfig from_json_text(const std::string& text);
    std::string to_json() const;
    std::string canonical_hash() const;
};

struct RunResult {
    std::vector<std::filesystem::path> files;
    bool assertions_ok = true;
};

// Executes one experiment, writing CSV outputs plus run_manifest.json into the
// configured directory. Throws on invalid configuration; returns
// assertions_ok = false when a checked experiment (page_check) fails its
// tolerance.
RunResult run(const ExperimentConfig& config);

// Plan summary with rough cost estimates, for --dry-run.
std::string describe_plan(const ExperimentConfig& config);

}  // namespace loe
