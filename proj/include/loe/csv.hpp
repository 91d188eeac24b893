// csv.hpp — result rows and CSV emission with stable formatting.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace loe {

// One computed grid cell. Optional fields print empty when absent so every
// experiment shares a single fixed column set.
struct ResultRow {
    std::string experiment;
    int sites = 0;
    int sites_a = 0;
    long window_dim = 0;  // 0 = full space
    std::uint64_t seed = 0;
    std::optional<double> purity_ed;
    std::optional<double> purity_haar;
    std::optional<double> s2_ed;
    std::optional<double> s2_haar;
    std::optional<double> f_ed;
    std::optional<double> f_haar;
    std::optional<double> g_ed;
    std::optional<double> g_haar;
    std::optional<double> rel_error;
    std::optional<double> var_diag;
    std::optional<double> var_offdiag;
    long runtime_ms = 0;
};

// Header + one line per row; shortest round-trip decimals, LF endings, UTF-8.
void emit_series(const std::vector<ResultRow>& rows, const std::filesystem::path& path);

std::vector<std::string> result_columns();
std::string format_double(double v);  // shortest round-trip form
std::vector<ResultRow> parse_series(const std::filesystem::path& path);

}  // namespace loe
