#include "loe/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace loe {

std::vector<std::string> result_columns() {
    return {"experiment", "L",      "n_A",    "d_w",     "seed",      "purity_ed",
            "purity_haar", "s2_ed", "s2_haar", "F_ed",   "F_haar",    "G_ed",
            "G_haar",     "rel_error", "sigma2_diag", "sigma2_offdiag", "runtime_ms"};
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw std::runtime_error("format_double failed");
    return std::string(buf, ptr);
}

namespace {

std::string opt_field(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string{};
}

std::optional<double> parse_opt(const std::string& s) {
    if (s.empty()) return std::nullopt;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw std::runtime_error("parse_series: bad float field '" + s + "'");
    return v;
}

}  // namespace

void emit_series(const std::vector<ResultRow>& rows, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);  // binary: LF endings everywhere
    if (!out) throw std::runtime_error("emit_series: cannot open " + path.string());
    const auto cols = result_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << "\n";
    for (const auto& r : rows) {
        out << r.experiment << ',' << r.sites << ',' << r.sites_a << ',' << r.window_dim << ','
            << r.seed << ',' << opt_field(r.purity_ed) << ',' << opt_field(r.purity_haar) << ','
            << opt_field(r.s2_ed) << ',' << opt_field(r.s2_haar) << ',' << opt_field(r.f_ed) << ','
            << opt_field(r.f_haar) << ',' << opt_field(r.g_ed) << ',' << opt_field(r.g_haar) << ','
            << opt_field(r.rel_error) << ',' << opt_field(r.var_diag) << ','
            << opt_field(r.var_offdiag) << ',' << r.runtime_ms << "\n";
    }
    if (!out) throw std::runtime_error("emit_series: write failed for " + path.string());
}

std::vector<ResultRow> parse_series(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("parse_series: cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("parse_series: empty file");
    std::vector<ResultRow> rows;
    const std::size_t ncols = result_columns().size();
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) f.push_back(field);
        while (f.size() < ncols) f.emplace_back();  // trailing empties
        if (f.size() != ncols) throw std::runtime_error("parse_series: column count mismatch");
        ResultRow r;
        r.experiment = f[0];
        r.sites = std::stoi(f[1]);
        r.sites_a = std::stoi(f[2]);
        r.window_dim = std::stol(f[3]);
        r.seed = std::stoull(f[4]);
        r.purity_ed = parse_opt(f[5]);
        r.purity_haar = parse_opt(f[6]);
        r.s2_ed = parse_opt(f[7]);
        r.s2_haar = parse_opt(f[8]);
        r.f_ed = parse_opt(f[9]);
        r.f_haar = parse_opt(f[10]);
        r.g_ed = parse_opt(f[11]);
        r.g_haar = parse_opt(f[12]);
        r.rel_error = parse_opt(f[13]);
        r.var_diag = parse_opt(f[14]);
        r.var_offdiag = parse_opt(f[15]);
        r.runtime_ms = std::stol(f[16]);
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace loe
