#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "boxqd/lattice.hpp"

namespace boxqd {

// Largest accepted grid. The dense kernel costs 16 N^2 bytes and the
// eigensolver needs about three more N x N complex matrices, so N = 4096
// peaks near 1 GB.
inline constexpr std::size_t kMaxGridPoints = 4096;

struct SimConfig {
    double L = 1.0;
    double hbar = 1.0;
    double m = 1.0;
    double p0 = 30.0;
    double q0 = 0.5;
    double sigma = 0.05;
    double t = 0.5;
    double d = 0.01;
    std::size_t n_points = 2048;
    double rel_threshold = 0.02;
    double weight_cutoff = 0.9;
    std::filesystem::path output_dir = "out";
    std::size_t dump_top_k = 4;
    bool no_decoherence = false;
    bool reversal_check = true;

    PhysicalParams physical() const { return {hbar, m, p0, q0, sigma}; }

    // Throws ConfigError naming the offending field.
    void validate() const;
};

// Sets one field from its textual value. Throws ConfigError for an unknown
// key or a malformed value.
void set_field(SimConfig& cfg, std::string_view key, std::string_view value);

// Keys accepted by set_field, in canonical order.
const std::vector<std::string>& config_keys();

// Keys that sweep() may vary.
bool is_sweepable(std::string_view key);

// Ordered (key, value) pairs; values round-trip through set_field.
std::vector<std::pair<std::string, std::string>> to_key_values(const SimConfig& cfg);

// Parses flat "key = value" text ('#' starts a comment) on top of cfg.
// Throws ParseError carrying the 1-based line number.
void apply_config_text(SimConfig& cfg, std::string_view text, const std::string& origin = "<config>");

// Built-in defaults, then the file (if any), then KEY=VALUE overrides in
// order. The result is validated.
SimConfig load_config(const std::optional<std::filesystem::path>& path,
                      const std::vector<std::string>& overrides = {});

// Comma-separated reals, e.g. "0.01,0.2". Throws ConfigError naming field.
std::vector<double> parse_real_list(std::string_view field, std::string_view text);

// Shortest text that parses back to exactly v.
std::string format_double(double v);
// 17 significant digits, as written to CSV files.
std::string format_csv_double(double v);

}  // namespace boxqd
