#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "boxqd/analysis.hpp"
#include "boxqd/config.hpp"
#include "boxqd/decoherence.hpp"
#include "boxqd/lattice.hpp"
#include "boxqd/spectra.hpp"

namespace boxqd {

struct StageTiming {
    std::string stage;
    double seconds = 0.0;
};

// In-memory products of one run: packet -> evolve -> decohere -> eigh -> analyze.
struct PipelineResult {
    SimConfig config;
    WaveFunction initial;
    WaveFunction evolved;
    DensityMatrix pure;
    DensityMatrix rho;  // equals pure when no_decoherence is set
    EigenDecomposition eig;
    LocalizationReport report;

    double tail_mass = 0.0;
    double trace = 0.0;
    double purity = 0.0;
    double effective_rank = 0.0;
    std::optional<double> reversal_fidelity;
    std::vector<StageTiming> timings;

    // "pre-spreading" when |psi|^2 has no interference nodes, else "interference".
    std::string regime() const;
};

struct RunManifest {
    std::vector<std::pair<std::string, std::string>> config;
    double lambda_db = 0.0;
    double dx = 0.0;
    double tail_mass = 0.0;
    double trace = 0.0;
    double purity = 0.0;
    double effective_rank = 0.0;
    std::optional<double> reversal_fidelity;  // set when reversal_check is on
    double weight_fraction_below = 0.0;
    double weighted_median_width = 0.0;
    std::size_t node_count = 0;
    double mean_node_spacing = 0.0;
    bool decoherence_applied = true;
    std::string regime;
    std::vector<std::filesystem::path> files;
    std::vector<StageTiming> timings;

    // Every derived scalar present (reversal fidelity only when requested)
    // and finite.
    bool complete() const;
};

PipelineResult compute(const SimConfig& cfg);

// Writes profile.csv, spectrum.csv, report.csv, blocks.csv, eigvec_<k>.csv
// (k < dump_top_k) and manifest.json into cfg.output_dir. Throws IoError.
RunManifest write_outputs(const PipelineResult& result);

// compute + write_outputs
RunManifest run_pipeline(const SimConfig& cfg);

struct SweepItem {
    double value = 0.0;
    std::filesystem::path directory;
    std::optional<RunManifest> manifest;
    std::string error;  // set when the item failed
};

// One run per value, each under <output_dir>/<axis>_<index>/, followed by
// <output_dir>/sweep_summary.csv in value-list order. Failing items are
// recorded and do not stop the sweep. Throws ConfigError for a non-sweepable
// axis.
std::vector<SweepItem> sweep(const SimConfig& base, const std::string& axis, const std::vector<double>& values);

}  // namespace boxqd
