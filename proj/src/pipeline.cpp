#include "boxqd/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <fstream>

#include "json.hpp"

#include "boxqd/errors.hpp"
#include "boxqd/propagator.hpp"

namespace boxqd {
namespace fs = std::filesystem;
namespace {

class Stopwatch {
public:
    double lap() {
        const auto now = std::chrono::steady_clock::now();
        const double s = std::chrono::duration<double>(now - last_).count();
        last_ = now;
        return s;
    }

private:
    std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

class CsvFile {
public:
    CsvFile(const fs::path& path, const std::string& header) : path_(path), out_(path) {
        if (!out_) throw IoError("cannot open " + path.string() + " for writing");
        out_ << header << '\n';
    }

    template <typename... Cols>
    void row(const Cols&... cols) {
        bool first = true;
        ((out_ << (first ? "" : ",") << cell(cols), first = false), ...);
        out_ << '\n';
    }

    void close() {
        out_.close();
        if (!out_) throw IoError("failed writing " + path_.string());
    }

private:
    static std::string cell(double v) { return format_csv_double(v); }
    static std::string cell(std::size_t v) { return std::to_string(v); }

    fs::path path_;
    std::ofstream out_;
};

nlohmann::json finite_or_null(double v) {
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

}  // namespace

std::string PipelineResult::regime() const {
    return report.partition.node_positions.empty() ? "pre-spreading" : "interference";
}

PipelineResult compute(const SimConfig& cfg) {
    cfg.validate();
    const PhysicalParams params = cfg.physical();
    std::vector<StageTiming> timings;
    Stopwatch clock;

    const Grid grid = make_grid(cfg.n_points, cfg.L);
    WaveFunction psi0 = gaussian_packet(grid, params);
    const double tail = gaussian_tail_mass(params, cfg.L);
    timings.push_back({"packet", clock.lap()});

    WaveFunction psi = evolve(psi0, cfg.t, params);
    timings.push_back({"evolve", clock.lap()});

    std::optional<double> rev;
    if (cfg.reversal_check) {
        rev = reversal_fidelity(psi0, cfg.t, params);
        timings.push_back({"reversal_check", clock.lap()});
    }

    DensityMatrix pure = pure_density(psi);
    DensityMatrix rho = cfg.no_decoherence ? pure : apply_decoherence(pure, cfg.d);
    timings.push_back({"density", clock.lap()});

    EigenDecomposition eig = eigh(rho);
    timings.push_back({"eigh", clock.lap()});

    LocalizationReport rep = localization_report(eig, psi, params, cfg.d, cfg.weight_cutoff, cfg.rel_threshold);
    const double tr = trace(rho);
    const double pur = purity(rho);
    timings.push_back({"analysis", clock.lap()});

    const double erank = rep.summary.effective_rank;
    return PipelineResult{cfg, std::move(psi0), std::move(psi), std::move(pure), std::move(rho), std::move(eig),
                          std::move(rep), tail, tr, pur, erank, rev, std::move(timings)};
}

bool RunManifest::complete() const {
    const double scalars[] = {lambda_db, dx, tail_mass, trace, purity, effective_rank};
    for (double v : scalars) {
        if (!std::isfinite(v)) return false;
    }
    if (reversal_fidelity && !std::isfinite(*reversal_fidelity)) return false;
    for (const fs::path& f : files) {
        std::error_code ec;
        if (!fs::is_regular_file(f, ec) || fs::file_size(f, ec) == 0) return false;
    }
    return true;
}

RunManifest write_outputs(const PipelineResult& r) {
    const SimConfig& cfg = r.config;
    const Grid& g = r.evolved.grid();
    std::error_code ec;
    fs::create_directories(cfg.output_dir, ec);
    if (ec) throw IoError("cannot create " + cfg.output_dir.string() + ": " + ec.message());

    RunManifest m;
    m.config = to_key_values(cfg);
    m.lambda_db = r.report.summary.lambda_db;
    m.dx = g.dx();
    m.tail_mass = r.tail_mass;
    m.trace = r.trace;
    m.purity = r.purity;
    m.effective_rank = r.effective_rank;
    m.reversal_fidelity = r.reversal_fidelity;
    m.weight_fraction_below = r.report.summary.weight_fraction_below;
    m.weighted_median_width = r.report.summary.weighted_median_width;
    m.node_count = r.report.summary.node_count;
    m.mean_node_spacing = r.report.summary.mean_node_spacing;
    m.decoherence_applied = !cfg.no_decoherence;
    m.regime = r.regime();
    m.timings = r.timings;

    {
        const fs::path p = cfg.output_dir / "profile.csv";
        CsvFile f(p, "x,re_psi,im_psi,abs2");
        const auto psi = r.evolved.values();
        for (std::size_t i = 0; i < g.n_points(); ++i) {
            f.row(g.x(i), psi[i].real(), psi[i].imag(), std::norm(psi[i]));
        }
        f.close();
        m.files.push_back(p);
    }
    {
        const fs::path p = cfg.output_dir / "spectrum.csv";
        CsvFile f(p, "k,lambda,width_std,ipr_length,x_mean");
        for (std::size_t k = 0; k < r.eig.size(); ++k) {
            const auto v = r.eig.vector(k);
            const PositionMoments mo = position_moments(v, g);
            f.row(k, r.eig.eigenvalues[static_cast<Eigen::Index>(k)], mo.std, ipr_length(v, g), mo.mean);
        }
        f.close();
        m.files.push_back(p);
    }
    {
        const fs::path p = cfg.output_dir / "report.csv";
        CsvFile f(p, "k,lambda,x_mean,width_std,ipr_length,block_fraction");
        for (const EigenstateRow& row : r.report.rows) {
            f.row(row.index, row.eigenvalue, row.mean_x, row.width_std, row.ipr_length, row.block_fraction);
        }
        f.close();
        m.files.push_back(p);
    }
    {
        const fs::path p = cfg.output_dir / "blocks.csv";
        CsvFile f(p, "node_x");
        for (double x : r.report.partition.node_positions) f.row(x);
        f.close();
        m.files.push_back(p);
    }
    for (std::size_t k = 0; k < cfg.dump_top_k && k < r.eig.size(); ++k) {
        const fs::path p = cfg.output_dir / ("eigvec_" + std::to_string(k) + ".csv");
        CsvFile f(p, "x,re_v,im_v");
        const auto v = r.eig.vector(k);
        for (std::size_t i = 0; i < g.n_points(); ++i) f.row(g.x(i), v[i].real(), v[i].imag());
        f.close();
        m.files.push_back(p);
    }

    const fs::path manifest_path = cfg.output_dir / "manifest.json";
    m.files.push_back(manifest_path);

    nlohmann::ordered_json j;
    for (const auto& [k, v] : m.config) j["config"][k] = v;
    auto& dj = j["derived"];
    dj["lambda_db"] = m.lambda_db;
    dj["dx"] = m.dx;
    dj["tail_mass"] = m.tail_mass;
    dj["trace"] = m.trace;
    dj["purity"] = m.purity;
    dj["effective_rank"] = m.effective_rank;
    dj["reversal_fidelity"] = m.reversal_fidelity ? nlohmann::json(*m.reversal_fidelity) : nlohmann::json(nullptr);
    dj["weight_fraction_below_lambda_db"] = m.weight_fraction_below;
    dj["weighted_median_width"] = m.weighted_median_width;
    dj["node_count"] = m.node_count;
    dj["mean_node_spacing"] = finite_or_null(m.mean_node_spacing);
    dj["decoherence_applied"] = m.decoherence_applied;
    dj["regime"] = m.regime;
    j["files"] = nlohmann::json::array();
    for (const fs::path& p : m.files) j["files"].push_back(p.filename().string());
    for (const StageTiming& t : m.timings) j["timings_seconds"][t.stage] = t.seconds;

    std::ofstream out(manifest_path);
    out << j.dump(2) << '\n';
    out.close();
    if (!out) throw IoError("failed writing " + manifest_path.string());
    return m;
}

RunManifest run_pipeline(const SimConfig& cfg) {
    return write_outputs(compute(cfg));
}

std::vector<SweepItem> sweep(const SimConfig& base, const std::string& axis, const std::vector<double>& values) {
    if (!is_sweepable(axis)) throw ConfigError(axis, "not a sweepable numeric field");
    std::error_code ec;
    fs::create_directories(base.output_dir, ec);
    if (ec) throw IoError("cannot create " + base.output_dir.string() + ": " + ec.message());

    std::vector<SweepItem> items;
    for (std::size_t i = 0; i < values.size(); ++i) {
        SweepItem item;
        item.value = values[i];
        item.directory = base.output_dir / (axis + "_" + std::to_string(i));
        try {
            SimConfig cfg = base;
            set_field(cfg, axis, format_double(values[i]));
            cfg.output_dir = item.directory;
            item.manifest = run_pipeline(cfg);
        } catch (const Error& e) {
            item.error = std::string(e.kind()) + ": " + e.what();
        } catch (const std::exception& e) {
            item.error = e.what();
        }
        items.push_back(std::move(item));
    }

    const fs::path summary = base.output_dir / "sweep_summary.csv";
    std::ofstream out(summary);
    if (!out) throw IoError("cannot open " + summary.string() + " for writing");
    out << axis << ",status,effective_rank,weight_fraction_below,regime,directory,error\n";
    for (const SweepItem& it : items) {
        out << format_csv_double(it.value) << ',';
        if (it.manifest) {
            out << "ok," << format_csv_double(it.manifest->effective_rank) << ','
                << format_csv_double(it.manifest->weight_fraction_below) << ',' << it.manifest->regime << ',';
        } else {
            out << "failed,,,,";
        }
        std::string err = it.error;
        for (char& c : err) {
            if (c == ',' || c == '\n') c = ';';
        }
        out << it.directory.filename().string() << ',' << err << '\n';
    }
    out.close();
    if (!out) throw IoError("failed writing " + summary.string());
    return items;
}

}  // namespace boxqd
