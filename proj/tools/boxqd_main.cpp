// Command-line driver: `boxqd run` and `boxqd sweep`.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "boxqd/config.hpp"
#include "boxqd/errors.hpp"
#include "boxqd/pipeline.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::vector<std::string> sets;
    std::string out;
    bool no_decoherence = false;
    bool reversal_check = false;
    std::optional<std::size_t> dump_top_k;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config_path, "key = value config file")->check(CLI::ExistingFile);
    cmd->add_option("--set", f.sets, "override one field, KEY=VALUE (repeatable)");
    cmd->add_option("--out", f.out, "output directory");
    cmd->add_flag("--no-decoherence", f.no_decoherence, "skip the decoherence factor (rank-1 baseline)");
    cmd->add_flag("--reversal-check", f.reversal_check, "record the time-reversal fidelity");
    cmd->add_option("--dump-top-k", f.dump_top_k, "number of leading eigenvectors to write");
}

boxqd::SimConfig resolve(const CommonFlags& f) {
    std::vector<std::string> overrides = f.sets;
    if (!f.out.empty()) overrides.push_back("output_dir=" + f.out);
    if (f.no_decoherence) overrides.push_back("no_decoherence=true");
    if (f.reversal_check) overrides.push_back("reversal_check=true");
    if (f.dump_top_k) overrides.push_back("dump_top_k=" + std::to_string(*f.dump_top_k));
    std::optional<std::filesystem::path> path;
    if (!f.config_path.empty()) path = f.config_path;
    return boxqd::load_config(path, overrides);
}

void print_manifest(const boxqd::RunManifest& m, const std::filesystem::path& dir) {
    std::cout << "wrote " << m.files.size() << " files to " << dir.string() << '\n'
              << "  trace " << boxqd::format_double(m.trace) << ", purity " << boxqd::format_double(m.purity)
              << ", effective rank " << boxqd::format_double(m.effective_rank) << '\n'
              << "  nodes " << m.node_count << ", regime " << m.regime << ", weight below lambda_dB "
              << boxqd::format_double(m.weight_fraction_below) << '\n';
    if (m.reversal_fidelity) {
        std::cout << "  reversal fidelity " << boxqd::format_double(*m.reversal_fidelity) << '\n';
    }
}

int fail(const std::string& kind, const std::string& message, int code) {
    nlohmann::json j{{"error", kind}, {"message", message}};
    std::cerr << j.dump() << '\n';
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gaussian wave packet in a box: free evolution, decoherence, density-matrix eigenstates"};
    app.require_subcommand(1);

    CommonFlags run_flags;
    CLI::App* run = app.add_subcommand("run", "single pipeline run");
    add_common(run, run_flags);

    CommonFlags sweep_flags;
    std::string axis;
    std::string values;
    CLI::App* sw = app.add_subcommand("sweep", "one run per value of a numeric field");
    add_common(sw, sweep_flags);
    sw->add_option("--axis", axis, "field to vary")->required();
    sw->add_option("--values", values, "comma-separated values")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("usage", e.what(), 2);
    }

    try {
        if (*run) {
            const boxqd::SimConfig cfg = resolve(run_flags);
            print_manifest(boxqd::run_pipeline(cfg), cfg.output_dir);
            return 0;
        }
        const boxqd::SimConfig cfg = resolve(sweep_flags);
        const auto items = boxqd::sweep(cfg, axis, boxqd::parse_real_list("values", values));
        int failed = 0;
        for (const auto& it : items) {
            if (it.manifest) {
                std::cout << axis << "=" << boxqd::format_double(it.value) << ": effective rank "
                          << boxqd::format_double(it.manifest->effective_rank) << ", weight below lambda_dB "
                          << boxqd::format_double(it.manifest->weight_fraction_below) << " ("
                          << it.manifest->regime << ")\n";
            } else {
                ++failed;
                std::cout << axis << "=" << boxqd::format_double(it.value) << ": failed: " << it.error << '\n';
            }
        }
        if (failed > 0) return fail("sweep", std::to_string(failed) + " sweep item(s) failed", 1);
        return 0;
    } catch (const boxqd::Error& e) {
        return fail(e.kind(), e.what(), 1);
    } catch (const std::exception& e) {
        return fail("internal", e.what(), 1);
    }
}
