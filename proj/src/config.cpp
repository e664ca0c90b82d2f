#include "boxqd/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "boxqd/errors.hpp"

namespace boxqd {
namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view text) {
    double v = 0.0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end || text.empty()) {
        throw ConfigError(std::string(key), "expected a real number, got '" + std::string(text) + "'");
    }
    return v;
}

bool parse_bool(std::string_view key, std::string_view text) {
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw ConfigError(std::string(key), "expected true or false, got '" + std::string(text) + "'");
}

using Setter = std::function<void(SimConfig&, std::string_view, std::string_view)>;

struct Field {
    std::string key;
    Setter set;
    std::function<std::string(const SimConfig&)> get;
    bool sweepable;
};

Field real_field(std::string key, double SimConfig::*member) {
    return {std::move(key),
            [member](SimConfig& c, std::string_view k, std::string_view v) { c.*member = parse_double(k, v); },
            [member](const SimConfig& c) { return format_double(c.*member); }, true};
}

Field count_field(std::string key, std::size_t SimConfig::*member, bool sweepable) {
    return {std::move(key),
            [member](SimConfig& c, std::string_view k, std::string_view v) {
                // Sweeps pass integers through their real-valued list.
                const double x = parse_double(k, v);
                if (!(x >= 0.0) || x != std::floor(x) || x > 1e9) {
                    throw ConfigError(std::string(k), "expected a non-negative integer, got '" + std::string(v) + "'");
                }
                c.*member = static_cast<std::size_t>(x);
            },
            [member](const SimConfig& c) { return std::to_string(c.*member); }, sweepable};
}

Field bool_field(std::string key, bool SimConfig::*member) {
    return {std::move(key),
            [member](SimConfig& c, std::string_view k, std::string_view v) { c.*member = parse_bool(k, v); },
            [member](const SimConfig& c) { return std::string(c.*member ? "true" : "false"); }, false};
}

const std::vector<Field>& fields() {
    static const std::vector<Field> table = {
        real_field("L", &SimConfig::L),
        real_field("hbar", &SimConfig::hbar),
        real_field("m", &SimConfig::m),
        real_field("p0", &SimConfig::p0),
        real_field("q0", &SimConfig::q0),
        real_field("sigma", &SimConfig::sigma),
        real_field("t", &SimConfig::t),
        real_field("d", &SimConfig::d),
        count_field("n_points", &SimConfig::n_points, true),
        real_field("rel_threshold", &SimConfig::rel_threshold),
        real_field("weight_cutoff", &SimConfig::weight_cutoff),
        {"output_dir",
         [](SimConfig& c, std::string_view, std::string_view v) { c.output_dir = std::string(v); },
         [](const SimConfig& c) { return c.output_dir.string(); }, false},
        count_field("dump_top_k", &SimConfig::dump_top_k, false),
        bool_field("no_decoherence", &SimConfig::no_decoherence),
        bool_field("reversal_check", &SimConfig::reversal_check),
    };
    return table;
}

const Field* find_field(std::string_view key) {
    const auto& f = fields();
    auto it = std::find_if(f.begin(), f.end(), [&](const Field& x) { return x.key == key; });
    return it == f.end() ? nullptr : &*it;
}

}  // namespace

void SimConfig::validate() const {
    auto require = [](bool ok, const char* field, const std::string& what) {
        if (!ok) throw ConfigError(field, what);
    };
    auto positive = [&](double v, const char* field) {
        require(std::isfinite(v) && v > 0.0, field, "must be positive and finite");
    };
    positive(L, "L");
    positive(hbar, "hbar");
    positive(m, "m");
    positive(p0, "p0");
    positive(sigma, "sigma");
    positive(d, "d");
    require(std::isfinite(q0) && q0 > 0.0 && q0 < L, "q0", "must lie strictly inside (0, L)");
    require(std::isfinite(t), "t", "must be finite");
    require(n_points >= kMinGridPoints, "n_points", "must be >= " + std::to_string(kMinGridPoints));
    require(n_points <= kMaxGridPoints, "n_points",
            "must be <= " + std::to_string(kMaxGridPoints) + " (dense kernel needs 16*N^2 bytes; N=" +
                std::to_string(n_points) + " would need " +
                std::to_string(16.0 * static_cast<double>(n_points) * static_cast<double>(n_points) / 1e6) +
                " MB per matrix)");
    require(rel_threshold > 0.0 && rel_threshold < 1.0, "rel_threshold", "must lie in (0, 1)");
    require(weight_cutoff > 0.0 && weight_cutoff <= 1.0, "weight_cutoff", "must lie in (0, 1]");
    require(dump_top_k <= n_points, "dump_top_k", "must not exceed n_points");
    require(!output_dir.empty(), "output_dir", "must not be empty");
}

void set_field(SimConfig& cfg, std::string_view key, std::string_view value) {
    const Field* f = find_field(key);
    if (f == nullptr) throw ConfigError(std::string(key), "unknown key");
    f->set(cfg, key, value);
}

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const Field& f : fields()) k.push_back(f.key);
        return k;
    }();
    return keys;
}

bool is_sweepable(std::string_view key) {
    const Field* f = find_field(key);
    return f != nullptr && f->sweepable;
}

std::vector<std::pair<std::string, std::string>> to_key_values(const SimConfig& cfg) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const Field& f : fields()) out.emplace_back(f.key, f.get(cfg));
    return out;
}

void apply_config_text(SimConfig& cfg, std::string_view text, const std::string& origin) {
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ParseError(origin, line_no, "expected 'key = value'");
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError(origin, line_no, "missing key");
        try {
            set_field(cfg, key, value);
        } catch (const ConfigError& e) {
            throw ParseError(origin, line_no, e.what());
        }
    }
}

SimConfig load_config(const std::optional<std::filesystem::path>& path, const std::vector<std::string>& overrides) {
    SimConfig cfg;
    if (path) {
        std::ifstream in(*path);
        if (!in) throw IoError("cannot open config file " + path->string());
        std::ostringstream buf;
        buf << in.rdbuf();
        apply_config_text(cfg, buf.str(), path->string());
    }
    for (const std::string& ov : overrides) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos) throw ConfigError("", "override '" + ov + "' is not KEY=VALUE");
        set_field(cfg, trim(std::string_view(ov).substr(0, eq)), trim(std::string_view(ov).substr(eq + 1)));
    }
    cfg.validate();
    return cfg;
}

std::vector<double> parse_real_list(std::string_view field, std::string_view text) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = text.find(',', pos);
        out.push_back(parse_double(field, trim(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                                                                : comma - pos))));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string format_csv_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, ptr);
}

}  // namespace boxqd
