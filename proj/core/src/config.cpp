#include "xdiff/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "xdiff/csv.hpp"

namespace xdiff {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double to_double(const std::string& v, const std::string& key) {
    double out{};
    const char* begin = v.data();
    const char* end = v.data() + v.size();
    const auto res = std::from_chars(begin, end, out);
    if (res.ec != std::errc{} || res.ptr != end) {
        throw BadConfig("key '" + key + "': cannot parse number from '" + v + "'");
    }
    return out;
}

int to_int(const std::string& v, const std::string& key) {
    int out{};
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) {
        throw BadConfig("key '" + key + "': cannot parse integer from '" + v + "'");
    }
    return out;
}

std::uint64_t to_u64(const std::string& v, const std::string& key) {
    std::uint64_t out{};
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) {
        throw BadConfig("key '" + key + "': cannot parse unsigned integer from '" + v + "'");
    }
    return out;
}

std::string unquote(const std::string& v) {
    if (v.size() >= 2 && ((v.front() == '"' && v.back() == '"') ||
                          (v.front() == '\'' && v.back() == '\''))) {
        return v.substr(1, v.size() - 2);
    }
    return v;
}

std::vector<double> to_list(const std::string& raw, const std::string& key) {
    std::string v = trim(raw);
    if (!v.empty() && v.front() == '[') {
        if (v.back() != ']') throw BadConfig("key '" + key + "': unterminated list");
        v = v.substr(1, v.size() - 2);
    }
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(to_double(item, key));
    }
    return out;
}

void apply_preset(ExperimentConfig& cfg, const std::string& preset) {
    if (preset == "muskat") {
        cfg.a = 1.0;
        cfg.b = 1.0;
        cfg.c = 1.0;
        cfg.d = 2.0;
    } else if (preset == "near_degenerate") {
        cfg.a = 1.0;
        cfg.b = 1.0;
        cfg.c = 1.0;
        cfg.d = 1.01; // ad - bc = 0.01
    } else if (preset == "pme") {
        cfg.a = 1.0;
        cfg.b = 1.0;
        cfg.c = 1.0;
        cfg.d = 2.0;
        cfg.ic = "barenblatt"; // g identically zero
        cfg.kind = "pme_validation";
    } else if (!preset.empty()) {
        throw BadConfig("unknown preset '" + preset + "'");
    }
    cfg.preset = preset;
}

void apply_key(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
    const std::string v = unquote(value);
    if (key == "kind") {
        cfg.kind = (v == "pme") ? "pme_validation" : v;
    } else if (key == "preset") {
        // handled in a first pass
    } else if (key == "a") {
        cfg.a = to_double(v, key);
    } else if (key == "b") {
        cfg.b = to_double(v, key);
    } else if (key == "c") {
        cfg.c = to_double(v, key);
    } else if (key == "d") {
        cfg.d = to_double(v, key);
    } else if (key == "x_lo") {
        cfg.x_lo = to_double(v, key);
    } else if (key == "x_hi") {
        cfg.x_hi = to_double(v, key);
    } else if (key == "n_cells") {
        cfg.n_cells = to_int(v, key);
    } else if (key == "dt") {
        cfg.dt = to_double(v, key);
    } else if (key == "t_end") {
        cfg.t_end = to_double(v, key);
    } else if (key == "output_stride") {
        cfg.output_stride = to_double(v, key);
    } else if (key == "ic") {
        cfg.ic = v;
    } else if (key == "ic_f") {
        cfg.ic_f = to_list(value, key);
    } else if (key == "ic_g") {
        cfg.ic_g = to_list(value, key);
    } else if (key == "ic_const_f") {
        cfg.ic_const_f = to_double(v, key);
    } else if (key == "ic_const_g") {
        cfg.ic_const_g = to_double(v, key);
    } else if (key == "barenblatt_t0") {
        cfg.barenblatt_t0 = to_double(v, key);
    } else if (key == "barenblatt_mass") {
        cfg.barenblatt_mass = to_double(v, key);
    } else if (key == "sigma_min") {
        cfg.sigma_min = to_double(v, key);
    } else if (key == "eta_list") {
        cfg.eta_list = to_list(value, key);
    } else if (key == "seed") {
        cfg.seed = to_u64(v, key);
    } else if (key == "mobility") {
        cfg.mobility = v;
    } else if (key == "newton_tol") {
        cfg.newton_tol = to_double(v, key);
    } else if (key == "newton_max_iter") {
        cfg.newton_max_iter = to_int(v, key);
    } else if (key == "damping") {
        cfg.damping = to_double(v, key);
    } else if (key == "levels") {
        cfg.levels = to_int(v, key);
    } else if (key == "ref_factor") {
        cfg.ref_factor = to_int(v, key);
    } else if (key == "perturb_amp") {
        cfg.perturb_amp = to_double(v, key);
    } else if (key == "out_dir") {
        cfg.out_dir = v;
    } else {
        throw BadConfig("unknown key '" + key + "'");
    }
}

} // namespace

ExperimentConfig parse_config_text(const std::string& text) {
    std::vector<std::pair<std::string, std::string>> entries;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw BadConfig("line " + std::to_string(lineno) + ": expected key = value");
        }
        entries.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }

    ExperimentConfig cfg;
    for (const auto& [key, value] : entries) {
        if (key == "preset") apply_preset(cfg, unquote(value));
    }
    for (const auto& [key, value] : entries) {
        apply_key(cfg, key, value);
    }
    if (cfg.output_stride <= 0.0) cfg.output_stride = cfg.t_end / 50.0;
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw BadConfig("cannot open config file '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

namespace {

std::string list_str(const std::vector<double>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) out += ", ";
        out += format_double(v[i]);
    }
    return out + "]";
}

} // namespace

std::string emit_config(const ExperimentConfig& cfg) {
    std::ostringstream os;
    os << "kind = \"" << cfg.kind << "\"\n";
    os << "preset = \"" << cfg.preset << "\"\n";
    os << "a = " << format_double(cfg.a) << "\n";
    os << "b = " << format_double(cfg.b) << "\n";
    os << "c = " << format_double(cfg.c) << "\n";
    os << "d = " << format_double(cfg.d) << "\n";
    os << "x_lo = " << format_double(cfg.x_lo) << "\n";
    os << "x_hi = " << format_double(cfg.x_hi) << "\n";
    os << "n_cells = " << cfg.n_cells << "\n";
    os << "dt = " << format_double(cfg.dt) << "\n";
    os << "t_end = " << format_double(cfg.t_end) << "\n";
    os << "output_stride = " << format_double(cfg.output_stride) << "\n";
    os << "ic = \"" << cfg.ic << "\"\n";
    if (!cfg.ic_f.empty()) os << "ic_f = " << list_str(cfg.ic_f) << "\n";
    if (!cfg.ic_g.empty()) os << "ic_g = " << list_str(cfg.ic_g) << "\n";
    os << "ic_const_f = " << format_double(cfg.ic_const_f) << "\n";
    os << "ic_const_g = " << format_double(cfg.ic_const_g) << "\n";
    os << "barenblatt_t0 = " << format_double(cfg.barenblatt_t0) << "\n";
    os << "barenblatt_mass = " << format_double(cfg.barenblatt_mass) << "\n";
    os << "sigma_min = " << format_double(cfg.sigma_min) << "\n";
    os << "eta_list = " << list_str(cfg.eta_list) << "\n";
    os << "seed = " << cfg.seed << "\n";
    os << "mobility = \"" << cfg.mobility << "\"\n";
    os << "newton_tol = " << format_double(cfg.newton_tol) << "\n";
    os << "newton_max_iter = " << cfg.newton_max_iter << "\n";
    os << "damping = " << format_double(cfg.damping) << "\n";
    os << "levels = " << cfg.levels << "\n";
    os << "ref_factor = " << cfg.ref_factor << "\n";
    os << "perturb_amp = " << format_double(cfg.perturb_amp) << "\n";
    if (!cfg.out_dir.empty()) os << "out_dir = \"" << cfg.out_dir << "\"\n";
    return os.str();
}

SolverConfig solver_config(const ExperimentConfig& cfg) {
    SolverConfig s;
    s.dt = cfg.dt;
    s.newton_tol = cfg.newton_tol;
    s.newton_max_iter = cfg.newton_max_iter;
    s.damping = cfg.damping;
    if (cfg.mobility == "arithmetic") {
        s.mobility_average = MobilityAverage::Arithmetic;
    } else if (cfg.mobility == "upwind") {
        s.mobility_average = MobilityAverage::Upwind;
    } else {
        throw BadConfig("mobility must be 'arithmetic' or 'upwind', got '" + cfg.mobility + "'");
    }
    return s;
}

} // namespace xdiff
