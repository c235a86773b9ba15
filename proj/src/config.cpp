#include "floq/config.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace floq {

std::string to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::RabiSweep: return "rabi-sweep";
        case ExperimentKind::Walk: return "walk";
        case ExperimentKind::Reverse: return "reverse";
        case ExperimentKind::Otoc: return "otoc";
        case ExperimentKind::Ssh: return "ssh";
        case ExperimentKind::Velocity: return "velocity";
        case ExperimentKind::LongOtoc: return "long-otoc";
    }
    return "walk";
}

ExperimentKind experiment_kind_from(const std::string& name) {
    static const std::map<std::string, ExperimentKind> kinds = {
        {"rabi-sweep", ExperimentKind::RabiSweep}, {"walk", ExperimentKind::Walk},
        {"reverse", ExperimentKind::Reverse},      {"otoc", ExperimentKind::Otoc},
        {"ssh", ExperimentKind::Ssh},              {"velocity", ExperimentKind::Velocity},
        {"long-otoc", ExperimentKind::LongOtoc}};
    auto it = kinds.find(name);
    if (it == kinds.end())
        throw std::invalid_argument("unknown experiment kind '" + name + "'");
    return it->second;
}

DeviceSpec ExperimentConfig::device() const {
    DeviceSpec dev;
    if (device_preset == "paper-10q")
        dev = DeviceSpec::paper_10q(levels);
    else if (device_preset == "uniform")
        dev = DeviceSpec::uniform(device_n, device_g, levels);
    else
        throw std::invalid_argument("device preset must be paper-10q or uniform");
    return dev;
}

DrivePattern ExperimentConfig::drive() const {
    const int n = device().n_sites;
    if (pattern == "none") return DrivePattern::none(n, nu);
    if (pattern == "staggered-odd") return DrivePattern::staggered_odd(n, eps, nu);
    if (pattern == "sites") return DrivePattern::on_sites(n, drive_sites, eps, nu);
    throw std::invalid_argument("drive pattern must be none, staggered-odd, or sites");
}

ModelOptions ExperimentConfig::model_options() const {
    ModelOptions mo;
    mo.levels = levels;
    mo.lab_frame = lab_frame;
    mo.include_nnn = nnn;
    mo.include_zz = zz;
    mo.zz_strength_mhz = zz_strength;
    mo.nu_mhz = nu;
    mo.exact_reverse = exact_reverse;
    mo.dt_ns = dt;
    mo.sample_dt_ns = sample_dt;
    return mo;
}

void ExperimentConfig::validate() const {
    if (levels != 2 && levels != 3)
        throw std::invalid_argument("levels must be 2 or 3 (got " + std::to_string(levels) + ")");
    if (!(nu > 0.0)) throw std::invalid_argument("nu must be > 0");
    if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be > 0");
    if (butterfly != 'z' && butterfly != 'x')
        throw std::invalid_argument("butterfly must be z or x");
    if (shots < 0) throw std::invalid_argument("shots must be >= 0");
    if (dt && !(*dt > 0.0)) throw std::invalid_argument("dt must be > 0");
    if (eps < 0.0) throw std::invalid_argument("eps must be >= 0 (phases come from the pattern)");
    if (velocity_mode != "walk" && velocity_mode != "otoc")
        throw std::invalid_argument("velocity mode must be walk or otoc");
    device().validate();
    drive().validate();
}

namespace {

struct KeyRef {
    const char* section;
    const char* key;
};

[[noreturn]] void fail(int line, const std::string& msg) {
    throw std::invalid_argument("config line " + std::to_string(line) + ": " + msg);
}

double to_double(const std::string& v, int line, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return x;
    } catch (...) {
        fail(line, "value for '" + key + "' is not a number: '" + v + "'");
    }
}

long to_long(const std::string& v, int line, const std::string& key) {
    try {
        std::size_t pos = 0;
        const long x = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return x;
    } catch (...) {
        fail(line, "value for '" + key + "' is not an integer: '" + v + "'");
    }
}

bool to_bool(const std::string& v, int line, const std::string& key) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    fail(line, "value for '" + key + "' is not a boolean: '" + v + "'");
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string raw;
    std::string section = "experiment";
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = trim(raw);
        if (s.empty() || s[0] == '#' || s[0] == ';') continue;
        if (s.front() == '[') {
            if (s.back() != ']') fail(line, "unterminated section header");
            section = trim(s.substr(1, s.size() - 2));
            static const char* known_sections[] = {"experiment", "device",     "drive",
                                                   "model",      "integrator", "sampling",
                                                   "output"};
            if (std::find_if(std::begin(known_sections), std::end(known_sections),
                             [&](const char* k) { return section == k; }) ==
                std::end(known_sections))
                fail(line, "unknown section [" + section + "]");
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) fail(line, "expected key = value");
        const std::string key = trim(s.substr(0, eq));
        const std::string val = trim(s.substr(eq + 1));
        if (key.empty()) fail(line, "empty key");

        auto is = [&](const char* sec, const char* k) { return section == sec && key == k; };
        if (is("experiment", "kind")) {
            try {
                cfg.kind = experiment_kind_from(val);
            } catch (const std::invalid_argument& e) {
                fail(line, e.what());
            }
        } else if (is("experiment", "t_max")) {
            cfg.t_max = to_double(val, line, key);
        } else if (is("experiment", "half_time")) {
            cfg.half_time = to_double(val, line, key);
        } else if (is("experiment", "initial")) {
            cfg.initial = val;
        } else if (is("experiment", "butterfly")) {
            if (val != "z" && val != "x") fail(line, "butterfly must be z or x");
            cfg.butterfly = val[0];
        } else if (is("experiment", "threshold")) {
            cfg.threshold = to_double(val, line, key);
        } else if (is("experiment", "eps_min")) {
            cfg.eps_min = to_double(val, line, key);
        } else if (is("experiment", "eps_max")) {
            cfg.eps_max = to_double(val, line, key);
        } else if (is("experiment", "eps_points")) {
            cfg.eps_points = static_cast<int>(to_long(val, line, key));
        } else if (is("experiment", "input")) {
            cfg.velocity_input = val;
        } else if (is("experiment", "mode")) {
            cfg.velocity_mode = val;
        } else if (is("experiment", "site_lo")) {
            cfg.site_lo = static_cast<int>(to_long(val, line, key));
        } else if (is("experiment", "site_hi")) {
            cfg.site_hi = static_cast<int>(to_long(val, line, key));
        } else if (is("device", "preset")) {
            if (val != "paper-10q" && val != "uniform")
                fail(line, "preset must be paper-10q or uniform");
            cfg.device_preset = val;
        } else if (is("device", "n")) {
            cfg.device_n = static_cast<int>(to_long(val, line, key));
        } else if (is("device", "g")) {
            cfg.device_g = to_double(val, line, key);
        } else if (is("device", "levels")) {
            cfg.levels = static_cast<int>(to_long(val, line, key));
        } else if (is("drive", "eps")) {
            cfg.eps = to_double(val, line, key);
        } else if (is("drive", "eps_a")) {
            cfg.eps_a = to_double(val, line, key);
        } else if (is("drive", "eps_b")) {
            cfg.eps_b = to_double(val, line, key);
        } else if (is("drive", "nu")) {
            cfg.nu = to_double(val, line, key);
        } else if (is("drive", "pattern")) {
            cfg.pattern = val;
        } else if (is("drive", "sites")) {
            cfg.drive_sites.clear();
            std::istringstream ss(val);
            std::string tok;
            while (std::getline(ss, tok, ','))
                cfg.drive_sites.push_back(static_cast<int>(to_long(trim(tok), line, key)));
        } else if (is("model", "frame")) {
            if (val != "lab" && val != "effective") fail(line, "frame must be lab or effective");
            cfg.lab_frame = (val == "lab");
        } else if (is("model", "nnn")) {
            cfg.nnn = to_bool(val, line, key);
        } else if (is("model", "zz")) {
            cfg.zz = to_bool(val, line, key);
        } else if (is("model", "zz_strength")) {
            cfg.zz_strength = to_double(val, line, key);
        } else if (is("model", "exact_reverse")) {
            cfg.exact_reverse = to_bool(val, line, key);
        } else if (is("integrator", "dt")) {
            cfg.dt = to_double(val, line, key);
        } else if (is("integrator", "sample_dt")) {
            cfg.sample_dt = to_double(val, line, key);
        } else if (is("sampling", "shots")) {
            cfg.shots = to_long(val, line, key);
        } else if (is("sampling", "seed")) {
            cfg.seed = static_cast<std::uint64_t>(to_long(val, line, key));
        } else if (is("sampling", "confusion")) {
            cfg.confusion = to_bool(val, line, key);
        } else if (is("output", "dir")) {
            cfg.out_dir = val;
        } else {
            fail(line, "unknown key '" + key + "' in section [" + section + "]");
        }
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string canonical_config(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out.precision(12);
    out << "[experiment]\n";
    out << "kind = " << to_string(cfg.kind) << "\n";
    out << "t_max = " << cfg.t_max << "\n";
    out << "half_time = " << cfg.half_time << "\n";
    if (!cfg.initial.empty()) out << "initial = " << cfg.initial << "\n";
    out << "butterfly = " << cfg.butterfly << "\n";
    out << "threshold = " << cfg.threshold << "\n";
    if (cfg.kind == ExperimentKind::RabiSweep) {
        out << "eps_min = " << cfg.eps_min << "\n";
        out << "eps_max = " << cfg.eps_max << "\n";
        out << "eps_points = " << cfg.eps_points << "\n";
    }
    if (cfg.kind == ExperimentKind::Velocity) {
        out << "input = " << cfg.velocity_input << "\n";
        out << "mode = " << cfg.velocity_mode << "\n";
    }
    out << "site_lo = " << cfg.site_lo << "\n";
    out << "site_hi = " << cfg.site_hi << "\n";
    out << "[device]\n";
    out << "preset = " << cfg.device_preset << "\n";
    if (cfg.device_preset == "uniform") {
        out << "n = " << cfg.device_n << "\n";
        out << "g = " << cfg.device_g << "\n";
    }
    out << "levels = " << cfg.levels << "\n";
    out << "[drive]\n";
    out << "eps = " << cfg.eps << "\n";
    out << "eps_a = " << cfg.eps_a << "\n";
    out << "eps_b = " << cfg.eps_b << "\n";
    out << "nu = " << cfg.nu << "\n";
    out << "pattern = " << cfg.pattern << "\n";
    if (!cfg.drive_sites.empty()) {
        out << "sites = ";
        for (std::size_t i = 0; i < cfg.drive_sites.size(); ++i)
            out << (i ? "," : "") << cfg.drive_sites[i];
        out << "\n";
    }
    out << "[model]\n";
    out << "frame = " << (cfg.lab_frame ? "lab" : "effective") << "\n";
    out << "nnn = " << (cfg.nnn ? "true" : "false") << "\n";
    out << "zz = " << (cfg.zz ? "true" : "false") << "\n";
    out << "zz_strength = " << cfg.zz_strength << "\n";
    out << "exact_reverse = " << (cfg.exact_reverse ? "true" : "false") << "\n";
    out << "[integrator]\n";
    if (cfg.dt) out << "dt = " << *cfg.dt << "\n";
    if (cfg.sample_dt) out << "sample_dt = " << *cfg.sample_dt << "\n";
    out << "[sampling]\n";
    out << "shots = " << cfg.shots << "\n";
    out << "seed = " << cfg.seed << "\n";
    out << "confusion = " << (cfg.confusion ? "true" : "false") << "\n";
    out << "[output]\n";
    out << "dir = " << cfg.out_dir << "\n";
    return out.str();
}

}  // namespace floq
