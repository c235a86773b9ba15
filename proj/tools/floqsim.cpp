#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "floq/config.hpp"

namespace {

// Shared flags; command-line values override the config file.
struct CommonFlags {
    std::string config_path;
    std::string device;
    double eps = -1.0, eps_a = -1.0, eps_b = -1.0, nu = -1.0;
    int levels = 0;
    bool nnn = false;
    std::string zz;  // empty: off; "on" or a strength in MHz
    double dt = -1.0, t_max = -1.0;
    long shots = -1;
    long seed = -1;
    bool confusion = false;
    std::string out_dir;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config_path, "config file (key = value with [sections])");
    cmd->add_option("--device", f.device, "paper-10q or uniform:<n>:<g>");
    cmd->add_option("--eps", f.eps, "drive amplitude eps/2pi in MHz");
    cmd->add_option("--eps-a", f.eps_a, "forward-leg drive amplitude in MHz");
    cmd->add_option("--eps-b", f.eps_b, "backward-leg drive amplitude in MHz");
    cmd->add_option("--nu", f.nu, "drive frequency nu/2pi in MHz (default 120)");
    cmd->add_option("--levels", f.levels, "levels per site, 2 or 3")
        ->check(CLI::IsMember({2, 3}));
    cmd->add_flag("--nnn", f.nnn, "include next-nearest-neighbor couplings");
    cmd->add_option("--zz", f.zz, "include the ZZ correction; optional strength in MHz")
        ->expected(0, 1)
        ->default_str("");
    cmd->add_option("--dt", f.dt, "integrator step in ns");
    cmd->add_option("--t-max", f.t_max, "evolution span in ns");
    cmd->add_option("--shots", f.shots, "readout shots per time point (0: exact)");
    cmd->add_option("--seed", f.seed, "sampling seed");
    cmd->add_flag("--confusion", f.confusion, "apply the measured readout confusion model");
    cmd->add_option("--out", f.out_dir, "output directory");
}

floq::ExperimentConfig resolve(const CommonFlags& f, floq::ExperimentKind kind,
                               const CLI::App* cmd) {
    floq::ExperimentConfig cfg;
    if (!f.config_path.empty()) cfg = floq::parse_config_file(f.config_path);
    cfg.kind = kind;
    if (!f.device.empty()) {
        if (f.device == "paper-10q") {
            cfg.device_preset = "paper-10q";
        } else if (f.device.rfind("uniform:", 0) == 0) {
            const auto rest = f.device.substr(8);
            const auto colon = rest.find(':');
            if (colon == std::string::npos)
                throw CLI::ValidationError("--device", "expected uniform:<n>:<g>");
            cfg.device_preset = "uniform";
            cfg.device_n = std::stoi(rest.substr(0, colon));
            cfg.device_g = std::stod(rest.substr(colon + 1));
        } else {
            throw CLI::ValidationError("--device", "expected paper-10q or uniform:<n>:<g>");
        }
    }
    if (f.eps >= 0.0) cfg.eps = f.eps;
    if (f.eps_a >= 0.0) cfg.eps_a = f.eps_a;
    if (f.eps_b >= 0.0) cfg.eps_b = f.eps_b;
    if (f.nu > 0.0) cfg.nu = f.nu;
    if (f.levels != 0) {
        cfg.levels = f.levels;
        if (f.levels == 3) cfg.lab_frame = true;  // three-level runs are lab-frame only
    }
    if (f.nnn) cfg.nnn = true;
    if (cmd->count("--zz") > 0) {
        cfg.zz = true;
        if (!f.zz.empty() && f.zz != "on") cfg.zz_strength = std::stod(f.zz);
    }
    if (f.dt > 0.0) cfg.dt = f.dt;
    if (f.t_max > 0.0) cfg.t_max = f.t_max;
    if (f.shots >= 0) cfg.shots = f.shots;
    if (f.seed >= 0) cfg.seed = static_cast<std::uint64_t>(f.seed);
    if (f.confusion) cfg.confusion = true;
    if (!f.out_dir.empty()) cfg.out_dir = f.out_dir;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"floqsim: driven qubit-chain simulator and analysis toolkit"};
    app.require_subcommand(1);

    struct SubSpec {
        const char* name;
        const char* help;
        floq::ExperimentKind kind;
    };
    const SubSpec subs[] = {
        {"rabi-sweep", "two-site coupling calibration over a drive-amplitude sweep",
         floq::ExperimentKind::RabiSweep},
        {"walk", "single/multi excitation quantum walk", floq::ExperimentKind::Walk},
        {"reverse", "forward/backward evolution with a sign-flipped coupling",
         floq::ExperimentKind::Reverse},
        {"otoc", "out-of-time-order correlator grid", floq::ExperimentKind::Otoc},
        {"ssh", "alternating-bond quench dynamics", floq::ExperimentKind::Ssh},
        {"velocity", "front-velocity fit of an existing CSV", floq::ExperimentKind::Velocity},
        {"long-otoc", "long-time XX correlator run", floq::ExperimentKind::LongOtoc},
    };

    struct PerSub {
        CommonFlags flags;
        std::string butterfly = "z";
        std::string input;
        std::string mode = "walk";
        std::string initial;
        std::string pattern;
        std::string sites;
        double half_time = -1.0;
        double threshold = -1.0;
        CLI::App* cmd = nullptr;
    };
    std::vector<PerSub> per(std::size(subs));

    for (std::size_t i = 0; i < std::size(subs); ++i) {
        CLI::App* cmd = app.add_subcommand(subs[i].name, subs[i].help);
        add_common(cmd, per[i].flags);
        per[i].cmd = cmd;
        const auto kind = subs[i].kind;
        if (kind == floq::ExperimentKind::Otoc || kind == floq::ExperimentKind::LongOtoc)
            cmd->add_option("--butterfly", per[i].butterfly, "z or x")
                ->check(CLI::IsMember({"z", "x"}));
        if (kind == floq::ExperimentKind::Velocity) {
            cmd->add_option("--input", per[i].input, "CSV produced by walk/otoc")->required();
            cmd->add_option("--mode", per[i].mode, "walk or otoc")
                ->check(CLI::IsMember({"walk", "otoc"}));
        }
        if (kind == floq::ExperimentKind::Walk)
            cmd->add_option("--initial", per[i].initial, "occupation string, e.g. 1000000000");
        if (kind == floq::ExperimentKind::Walk || kind == floq::ExperimentKind::Ssh) {
            cmd->add_option("--pattern", per[i].pattern, "none, staggered-odd, or sites");
            cmd->add_option("--sites", per[i].sites, "comma-separated 1-based driven sites");
        }
        if (kind == floq::ExperimentKind::Reverse)
            cmd->add_option("--half-time", per[i].half_time, "forward span in ns");
        if (kind == floq::ExperimentKind::Otoc || kind == floq::ExperimentKind::LongOtoc ||
            kind == floq::ExperimentKind::Velocity)
            cmd->add_option("--threshold", per[i].threshold, "front threshold on C (default 0.5)");
    }

    CLI11_PARSE(app, argc, argv);

    try {
        for (std::size_t i = 0; i < std::size(subs); ++i) {
            if (!per[i].cmd->parsed()) continue;
            floq::ExperimentConfig cfg = resolve(per[i].flags, subs[i].kind, per[i].cmd);
            auto counted = [&](const char* name) {
                const CLI::Option* o = per[i].cmd->get_option_no_throw(name);
                return o != nullptr && o->count() > 0;
            };
            if (counted("--butterfly")) cfg.butterfly = per[i].butterfly[0];
            if (!per[i].input.empty()) cfg.velocity_input = per[i].input;
            if (counted("--mode")) cfg.velocity_mode = per[i].mode;
            if (!per[i].initial.empty()) cfg.initial = per[i].initial;
            if (!per[i].pattern.empty()) cfg.pattern = per[i].pattern;
            if (!per[i].sites.empty()) {
                cfg.drive_sites.clear();
                std::istringstream ss(per[i].sites);
                std::string tok;
                while (std::getline(ss, tok, ','))
                    cfg.drive_sites.push_back(std::stoi(tok));
            }
            if (per[i].half_time > 0.0) cfg.half_time = per[i].half_time;
            if (per[i].threshold > 0.0) cfg.threshold = per[i].threshold;
            return floq::run_experiment(cfg);
        }
    } catch (const std::exception& e) {
        std::cerr << "floqsim: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
