// Experiment configuration: strict key = value text with [sections], every
// key known, defaults applied and echoed back via canonical_config.

#pragma once

#include <optional>
#include <string>

#include "floq/protocols.hpp"

namespace floq {

inline constexpr const char* kToolVersion = "0.1.0";

enum class ExperimentKind { RabiSweep, Walk, Reverse, Otoc, Ssh, Velocity, LongOtoc };

std::string to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from(const std::string& name);

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::Walk;

    // [device]
    std::string device_preset = "paper-10q";  // or "uniform"
    int device_n = 10;
    double device_g = 4.0;
    int levels = 2;

    // [drive]
    double eps = 0.0;
    double eps_a = 213.6;
    double eps_b = 400.0;
    double nu = 120.0;
    std::string pattern = "staggered-odd";  // none | staggered-odd | sites
    std::vector<int> drive_sites;           // 1-based, for pattern = sites

    // [experiment]
    double t_max = 250.0;
    double half_time = 125.0;
    std::string initial;        // e.g. "1000000000"; default per experiment
    char butterfly = 'z';
    double threshold = 0.5;
    double eps_min = 0.0, eps_max = 480.0;
    int eps_points = 41;
    std::string velocity_input;          // CSV path for the velocity command
    std::string velocity_mode = "walk";  // walk | otoc
    int site_lo = 2, site_hi = 6;        // 1-based fit window for walk fronts

    // [model]
    bool lab_frame = false;
    bool nnn = false;
    bool zz = false;
    double zz_strength = 0.065;
    bool exact_reverse = false;

    // [integrator]
    std::optional<double> dt;
    std::optional<double> sample_dt;

    // [sampling]
    long shots = 0;  // 0: exact expectation values
    std::uint64_t seed = 1;
    bool confusion = false;

    // [output]
    std::string out_dir = ".";

    DeviceSpec device() const;
    DrivePattern drive() const;
    ModelOptions model_options() const;
    void validate() const;
};

// Strict parse; throws std::invalid_argument naming the offending key and
// line on any unknown key, bad type, or malformed line.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

// Canonical re-serialization with all defaults resolved; embedded in every
// output file for provenance.
std::string canonical_config(const ExperimentConfig& cfg);

// Runs the configured experiment, writing CSV/JSON into cfg.out_dir.
// Returns the process exit status (nonzero on flagged invariant violations).
int run_experiment(const ExperimentConfig& cfg);

}  // namespace floq
