#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "floq/config.hpp"
#include "floq/io.hpp"
#include "floq/pipeline.hpp"
#include "floq/readout.hpp"

namespace floq {

namespace {

using nlohmann::json;

std::vector<std::string> metadata_lines(const ExperimentConfig& cfg) {
    std::vector<std::string> lines;
    lines.push_back(std::string("tool-version: ") + kToolVersion);
    std::istringstream cc(canonical_config(cfg));
    std::string line;
    lines.push_back("config:");
    while (std::getline(cc, line)) lines.push_back("  " + line);
    return lines;
}

json base_summary(const ExperimentConfig& cfg) {
    json j;
    j["schema"] = "summary-v1";
    j["tool_version"] = kToolVersion;
    j["experiment"] = to_string(cfg.kind);
    j["config"] = canonical_config(cfg);
    json integ;
    integ["method"] = "auto (commutator-free-4 driven, exponential-midpoint static)";
    integ["dt_ns"] = cfg.dt ? json(*cfg.dt) : json("auto (T/64 driven, 0.5 undriven)");
    j["integrator"] = integ;
    return j;
}

void write_summary(const ExperimentConfig& cfg, json j, double runtime_s) {
    // runtime_seconds is the one non-deterministic field; CSV outputs stay
    // byte-identical across runs.
    j["runtime_seconds"] = runtime_s;
    const auto path = std::filesystem::path(cfg.out_dir) / (to_string(cfg.kind) + "_summary.json");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << j.dump(2) << "\n";
}

std::string csv_path(const ExperimentConfig& cfg, const std::string& stem) {
    return (std::filesystem::path(cfg.out_dir) / (stem + ".csv")).string();
}

json fit_json(const FitResult& fit) {
    json j;
    j["params"] = std::vector<double>(fit.params.data(), fit.params.data() + fit.params.size());
    j["rss"] = fit.rss;
    j["converged"] = fit.converged;
    std::vector<double> cov;
    for (Eigen::Index r = 0; r < fit.covariance.rows(); ++r)
        for (Eigen::Index c = 0; c < fit.covariance.cols(); ++c)
            cov.push_back(fit.covariance(r, c));
    j["covariance_row_major"] = cov;
    return j;
}

SiteTimeSeries maybe_sampled(const SiteTimeSeries& exact, const std::vector<StateVector>& states,
                             const ExperimentConfig& cfg) {
    if (cfg.shots <= 0 || states.empty()) return exact;
    const int n = states.front().basis->n_sites();
    const ConfusionModel conf =
        cfg.confusion ? (n == 10 ? ConfusionModel::paper_10q() : ConfusionModel::ideal(n))
                      : ConfusionModel::ideal(n);
    SiteTimeSeries out = exact;
    for (std::size_t i = 0; i < states.size(); ++i) {
        const ShotCounts shots =
            sample_shots(states[i], conf, cfg.shots, cfg.seed + static_cast<std::uint64_t>(i));
        const CalibratedMarginals cal = calibrate_counts(shots, conf);
        out.values.row(static_cast<Eigen::Index>(i)) = cal.p1.transpose();
    }
    return out;
}

int run_rabi_sweep_cmd(const ExperimentConfig& cfg, json& j) {
    std::vector<double> eps;
    for (int i = 0; i < cfg.eps_points; ++i)
        eps.push_back(cfg.eps_min +
                      (cfg.eps_max - cfg.eps_min) * i / std::max(1, cfg.eps_points - 1));
    const CouplingCurve curve = rabi_coupling_sweep(cfg.device(), eps, cfg.nu);

    SiteTimeSeries table;  // abuse of the grid: column 1 geff, column 2 J0 reference
    table.times_ns = curve.eps_mhz;
    table.values.resize(static_cast<Eigen::Index>(eps.size()), 2);
    const double g0 = cfg.device().nn_couplings.at(0);
    for (std::size_t i = 0; i < eps.size(); ++i) {
        table.values(static_cast<Eigen::Index>(i), 0) = curve.geff_mhz[i];
        table.values(static_cast<Eigen::Index>(i), 1) = g0 * bessel_j0(eps[i] / cfg.nu);
    }
    auto meta = metadata_lines(cfg);
    meta.insert(meta.begin() + 1,
                "columns: eps_mhz as time_ns, site 1 = geff_mhz, site 2 = g*J0(eps/nu)");
    write_series_csv(csv_path(cfg, "rabi-sweep"), table, meta);

    const FitResult fit = bessel_scale_fit(curve.eps_mhz, curve.geff_mhz, cfg.nu);
    j["bessel_scale_fit"] = fit_json(fit);
    j["g_nominal_mhz"] = g0;
    double max_dev = 0.0;
    for (std::size_t i = 0; i < eps.size(); ++i)
        max_dev = std::max(max_dev,
                           std::abs(curve.geff_mhz[i] / g0 - bessel_j0(eps[i] / cfg.nu)));
    j["max_abs_deviation_from_j0"] = max_dev;
    return max_dev < 0.02 ? 0 : 3;
}

}  // namespace

int run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    std::filesystem::create_directories(cfg.out_dir);
    const auto t_start = std::chrono::steady_clock::now();
    auto runtime = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    };
    int status = 0;

    switch (cfg.kind) {
        case ExperimentKind::RabiSweep: {
            json j = base_summary(cfg);
            status = run_rabi_sweep_cmd(cfg, j);
            write_summary(cfg, j, runtime());
            break;
        }
        case ExperimentKind::Walk: {
            const DeviceSpec dev = cfg.device();
            std::vector<std::uint8_t> initial;
            if (!cfg.initial.empty()) {
                initial = occupations_from_string(cfg.initial);
            } else {
                initial.assign(static_cast<std::size_t>(dev.n_sites), 0);
                initial[0] = 1;
            }
            const WalkResult walk =
                run_quantum_walk(dev, cfg.drive(), initial, cfg.t_max, cfg.model_options());
            std::vector<StateVector> states;
            if (cfg.shots > 0)
                for (std::size_t i = 0; i < walk.trajectory.states.size(); ++i)
                    states.push_back(walk.trajectory.state_at(i));
            const SiteTimeSeries series = maybe_sampled(walk.populations, states, cfg);
            write_series_csv(csv_path(cfg, "walk"), series, metadata_lines(cfg));
            json j = base_summary(cfg);
            try {
                const FitResult fit =
                    walk_velocity(walk.populations, cfg.site_lo - 1, cfg.site_hi - 1);
                j["velocity_fit"] = fit_json(fit);
                j["velocity_sites_per_us"] = fit.params[0];
                j["velocity_stderr"] = std::sqrt(fit.covariance(0, 0));
                if (!fit.converged) status = 4;
            } catch (const std::exception& e) {
                j["velocity_error"] = e.what();
            }
            write_summary(cfg, j, runtime());
            break;
        }
        case ExperimentKind::Reverse: {
            const ReversalResult rev = run_reversed_evolution(cfg.device(), cfg.eps_a, cfg.eps_b,
                                                              cfg.half_time, cfg.model_options());
            write_series_csv(csv_path(cfg, "reverse"), rev.populations, metadata_lines(cfg));
            json j = base_summary(cfg);
            j["echo_fidelity"] = rev.echo_fidelity;
            j["max_level2_population"] = rev.max_level2_population;
            j["half_time_ns"] = rev.half_time_ns;
            write_summary(cfg, j, runtime());
            break;
        }
        case ExperimentKind::Otoc:
        case ExperimentKind::LongOtoc: {
            const bool long_run = cfg.kind == ExperimentKind::LongOtoc;
            const double t_max = long_run ? std::max(cfg.t_max, 2000.0) : cfg.t_max;
            const double step = long_run ? 4.0 : 2.0;
            const Butterfly b = cfg.butterfly == 'z' ? Butterfly::Z : Butterfly::X;
            const OtocGrid grid = run_otoc(cfg.device(), cfg.eps_a, cfg.eps_b, b,
                                           default_otoc_grid(t_max, step), cfg.model_options());
            auto meta = metadata_lines(cfg);
            if (grid.post_selected)
                meta.insert(meta.begin() + 1, "post-selected on the initial excitation number");
            write_series_csv(csv_path(cfg, long_run ? "long-otoc" : "otoc"), grid.to_series(),
                             meta);
            json j = base_summary(cfg);
            j["butterfly"] = std::string(1, cfg.butterfly);
            j["c_at_t0_max_error"] = (grid.values.row(0).array() - 1.0).abs().maxCoeff();
            j["invalid_rows"] =
                static_cast<long>(std::count(grid.valid.begin(), grid.valid.end(), 0));
            try {
                const FitResult fit = otoc_velocity(grid, cfg.threshold);
                j["front_speed_sites_per_us"] = fit.params[0];
                j["front_speed_stderr"] = std::sqrt(fit.covariance(0, 0));
            } catch (const std::exception& e) {
                j["front_speed_error"] = e.what();
            }
            if (std::abs(j["c_at_t0_max_error"].get<double>()) > 1e-9) status = 5;
            write_summary(cfg, j, runtime());
            break;
        }
        case ExperimentKind::Ssh: {
            DrivePattern drive = cfg.drive();
            const SshResult ssh = run_ssh_quench(cfg.device(), drive, cfg.t_max,
                                                 cfg.model_options());
            write_series_csv(csv_path(cfg, "ssh"), ssh.populations, metadata_lines(cfg));
            json j = base_summary(cfg);
            j["edge_average"] = ssh.edge_average;
            write_summary(cfg, j, runtime());
            break;
        }
        case ExperimentKind::Velocity: {
            if (cfg.velocity_input.empty())
                throw std::invalid_argument("velocity: input CSV required");
            const SiteTimeSeries series = read_series_csv(cfg.velocity_input);
            json j = base_summary(cfg);
            FitResult fit;
            if (cfg.velocity_mode == "walk") {
                fit = walk_velocity(series, cfg.site_lo - 1,
                                    std::min<int>(cfg.site_hi - 1,
                                                  static_cast<int>(series.values.cols()) - 1));
            } else {
                const FrontExtraction fronts =
                    front_times(series, FrontMode::PolynomialOtoc, cfg.threshold);
                fit = fit_velocity(fronts.points);
                fit.params[0] = std::abs(fit.params[0]);
            }
            j["velocity_sites_per_us"] = fit.params[0];
            j["velocity_stderr"] = std::sqrt(fit.covariance(0, 0));
            j["velocity_fit"] = fit_json(fit);
            if (!fit.converged) status = 4;
            std::cout << "velocity " << fit.params[0] << " +- "
                      << std::sqrt(fit.covariance(0, 0)) << " sites/us\n";
            write_summary(cfg, j, runtime());
            break;
        }
    }
    return status;
}

}  // namespace floq
