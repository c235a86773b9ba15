#include "floq/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace floq {

namespace {

// Oscillation frequency of the two-site exchange, lengthening the window
// until at least ~4 periods fit (slow points near a J0 zero).
FrequencyEstimate rabi_frequency(const DeviceSpec& device, double eps, double nu) {
    double t_max = 2000.0;
    FrequencyEstimate est;
    for (int attempt = 0; attempt < 4; ++attempt) {
        const SiteTimeSeries series = run_rabi_pair(device, eps, t_max, nu);
        est = dominant_frequency(series.times_ns, series.site_column(0));
        if (est.confident && est.frequency_mhz * 1e-3 * t_max >= 4.0) break;
        const double wanted =
            est.frequency_mhz > 1e-3 ? 4000.0 / (est.frequency_mhz * 1e-3) : 4.0 * t_max;
        const double next = std::min(std::max(wanted, 2.0 * t_max), 64000.0);
        if (next <= t_max) break;
        t_max = next;
    }
    return est;
}

}  // namespace

CouplingCurve rabi_coupling_sweep(const DeviceSpec& device, const std::vector<double>& eps_list,
                                  double nu_mhz) {
    CouplingCurve curve;
    curve.eps_mhz = eps_list;
    const std::size_t n = eps_list.size();
    std::vector<double> mag(n, 0.0);
    curve.confident.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const FrequencyEstimate est = rabi_frequency(device, eps_list[i], nu_mhz);
        mag[i] = est.confident ? 0.5 * est.frequency_mhz : 0.0;
        curve.confident[i] = est.confident ? 1 : 0;
    }

    const double gmax = *std::max_element(mag.begin(), mag.end());
    curve.geff_mhz.assign(n, 0.0);
    double sign = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        curve.geff_mhz[i] = sign * mag[i];
        // Flip after a local magnitude minimum close to zero (a J0 crossing).
        const bool local_min = i > 0 && i + 1 < n && mag[i] <= mag[i - 1] && mag[i] <= mag[i + 1];
        if ((local_min && mag[i] < 0.3 * gmax) || (!curve.confident[i] && i + 1 < n))
            sign = -sign;
    }
    return curve;
}

FitResult walk_velocity(const SiteTimeSeries& populations, int site_lo, int site_hi) {
    if (site_lo < 0 || site_hi >= populations.values.cols() || site_lo > site_hi)
        throw std::invalid_argument("walk_velocity: bad site range");
    SiteTimeSeries sub;
    sub.times_ns = populations.times_ns;
    sub.values = populations.values.middleCols(site_lo, site_hi - site_lo + 1);
    FrontExtraction fronts = front_times(sub, FrontMode::GaussianWalk);
    for (auto& p : fronts.points) p.site += site_lo;
    return fit_velocity(fronts.points);
}

FitResult otoc_velocity(const OtocGrid& grid, double threshold) {
    SiteTimeSeries series;
    for (std::size_t i = 0; i < grid.times_ns.size(); ++i)
        if (grid.valid[i]) series.times_ns.push_back(grid.times_ns[i]);
    series.values.resize(static_cast<Eigen::Index>(series.times_ns.size()), grid.values.cols());
    Eigen::Index row = 0;
    for (std::size_t i = 0; i < grid.times_ns.size(); ++i)
        if (grid.valid[i]) series.values.row(row++) = grid.values.row(static_cast<Eigen::Index>(i));

    FrontExtraction fronts = front_times(series, FrontMode::PolynomialOtoc, threshold);
    // The butterfly site and its direct neighbor decay through the gate
    // itself, not through a propagating front; drop them from the fit.
    const int n = static_cast<int>(grid.values.cols());
    std::erase_if(fronts.points, [n](const FrontPoint& p) { return p.site >= n - 2; });
    FitResult fit = fit_velocity(fronts.points);
    if (fit.params.size() > 0) fit.params[0] = std::abs(fit.params[0]);
    return fit;
}

}  // namespace floq
