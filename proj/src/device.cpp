#include "floq/device.hpp"

#include <algorithm>
#include <cmath>

namespace floq {

void DeviceSpec::validate() const {
    if (n_sites < 2) throw std::invalid_argument("DeviceSpec: n_sites must be >= 2");
    if (levels != 2 && levels != 3)
        throw std::invalid_argument("DeviceSpec: levels must be 2 or 3");
    if (static_cast<int>(nn_couplings.size()) != n_sites - 1)
        throw std::invalid_argument("DeviceSpec: need n_sites-1 NN couplings");
    if (!nnn_couplings.empty() && static_cast<int>(nnn_couplings.size()) != n_sites - 2)
        throw std::invalid_argument("DeviceSpec: need n_sites-2 NNN couplings");
    if (levels == 3 && static_cast<int>(anharmonicities.size()) != n_sites)
        throw std::invalid_argument("DeviceSpec: need n_sites anharmonicities for levels=3");
    for (double g : nn_couplings)
        if (!(g > 0.0)) throw std::invalid_argument("DeviceSpec: NN couplings must be > 0");
}

DeviceSpec DeviceSpec::truncate(int n) const {
    if (n < 2 || n > n_sites) throw std::invalid_argument("DeviceSpec::truncate: bad n");
    DeviceSpec d;
    d.n_sites = n;
    d.levels = levels;
    d.nn_couplings.assign(nn_couplings.begin(), nn_couplings.begin() + (n - 1));
    if (!nnn_couplings.empty())
        d.nnn_couplings.assign(nnn_couplings.begin(), nnn_couplings.begin() + (n - 2));
    if (!anharmonicities.empty())
        d.anharmonicities.assign(anharmonicities.begin(), anharmonicities.begin() + n);
    return d;
}

DeviceSpec DeviceSpec::without_nnn() const {
    DeviceSpec d = *this;
    d.nnn_couplings.clear();
    return d;
}

bool DeviceSpec::has_nnn() const {
    return std::any_of(nnn_couplings.begin(), nnn_couplings.end(),
                       [](double g) { return g != 0.0; });
}

DeviceSpec DeviceSpec::paper_10q(int levels) {
    DeviceSpec d;
    d.n_sites = 10;
    d.levels = levels;
    d.nn_couplings = {10.72, 10.73, 10.99, 11.05, 10.88, 10.48, 10.86, 10.79, 10.78};
    d.nnn_couplings = {0.98, 0.49, 0.96, 0.49, 0.96, 0.49, 0.97, 0.48};
    d.anharmonicities = {-212, -264, -210, -268, -212, -268, -214, -264, -214, -264};
    d.validate();
    return d;
}

DeviceSpec DeviceSpec::uniform(int n, double g, int levels) {
    DeviceSpec d;
    d.n_sites = n;
    d.levels = levels;
    d.nn_couplings.assign(static_cast<std::size_t>(n - 1), g);
    if (levels == 3) d.anharmonicities.assign(static_cast<std::size_t>(n), -240.0);
    d.validate();
    return d;
}

void DrivePattern::validate() const {
    if (!(drive_frequency > 0.0))
        throw std::invalid_argument("DrivePattern: drive_frequency must be > 0");
    for (double a : amplitudes)
        if (!std::isfinite(a))
            throw std::invalid_argument("DrivePattern: amplitudes must be finite");
}

bool DrivePattern::is_zero() const {
    return std::all_of(amplitudes.begin(), amplitudes.end(),
                       [](double a) { return a == 0.0; });
}

DrivePattern DrivePattern::none(int n, double nu) {
    DrivePattern p;
    p.amplitudes.assign(static_cast<std::size_t>(n), 0.0);
    p.drive_frequency = nu;
    return p;
}

DrivePattern DrivePattern::staggered_odd(int n, double eps, double nu) {
    DrivePattern p = none(n, nu);
    double sign = 1.0;
    for (int j = 0; j < n; j += 2) {  // 0-based even index = 1-based odd site
        p.amplitudes[static_cast<std::size_t>(j)] = sign * eps;
        sign = -sign;
    }
    return p;
}

DrivePattern DrivePattern::on_sites(int n, const std::vector<int>& sites, double eps,
                                    double nu) {
    DrivePattern p = none(n, nu);
    for (int s : sites) {
        if (s < 1 || s > n) throw std::invalid_argument("DrivePattern: site out of range");
        p.amplitudes[static_cast<std::size_t>(s - 1)] = eps;
    }
    return p;
}

double Schedule::total_span_ns() const {
    double t = 0.0;
    for (const auto& seg : segments) t += seg.duration_ns;
    return t;
}

void Schedule::validate() const {
    for (const auto& seg : segments) {
        if (!(seg.duration_ns > 0.0))
            throw std::invalid_argument("Schedule: segment durations must be > 0");
        seg.drive.validate();
    }
    const double span = total_span_ns();
    for (const auto& g : gates)
        if (g.time_ns < 0.0 || g.time_ns > span)
            throw std::invalid_argument("Schedule: gate time outside total span");
}

}  // namespace floq
