// End-to-end reductions built from protocols + analysis: Rabi sweep to a
// signed coupling curve, wavefront velocity extraction for walks and OTOCs.

#pragma once

#include "floq/analysis.hpp"

namespace floq {

struct CouplingCurve {
    std::vector<double> eps_mhz;
    std::vector<double> geff_mhz;            // signed, via zero-crossing continuity
    std::vector<std::uint8_t> confident;     // per point, from dominant_frequency
};

// For each drive amplitude: two-site Rabi run, oscillation frequency via the
// spectrum (geff = f/2), window adapted so slow points resolve. Signs start
// positive and flip at each local magnitude minimum near zero.
CouplingCurve rabi_coupling_sweep(const DeviceSpec& device, const std::vector<double>& eps_list,
                                  double nu_mhz = 120.0);

// Gaussian-front velocity over columns [site_lo, site_hi] (0-based,
// inclusive). params = [v (sites/us, signed), intercept].
FitResult walk_velocity(const SiteTimeSeries& populations, int site_lo, int site_hi);

// Polynomial-front speed of an OTOC grid, restricted to rows marked valid;
// params[0] holds the speed magnitude in sites/us.
FitResult otoc_velocity(const OtocGrid& grid, double threshold = 0.5);

}  // namespace floq
