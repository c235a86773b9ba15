// Data reduction: spectral frequency extraction, Bessel-law and Gaussian
// fits, wavefront extraction, and velocity regression.

#pragma once

#include <vector>

#include "floq/protocols.hpp"

namespace floq {

struct FitResult {
    Eigen::VectorXd params;
    Eigen::MatrixXd covariance;
    double rss = 0.0;
    bool converged = false;
};

struct FrequencyEstimate {
    double frequency_mhz = 0.0;
    bool confident = false;  // false when no peak clears 3x the median bin
    double amplitude = 0.0;
};

// Peak of the magnitude spectrum (mean removed, Hann window, zero padded),
// refined by parabolic interpolation of the three bins around the maximum.
// Requires >= 16 uniformly spaced samples.
FrequencyEstimate dominant_frequency(const std::vector<double>& times_ns,
                                     const std::vector<double>& values);

// Closed-form scale g in the one-parameter model geff = g * J0(eps/nu).
// params = [g]. Throws when the design is degenerate (all J0 near zero).
FitResult bessel_scale_fit(const std::vector<double>& eps_mhz,
                           const std::vector<double>& geff_mhz, double nu_mhz);

// a * exp(-(t - mu)^2 / (2 s^2)) fitted to the samples up to and including
// the first local maximum; damped Gauss-Newton from moment initialization.
// params = [a, mu, s]. Throws when there is no discernible peak.
FitResult fit_gaussian(const std::vector<double>& times_ns, const std::vector<double>& values);

// Ordinary polynomial least squares. params = coefficients c0..c_degree in
// the rescaled variable u = (t - t_min)/(t_max - t_min), which keeps the
// Vandermonde system well conditioned at degree 6.
FitResult fit_polynomial(const std::vector<double>& times_ns, const std::vector<double>& values,
                         int degree);

enum class FrontMode { GaussianWalk, PolynomialOtoc };

struct FrontPoint {
    int site = 0;  // 0-based column
    double t_ns = 0.0;
    double sigma_ns = 0.0;
};

struct FrontExtraction {
    std::vector<FrontPoint> points;
    std::vector<int> skipped_sites;
};

// Per-site front times. GaussianWalk: t = mu - s from fit_gaussian on the
// rising signal. PolynomialOtoc: degree-6 fit over the initial decay of
// C_j(t), t = first crossing of the threshold, uncertainty from the
// parameter covariance propagated through the crossing. Sites without a
// valid fit are skipped and reported.
FrontExtraction front_times(const SiteTimeSeries& series, FrontMode mode,
                            double threshold = 0.5, int degree = 6);

// Weighted least squares t = j / v + c over (site, t +- sigma) points.
// params = [v (sites/us, signed), c (ns)]. Requires >= 3 points; flags
// near-zero slope as not converged.
FitResult fit_velocity(const std::vector<FrontPoint>& points);

}  // namespace floq
