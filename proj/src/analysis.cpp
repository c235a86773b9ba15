#include "floq/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace floq {

namespace {

constexpr double kPi = 3.141592653589793238463;

double median_of(std::vector<double> v) {
    if (v.empty()) return 0.0;
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    return v[mid];
}

void require_uniform(const std::vector<double>& times, std::size_t min_samples,
                     const char* who) {
    if (times.size() < min_samples)
        throw std::invalid_argument(std::string(who) + ": too few samples");
    const double dt = times[1] - times[0];
    if (!(dt > 0.0)) throw std::invalid_argument(std::string(who) + ": times must increase");
    for (std::size_t i = 1; i + 1 < times.size(); ++i)
        if (std::abs(times[i + 1] - times[i] - dt) > 1e-6 * dt + 1e-12)
            throw std::invalid_argument(std::string(who) + ": non-uniform sampling");
}

}  // namespace

FrequencyEstimate dominant_frequency(const std::vector<double>& times_ns,
                                     const std::vector<double>& values) {
    require_uniform(times_ns, 16, "dominant_frequency");
    if (values.size() != times_ns.size())
        throw std::invalid_argument("dominant_frequency: length mismatch");
    const std::size_t n = values.size();
    const double dt = times_ns[1] - times_ns[0];

    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    std::vector<double> y(n);
    double wsum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = 0.5 - 0.5 * std::cos(2.0 * kPi * i / (n - 1));
        y[i] = (values[i] - mean) * w;
        wsum += w;
    }

    std::size_t m = 1;
    while (m < 8 * n) m *= 2;
    const std::size_t half = m / 2;
    std::vector<double> mag(half + 1, 0.0);
    for (std::size_t k = 0; k <= half; ++k) {
        const Complex step = std::exp(Complex(0.0, -2.0 * kPi * k / m));
        Complex phasor(1.0, 0.0), acc(0.0, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            acc += y[i] * phasor;
            phasor *= step;
        }
        mag[k] = std::abs(acc);
    }

    std::size_t kmax = 1;
    for (std::size_t k = 2; k < half; ++k)
        if (mag[k] > mag[kmax]) kmax = k;
    const double med = median_of(std::vector<double>(mag.begin() + 1, mag.end()));

    FrequencyEstimate est;
    if (mag[kmax] <= 3.0 * med || mag[kmax] <= 0.0) return est;

    const double a = mag[kmax - 1], b = mag[kmax], c = mag[kmax + 1];
    const double denom = a - 2.0 * b + c;
    const double delta = std::abs(denom) > 0.0 ? 0.5 * (a - c) / denom : 0.0;
    est.frequency_mhz = 1000.0 * (kmax + delta) / (m * dt);
    est.amplitude = 2.0 * b / wsum;
    est.confident = true;
    return est;
}

FitResult bessel_scale_fit(const std::vector<double>& eps_mhz,
                           const std::vector<double>& geff_mhz, double nu_mhz) {
    if (eps_mhz.size() != geff_mhz.size() || eps_mhz.size() < 5)
        throw std::invalid_argument("bessel_scale_fit: need >= 5 matched points");
    if (!(nu_mhz > 0.0)) throw std::invalid_argument("bessel_scale_fit: nu must be > 0");
    const std::size_t n = eps_mhz.size();

    double sbb = 0.0, sby = 0.0;
    std::vector<double> b(n);
    for (std::size_t i = 0; i < n; ++i) {
        b[i] = bessel_j0(eps_mhz[i] / nu_mhz);
        sbb += b[i] * b[i];
        sby += b[i] * geff_mhz[i];
    }
    if (sbb < 1e-10 * n)
        throw std::invalid_argument("bessel_scale_fit: degenerate design, all J0 near zero");

    FitResult fit;
    fit.params = Eigen::VectorXd::Constant(1, sby / sbb);
    fit.rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = geff_mhz[i] - fit.params[0] * b[i];
        fit.rss += r * r;
    }
    const double sigma2 = n > 1 ? fit.rss / (n - 1) : 0.0;
    fit.covariance = Eigen::MatrixXd::Constant(1, 1, sigma2 / sbb);
    fit.converged = true;
    return fit;
}

namespace {

// Damped Gauss-Newton with central-difference Jacobians.
FitResult gauss_newton(const std::function<double(const Eigen::VectorXd&, double)>& model,
                       const std::vector<double>& ts, const std::vector<double>& ys,
                       Eigen::VectorXd p, int max_iter = 200) {
    const auto m = static_cast<Eigen::Index>(ts.size());
    const Eigen::Index np = p.size();
    auto cost_of = [&](const Eigen::VectorXd& q, Eigen::VectorXd& r) {
        for (Eigen::Index i = 0; i < m; ++i)
            r[i] = model(q, ts[static_cast<std::size_t>(i)]) - ys[static_cast<std::size_t>(i)];
        return r.squaredNorm();
    };

    Eigen::VectorXd r(m), r_try(m);
    double cost = cost_of(p, r);
    double lambda = 1e-3;
    bool converged = false;
    Eigen::MatrixXd jac(m, np);

    for (int iter = 0; iter < max_iter; ++iter) {
        for (Eigen::Index j = 0; j < np; ++j) {
            const double h = 1e-6 * std::max(std::abs(p[j]), 1.0);
            Eigen::VectorXd pp = p, pm = p;
            pp[j] += h;
            pm[j] -= h;
            for (Eigen::Index i = 0; i < m; ++i) {
                const double t = ts[static_cast<std::size_t>(i)];
                jac(i, j) = (model(pp, t) - model(pm, t)) / (2.0 * h);
            }
        }
        const Eigen::MatrixXd jtj = jac.transpose() * jac;
        const Eigen::VectorXd g = jac.transpose() * r;

        bool stepped = false;
        for (int attempt = 0; attempt < 12; ++attempt) {
            Eigen::MatrixXd damped = jtj;
            for (Eigen::Index j = 0; j < np; ++j)
                damped(j, j) += lambda * std::max(jtj(j, j), 1e-12);
            const Eigen::VectorXd delta = damped.ldlt().solve(-g);
            const Eigen::VectorXd p_try = p + delta;
            const double cost_try = cost_of(p_try, r_try);
            if (cost_try < cost) {
                const double rel = (cost - cost_try) / std::max(cost, 1e-300);
                p = p_try;
                r = r_try;
                cost = cost_try;
                lambda = std::max(lambda / 3.0, 1e-12);
                stepped = true;
                if (rel < 1e-10) converged = true;
                break;
            }
            lambda *= 10.0;
        }
        if (!stepped) {
            converged = cost < 1e-24 || g.norm() < 1e-10 * std::max(1.0, cost);
            break;
        }
        if (converged) break;
    }

    FitResult fit;
    fit.params = p;
    fit.rss = cost;
    fit.converged = converged;
    const double dof = std::max<double>(1.0, static_cast<double>(m) - static_cast<double>(np));
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    Eigen::MatrixXd inv = jtj.completeOrthogonalDecomposition().pseudoInverse();
    fit.covariance = (cost / dof) * inv;
    return fit;
}

}  // namespace

FitResult fit_gaussian(const std::vector<double>& times_ns, const std::vector<double>& values) {
    if (times_ns.size() != values.size() || times_ns.size() < 4)
        throw std::invalid_argument("fit_gaussian: need >= 4 matched samples");
    const std::size_t n = values.size();
    for (double v : values)
        if (v < -1e-9) throw std::invalid_argument("fit_gaussian: values must be nonnegative");

    const double vmax = *std::max_element(values.begin(), values.end());
    const double med = median_of(values);
    if (!(vmax > 0.0) || vmax <= 2.0 * med)
        throw std::invalid_argument("fit_gaussian: no discernible peak");

    // Window: samples up to and including the first local maximum that is a
    // substantial fraction of the global one.
    std::size_t iend = static_cast<std::size_t>(
        std::max_element(values.begin(), values.end()) - values.begin());
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (values[i] > values[i - 1] && values[i] >= values[i + 1] &&
            values[i] >= 0.6 * vmax && values[i] > 2.0 * med) {
            iend = i;
            break;
        }
    }
    if (iend == 0) throw std::invalid_argument("fit_gaussian: peak at the first sample");

    std::vector<double> ts(times_ns.begin(), times_ns.begin() + static_cast<std::ptrdiff_t>(iend + 1));
    std::vector<double> ys(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(iend + 1));

    const double a0 = ys.back();
    const double mu0 = ts.back();
    double s0 = (ts.back() - ts.front()) / 4.0;
    for (std::size_t i = iend; i-- > 0;) {
        if (ys[i] <= 0.5 * a0) {
            s0 = std::max((mu0 - ts[i]) / 1.1774, 1e-3);
            break;
        }
    }

    Eigen::VectorXd p(3);
    p << a0, mu0, s0;
    auto model = [](const Eigen::VectorXd& q, double t) {
        const double z = (t - q[1]) / q[2];
        return q[0] * std::exp(-0.5 * z * z);
    };
    FitResult fit = gauss_newton(model, ts, ys, p);
    fit.params[2] = std::abs(fit.params[2]);
    return fit;
}

FitResult fit_polynomial(const std::vector<double>& times_ns, const std::vector<double>& values,
                         int degree) {
    if (degree < 1) throw std::invalid_argument("fit_polynomial: degree must be >= 1");
    const std::size_t n = times_ns.size();
    if (values.size() != n || static_cast<int>(n) < degree + 2)
        throw std::invalid_argument("fit_polynomial: need degree + 2 matched samples");
    const double t0 = times_ns.front(), span = times_ns.back() - t0;
    if (!(span > 0.0)) throw std::invalid_argument("fit_polynomial: zero time span");

    Eigen::MatrixXd van(n, degree + 1);
    Eigen::VectorXd y(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = (times_ns[i] - t0) / span;
        double uk = 1.0;
        for (int k = 0; k <= degree; ++k) {
            van(static_cast<Eigen::Index>(i), k) = uk;
            uk *= u;
        }
        y[static_cast<Eigen::Index>(i)] = values[i];
    }

    FitResult fit;
    fit.params = van.colPivHouseholderQr().solve(y);
    fit.rss = (van * fit.params - y).squaredNorm();
    const double dof = std::max<double>(1.0, static_cast<double>(n) - degree - 1);
    fit.covariance = (fit.rss / dof) *
                     (van.transpose() * van).completeOrthogonalDecomposition().pseudoInverse();
    fit.converged = true;
    return fit;
}

namespace {

double poly_eval(const Eigen::VectorXd& c, double u) {
    double acc = 0.0;
    for (Eigen::Index k = c.size(); k-- > 0;) acc = acc * u + c[k];
    return acc;
}

double poly_deriv(const Eigen::VectorXd& c, double u) {
    double acc = 0.0;
    for (Eigen::Index k = c.size(); k-- > 1;) acc = acc * u + k * c[k];
    return acc;
}

bool gaussian_front_point(const std::vector<double>& ts, const std::vector<double>& ys,
                          FrontPoint& out) {
    const std::size_t imax = static_cast<std::size_t>(
        std::max_element(ys.begin(), ys.end()) - ys.begin());
    if (imax == 0) return false;
    FitResult fit;
    try {
        fit = fit_gaussian(ts, ys);
    } catch (const std::invalid_argument&) {
        return false;
    }
    if (!fit.converged || !(fit.params[2] > 0.0)) return false;
    const double mu = fit.params[1], s = fit.params[2];
    if (mu < ts.front() - s || mu > ts.back() + s) return false;
    out.t_ns = mu - s;
    out.sigma_ns = std::sqrt(std::max(
        0.0, fit.covariance(1, 1) + fit.covariance(2, 2) - 2.0 * fit.covariance(1, 2)));
    return true;
}

bool otoc_front_point(const std::vector<double>& ts, const std::vector<double>& ys,
                      double threshold, int degree, FrontPoint& out) {
    // Initial decay window: up to the first local minimum after the value
    // has dropped below the threshold.
    const std::size_t n = ys.size();
    std::size_t iend = 0;
    bool dropped = false;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (ys[i] < threshold) dropped = true;
        if (dropped && ys[i + 1] > ys[i]) {
            iend = i;
            break;
        }
    }
    if (!dropped) return false;
    if (iend == 0) iend = n - 1;
    if (static_cast<int>(iend) + 1 < degree + 2) return false;

    std::vector<double> tw(ts.begin(), ts.begin() + static_cast<std::ptrdiff_t>(iend + 1));
    std::vector<double> yw(ys.begin(), ys.begin() + static_cast<std::ptrdiff_t>(iend + 1));
    FitResult fit = fit_polynomial(tw, yw, degree);
    const double t0 = tw.front(), span = tw.back() - t0;

    // First downward crossing of the threshold on the fitted curve.
    const int scan = 2000;
    double u_lo = -1.0;
    double prev = poly_eval(fit.params, 0.0) - threshold;
    for (int i = 1; i <= scan; ++i) {
        const double u = static_cast<double>(i) / scan;
        const double cur = poly_eval(fit.params, u) - threshold;
        if (prev >= 0.0 && cur < 0.0) {
            u_lo = (i - 1.0) / scan;
            break;
        }
        prev = cur;
    }
    if (u_lo < 0.0) return false;
    double lo = u_lo, hi = u_lo + 1.0 / scan;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (poly_eval(fit.params, mid) - threshold >= 0.0)
            lo = mid;
        else
            hi = mid;
    }
    const double u_star = 0.5 * (lo + hi);

    Eigen::VectorXd grad(fit.params.size());
    double uk = 1.0;
    for (Eigen::Index k = 0; k < fit.params.size(); ++k) {
        grad[k] = uk;
        uk *= u_star;
    }
    const double slope = poly_deriv(fit.params, u_star);
    if (std::abs(slope) < 1e-12) return false;
    const double var_u = std::max(0.0, grad.dot(fit.covariance * grad)) / (slope * slope);

    out.t_ns = t0 + u_star * span;
    out.sigma_ns = std::sqrt(var_u) * span;
    return true;
}

}  // namespace

FrontExtraction front_times(const SiteTimeSeries& series, FrontMode mode, double threshold,
                            int degree) {
    FrontExtraction out;
    const int n_sites = static_cast<int>(series.values.cols());
    for (int j = 0; j < n_sites; ++j) {
        const std::vector<double> col = series.site_column(j);
        FrontPoint pt;
        pt.site = j;
        const bool ok = mode == FrontMode::GaussianWalk
                            ? gaussian_front_point(series.times_ns, col, pt)
                            : otoc_front_point(series.times_ns, col, threshold, degree, pt);
        if (ok)
            out.points.push_back(pt);
        else
            out.skipped_sites.push_back(j);
    }
    return out;
}

FitResult fit_velocity(const std::vector<FrontPoint>& points) {
    if (points.size() < 3) throw std::invalid_argument("fit_velocity: need >= 3 points");
    const std::size_t m = points.size();

    double sigma_floor = 1e-3;
    for (const auto& p : points) sigma_floor = std::max(sigma_floor, 1e-4 * std::abs(p.t_ns));

    // Weighted linear model t = a * j + b with a = 1000 / v (ns per site).
    double sw = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& p : points) {
        const double w = 1.0 / std::pow(std::max(p.sigma_ns, sigma_floor), 2);
        const double x = p.site;
        sw += w;
        sx += w * x;
        sy += w * p.t_ns;
        sxx += w * x * x;
        sxy += w * x * p.t_ns;
    }
    const double det = sw * sxx - sx * sx;
    if (std::abs(det) < 1e-12) throw std::invalid_argument("fit_velocity: degenerate sites");
    const double a = (sw * sxy - sx * sy) / det;
    const double b = (sxx * sy - sx * sxy) / det;

    double chi2 = 0.0;
    for (const auto& p : points) {
        const double w = 1.0 / std::pow(std::max(p.sigma_ns, sigma_floor), 2);
        const double r = p.t_ns - (a * p.site + b);
        chi2 += w * r * r;
    }
    const double scale = m > 2 ? std::max(1.0, chi2 / (m - 2)) : 1.0;
    const double var_a = scale * sw / det;
    const double var_b = scale * sxx / det;
    const double cov_ab = -scale * sx / det;

    FitResult fit;
    fit.rss = chi2;
    fit.converged = std::abs(a) > 1e-6;
    fit.params = Eigen::VectorXd(2);
    fit.covariance = Eigen::MatrixXd::Zero(2, 2);
    if (!fit.converged) {
        fit.params << 0.0, b;
        return fit;
    }
    const double v = 1000.0 / a;  // sites/us
    const double dvda = -1000.0 / (a * a);
    fit.params << v, b;
    fit.covariance(0, 0) = dvda * dvda * var_a;
    fit.covariance(0, 1) = fit.covariance(1, 0) = dvda * cov_ab;
    fit.covariance(1, 1) = var_b;
    return fit;
}

}  // namespace floq
