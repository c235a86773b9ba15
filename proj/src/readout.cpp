#include "floq/readout.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>

namespace floq {

void ConfusionModel::validate() const {
    if (f_ground.size() != f_excited.size() || f_ground.empty())
        throw std::invalid_argument("ConfusionModel: mismatched or empty fidelity lists");
    for (std::size_t j = 0; j < f_ground.size(); ++j) {
        const double fg = f_ground[j], fe = f_excited[j];
        if (!(fg > 0.5 && fg <= 1.0) || !(fe > 0.5 && fe <= 1.0))
            throw std::invalid_argument("ConfusionModel: fidelities must lie in (0.5, 1]");
        if (!(fg + fe > 1.0))
            throw std::invalid_argument("ConfusionModel: calibration matrix not invertible");
    }
}

ConfusionModel ConfusionModel::ideal(int n) {
    ConfusionModel m;
    m.f_ground.assign(static_cast<std::size_t>(n), 1.0);
    m.f_excited.assign(static_cast<std::size_t>(n), 1.0);
    return m;
}

ConfusionModel ConfusionModel::paper_10q() {
    ConfusionModel m;
    m.f_ground = {0.972, 0.992, 0.992, 0.997, 0.981, 0.994, 0.993, 0.994, 0.993, 0.993};
    m.f_excited = {0.904, 0.926, 0.924, 0.907, 0.903, 0.917, 0.899, 0.917, 0.925, 0.856};
    return m;
}

ShotCounts sample_shots(const StateVector& state, const ConfusionModel& confusion,
                        long n_shots, std::uint64_t seed) {
    confusion.validate();
    const int n = state.basis->n_sites();
    if (confusion.n_sites() != n)
        throw std::invalid_argument("sample_shots: confusion model size mismatch");
    if (n_shots < 1) throw std::invalid_argument("sample_shots: need n_shots >= 1");
    if (n > 63) throw std::invalid_argument("sample_shots: too many sites for bitstrings");
    state.assert_normalized();

    // Fold to bit outcomes: occupation >= 1 reads as "1".
    std::map<std::uint64_t, double> probs;
    for (std::size_t i = 0; i < state.basis->dim(); ++i) {
        const double p = std::norm(state.amplitudes[static_cast<Eigen::Index>(i)]);
        if (p == 0.0) continue;
        auto occ = state.basis->occupation(i);
        std::uint64_t bits = 0;
        for (int j = 0; j < n; ++j)
            if (occ[static_cast<std::size_t>(j)] >= 1) bits |= std::uint64_t{1} << j;
        probs[bits] += p;
    }
    std::vector<std::uint64_t> keys;
    std::vector<double> cdf;
    keys.reserve(probs.size());
    cdf.reserve(probs.size());
    double acc = 0.0;
    for (const auto& [bits, p] : probs) {
        acc += p;
        keys.push_back(bits);
        cdf.push_back(acc);
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);

    ShotCounts out;
    out.n_sites = n;
    out.total = n_shots;
    for (long s = 0; s < n_shots; ++s) {
        const double u = uni(rng) * acc;
        const std::size_t idx = static_cast<std::size_t>(
            std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
        std::uint64_t bits = keys[std::min(idx, keys.size() - 1)];
        for (int j = 0; j < n; ++j) {
            const bool one = (bits >> j) & 1;
            const double err = one ? 1.0 - confusion.f_excited[static_cast<std::size_t>(j)]
                                   : 1.0 - confusion.f_ground[static_cast<std::size_t>(j)];
            if (err > 0.0 && uni(rng) < err) bits ^= std::uint64_t{1} << j;
        }
        ++out.counts[bits];
    }
    return out;
}

CalibratedMarginals calibrate_counts(const ShotCounts& counts, const ConfusionModel& confusion) {
    confusion.validate();
    const int n = counts.n_sites;
    if (confusion.n_sites() != n)
        throw std::invalid_argument("calibrate_counts: confusion model size mismatch");
    if (counts.total < 1) throw std::invalid_argument("calibrate_counts: empty counts");

    CalibratedMarginals out;
    out.p1 = Eigen::VectorXd::Zero(n);
    for (const auto& [bits, c] : counts.counts)
        for (int j = 0; j < n; ++j)
            if ((bits >> j) & 1) out.p1[j] += static_cast<double>(c);
    out.p1 /= static_cast<double>(counts.total);

    for (int j = 0; j < n; ++j) {
        const double fg = confusion.f_ground[static_cast<std::size_t>(j)];
        const double fe = confusion.f_excited[static_cast<std::size_t>(j)];
        // T^-1 applied to (1 - p1, p1), excited component.
        const double det = fg + fe - 1.0;
        double corrected = (out.p1[j] - (1.0 - fg)) / det;
        if (corrected < 0.0 || corrected > 1.0) {
            corrected = std::clamp(corrected, 0.0, 1.0);
            out.clipped = true;
        }
        out.p1[j] = corrected;
    }
    return out;
}

std::vector<double> calibrate_distribution(const ShotCounts& counts,
                                           const ConfusionModel& confusion) {
    confusion.validate();
    const int n = counts.n_sites;
    if (confusion.n_sites() != n)
        throw std::invalid_argument("calibrate_distribution: confusion model size mismatch");
    if (n > 20) throw std::invalid_argument("calibrate_distribution: n_sites must be <= 20");
    if (counts.total < 1) throw std::invalid_argument("calibrate_distribution: empty counts");

    const std::size_t dim = std::size_t{1} << n;
    std::vector<double> q(dim, 0.0);

    // Per site, T^-1 = (1/det) [[F_e, F_e - 1], [F_g - 1, F_g]]; element
    // [true][observed].
    std::vector<std::array<double, 4>> tinv(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double fg = confusion.f_ground[static_cast<std::size_t>(j)];
        const double fe = confusion.f_excited[static_cast<std::size_t>(j)];
        const double det = fg + fe - 1.0;
        tinv[static_cast<std::size_t>(j)] = {fe / det, (fe - 1.0) / det, (fg - 1.0) / det,
                                             fg / det};
    }

    for (const auto& [obs, c] : counts.counts) {
        const double w = static_cast<double>(c) / static_cast<double>(counts.total);
        for (std::size_t x = 0; x < dim; ++x) {
            double factor = w;
            for (int j = 0; j < n; ++j) {
                const int xt = static_cast<int>((x >> j) & 1);
                const int xo = static_cast<int>((obs >> j) & 1);
                factor *= tinv[static_cast<std::size_t>(j)][static_cast<std::size_t>(2 * xt + xo)];
            }
            q[x] += factor;
        }
    }
    return q;
}

PostSelected post_select(const ShotCounts& counts, int n_excitations) {
    PostSelected out;
    out.counts.n_sites = counts.n_sites;
    long kept = 0;
    for (const auto& [bits, c] : counts.counts) {
        if (std::popcount(bits) == n_excitations) {
            out.counts.counts[bits] = c;
            kept += c;
        }
    }
    if (kept == 0) throw std::runtime_error("post_select: no shots retained");
    out.counts.total = kept;
    out.kept_fraction = counts.total > 0 ? static_cast<double>(kept) / counts.total : 0.0;
    return out;
}

Eigen::VectorXd calibrated_sector_marginals(const ShotCounts& counts,
                                            const ConfusionModel& confusion,
                                            int n_excitations) {
    const int n = counts.n_sites;
    const std::vector<double> q = calibrate_distribution(counts, confusion);
    double norm = 0.0;
    Eigen::VectorXd p1 = Eigen::VectorXd::Zero(n);
    for (std::size_t x = 0; x < q.size(); ++x) {
        if (std::popcount(x) != n_excitations) continue;
        norm += q[x];
        for (int j = 0; j < n; ++j)
            if ((x >> j) & 1) p1[j] += q[x];
    }
    if (std::abs(norm) < 1e-12)
        throw std::runtime_error("calibrated_sector_marginals: sector weight vanished");
    return p1 / norm;
}

}  // namespace floq
