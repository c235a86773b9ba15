#include <doctest.h>

#include <bit>
#include <cmath>

#include "floq/readout.hpp"

using namespace floq;

TEST_SUITE("readout") {

TEST_CASE("confusion model validation") {
    ConfusionModel ok = ConfusionModel::ideal(3);
    CHECK_NOTHROW(ok.validate());
    ConfusionModel bad = ok;
    bad.f_ground[1] = 0.4;  // F_g + F_e barely above 1 but F_g out of range
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    ConfusionModel singular = ConfusionModel::ideal(2);
    singular.f_ground = {0.5, 0.9};
    singular.f_excited = {0.5, 0.9};
    CHECK_THROWS_AS(singular.validate(), std::invalid_argument);
    CHECK(ConfusionModel::paper_10q().n_sites() == 10);
    CHECK(ConfusionModel::paper_10q().f_excited[9] == doctest::Approx(0.856));
}

TEST_CASE("perfect readout of a basis state is deterministic") {
    auto basis = FockBasis::build(2, 2);
    StateVector psi = product_state(basis, std::vector<std::uint8_t>{1, 0});
    ShotCounts counts = sample_shots(psi, ConfusionModel::ideal(2), 500, 42);
    CHECK(counts.total == 500);
    REQUIRE(counts.counts.size() == 1);
    CHECK(counts.counts.begin()->first == 1);  // site 1 in the lowest bit
    CHECK(counts.counts.begin()->second == 500);
}

TEST_CASE("identical seeds give identical counts") {
    auto basis = FockBasis::build(3, 2);
    StateVector psi = plus_product_state(basis);
    const ConfusionModel conf{{0.97, 0.99, 0.98}, {0.90, 0.93, 0.91}};
    ShotCounts a = sample_shots(psi, conf, 2000, 7);
    ShotCounts b = sample_shots(psi, conf, 2000, 7);
    ShotCounts c = sample_shots(psi, conf, 2000, 8);
    CHECK(a.counts == b.counts);
    CHECK(a.counts != c.counts);
}

TEST_CASE("excited-state fidelity shows up as the one-fraction") {
    // site 10 of the measured device: F_e = 0.856
    auto basis = FockBasis::build(10, 2, 5);
    StateVector psi = product_state(
        basis, occupations_from_string("0101010101"));
    ShotCounts counts = sample_shots(psi, ConfusionModel::paper_10q(), 8000, 3);
    long ones = 0;
    for (const auto& [key, c] : counts.counts)
        if (key & (1ull << 9)) ones += c;
    const double frac = static_cast<double>(ones) / 8000.0;
    const double sigma = std::sqrt(0.856 * 0.144 / 8000.0);
    CHECK(std::abs(frac - 0.856) < 3.0 * sigma);
}

TEST_CASE("identity confusion leaves marginals unchanged") {
    auto basis = FockBasis::build(3, 2);
    StateVector psi = plus_product_state(basis);
    ShotCounts counts = sample_shots(psi, ConfusionModel::ideal(3), 4000, 11);
    CalibratedMarginals cal = calibrate_counts(counts, ConfusionModel::ideal(3));
    for (int j = 0; j < 3; ++j) {
        double raw = 0.0;
        for (const auto& [key, c] : counts.counts)
            if (key & (1ull << j)) raw += c;
        CHECK(cal.p1[j] == doctest::Approx(raw / 4000.0).epsilon(1e-12));
    }
    CHECK_FALSE(cal.clipped);
}

TEST_CASE("symmetric confusion has 0.5 as a fixed point") {
    ShotCounts counts;
    counts.n_sites = 1;
    counts.total = 1000;
    counts.counts[0] = 500;
    counts.counts[1] = 500;
    ConfusionModel conf;
    conf.f_ground = {0.75};
    conf.f_excited = {0.75};
    CalibratedMarginals cal = calibrate_counts(counts, conf);
    CHECK(cal.p1[0] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("calibration round trip recovers marginals within binomial error") {
    auto basis = FockBasis::build(10, 2, 5);
    StateVector psi = product_state(basis, occupations_from_string("0110100101"));
    const ConfusionModel conf = ConfusionModel::paper_10q();
    const Eigen::VectorXd truth = level1_populations(psi);
    ShotCounts counts = sample_shots(psi, conf, 8000, 21);
    CalibratedMarginals cal = calibrate_counts(counts, conf);
    for (int j = 0; j < 10; ++j) {
        const double se = std::sqrt(std::max(truth[j] * (1.0 - truth[j]), 0.25) / 8000.0) /
                          (conf.f_ground[j] + conf.f_excited[j] - 1.0);
        CHECK(std::abs(cal.p1[j] - truth[j]) < std::max(3.0 * se, 0.02));
    }
}

TEST_CASE("post-selection keeps the requested Hamming weight") {
    ShotCounts counts;
    counts.n_sites = 10;
    for (std::uint64_t k = 0; k < 1024; ++k) {
        counts.counts[k] = 4;
        counts.total += 4;
    }
    PostSelected ps = post_select(counts, 5);
    CHECK(ps.kept_fraction == doctest::Approx(252.0 / 1024.0));
    for (const auto& [key, c] : ps.counts.counts)
        CHECK(std::popcount(key) == 5);
    CHECK_THROWS_AS((void)post_select(ShotCounts{2, 0, {}}, 1), std::runtime_error);
}

TEST_CASE("sector-calibrated marginals are unbiased") {
    auto basis = FockBasis::build(6, 2, 3);
    Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis->dim()));
    // a few spread-out components, normalized
    amp[0] = 0.6;
    amp[5] = Complex(0.0, 0.5);
    amp[11] = -0.4;
    amp[17] = 0.4795831523312719;  // sqrt(1 - 0.36 - 0.25 - 0.16)
    StateVector psi{basis, amp};
    psi.assert_normalized(1e-9);
    const ConfusionModel conf{{0.97, 0.99, 0.98, 0.96, 0.99, 0.95},
                              {0.90, 0.93, 0.91, 0.92, 0.88, 0.94}};
    const Eigen::VectorXd truth = level1_populations(psi);
    const int n_seeds = 40;
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(6);
    for (int s = 0; s < n_seeds; ++s) {
        ShotCounts counts = sample_shots(psi, conf, 4000, 100 + s);
        mean += calibrated_sector_marginals(counts, conf, 3);
    }
    mean /= n_seeds;
    for (int j = 0; j < 6; ++j) {
        const double se = std::sqrt(0.25 / (4000.0 * n_seeds)) /
                          (conf.f_ground[j] + conf.f_excited[j] - 1.0);
        CHECK(std::abs(mean[j] - truth[j]) < 4.0 * se);
    }
}

}  // TEST_SUITE
