#include <doctest.h>

#include "floq/analysis.hpp"
#include "floq/operators.hpp"
#include "floq/protocols.hpp"

using namespace floq;

namespace {

Eigen::MatrixXcd dense_u(const Eigen::MatrixXcd& h, double t) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    Eigen::VectorXcd phases(es.eigenvalues().size());
    for (Eigen::Index k = 0; k < phases.size(); ++k)
        phases[k] = std::exp(Complex(0.0, -es.eigenvalues()[k] * t));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

TEST_SUITE("protocols") {

TEST_CASE("rabi pair oscillates at twice the coupling") {
    const double g = 10.72;
    SiteTimeSeries series = run_rabi_pair(DeviceSpec::uniform(2, g), 0.0, 2000.0);
    FrequencyEstimate est = dominant_frequency(series.times_ns, series.site_column(0));
    REQUIRE(est.confident);
    CHECK(est.frequency_mhz == doctest::Approx(2.0 * g).epsilon(0.01));
}

TEST_CASE("walk conserves probability and total excitation") {
    DeviceSpec dev = DeviceSpec::uniform(6, 4.0);
    std::vector<std::uint8_t> init{1, 0, 0, 1, 0, 0};
    WalkResult walk = run_quantum_walk(dev, DrivePattern::none(6), init, 100.0);
    for (Eigen::Index i = 0; i < walk.populations.values.rows(); ++i)
        CHECK(walk.populations.values.row(i).sum() == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("walk is mirror symmetric on a uniform chain") {
    DeviceSpec dev = DeviceSpec::uniform(8, 4.0);
    std::vector<std::uint8_t> left(8, 0), right(8, 0);
    left[0] = 1;
    right[7] = 1;
    WalkResult wl = run_quantum_walk(dev, DrivePattern::none(8), left, 200.0);
    WalkResult wr = run_quantum_walk(dev, DrivePattern::none(8), right, 200.0);
    double worst = 0.0;
    for (Eigen::Index i = 0; i < wl.populations.values.rows(); ++i)
        for (int j = 0; j < 8; ++j)
            worst = std::max(worst, std::abs(wl.populations.values(i, j) -
                                             wr.populations.values(i, 7 - j)));
    CHECK(worst < 1e-9);
}

TEST_CASE("walk at the J0 zero is dynamically localized") {
    DeviceSpec dev = DeviceSpec::uniform(6, 4.0);
    std::vector<std::uint8_t> init(6, 0);
    init[0] = 1;
    WalkResult walk =
        run_quantum_walk(dev, DrivePattern::staggered_odd(6, 288.6), init, 250.0);
    double off_site = 0.0;
    for (Eigen::Index i = 0; i < walk.populations.values.rows(); ++i)
        for (int j = 1; j < 6; ++j)
            off_site = std::max(off_site, walk.populations.values(i, j));
    CHECK(off_site < 0.05);
}

TEST_CASE("exact reversal returns the initial state") {
    ModelOptions opts;
    opts.exact_reverse = true;
    // half_time a multiple of the 2 ns sampling so the grid mirrors exactly
    ReversalResult rev =
        run_reversed_evolution(DeviceSpec::paper_10q().without_nnn(), 213.6, 400.0, 124.0, opts);
    CHECK(rev.echo_fidelity == doctest::Approx(1.0).epsilon(1e-10));
    // populations symmetric about the turning point
    const Eigen::Index rows = rev.populations.values.rows();
    double worst = 0.0;
    for (Eigen::Index i = 0; i < rows; ++i)
        worst = std::max(worst, (rev.populations.values.row(i) -
                                 rev.populations.values.row(rows - 1 - i)).cwiseAbs().maxCoeff());
    CHECK(worst < 1e-8);
}

TEST_CASE("eps-pair reversal echoes to the J0 mismatch level") {
    ReversalResult rev =
        run_reversed_evolution(DeviceSpec::paper_10q().without_nnn(), 213.6, 400.0, 125.0);
    CHECK(rev.echo_fidelity > 0.9999);
    CHECK(rev.echo_fidelity < 1.0);
    CHECK(rev.max_level2_population == 0.0);  // d = 2
}

TEST_CASE("otoc rows start at exactly 1") {
    DeviceSpec dev = DeviceSpec::uniform(6, 4.0);
    ModelOptions opts;
    opts.exact_reverse = true;
    for (Butterfly b : {Butterfly::Z, Butterfly::X}) {
        OtocGrid grid = run_otoc(dev, 0.0, 0.0, b, {0.0, 10.0, 20.0}, opts);
        CHECK((grid.values.row(0).array() - 1.0).abs().maxCoeff() < 1e-9);
        for (auto v : grid.valid) CHECK(v == 1);
    }
}

TEST_CASE("4-site ZZ otoc matches the dense matrix oracle") {
    DeviceSpec dev = DeviceSpec::uniform(4, 4.0);
    ModelOptions opts;
    opts.exact_reverse = true;
    const std::vector<double> grid_t{0.0, 7.0, 19.0, 42.0, 77.0};
    OtocGrid grid = run_otoc(dev, 0.0, 0.0, Butterfly::Z, grid_t, opts);

    auto ham = std::make_shared<EffectiveHamiltonian>(
        build_effective_hamiltonian(dev, DrivePattern::none(4), false, false, 0.065, 2));
    auto basis = ham->basis();
    const Eigen::MatrixXcd h = ham->dense_at(0.0);
    StateVector psi0 = product_state(basis, std::vector<std::uint8_t>{0, 1, 0, 1});
    const Eigen::MatrixXcd gate =
        Eigen::MatrixXcd(site_operator(basis, 3, SiteOpKind::Sz).matrix);
    for (std::size_t gi = 0; gi < grid_t.size(); ++gi) {
        const Eigen::MatrixXcd u = dense_u(h, grid_t[gi]);
        const Eigen::VectorXcd branch = u.adjoint() * (gate * (u * psi0.amplitudes));
        for (int j = 0; j < 4; ++j) {
            const double lambda = (j % 2 == 1) ? 1.0 : -1.0;
            const Eigen::MatrixXcd szj =
                Eigen::MatrixXcd(site_operator(basis, j, SiteOpKind::Sz).matrix);
            const double oracle = lambda * std::real(branch.dot(szj * branch));
            CHECK(std::abs(grid.values(static_cast<Eigen::Index>(gi), j) - oracle) < 1e-8);
        }
    }
}

TEST_CASE("free-fermion ZZ otoc agrees with the many-body engine") {
    const std::vector<double> ts{0.0, 15.0, 40.0, 90.0};
    OtocGrid ff = run_otoc_zz_free_fermion(8, 4.0, ts);
    ModelOptions opts;
    opts.exact_reverse = true;
    OtocGrid mb = run_otoc(DeviceSpec::uniform(8, 4.0), 0.0, 0.0, Butterfly::Z, ts, opts);
    CHECK((ff.values - mb.values).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("three-level ZZ otoc post-selects and stays valid at short times") {
    DeviceSpec dev = DeviceSpec::uniform(4, 4.0, 3);
    ModelOptions opts;
    opts.lab_frame = true;
    opts.levels = 3;
    OtocGrid grid = run_otoc(dev, 213.6, 400.0, Butterfly::Z, {0.0, 4.0, 8.0}, opts);
    CHECK(grid.post_selected);
    CHECK((grid.values.row(0).array() - 1.0).abs().maxCoeff() < 1e-9);
    for (auto v : grid.valid) CHECK(v == 1);
}

TEST_CASE("ssh quench with zero drive reduces to the plain walk") {
    DeviceSpec dev = DeviceSpec::uniform(6, 4.0);
    SshResult ssh = run_ssh_quench(dev, DrivePattern::none(6), 200.0);
    std::vector<std::uint8_t> init(6, 0);
    init[0] = 1;
    WalkResult walk = run_quantum_walk(dev, DrivePattern::none(6), init, 200.0);
    CHECK((ssh.populations.values - walk.populations.values).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("ssh trivial pattern delocalizes the edge excitation") {
    DeviceSpec dev = DeviceSpec::paper_10q().without_nnn();
    SshResult ssh =
        run_ssh_quench(dev, DrivePattern::on_sites(10, {3, 4, 7, 8}, 156.0), 400.0);
    CHECK(ssh.edge_average < 0.3);
}

TEST_CASE("otoc grid must be sorted") {
    CHECK_THROWS_AS((void)run_otoc(DeviceSpec::uniform(4, 4.0), 0.0, 0.0, Butterfly::Z,
                                   {10.0, 0.0}, {}),
                    std::invalid_argument);
}

TEST_CASE("walk rejects a mismatched initial state") {
    CHECK_THROWS_AS((void)run_quantum_walk(DeviceSpec::uniform(4, 4.0), DrivePattern::none(4),
                                           {1, 0, 0}, 10.0),
                    std::invalid_argument);
}

}  // TEST_SUITE
