#include <doctest.h>

#include <cmath>
#include <functional>

#include "floq/hamiltonian.hpp"

using namespace floq;

namespace {

// Independent J0 oracle: adaptive Simpson quadrature of the integral
// representation (1/pi) int_0^pi cos(x sin t) dt.
double j0_quadrature(double x) {
    auto f = [x](double t) { return std::cos(x * std::sin(t)); };
    auto simpson = [&](double a, double b) {
        return (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
    };
    std::function<double(double, double, double)> adapt = [&](double a, double b, double whole) {
        const double m = 0.5 * (a + b);
        const double left = simpson(a, m), right = simpson(m, b);
        if (std::abs(left + right - whole) < 1e-14) return left + right;
        return adapt(a, m, left) + adapt(m, b, right);
    };
    const double pi = 3.141592653589793238463;
    return adapt(0.0, pi, simpson(0.0, pi)) / pi;
}

}  // namespace

TEST_SUITE("hamiltonian") {

TEST_CASE("bessel J0 against quadrature oracle") {
    for (double x : {0.0, 0.3, 1.0, 1.78, 10.0 / 3.0, 5.5, 12.0, 19.5})
        CHECK(std::abs(bessel_j0(x) - j0_quadrature(x)) < 1e-12);
    CHECK(bessel_j0(1.0) == doctest::Approx(0.7651976865579666).epsilon(1e-13));
    CHECK(std::abs(bessel_j0(2.404825557695773)) < 1e-12);  // first zero
    CHECK(bessel_j0(-3.0) == doctest::Approx(bessel_j0(3.0)));  // even
    CHECK(bessel_j0(50.0) == doctest::Approx(j0_quadrature(50.0)).epsilon(1e-9));
}

TEST_CASE("effective coupling follows g J0(delta eps / nu)") {
    CHECK(effective_coupling(10.0, 213.6, 0.0, 120.0) ==
          doctest::Approx(10.0 * 0.351612817064360).epsilon(1e-8));
    CHECK(effective_coupling(10.0, 400.0, 0.0, 120.0) ==
          doctest::Approx(-10.0 * 0.351422834293302).epsilon(1e-8));
    CHECK(effective_coupling(4.0, 0.0, 0.0, 120.0) == doctest::Approx(4.0));
    // even in the sign of the difference
    CHECK(effective_coupling(4.0, 0.0, 156.0, 120.0) ==
          doctest::Approx(effective_coupling(4.0, 156.0, 0.0, 120.0)));
}

TEST_CASE("angular conversion") {
    CHECK(angular(120.0) == doctest::Approx(2.0 * 3.141592653589793 * 0.12));
    CHECK(angular(0.0) == 0.0);
}

TEST_CASE("effective Hamiltonian: hermitian, correct couplings") {
    DeviceSpec dev = DeviceSpec::uniform(4, 4.0);
    DrivePattern drive = DrivePattern::staggered_odd(4, 213.6);
    EffectiveHamiltonian ham = build_effective_hamiltonian(dev, drive);
    const Eigen::MatrixXcd h = ham.dense_at(0.0);
    CHECK((h - h.adjoint()).norm() < 1e-13);
    REQUIRE(ham.nn_effective_mhz().size() == 3);
    for (double g : ham.nn_effective_mhz())
        CHECK(g == doctest::Approx(4.0 * 0.351612817064360).epsilon(1e-8));
    // single-excitation hopping element equals the angular effective coupling
    auto basis = ham.basis();
    auto i10 = *basis->index_of(std::vector<std::uint8_t>{1, 0, 0, 0});
    auto i01 = *basis->index_of(std::vector<std::uint8_t>{0, 1, 0, 0});
    CHECK(std::abs(h(static_cast<Eigen::Index>(i10), static_cast<Eigen::Index>(i01)) -
                   Complex(angular(ham.nn_effective_mhz()[0]), 0.0)) < 1e-12);
}

TEST_CASE("ZZ correction is diagonal") {
    DeviceSpec dev = DeviceSpec::paper_10q();
    DrivePattern drive = DrivePattern::staggered_odd(10, 213.6);
    const Eigen::MatrixXcd h0 =
        build_effective_hamiltonian(dev, drive, false, false, 0.065, 5).dense_at(0.0);
    const Eigen::MatrixXcd h1 =
        build_effective_hamiltonian(dev, drive, false, true, 0.065, 5).dense_at(0.0);
    const Eigen::MatrixXcd d = h1 - h0;
    CHECK((d - Eigen::MatrixXcd(d.diagonal().asDiagonal())).norm() < 1e-13);
    CHECK(d.diagonal().norm() > 0.0);
}

TEST_CASE("NNN couplings only enter when requested") {
    DeviceSpec dev = DeviceSpec::paper_10q();
    DrivePattern drive = DrivePattern::none(10);
    const Eigen::MatrixXcd h0 =
        build_effective_hamiltonian(dev.without_nnn(), drive, false, false, 0.065, 1).dense_at(0.0);
    const Eigen::MatrixXcd h1 =
        build_effective_hamiltonian(dev, drive, true, false, 0.065, 1).dense_at(0.0);
    CHECK((h1 - h0).norm() > 1e-3);  // NNN hopping present
    // single-excitation block: extra elements connect sites two apart
    auto basis = FockBasis::build(10, 2, 1);
    auto i0 = *basis->index_of(std::vector<std::uint8_t>{1, 0, 0, 0, 0, 0, 0, 0, 0, 0});
    auto i2 = *basis->index_of(std::vector<std::uint8_t>{0, 0, 1, 0, 0, 0, 0, 0, 0, 0});
    CHECK(std::abs(h0(static_cast<Eigen::Index>(i0), static_cast<Eigen::Index>(i2))) < 1e-15);
    CHECK(std::abs(h1(static_cast<Eigen::Index>(i0), static_cast<Eigen::Index>(i2))) > 1e-4);
}

TEST_CASE("lab Hamiltonian: period, drive modulation, anharmonicity") {
    DeviceSpec dev = DeviceSpec::uniform(2, 10.72, 3);
    dev.anharmonicities = {-200.0, -200.0};
    DrivePattern drive = DrivePattern::none(2);
    drive.amplitudes[0] = 213.6;
    LabHamiltonian ham = build_lab_hamiltonian(dev, drive);
    REQUIRE(ham.period_ns().has_value());
    CHECK(*ham.period_ns() == doctest::Approx(1000.0 / 120.0));
    const double T = *ham.period_ns();
    // cosine drive: H(0) - H(T/2) = 2 * drive diagonal, H(T/4) = static part
    const Eigen::MatrixXcd h0 = ham.dense_at(0.0);
    const Eigen::MatrixXcd hq = ham.dense_at(0.25 * T);
    const Eigen::MatrixXcd hh = ham.dense_at(0.5 * T);
    CHECK((0.5 * (h0 + hh) - hq).norm() < 1e-10);
    const Eigen::MatrixXcd ds = h0 - hq;  // pure drive diagonal
    CHECK((ds - Eigen::MatrixXcd(ds.diagonal().asDiagonal())).norm() < 1e-10);
    // undriven lab Hamiltonian is static
    CHECK_FALSE(build_lab_hamiltonian(dev, DrivePattern::none(2)).is_time_dependent());
}

TEST_CASE("scaled Hamiltonian flips the generator") {
    DeviceSpec dev = DeviceSpec::uniform(3, 4.0);
    auto inner = std::make_shared<EffectiveHamiltonian>(
        build_effective_hamiltonian(dev, DrivePattern::none(3)));
    ScaledHamiltonian neg(inner, -1.0);
    CHECK((neg.dense_at(0.0) + inner->dense_at(0.0)).norm() < 1e-14);
    CHECK(neg.norm_bound() == doctest::Approx(inner->norm_bound()));
}

TEST_CASE("SSH couplings: intracell bonds suppressed by J0(1.3)") {
    DeviceSpec dev = DeviceSpec::uniform(10, 4.0);
    DrivePattern nontrivial = DrivePattern::on_sites(10, {2, 3, 6, 7, 9}, 156.0);
    EffectiveHamiltonian ham = build_ssh_hamiltonian(dev, nontrivial, 1);
    SshCouplings c = ssh_couplings(ham);
    REQUIRE(c.intracell_mhz.size() == 5);
    REQUIRE(c.intercell_mhz.size() == 4);
    for (double g : c.intracell_mhz)
        CHECK(std::abs(g) == doctest::Approx(4.0 * 0.6200860).epsilon(1e-6));
    // the measured pattern leaves bond (8,9) suppressed as well
    for (std::size_t b : {0u, 1u, 2u})
        CHECK(std::abs(c.intercell_mhz[b]) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(std::abs(c.intercell_mhz[3]) == doctest::Approx(4.0 * 0.6200860).epsilon(1e-6));
    // trivial pattern: the suppression moves to the intercell bonds
    DrivePattern trivial = DrivePattern::on_sites(10, {3, 4, 7, 8}, 156.0);
    SshCouplings ct = ssh_couplings(build_ssh_hamiltonian(dev, trivial, 1));
    for (double g : ct.intercell_mhz)
        CHECK(std::abs(g) == doctest::Approx(4.0 * 0.6200860).epsilon(1e-6));
}

}  // TEST_SUITE
