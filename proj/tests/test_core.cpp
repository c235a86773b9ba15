#include <doctest.h>

#include "floq/operators.hpp"
#include "floq/state.hpp"

using namespace floq;

TEST_SUITE("core") {

TEST_CASE("basis dimensions") {
    CHECK(FockBasis::build(2, 2)->dim() == 4);
    CHECK(FockBasis::build(10, 2)->dim() == 1024);
    CHECK(FockBasis::build(10, 2, 5)->dim() == 252);   // C(10,5)
    CHECK(FockBasis::build(10, 3)->dim() == 59049);    // 3^10
    CHECK(FockBasis::build(10, 3, 5)->dim() == 1452);  // <= 2 quanta per site
    CHECK(FockBasis::build(4, 2, 0)->dim() == 1);
}

TEST_CASE("basis ordering and lookup round trip") {
    auto basis = FockBasis::build(3, 3);
    // lexicographic with site 1 most significant
    CHECK(basis->key_of(basis->occupation(0)) == 0);
    for (std::size_t i = 0; i + 1 < basis->dim(); ++i)
        CHECK(basis->key_of(basis->occupation(i)) < basis->key_of(basis->occupation(i + 1)));
    for (std::size_t i = 0; i < basis->dim(); ++i) {
        auto idx = basis->index_of(basis->occupation(i));
        REQUIRE(idx.has_value());
        CHECK(*idx == i);
    }
    std::vector<std::uint8_t> missing{2, 2, 2};
    CHECK(FockBasis::build(3, 2)->index_of(missing) == std::nullopt);
}

TEST_CASE("sector restriction keeps only matching tuples") {
    auto basis = FockBasis::build(6, 2, 3);
    for (std::size_t i = 0; i < basis->dim(); ++i) {
        int total = 0;
        for (auto o : basis->occupation(i)) total += o;
        CHECK(total == 3);
    }
}

TEST_CASE("basis cache returns pointer-identical objects") {
    auto a = FockBasis::build(10, 2, 5);
    auto b = FockBasis::build(10, 2, 5);
    CHECK(a.get() == b.get());
    CHECK(a->same_as(*b));
    CHECK(FockBasis::build(10, 2).get() != a.get());
}

TEST_CASE("product state and occupation parsing") {
    auto basis = FockBasis::build(4, 2);
    StateVector psi = product_state(basis, occupations_from_string("0110"));
    CHECK(psi.norm() == doctest::Approx(1.0));
    Eigen::VectorXd n = site_populations(psi);
    CHECK(n[0] == doctest::Approx(0.0));
    CHECK(n[1] == doctest::Approx(1.0));
    CHECK(n[2] == doctest::Approx(1.0));
    CHECK(n[3] == doctest::Approx(0.0));
    CHECK_THROWS_AS((void)occupations_from_string("01x0"), std::invalid_argument);
    CHECK_THROWS_AS((void)product_state(basis, occupations_from_string("012")),
                    std::invalid_argument);
}

TEST_CASE("plus product state is uniform over the qubit basis") {
    auto basis = FockBasis::build(3, 2);
    StateVector psi = plus_product_state(basis);
    for (Eigen::Index i = 0; i < psi.amplitudes.size(); ++i)
        CHECK(std::abs(psi.amplitudes[i] - Complex(std::pow(2.0, -1.5), 0.0)) < 1e-14);
    CHECK_THROWS_AS((void)plus_product_state(FockBasis::build(3, 2, 1)), std::invalid_argument);
}

TEST_CASE("level populations distinguish level 1 and level 2") {
    auto basis = FockBasis::build(3, 3);
    StateVector psi = product_state(basis, std::vector<std::uint8_t>{2, 1, 0});
    CHECK(site_populations(psi)[0] == doctest::Approx(2.0));
    CHECK(level1_populations(psi)[0] == doctest::Approx(0.0));
    CHECK(level2_populations(psi)[0] == doctest::Approx(1.0));
    CHECK(level1_populations(psi)[1] == doctest::Approx(1.0));
    CHECK(level2_populations(psi)[1] == doctest::Approx(0.0));
}

TEST_CASE("site operators: hermiticity and ladder adjoints") {
    auto basis = FockBasis::build(3, 3);
    for (auto kind : {SiteOpKind::Number, SiteOpKind::Sx, SiteOpKind::Sy, SiteOpKind::Sz})
        CHECK(site_operator(basis, 1, kind).is_hermitian());
    auto lower = site_operator(basis, 1, SiteOpKind::Lower);
    auto raise = site_operator(basis, 1, SiteOpKind::Raise);
    const SparseMatrixC lower_adj = lower.matrix.adjoint();
    CHECK((lower_adj - raise.matrix).norm() < 1e-14);
}

TEST_CASE("sz convention is diag(-1, +1)") {
    auto basis = FockBasis::build(2, 2);
    StateVector psi = product_state(basis, std::vector<std::uint8_t>{0, 1});
    CHECK(expectation(psi, site_operator(basis, 0, SiteOpKind::Sz)) == doctest::Approx(-1.0));
    CHECK(expectation(psi, site_operator(basis, 1, SiteOpKind::Sz)) == doctest::Approx(1.0));
}

TEST_CASE("embed_local matches site_operator") {
    auto basis = FockBasis::build(3, 2);
    auto direct = site_operator(basis, 2, SiteOpKind::Sx);
    auto embedded = embed_local(basis, 2, local_site_matrix(SiteOpKind::Sx, 2));
    CHECK((direct.matrix - embedded.matrix).norm() < 1e-14);
}

TEST_CASE("gate matrices are unitary; SigmaX(0) truncates level 2") {
    for (auto kind : {GateKind::X, GateKind::Z, GateKind::YHalfPi})
        for (int d : {2, 3}) {
            const Eigen::MatrixXcd u = gate_matrix(kind, d);
            CHECK((u * u.adjoint() - Eigen::MatrixXcd::Identity(d, d)).norm() < 1e-14);
        }
    const Eigen::MatrixXcd sx1 = gate_matrix(GateKind::SigmaX, 3, 1.0);
    CHECK((sx1 * sx1.adjoint() - Eigen::MatrixXcd::Identity(3, 3)).norm() < 1e-14);
    const Eigen::MatrixXcd sx0 = gate_matrix(GateKind::SigmaX, 3, 0.0);
    CHECK(sx0(2, 2) == Complex(0.0, 0.0));
}

TEST_CASE("gates preserve norm and act locally") {
    auto basis = FockBasis::build(3, 2);
    StateVector psi = product_state(basis, std::vector<std::uint8_t>{1, 0, 1});
    StateVector flipped = apply_gate(psi, 1, GateKind::X);
    CHECK(flipped.norm() == doctest::Approx(1.0));
    CHECK(site_populations(flipped)[1] == doctest::Approx(1.0));
    // Z on an occupied site flips the amplitude sign
    StateVector z = apply_gate(psi, 0, GateKind::Z);
    CHECK((z.amplitudes + psi.amplitudes).norm() < 1e-14);
}

}  // TEST_SUITE
