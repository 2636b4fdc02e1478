#include "doctest.h"

#include "qmetro/linalg.hpp"
#include "qmetro/qfi.hpp"
#include "qmetro/random.hpp"
#include "qmetro/states.hpp"

#include "oracles.hpp"

using namespace qmetro;

TEST_CASE("hermitian construction rejects bad input") {
    Matrix rect(2, 3);
    rect.setZero();
    CHECK_THROWS_AS(HermitianOperator{rect}, std::invalid_argument);

    Matrix skew(2, 2);
    skew << 0.0, 1.0, -1.0, 0.0;  // antisymmetric, not Hermitian
    CHECK_THROWS_AS(HermitianOperator{skew}, std::invalid_argument);

    Matrix big = Matrix::Identity(kMaxDimension + 1, kMaxDimension + 1);
    CHECK_THROWS_AS(HermitianOperator{big}, std::invalid_argument);
}

TEST_CASE("herm_eig on diagonal and Pauli matrices") {
    Matrix d(2, 2);
    d << 0, 0, 0, 1;
    const auto dec = herm_eig(HermitianOperator(d));
    CHECK(dec.eigenvalues(0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(dec.eigenvalues(1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK((dec.eigenvectors - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() <
          1e-12);

    const auto sx = herm_eig(HermitianOperator(pauli_x()));
    CHECK(sx.eigenvalues(0) == doctest::Approx(-1.0));
    CHECK(sx.eigenvalues(1) == doctest::Approx(1.0));
}

TEST_CASE("herm_eig matches the 2x2 quadratic-root oracle") {
    const Matrix rho = example_mixed_qubit_matrix(0.5);
    const auto [lo, hi] = oracle::quadratic_eigenvalues(rho);
    const auto dec = herm_eig(HermitianOperator(rho));
    CHECK(dec.eigenvalues(0) == doctest::Approx(lo).epsilon(1e-12));
    CHECK(dec.eigenvalues(1) == doctest::Approx(hi).epsilon(1e-12));
}

TEST_CASE("reconstruction property on random Hermitians") {
    Rng rng(1234);
    for (int trial = 0; trial < 500; ++trial) {
        const int d = 2 + trial % 7;
        const HermitianOperator a = random_hermitian(rng, d);
        const auto dec = herm_eig(a);
        const Matrix recon = dec.eigenvectors *
                             dec.eigenvalues.asDiagonal().toDenseMatrix() *
                             dec.eigenvectors.adjoint();
        REQUIRE((recon - a.mat()).norm() < 1e-10);
        REQUIRE((dec.eigenvectors.adjoint() * dec.eigenvectors -
                 Matrix::Identity(d, d))
                    .norm() < 1e-10);
    }
}

TEST_CASE("seminorm values and shift invariance") {
    CHECK(seminorm(HermitianOperator(0.5 * pauli_z())) == doctest::Approx(1.0));
    CHECK(seminorm(HermitianOperator(Matrix::Identity(3, 3))) == 0.0);

    Rng rng(77);
    std::uniform_real_distribution<double> uni(-4.0, 4.0);
    for (int trial = 0; trial < 200; ++trial) {
        const HermitianOperator a = random_hermitian(rng, 2 + trial % 5);
        const double c = uni(rng);
        const HermitianOperator shifted(
            a.mat() + c * Matrix::Identity(a.dim(), a.dim()));
        REQUIRE(std::abs(seminorm(shifted) - seminorm(a)) <= 1e-12);
    }
}

TEST_CASE("seminorm of a pure-family SLD equals twice the root QFI") {
    Rng rng(5150);
    std::uniform_real_distribution<double> uni(0.05, 0.95);
    std::uniform_real_distribution<double> tuni(0.5, 2.0);
    for (int trial = 0; trial < 100; ++trial) {
        // alternate the bundled rotating family with arbitrary generators
        const StateFamily f =
            trial % 2 == 0
                ? single_qubit_family(uni(rng), 1.0)
                : StateFamily::pure_unitary(random_pure_state(rng, 2),
                                            random_hermitian(rng, 2),
                                            tuni(rng));
        const double fq =
            qfi_pure(f.pure().initial, f.pure().generator, f.pure().time);
        if (fq < 1e-10) continue;
        const auto res = sld_at(f, uni(rng));
        REQUIRE(std::abs(res.seminorm - 2.0 * std::sqrt(fq)) < 1e-8);
    }
}

TEST_CASE("evolve_unitary basics") {
    const HermitianOperator h(0.5 * pauli_z());
    CHECK((evolve_unitary(h, 0.0) - Matrix::Identity(2, 2)).norm() < 1e-14);

    // One full turn of a half-integer spin picks up a global minus sign.
    const Matrix full = evolve_unitary(h, 2.0 * M_PI);
    CHECK((full + Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-10);

    const Matrix u = evolve_unitary(h, 0.7);
    CHECK((u.adjoint() * u - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() <
          1e-10);
}

TEST_CASE("evolve_unitary applies the expected phases to a qubit") {
    const double p = 0.3, lam = 0.9, t = 1.7;
    CVector psi(2);
    psi << std::sqrt(p), std::sqrt(1.0 - p);
    const CVector evolved =
        evolve_unitary(HermitianOperator(0.5 * pauli_z()), lam * t) * psi;
    CHECK(std::abs(evolved(0) -
                   std::exp(Complex(0, -lam * t / 2)) * psi(0)) < 1e-12);
    CHECK(std::abs(evolved(1) -
                   std::exp(Complex(0, lam * t / 2)) * psi(1)) < 1e-12);
}

TEST_CASE("unitary composition property") {
    Rng rng(99);
    std::uniform_real_distribution<double> uni(-3.0, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        const HermitianOperator h = random_hermitian(rng, 2 + trial % 5);
        const double a = uni(rng), b = uni(rng);
        REQUIRE((evolve_unitary(h, a) * evolve_unitary(h, b) -
                 evolve_unitary(h, a + b))
                    .cwiseAbs()
                    .maxCoeff() < 1e-10);
    }
}

TEST_CASE("eigensolver failure carries the offending matrix") {
    Matrix poisoned(2, 2);
    const double nan = std::nan("");
    poisoned << nan, 0, 0, nan;
    try {
        herm_eig(HermitianOperator(poisoned));
        FAIL("expected EigensolverError");
    } catch (const EigensolverError& e) {
        CHECK(e.matrix.rows() == 2);
        CHECK(std::isnan(e.matrix(0, 0).real()));
    }
}

TEST_CASE("degenerate blocks come out in a fixed column order") {
    // identity has a fully degenerate spectrum
    const auto dec = herm_eig(HermitianOperator(Matrix::Identity(3, 3)));
    CHECK((dec.eigenvectors - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() <
          1e-12);
}

TEST_CASE("balanced-family SLD has spectral spread exactly 2") {
    const StateFamily f = single_qubit_family(0.5, 1.0);
    CHECK(sld_at(f, 0.3).seminorm == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("validate_density on the bundled example family") {
    const auto good = validate_density(
        HermitianOperator(example_mixed_qubit_matrix(0.5)), 1e-10);
    CHECK(good.ok);
    CHECK(oracle::det2(example_mixed_qubit_matrix(0.5)) >= 0.0);

    // Outside |lambda| <= 1 the determinant goes negative.
    const Matrix bad_mat = example_mixed_qubit_matrix(1.2);
    CHECK(oracle::det2(bad_mat) < 0.0);
    const auto bad = validate_density(HermitianOperator(bad_mat), 1e-10);
    CHECK(!bad.ok);
    CHECK(bad.min_eigenvalue < 0.0);
    CHECK(!bad.violations.empty());

    const auto mixed =
        validate_density(HermitianOperator(0.5 * Matrix::Identity(2, 2)));
    CHECK(mixed.ok);
}
