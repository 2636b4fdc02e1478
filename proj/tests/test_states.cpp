#include "doctest.h"

#include "qmetro/random.hpp"
#include "qmetro/states.hpp"

#include "oracles.hpp"

using namespace qmetro;

TEST_CASE("pure state normalization is enforced") {
    CVector bad(2);
    bad << 1.0, 1.0;
    CHECK_THROWS_AS(PureState{bad}, std::invalid_argument);
    CHECK_NOTHROW(PureState(bad / bad.norm()));
}

TEST_CASE("measurement basis requires orthonormal columns") {
    Matrix cols(2, 2);
    cols << 1, 1, 0, 0;
    CHECK_THROWS_AS(MeasurementBasis{cols}, std::invalid_argument);
}

TEST_CASE("probability clipping policy") {
    RVector raw(3);
    raw << 0.5, 0.5, -1e-13;  // roundoff negative, clipped
    const ProbDist p = ProbDist::from_raw(raw);
    CHECK(p[2] == 0.0);
    CHECK(p.values().sum() == doctest::Approx(1.0).epsilon(1e-15));

    raw << 0.5, 0.5, -1e-9;  // too negative
    CHECK_THROWS_AS(ProbDist::from_raw(raw), std::invalid_argument);

    raw << 0.5, 0.4, 0.0;  // does not sum to 1
    CHECK_THROWS_AS(ProbDist::from_raw(raw), std::invalid_argument);
}

TEST_CASE("family_eval of a unitary family at lambda = 0") {
    const StateFamily f = single_qubit_family(0.3, 1.4);
    const Matrix rho = family_eval(f, 0.0).mat();
    CVector psi(2);
    psi << std::sqrt(0.3), std::sqrt(0.7);
    CHECK((rho - psi * psi.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("bundled mixed family endpoints") {
    // delta = 0 admits the pure endpoints.
    const StateFamily f = example_mixed_qubit_family(0.0);
    Matrix expect(2, 2);
    expect << 0, 0, 0, 1;
    CHECK((family_eval(f, 0.0).mat() - expect).cwiseAbs().maxCoeff() < 1e-15);

    expect << 0.5, 0.5, 0.5, 0.5;
    const Matrix at_one = family_eval(f, 1.0).mat();
    CHECK((at_one - expect).cwiseAbs().maxCoeff() < 1e-15);
    // rank-1 by the quadratic-root oracle
    const auto [lo, hi] = oracle::quadratic_eigenvalues(at_one);
    CHECK(std::abs(lo) < 1e-14);
    CHECK(hi == doctest::Approx(1.0));

    Matrix mid(2, 2);
    mid << 0.125, 0.25, 0.25, 0.875;
    CHECK((family_eval(f, 0.5).mat() - mid).cwiseAbs().maxCoeff() < 1e-15);

    for (double lam : {0.1, 0.37, 0.91}) {
        CHECK(family_eval(f, lam).mat().trace().real() ==
              doctest::Approx(1.0).epsilon(1e-14));
    }

    // Default validity interval excludes the pure endpoints.
    const StateFamily clipped = example_mixed_qubit_family();
    CHECK_THROWS_AS(family_eval(clipped, 0.0), std::out_of_range);
    CHECK_THROWS_AS(family_eval(clipped, 1.2), std::out_of_range);
}

TEST_CASE("mixed_map constructor spot-checks the density invariant") {
    auto broken = [](double lam) -> Matrix {
        Matrix m(2, 2);
        m << lam, 0, 0, 1.0 - lam;  // negative eigenvalue for lam < 0
        return m;
    };
    CHECK_THROWS_AS(StateFamily::mixed_map(broken, -0.5, 0.5),
                    std::invalid_argument);
}

TEST_CASE("measurement probabilities match the printed curves") {
    const double p = 0.3, t = 1.0;
    const StateFamily f = single_qubit_family(p, t);
    const MeasurementBasis basis = plus_minus_p_basis(p);
    for (double lam : {0.0, 0.31, 1.8, 4.0}) {
        const ProbDist probs = measurement_probs(family_eval(f, lam), basis);
        const auto [plus, minus] = oracle::qubit_probs(p, lam, t);
        REQUIRE(probs[0] == doctest::Approx(plus).epsilon(1e-12));
        REQUIRE(probs[1] == doctest::Approx(minus).epsilon(1e-12));
    }
}

TEST_CASE("an eigenvector outcome takes all the probability") {
    Matrix rho(2, 2);
    rho << 1, 0, 0, 0;
    Matrix cols(2, 2);
    cols << 1, 0, 0, 1;
    const ProbDist p = measurement_probs(HermitianOperator(rho),
                                         MeasurementBasis(cols));
    CHECK(p[0] == 1.0);
    CHECK(p[1] == 0.0);
}

TEST_CASE("phase-rotated basis probabilities") {
    const StateFamily f = single_qubit_family(0.5, 1.0);
    const double phi = 0.8;
    const MeasurementBasis basis = phase_rotated_basis(phi);
    for (double lam : {0.0, 0.3, 2.2}) {
        const ProbDist probs = measurement_probs(family_eval(f, lam), basis);
        const auto [plus, minus] = oracle::rotated_probs(phi, lam);
        REQUIRE(probs[0] == doctest::Approx(plus).epsilon(1e-12));
        REQUIRE(probs[1] == doctest::Approx(minus).epsilon(1e-12));
    }
}

TEST_CASE("probabilities sum to one over random bases") {
    Rng rng(31);
    for (int trial = 0; trial < 500; ++trial) {
        const int d = 2 + trial % 7;
        const HermitianOperator rho = random_density(rng, d);
        const ProbDist p = measurement_probs(rho, random_basis(rng, d));
        REQUIRE(std::abs(p.values().sum() - 1.0) < 1e-10);
    }
}

TEST_CASE("derivative of the bundled family matches the analytic form") {
    const StateFamily f = example_mixed_qubit_family();
    for (double lam : {0.1, 0.5, 0.9}) {
        for (double step : {1e-5, 1e-4, 1e-3}) {
            const Matrix d = derivative_rho(f, lam, step).mat();
            REQUIRE((d - oracle::example_drho(lam)).cwiseAbs().maxCoeff() <
                    1e-7);
        }
    }
}

TEST_CASE("derivative of a unitary family matches the commutator") {
    Rng rng(8);
    for (int trial = 0; trial < 40; ++trial) {
        const int d = 2 + trial % 4;
        std::uniform_real_distribution<double> uni(0.5, 2.0);
        const double t = uni(rng);
        const StateFamily f = StateFamily::pure_unitary(
            random_pure_state(rng, d), random_hermitian(rng, d), t);
        const double lam = uni(rng) - 1.0;
        const Matrix got = derivative_rho(f, lam).mat();
        const Matrix want = oracle::commutator_drho(
            f.pure().generator.mat(), family_eval(f, lam).mat(), t);
        REQUIRE((got - want).cwiseAbs().maxCoeff() < 1e-7);
    }
}

TEST_CASE("derivative of a constant family is zero") {
    auto constant = [](double) -> Matrix {
        return 0.5 * Matrix::Identity(2, 2);
    };
    const StateFamily f = StateFamily::mixed_map(constant, -1.0, 1.0);
    CHECK(derivative_rho(f, 0.0).mat().cwiseAbs().maxCoeff() < 1e-12);
    CHECK_THROWS_AS(derivative_rho(f, 1.0), std::out_of_range);
}

TEST_CASE("single_qubit_family construction") {
    CHECK_THROWS_AS(single_qubit_family(1.5, 1.0), std::invalid_argument);

    // p = 1 is stationary up to phase.
    const StateFamily f1 = single_qubit_family(1.0, 1.0);
    Matrix e0(2, 2);
    e0 << 1, 0, 0, 0;
    CHECK((family_eval(f1, 2.7).mat() - e0).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("period metadata") {
    CHECK(*single_qubit_family(0.5, 1.0).period() ==
          doctest::Approx(2.0 * M_PI));
    CHECK(*single_qubit_family(0.3, 2.0).period() == doctest::Approx(M_PI));

    // Incommensurate gaps: no period.
    Matrix gen = Matrix::Zero(3, 3);
    gen(0, 0) = 0.0;
    gen(1, 1) = 1.0;
    gen(2, 2) = std::sqrt(2.0);
    CVector amps(3);
    amps << 1, 1, 1;
    const StateFamily f = StateFamily::pure_unitary(
        PureState(amps / amps.norm()), HermitianOperator(gen), 1.0);
    CHECK(!f.period());

    // Equal-gap spectrum: period from the common gap.
    gen(2, 2) = 2.0;
    const StateFamily g = StateFamily::pure_unitary(
        PureState(amps / amps.norm()), HermitianOperator(gen), 1.0);
    REQUIRE(g.period());
    CHECK(*g.period() == doctest::Approx(2.0 * M_PI));
}

TEST_CASE("families are periodic when the metadata says so") {
    Rng rng(444);
    for (int trial = 0; trial < 50; ++trial) {
        const int d = 2 + trial % 5;
        std::uniform_real_distribution<double> uni(0.5, 2.0);
        const StateFamily f = StateFamily::pure_unitary(
            random_pure_state(rng, d), random_commensurate_generator(rng, d),
            uni(rng));
        REQUIRE(f.period());
        const double lam = uni(rng);
        REQUIRE((family_eval(f, lam).mat() -
                 family_eval(f, lam + *f.period()).mat())
                    .cwiseAbs()
                    .maxCoeff() < 1e-10);
    }
}

TEST_CASE("family evaluations are always valid density matrices") {
    Rng rng(606);
    std::uniform_real_distribution<double> lamuni(-3.0, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
        const StateFamily pure = StateFamily::pure_unitary(
            random_pure_state(rng, 2 + trial % 4),
            random_hermitian(rng, 2 + trial % 4), 1.0);
        REQUIRE(validate_density(family_eval(pure, lamuni(rng)), 1e-10).ok);
        const StateFamily mixed = random_smooth_qubit_family(rng);
        REQUIRE(validate_density(family_eval(mixed, lamuni(rng)), 1e-10).ok);
    }
}

TEST_CASE("nonsld_basis construction and limits") {
    CVector a(2), b(2);
    a << 1, 0;
    b << 0, 1;
    const PureState psi0(a), perp(b);

    CHECK_THROWS_AS(nonsld_basis(psi0, psi0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(nonsld_basis(psi0, perp, 0.0), std::invalid_argument);

    // q = 1 returns {psi0, -perp}.
    const MeasurementBasis at_one = nonsld_basis(psi0, perp, 1.0);
    CHECK((at_one.vector(0) - a).norm() < 1e-15);
    CHECK((at_one.vector(1) + b).norm() < 1e-15);

    // q = 1/2 is the balanced pair.
    const MeasurementBasis half = nonsld_basis(psi0, perp, 0.5);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(half.vector(0)(0) - r) < 1e-15);
    CHECK(std::abs(half.vector(0)(1) - r) < 1e-15);
    CHECK(std::abs(half.vector(1)(0) - r) < 1e-15);
    CHECK(std::abs(half.vector(1)(1) + r) < 1e-15);
}

TEST_CASE("calibrated basis entropy collapses near q = 1") {
    const StateFamily f = single_qubit_family(0.5, 1.0);
    const double lam0 = 0.7;
    const CVector psi0 = f.state_vector(lam0);
    CVector perp(2);
    perp << -std::conj(psi0(1)), std::conj(psi0(0));
    const MeasurementBasis basis =
        nonsld_basis(PureState(psi0), PureState(perp), 0.99);
    const double s =
        measurement_probs(family_eval(f, lam0), basis).entropy();
    CHECK(s == doctest::Approx(oracle::binary_entropy(0.99)).epsilon(1e-10));
    CHECK(s < 0.06);
}
