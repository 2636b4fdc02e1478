#include "doctest.h"

#include "qmetro/bounds.hpp"
#include "qmetro/random.hpp"

#include "oracles.hpp"

using namespace qmetro;

namespace {
const double kLn2 = std::log(2.0);
}

TEST_CASE("entropy-purity inequality equality cases") {
    RVector p(2);
    p << 0.5, 0.5;
    const BoundReport uniform = entropy_purity_check(ProbDist::from_raw(p));
    CHECK(uniform.holds);
    CHECK(uniform.lhs == doctest::Approx(2.0 * kLn2).epsilon(1e-14));
    CHECK(std::abs(uniform.slack) < 1e-14);

    RVector det = RVector::Zero(5);
    det(3) = 1.0;
    const BoundReport deterministic =
        entropy_purity_check(ProbDist::from_raw(det));
    CHECK(deterministic.holds);
    CHECK(std::abs(deterministic.slack) < 1e-14);

    // padded uniform-binary inside a larger alphabet is still equality
    RVector padded = RVector::Zero(7);
    padded(1) = padded(5) = 0.5;
    CHECK(std::abs(entropy_purity_check(ProbDist::from_raw(padded)).slack) <
          1e-14);
}

TEST_CASE("entropy-purity inequality random fuzz") {
    Rng rng(19);
    for (int trial = 0; trial < 20000; ++trial) {
        const int d = 2 + trial % 15;
        const BoundReport rep =
            entropy_purity_check(random_distribution(rng, d));
        REQUIRE(rep.holds);
    }
}

TEST_CASE("sld entropy bound is tight on pure qubit families") {
    const StateFamily f = single_qubit_family(0.3, 1.0);
    const InequalityCase c = sld_entropy_bound(f, 0.6);
    CHECK(c.report.holds);
    CHECK(c.shannon == doctest::Approx(kLn2).epsilon(1e-10));
    CHECK(c.report.rhs == doctest::Approx(kLn2).epsilon(1e-10));
    CHECK(std::abs(c.report.slack) < 1e-8);
    CHECK(equality_case_detect(c) == EqualityCase::PureState);
}

TEST_CASE("sld entropy bound on random pure families of higher dimension") {
    Rng rng(20);
    std::uniform_real_distribution<double> uni(0.5, 2.0);
    std::uniform_real_distribution<double> lamuni(-1.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const int d = 2 + trial % 5;
        const StateFamily f = StateFamily::pure_unitary(
            random_pure_state(rng, d), random_hermitian(rng, d), uni(rng));
        const InequalityCase c = sld_entropy_bound(f, lamuni(rng));
        if (c.sld_seminorm < 1e-9) continue;  // stationary, vacuous
        REQUIRE(std::abs(c.report.slack) < 1e-8);
        REQUIRE(equality_case_detect(c) == EqualityCase::PureState);
    }
}

TEST_CASE("sld entropy bound sweep over the bundled mixed family") {
    const StateFamily f = example_mixed_qubit_family();
    double prev_shannon = -1.0;
    for (int k = 0; k < 91; ++k) {
        const double lam = 0.05 + 0.9 * k / 90.0;
        const InequalityCase c = sld_entropy_bound(f, lam);
        REQUIRE(c.report.holds);
        REQUIRE(c.report.slack > 0.0);  // strict: the family is never tight
        REQUIRE(c.report.rhs <= kLn2 + 1e-12);
        prev_shannon = c.shannon;
    }
    (void)prev_shannon;

    const InequalityCase mid = sld_entropy_bound(f, 0.5);
    CHECK(mid.qfi == doctest::Approx(7.0 / 3.0).epsilon(1e-6));
    CHECK(equality_case_detect(mid) == EqualityCase::None);
}

TEST_CASE("sld entropy bound is vacuous on a stationary family") {
    auto constant = [](double) -> Matrix {
        Matrix m(2, 2);
        m << 0.7, 0.1, 0.1, 0.3;
        return m;
    };
    const StateFamily f = StateFamily::mixed_map(constant, -1.0, 1.0);
    const InequalityCase c = sld_entropy_bound(f, 0.0);
    CHECK(c.report.holds);
    CHECK(c.report.rhs == 0.0);
    CHECK(c.report.context == "vacuous");
    CHECK(equality_case_detect(c) == EqualityCase::None);
}

TEST_CASE("sld entropy bound holds on random mixed qubit families") {
    Rng rng(21);
    std::uniform_real_distribution<double> uni(-9.0, 9.0);
    for (int trial = 0; trial < 200; ++trial) {
        const StateFamily f = random_smooth_qubit_family(rng);
        for (int k = 0; k < 5; ++k) {
            const InequalityCase c = sld_entropy_bound(f, uni(rng));
            REQUIRE(c.report.holds);
        }
    }
}

TEST_CASE("two-level bound reduces to log 2 when the split is nonclassical") {
    const QfiSplit split{2.0, 0.0, 2.0, Complex(std::sqrt(2.0), 0.0), 0.0};
    const BoundReport rep = two_level_entropy_bound(split, 0.3, kLn2);
    CHECK(rep.rhs == doctest::Approx(kLn2).epsilon(1e-14));
    CHECK(rep.holds);
}

TEST_CASE("two-level bound with balanced weights ignores the classical part") {
    const QfiSplit split{1.5, 1.5, 0.0, Complex(0.0, 0.0), 1.0};
    const BoundReport rep = two_level_entropy_bound(split, 0.5, kLn2);
    // coefficient (1/(4 p1 p2) - 1) vanishes at p1 = p2 = 1/2
    CHECK(rep.rhs == doctest::Approx(kLn2).epsilon(1e-14));
}

TEST_CASE("two-level bound rejects degenerate weights") {
    const QfiSplit split{1.0, 0.5, 0.5, Complex(0.5, 0.5), 0.5};
    CHECK_THROWS_AS(two_level_entropy_bound(split, 0.0, kLn2),
                    std::invalid_argument);
    CHECK_THROWS_AS(two_level_entropy_bound(split, 1.0, kLn2),
                    std::invalid_argument);
}

TEST_CASE("two-level bound on the bundled family at midpoint") {
    const StateFamily f = example_mixed_qubit_family();
    const InequalityCase c = sld_entropy_bound(f, 0.5);
    REQUIRE(c.split);
    const double p1 = herm_eig(family_eval(f, 0.5)).eigenvalues(0);
    const BoundReport rep = two_level_entropy_bound(*c.split, p1, c.shannon);
    CHECK(rep.holds);
    CHECK(rep.rhs <= kLn2 + 1e-12);
    // the two-level form equals the seminorm form of the same bound
    CHECK(rep.rhs == doctest::Approx(c.report.rhs).epsilon(1e-6));
}

TEST_CASE("constructed constant-weight ensemble sits at equality") {
    auto evaluator = [](double lam) -> Matrix {
        const double ang = 0.8 * lam + 0.2;
        CVector phi1(2), phi2(2);
        phi1 << std::cos(ang), std::sin(ang);
        phi2 << -std::sin(ang), std::cos(ang);
        return 0.2 * phi1 * phi1.adjoint() + 0.8 * phi2 * phi2.adjoint();
    };
    const StateFamily f =
        StateFamily::mixed_map(evaluator, -5.0, 5.0, "constant_weights");
    const InequalityCase c = sld_entropy_bound(f, 0.9);
    CHECK(c.shannon == doctest::Approx(kLn2).epsilon(1e-8));
    CHECK(c.report.rhs == doctest::Approx(kLn2).epsilon(1e-8));
    CHECK(equality_case_detect(c) == EqualityCase::BalancedTwoLevel);
}

TEST_CASE("violation search collapses the entropy but not the Fisher info") {
    const StateFamily f = single_qubit_family(0.5, 1.0);
    const auto cases = violation_search(f, 0.4, {0.5, 0.9, 0.99, 0.999, 1.0});

    CHECK(cases[0].shannon == doctest::Approx(kLn2).epsilon(1e-10));

    CHECK(cases[2].shannon ==
          doctest::Approx(oracle::binary_entropy(0.99)).epsilon(1e-9));
    CHECK(cases[2].shannon < 0.06);

    CHECK(cases[3].shannon < 0.009);
    CHECK(*cases[3].classical_fisher > 0.99);
    CHECK(!cases[3].report.holds);  // expected under-shoot of the SLD bound
    CHECK(cases[3].report.context.find("expected-violation") !=
          std::string::npos);

    CHECK(cases[4].shannon < 1e-12);
    CHECK(*cases[4].classical_fisher > 0.99);
}

TEST_CASE("violation-search entropy is strictly decreasing in q") {
    const StateFamily f = single_qubit_family(0.5, 1.0);
    std::vector<double> qs;
    for (int k = 0; k < 40; ++k) qs.push_back(0.51 + 0.49 * k / 39.0);
    const auto cases = violation_search(f, 0.4, qs);
    for (std::size_t k = 1; k < cases.size(); ++k) {
        REQUIRE(cases[k].shannon < cases[k - 1].shannon);
    }
}

TEST_CASE("violation search requires a non-stationary pure family") {
    CHECK_THROWS_AS(violation_search(single_qubit_family(1.0, 1.0), 0.4, {0.9}),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        violation_search(example_mixed_qubit_family(), 0.5, {0.9}),
        std::invalid_argument);
}
