#include <cmath>
#include <functional>

#include "json.hpp"

#include "qmetro/cli.hpp"
#include "qmetro/version.hpp"

namespace qmetro::cli {

namespace {

using nlohmann::ordered_json;

const double kLog2 = std::log(2.0);

struct SuiteRun {
    std::string name;
    int trials = 0;
    int failures = 0;
};

class FuzzHarness {
public:
    explicit FuzzHarness(const RunConfig& cfg)
        : rng_(cfg.seed), scale_(cfg.trials_scale) {}

    // Runs `body` once per trial; the body returns an empty json on
    // success or a witness describing the failure.
    void suite(const std::string& name, int base_trials,
               const std::function<ordered_json(Rng&, int)>& body) {
        SuiteRun run;
        run.name = name;
        run.trials = std::max(1, static_cast<int>(base_trials * scale_));
        for (int trial = 0; trial < run.trials; ++trial) {
            ordered_json witness;
            try {
                witness = body(rng_, trial);
            } catch (const std::exception& e) {
                witness = ordered_json{{"exception", e.what()}};
            }
            if (!witness.is_null() && !witness.empty()) {
                ++run.failures;
                witness["suite"] = name;
                witness["trial"] = trial;
                witnesses_.push_back(std::move(witness));
            }
        }
        suites_.push_back(std::move(run));
    }

    const std::vector<SuiteRun>& suites() const { return suites_; }
    const std::vector<ordered_json>& witnesses() const { return witnesses_; }

private:
    Rng rng_;
    double scale_;
    std::vector<SuiteRun> suites_;
    std::vector<ordered_json> witnesses_;
};

ordered_json ok() { return ordered_json(); }

ordered_json failed(std::initializer_list<std::pair<std::string, double>> kv) {
    ordered_json j;
    for (const auto& [k, v] : kv) j[k] = v;
    return j;
}

int dim_cycle(int trial, int lo, int hi) {
    return lo + trial % (hi - lo + 1);
}

// --- individual suites -----------------------------------------------

ordered_json check_eig_reconstruction(Rng& rng, int trial) {
    const int d = dim_cycle(trial, 2, 8);
    const HermitianOperator a = random_hermitian(rng, d);
    const auto dec = herm_eig(a);
    const double recon = (dec.eigenvectors *
                              dec.eigenvalues.asDiagonal().toDenseMatrix() *
                              dec.eigenvectors.adjoint() -
                          a.mat())
                             .norm();
    const double ortho = (dec.eigenvectors.adjoint() * dec.eigenvectors -
                          Matrix::Identity(d, d))
                             .norm();
    double pair_residual = 0.0;
    for (int k = 0; k < d; ++k) {
        pair_residual = std::max(
            pair_residual, (a.mat() * dec.eigenvectors.col(k) -
                            dec.eigenvalues(k) * dec.eigenvectors.col(k))
                               .cwiseAbs()
                               .maxCoeff());
    }
    bool sorted = true;
    for (int k = 1; k < d; ++k) {
        sorted = sorted && dec.eigenvalues(k) >= dec.eigenvalues(k - 1);
    }
    if (recon > 1e-10 || ortho > 1e-10 || pair_residual > 1e-10 || !sorted) {
        return failed({{"reconstruction", recon},
                       {"orthonormality", ortho},
                       {"pair_residual", pair_residual}});
    }
    return ok();
}

ordered_json check_seminorm_shift(Rng& rng, int trial) {
    const int d = dim_cycle(trial, 2, 8);
    const HermitianOperator a = random_hermitian(rng, d);
    std::uniform_real_distribution<double> uni(-5.0, 5.0);
    const double c = uni(rng);
    const HermitianOperator shifted(a.mat() +
                                    c * Matrix::Identity(d, d));
    const double diff = std::abs(seminorm(shifted) - seminorm(a));
    if (diff > 1e-12) return failed({{"shift", c}, {"difference", diff}});
    return ok();
}

ordered_json check_unitary_composition(Rng& rng, int trial) {
    const int d = dim_cycle(trial, 2, 6);
    const HermitianOperator h = random_hermitian(rng, d);
    std::uniform_real_distribution<double> uni(-3.0, 3.0);
    const double a = uni(rng), b = uni(rng);
    const double err = (evolve_unitary(h, a) * evolve_unitary(h, b) -
                        evolve_unitary(h, a + b))
                           .cwiseAbs()
                           .maxCoeff();
    if (err > 1e-10) return failed({{"angle_a", a}, {"angle_b", b}, {"error", err}});
    return ok();
}

ordered_json check_sld_defining_relation(Rng& rng, int trial) {
    const int d = 2 + trial % 2;  // qubits and qutrits
    const HermitianOperator rho = random_density(rng, d, 0.05);
    const HermitianOperator drho = random_traceless(rng, d, 0.5);
    const SLDResult res = sld(rho, drho);
    const Matrix sym = 0.5 * (res.L.mat() * rho.mat() +
                              rho.mat() * res.L.mat());
    const double residual = (sym - drho.mat()).norm();
    const double trace = std::abs((res.L.mat() * rho.mat()).trace());
    if (residual > 1e-7 || trace > 1e-8) {
        return failed({{"residual", residual}, {"trace", trace}});
    }
    return ok();
}

ordered_json check_bloch_agreement(Rng& rng, int) {
    const StateFamily f = random_smooth_qubit_family(rng);
    std::uniform_real_distribution<double> uni(-9.0, 9.0);
    const double lam = uni(rng);
    const double direct = qfi_mixed(f, lam);
    const double oracle = qfi_bloch_oracle(f, lam);
    if (std::abs(direct - oracle) > 1e-6) {
        return failed({{"lambda", lam}, {"direct", direct}, {"oracle", oracle}});
    }
    return ok();
}

ordered_json check_qfi_lambda_independence(Rng& rng, int trial) {
    const int d = dim_cycle(trial, 2, 5);
    std::uniform_real_distribution<double> uni(0.5, 2.0);
    const StateFamily f = StateFamily::pure_unitary(
        random_pure_state(rng, d), random_hermitian(rng, d), uni(rng));
    std::uniform_real_distribution<double> lamuni(-1.0, 1.0);
    double lo = 1e300, hi = -1e300;
    for (int k = 0; k < 5; ++k) {
        const double fq = qfi_mixed(f, lamuni(rng));
        lo = std::min(lo, fq);
        hi = std::max(hi, fq);
    }
    if (hi - lo > 1e-7) return failed({{"spread", hi - lo}});
    return ok();
}

ordered_json check_sld_fisher_saturation(Rng& rng, int) {
    const StateFamily f = random_smooth_qubit_family(rng);
    std::uniform_real_distribution<double> uni(-9.0, 9.0);
    const double lam = uni(rng);
    const SLDResult res = sld_at(f, lam);
    const double fq = qfi_mixed(f, lam);
    const double cf = classical_fisher(f, sld_measurement(res), lam);
    if (std::abs(cf - fq) > 1e-5) {
        return failed({{"lambda", lam}, {"classical", cf}, {"qfi", fq}});
    }
    return ok();
}

ordered_json check_entropy_chain(Rng& rng, int trial) {
    const int d = dim_cycle(trial, 2, 6);
    std::uniform_real_distribution<double> uni(0.5, 2.0);
    const StateFamily f =
        StateFamily::pure_unitary(random_pure_state(rng, d),
                                  random_commensurate_generator(rng, d),
                                  uni(rng), "chain_fuzz");
    if (!f.period()) return failed({{"missing_period", 1.0}});
    const auto reports = entropy_chain_check(f, random_basis(rng, d),
                                             AveragingSpec::full_period(f));
    for (const auto& rep : reports) {
        if (!rep.holds) {
            return failed({{"slack", rep.slack}, {"lhs", rep.lhs},
                           {"rhs", rep.rhs}});
        }
    }
    return ok();
}

ordered_json check_averaged_probs_linearity(Rng& rng, int trial) {
    const int d = dim_cycle(trial, 2, 5);
    std::uniform_real_distribution<double> uni(0.5, 2.0);
    const StateFamily f =
        StateFamily::pure_unitary(random_pure_state(rng, d),
                                  random_commensurate_generator(rng, d),
                                  uni(rng));
    const MeasurementBasis basis = random_basis(rng, d);
    const auto spec = AveragingSpec::full_period(f);
    const ProbDist via_state = averaged_probs(f, basis, spec);
    // Independent route: trapezoid average of the per-lambda probabilities.
    const int n = 4096;
    RVector acc = RVector::Zero(d);
    for (int k = 0; k < n; ++k) {
        const CVector psi =
            f.state_vector(spec.lo + (spec.hi - spec.lo) * k / n);
        acc += (basis.columns().adjoint() * psi).cwiseAbs2();
    }
    acc /= n;
    const double diff = (acc - via_state.values()).cwiseAbs().maxCoeff();
    if (diff > 1e-8) return failed({{"difference", diff}});
    return ok();
}

ordered_json check_entropy_concavity(Rng& rng, int trial) {
    const int d = dim_cycle(trial, 2, 6);
    std::uniform_real_distribution<double> uni(0.5, 2.0);
    const StateFamily f = StateFamily::pure_unitary(
        random_pure_state(rng, d), random_hermitian(rng, d), uni(rng));
    const MeasurementBasis basis = random_basis(rng, d);
    std::uniform_real_distribution<double> lamuni(-3.0, 3.0);
    RVector mean = RVector::Zero(d);
    double mean_entropy = 0.0;
    const int samples = 64;
    for (int k = 0; k < samples; ++k) {
        const ProbDist p =
            measurement_probs(family_eval(f, lamuni(rng)), basis);
        mean += p.values();
        mean_entropy += p.entropy();
    }
    mean /= samples;
    mean_entropy /= samples;
    const double mixture_entropy = ProbDist::from_raw(mean).entropy();
    if (mixture_entropy < mean_entropy - 1e-12) {
        return failed({{"mixture", mixture_entropy}, {"mean", mean_entropy}});
    }
    return ok();
}

ordered_json check_vn_le_diagonal(Rng& rng, int trial) {
    const int d = dim_cycle(trial, 2, 6);
    std::uniform_real_distribution<double> uni(0.5, 2.0);
    const StateFamily f =
        StateFamily::pure_unitary(random_pure_state(rng, d),
                                  random_commensurate_generator(rng, d),
                                  uni(rng));
    const HermitianOperator rho_s =
        average_state(f, AveragingSpec::full_period(f));
    const double vn = von_neumann_entropy(rho_s);
    for (int k = 0; k < 20; ++k) {
        const double diag =
            measurement_probs(rho_s, random_basis(rng, d)).entropy();
        if (vn > diag + 1e-12) {
            return failed({{"von_neumann", vn}, {"diagonal", diag}});
        }
    }
    return ok();
}

ordered_json check_heat_scaling(Rng& rng, int) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double s = 3.0 * uni(rng);
    const double temp = 1.0 + 599.0 * uni(rng);
    const double a = 0.1 + 9.9 * uni(rng);
    const double fq = 5.0 * uni(rng);
    const double t = 0.1 + 2.9 * uni(rng);
    const double lin =
        std::abs(landauer_bound(s, a * temp) - a * landauer_bound(s, temp));
    const double quad = std::abs(qfi_heat_bound(fq, a * t, temp) * a * a -
                                 qfi_heat_bound(fq, t, temp));
    const double ref = landauer_bound(s, temp) + qfi_heat_bound(fq, t, temp);
    if (lin > 1e-12 * ref || quad > 1e-12 * ref) {
        return failed({{"linearity", lin}, {"time_scaling", quad}});
    }
    return ok();
}

ordered_json check_entropy_purity(Rng& rng, int trial) {
    const int d = dim_cycle(trial, 2, 16);
    const ProbDist p = random_distribution(rng, d);
    const BoundReport rep = entropy_purity_check(p);
    if (!rep.holds) return failed({{"slack", rep.slack}});
    return ok();
}

ordered_json check_entropy_purity_equality(Rng& rng, int trial) {
    const int d = dim_cycle(trial, 2, 16);
    RVector p = RVector::Zero(d);
    std::uniform_int_distribution<int> pos(0, d - 1);
    const int a = pos(rng);
    if (trial % 2 == 0) {
        p(a) = 1.0;  // deterministic
    } else {
        int b = pos(rng);
        while (b == a) b = pos(rng);
        p(a) = p(b) = 0.5;  // two-outcome uniform
    }
    const BoundReport rep = entropy_purity_check(ProbDist::from_raw(p));
    if (!rep.holds || std::abs(rep.slack) > 1e-12) {
        return failed({{"slack", rep.slack}});
    }
    return ok();
}

ordered_json check_sld_bound_mixed(Rng& rng, int) {
    const StateFamily f = random_smooth_qubit_family(rng);
    std::uniform_real_distribution<double> uni(-9.0, 9.0);
    for (int k = 0; k < 5; ++k) {
        const double lam = uni(rng);
        const InequalityCase c = sld_entropy_bound(f, lam, 0.0, 1e-8);
        if (!c.report.holds) {
            return failed({{"lambda", lam}, {"slack", c.report.slack}});
        }
        if (c.split) {
            const double p1 = herm_eig(family_eval(f, lam)).eigenvalues(0);
            const BoundReport two =
                two_level_entropy_bound(*c.split, p1, c.shannon);
            if (!two.holds || two.rhs > kLog2 + 1e-12) {
                return failed({{"lambda", lam}, {"two_level_slack", two.slack}});
            }
        }
    }
    return ok();
}

ordered_json check_sld_bound_pure_equality(Rng& rng, int trial) {
    const int d = dim_cycle(trial, 2, 6);
    std::uniform_real_distribution<double> uni(0.5, 2.0);
    const StateFamily f = StateFamily::pure_unitary(
        random_pure_state(rng, d), random_hermitian(rng, d), uni(rng));
    std::uniform_real_distribution<double> lamuni(-1.0, 1.0);
    const InequalityCase c = sld_entropy_bound(f, lamuni(rng));
    if (c.sld_seminorm < 1e-9) return ok();  // stationary, bound vacuous
    if (std::abs(c.report.slack) > 1e-8) {
        return failed({{"slack", c.report.slack}});
    }
    if (equality_case_detect(c) != EqualityCase::PureState) {
        return failed({{"misclassified", 1.0}});
    }
    return ok();
}

StateFamily constant_weight_ensemble(double p1, double omega, double theta,
                                     double phase) {
    auto evaluator = [p1, omega, theta, phase](double lam) -> Matrix {
        const double ang = omega * lam + phase;
        CVector phi1(2), phi2(2);
        phi1 << std::cos(ang), std::exp(Complex(0, theta)) * std::sin(ang);
        phi2 << -std::sin(ang), std::exp(Complex(0, theta)) * std::cos(ang);
        return p1 * phi1 * phi1.adjoint() +
               (1.0 - p1) * phi2 * phi2.adjoint();
    };
    return StateFamily::mixed_map(std::move(evaluator), -5.0, 5.0,
                                  "constant_weight_ensemble");
}

ordered_json check_two_level_equality(Rng& rng, int) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double p1 = 0.05 + 0.35 * uni(rng);
    const StateFamily f = constant_weight_ensemble(
        p1, 0.5 + 1.5 * uni(rng), 2.0 * M_PI * uni(rng), 2.0 * M_PI * uni(rng));
    const double lam = -4.0 + 8.0 * uni(rng);
    const InequalityCase c = sld_entropy_bound(f, lam);
    if (std::abs(c.shannon - kLog2) > 1e-8 ||
        std::abs(c.report.rhs - kLog2) > 1e-8) {
        return failed({{"shannon", c.shannon}, {"rhs", c.report.rhs}});
    }
    if (equality_case_detect(c) != EqualityCase::BalancedTwoLevel) {
        return failed({{"misclassified", 1.0}});
    }
    return ok();
}

ordered_json check_nonsld_monotonic(Rng&, int) {
    const StateFamily f = single_qubit_family(0.5, 1.0);
    std::vector<double> qs;
    for (int k = 0; k < 50; ++k) qs.push_back(0.51 + 0.49 * k / 49.0);
    const auto cases = violation_search(f, 0.4, qs);
    for (std::size_t k = 1; k < cases.size(); ++k) {
        if (!(cases[k].shannon < cases[k - 1].shannon)) {
            return failed({{"q", qs[k]}, {"entropy", cases[k].shannon}});
        }
    }
    return ok();
}

}  // namespace

FuzzResult run_fuzz(const RunConfig& cfg) {
    FuzzHarness harness(cfg);
    harness.suite("herm_eig_reconstruction", 500, check_eig_reconstruction);
    harness.suite("seminorm_shift_invariance", 500, check_seminorm_shift);
    harness.suite("unitary_composition", 500, check_unitary_composition);
    harness.suite("sld_defining_relation", 500, check_sld_defining_relation);
    harness.suite("qfi_bloch_agreement", 500, check_bloch_agreement);
    harness.suite("qfi_lambda_independence", 100,
                  check_qfi_lambda_independence);
    harness.suite("sld_fisher_saturation", 500, check_sld_fisher_saturation);
    harness.suite("entropy_chain", 1000, check_entropy_chain);
    harness.suite("averaged_probs_linearity", 200,
                  check_averaged_probs_linearity);
    harness.suite("entropy_concavity", 500, check_entropy_concavity);
    harness.suite("vn_le_diagonal_shannon", 100, check_vn_le_diagonal);
    harness.suite("heat_bound_scaling", 200, check_heat_scaling);
    harness.suite("entropy_purity", 100000, check_entropy_purity);
    harness.suite("entropy_purity_equality", 100,
                  check_entropy_purity_equality);
    harness.suite("sld_bound_mixed", 1000, check_sld_bound_mixed);
    harness.suite("sld_bound_pure_equality", 500,
                  check_sld_bound_pure_equality);
    harness.suite("two_level_equality", 100, check_two_level_equality);
    harness.suite("nonsld_monotonic", 1, check_nonsld_monotonic);

    FuzzResult result;
    result.summary.columns = {"suite", "trials", "failures", "status"};
    for (const char* name : {"t", "T", "seed", "tol", "version"}) {
        result.summary.columns.emplace_back(name);
    }
    ordered_json report;
    report["seed"] = cfg.seed;
    report["version"] = kVersion;
    report["suites"] = ordered_json::array();
    for (const auto& run : harness.suites()) {
        result.failures += run.failures > 0 ? 1 : 0;
        std::vector<Cell> row{run.name,
                              static_cast<std::int64_t>(run.trials),
                              static_cast<std::int64_t>(run.failures),
                              std::string(run.failures == 0 ? "pass" : "fail"),
                              cfg.t,
                              cfg.temperature,
                              static_cast<std::int64_t>(cfg.seed),
                              cfg.tol,
                              std::string(kVersion)};
        result.summary.rows.push_back(std::move(row));
        report["suites"].push_back({{"name", run.name},
                                    {"trials", run.trials},
                                    {"failures", run.failures}});
    }
    report["witnesses"] = harness.witnesses();
    result.witnesses_json = report.dump(2) + "\n";
    return result;
}

}  // namespace qmetro::cli
