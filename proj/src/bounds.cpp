#include "qmetro/bounds.hpp"

#include <cmath>

namespace qmetro {

namespace {

const double kLog2 = std::log(2.0);

// Spectral two-level split of a qubit family: eigenvalues as weights,
// eigenvector branches as ensemble members (ascending order per sample;
// two_level_decompose fixes the gauge). Returns nothing when the branches
// are too degenerate to follow.
std::optional<QfiSplit> spectral_split(const StateFamily& f, double lambda,
                                       double step) {
    const auto weight = [&f](int i) {
        return [&f, i](double lam) {
            return herm_eig(family_eval(f, lam)).eigenvalues(i);
        };
    };
    const auto member = [&f](int i) {
        return [&f, i](double lam) -> CVector {
            return herm_eig(family_eval(f, lam)).eigenvectors.col(i);
        };
    };
    try {
        return two_level_decompose(weight(0), member(0), weight(1), member(1),
                                   lambda, step);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

}  // namespace

BoundReport entropy_purity_check(const ProbDist& p) {
    const double collision = p.values().squaredNorm();
    const double lhs = p.entropy() + 2.0 * kLog2 * collision;
    return BoundReport("entropy_purity", lhs, 2.0 * kLog2, 1e-10);
}

InequalityCase sld_entropy_bound(const StateFamily& f, double lambda,
                                 double step, double tol) {
    const HermitianOperator rho = family_eval(f, lambda);
    const SLDResult res = sld(rho, derivative_rho(f, lambda, step));
    const MeasurementBasis basis = sld_measurement(res);
    const ProbDist probs = measurement_probs(rho, basis);

    double qfi = (res.L.mat() * res.L.mat() * rho.mat()).trace().real();
    if (qfi < 0.0 && qfi > -1e-12) qfi = 0.0;  // roundoff on stationary input
    InequalityCase c{f.descriptor(),
                     lambda,
                     "sld",
                     probs.entropy(),
                     qfi,
                     res.seminorm,
                     (rho.mat() * rho.mat()).trace().real(),
                     rho.dim(),
                     std::nullopt,
                     std::nullopt,
                     BoundReport("sld_entropy_bound", 0, 0, tol)};

    const bool vacuous = res.seminorm < 1e-9;
    const double rhs =
        vacuous ? 0.0 : 4.0 * kLog2 * c.qfi / (res.seminorm * res.seminorm);
    c.report = BoundReport("sld_entropy_bound", c.shannon, rhs, tol,
                           vacuous ? "vacuous" : "");
    if (c.dim == 2) c.split = spectral_split(f, lambda, step);
    return c;
}

BoundReport two_level_entropy_bound(const QfiSplit& split, double p1,
                                    double shannon, double tol) {
    if (p1 <= 0.0 || p1 >= 1.0) {
        throw std::invalid_argument("two_level_entropy_bound: p1 outside (0, 1)");
    }
    const double p2 = 1.0 - p1;
    const double denom =
        split.total + (1.0 / (4.0 * p1 * p2) - 1.0) * split.classical;
    const double rhs = denom > 0.0 ? kLog2 * split.total / denom : 0.0;
    // The denominator dominates F_Q, so the bound never exceeds log 2.
    if (rhs > kLog2 + 1e-12) {
        throw std::logic_error("two_level_entropy_bound: rhs exceeds log 2");
    }
    return BoundReport("two_level_entropy_bound", shannon, rhs, tol);
}

EqualityCase equality_case_detect(const InequalityCase& c) {
    const bool vacuous = c.sld_seminorm < 1e-9;
    EqualityCase kind = EqualityCase::None;
    if (!vacuous && c.purity > 1.0 - 1e-9) {
        kind = EqualityCase::PureState;
    } else if (!vacuous && c.dim == 2 && c.split &&
               c.split->classical < 1e-9 * c.split->total) {
        kind = EqualityCase::BalancedTwoLevel;
    }
    if (kind != EqualityCase::None && std::abs(c.report.slack) >= 1e-6) {
        throw std::logic_error(
            "equality_case_detect: classified case has slack " +
            std::to_string(c.report.slack));
    }
    return kind;
}

std::vector<InequalityCase> violation_search(
    const StateFamily& f, double lambda0, const std::vector<double>& q_grid) {
    if (!f.is_pure_unitary()) {
        throw std::invalid_argument("violation_search: pure families only");
    }
    const double step = default_fd_step(lambda0);
    const CVector psi0 = f.state_vector(lambda0);
    const auto state_at = [&](double lam) { return f.state_vector(lam); };
    CVector dpsi = (4.0 * ((state_at(lambda0 + 0.5 * step) -
                            state_at(lambda0 - 0.5 * step)) /
                           step) -
                    (state_at(lambda0 + step) - state_at(lambda0 - step)) /
                        (2.0 * step)) /
                   3.0;
    dpsi -= psi0.dot(dpsi) * psi0;  // informative direction, gauge-free
    if (dpsi.norm() < 1e-12) {
        throw std::invalid_argument(
            "violation_search: stationary family at lambda0");
    }
    const PureState perp(dpsi / dpsi.norm());
    const PureState base(psi0);

    const HermitianOperator rho0 = family_eval(f, lambda0);
    const SLDResult res = sld_at(f, lambda0, step);
    const double fq = (res.L.mat() * res.L.mat() * rho0.mat()).trace().real();
    const double rhs = res.seminorm > 1e-9
                           ? 4.0 * kLog2 * fq / (res.seminorm * res.seminorm)
                           : 0.0;
    // The basis extracts the full Fisher information except at isolated
    // lambdas where the state aligns exactly with a basis vector (there
    // the 0/0 limit is removable but the finite-difference value is 0);
    // evaluating at the calibration point and a quarter period away and
    // keeping the larger dodges both degeneracies.
    const double quarter =
        f.period() ? 0.25 * *f.period()
                   : 0.5 * M_PI / (f.pure().time * seminorm(f.pure().generator));

    std::vector<InequalityCase> out;
    out.reserve(q_grid.size());
    for (const double q : q_grid) {
        const MeasurementBasis basis = nonsld_basis(base, perp, q);
        const double s =
            shannon_entropy(measurement_probs(rho0, basis));
        const double cf =
            std::max(classical_fisher(f, basis, lambda0, step),
                     classical_fisher(f, basis, lambda0 + quarter, step));
        InequalityCase c{f.descriptor(),
                         lambda0,
                         basis.label(),
                         s,
                         fq,
                         res.seminorm,
                         1.0,
                         f.dim(),
                         std::nullopt,
                         cf,
                         BoundReport("nonsld_entropy_vs_sld_bound", s, rhs,
                                     1e-9, "expected-violation as q -> 1")};
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace qmetro
