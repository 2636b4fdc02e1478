#include "qmetro/thermo.hpp"

#include <cmath>

namespace qmetro {

namespace {

constexpr int kMaxQuadratureNodes = 1 << 20;

Matrix projector_at(const StateFamily& f, double lambda) {
    const CVector psi = f.state_vector(lambda);
    return psi * psi.adjoint();
}

// Composite trapezoid mean of the projector over [lo, hi] with n panels.
Matrix trapezoid_mean(const StateFamily& f, double lo, double hi, int n) {
    const double h = (hi - lo) / n;
    Matrix acc = 0.5 * (projector_at(f, lo) + projector_at(f, hi));
    for (int k = 1; k < n; ++k) acc += projector_at(f, lo + k * h);
    return acc / n;
}

}  // namespace

AveragingSpec::AveragingSpec(double lo_, double hi_, int nodes_,
                             double refine_tol_)
    : lo(lo_), hi(hi_), nodes(nodes_), refine_tol(refine_tol_) {
    if (!(hi > lo)) throw std::invalid_argument("AveragingSpec: empty interval");
    int n = nodes;
    while (n > 16 && n % 2 == 0) n /= 2;
    if (n != 16) {
        throw std::invalid_argument(
            "AveragingSpec: nodes must be 16 * 2^k, got " +
            std::to_string(nodes));
    }
}

AveragingSpec AveragingSpec::full_period(const StateFamily& f) {
    if (!f.period()) {
        throw std::invalid_argument(
            "AveragingSpec::full_period: family has no period metadata; pass "
            "an explicit interval");
    }
    return AveragingSpec(0.0, *f.period());
}

HermitianOperator average_state(const StateFamily& f,
                                const AveragingSpec& spec) {
    if (!f.is_pure_unitary()) {
        throw std::invalid_argument(
            "average_state: pure unitary families only");
    }
    if (f.period()) {
        const double cycles = (spec.hi - spec.lo) / *f.period();
        if (cycles < 0.5 || std::abs(cycles - std::round(cycles)) > 1e-9) {
            throw std::invalid_argument(
                "average_state: window spans " + std::to_string(cycles) +
                " periods; a whole positive number is required");
        }
    }
    int n = spec.nodes;
    Matrix current = trapezoid_mean(f, spec.lo, spec.hi, n);
    while (true) {
        if (2 * n > kMaxQuadratureNodes) {
            throw std::runtime_error(
                "average_state: quadrature did not reach tolerance " +
                std::to_string(spec.refine_tol) + " within " +
                std::to_string(kMaxQuadratureNodes) + " nodes");
        }
        // Doubling reuses the coarse sum; new points sit at panel midpoints.
        const double h = (spec.hi - spec.lo) / n;
        Matrix mids = Matrix::Zero(f.dim(), f.dim());
        for (int k = 0; k < n; ++k) {
            mids += projector_at(f, spec.lo + (k + 0.5) * h);
        }
        const Matrix refined = 0.5 * current + 0.5 * mids / n;
        const double change = (refined - current).cwiseAbs().maxCoeff();
        current = refined;
        n *= 2;
        if (change < spec.refine_tol) break;
    }
    HermitianOperator rho_s(current, 1e-9);
    const auto diag = validate_density(rho_s, 1e-9);
    if (!diag.ok) {
        throw std::runtime_error("average_state: averaged state invalid (" +
                                 diag.violations.front() + ")");
    }
    return rho_s;
}

ProbDist averaged_probs(const StateFamily& f, const MeasurementBasis& basis,
                        const AveragingSpec& spec) {
    return measurement_probs(average_state(f, spec), basis);
}

double shannon_entropy(const ProbDist& p) { return p.entropy(); }

double von_neumann_entropy(const HermitianOperator& rho) {
    const auto dec = herm_eig(rho);
    double s = 0.0;
    for (Eigen::Index k = 0; k < dec.eigenvalues.size(); ++k) {
        const double w = dec.eigenvalues(k);
        if (w > 0.0) s -= w * std::log(w);
    }
    return s;
}

double landauer_bound(double entropy_nats, double temperature) {
    if (entropy_nats < 0.0) {
        throw std::invalid_argument("landauer_bound: negative entropy");
    }
    if (temperature <= 0.0) {
        throw std::invalid_argument("landauer_bound: nonpositive temperature");
    }
    return kBoltzmann * temperature * entropy_nats;
}

double qfi_heat_bound(double qfi, double t, double temperature) {
    if (qfi < 0.0) throw std::invalid_argument("qfi_heat_bound: negative QFI");
    if (t <= 0.0) {
        throw std::invalid_argument("qfi_heat_bound: nonpositive time");
    }
    if (temperature <= 0.0) {
        throw std::invalid_argument("qfi_heat_bound: nonpositive temperature");
    }
    return kBoltzmann * temperature * std::log(2.0) * qfi / (t * t);
}

std::pair<HermitianOperator, double> rescale_to_unit_seminorm(
    const HermitianOperator& h, double t) {
    const double s = seminorm(h);
    if (s <= 0.0) {
        throw std::invalid_argument(
            "rescale_to_unit_seminorm: generator has zero spectral spread");
    }
    return {HermitianOperator(h.mat() / s), s * t};
}

std::array<BoundReport, 3> entropy_chain_check(const StateFamily& f,
                                               const MeasurementBasis& basis,
                                               const AveragingSpec& spec) {
    if (!f.is_pure_unitary()) {
        throw std::invalid_argument(
            "entropy_chain_check: pure unitary families only");
    }
    const auto& pu = f.pure();
    const double s = seminorm(pu.generator);
    if (std::abs(s - 1.0) > 1e-9) {
        throw NormalizationError(
            "entropy_chain_check: generator spectral spread is " +
            std::to_string(s) + "; rescale to (h/" + std::to_string(s) +
            ", t*" + std::to_string(s) + ") first");
    }
    const double t = pu.time;
    const HermitianOperator rho_s = average_state(f, spec);
    const double outcome_entropy =
        shannon_entropy(measurement_probs(rho_s, basis));
    const double state_entropy = von_neumann_entropy(rho_s);
    const double qfi_term =
        std::log(2.0) * qfi_pure(pu.initial, pu.generator, t) / (t * t);

    const std::string ctx = f.descriptor() + " basis=" + basis.label() +
                            " window=[" + std::to_string(spec.lo) + "," +
                            std::to_string(spec.hi) + "]";
    constexpr double tol = 1e-9;
    return {BoundReport("outcome_entropy_ge_state_entropy", outcome_entropy,
                        state_entropy, tol, ctx),
            BoundReport("state_entropy_ge_qfi_bound", state_entropy, qfi_term,
                        tol, ctx),
            BoundReport("outcome_entropy_ge_qfi_bound", outcome_entropy,
                        qfi_term, tol, ctx)};
}

CycleRecord memory_cycle(const StateFamily& f, const MeasurementBasis& basis,
                         double lambda) {
    ProbDist probs = measurement_probs(family_eval(f, lambda), basis);
    const double s = probs.entropy();
    return CycleRecord{lambda, std::move(probs), s, s, 0.0};
}

}  // namespace qmetro
