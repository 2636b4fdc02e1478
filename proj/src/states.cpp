#include "qmetro/states.hpp"

#include <algorithm>
#include <cmath>

namespace qmetro {

namespace {

// Approximate positive gcd of a list of positive reals. Returns 0 when no
// common divisor explains every value within tol.
double common_gap(const std::vector<double>& gaps, double tol) {
    double g = 0.0;
    for (double x : gaps) {
        double a = std::max(g, x), b = std::min(g, x);
        while (b > tol) {
            double r = std::fmod(a, b);
            if (r > b - tol) r = 0.0;
            a = b;
            b = r;
        }
        g = a;
    }
    if (g <= tol) return 0.0;
    for (double x : gaps) {
        const double ratio = x / g;
        if (std::abs(ratio - std::round(ratio)) > 1e-6) return 0.0;
    }
    return g;
}

std::optional<double> detect_period(const SpectralDecomposition& gen_eig,
                                    double t) {
    const auto& w = gen_eig.eigenvalues;
    std::vector<double> gaps;
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        for (Eigen::Index j = i + 1; j < w.size(); ++j) {
            const double gap = std::abs(t * (w(j) - w(i)));
            if (gap > 1e-9) gaps.push_back(gap);
        }
    }
    if (gaps.empty()) return std::nullopt;  // stationary family
    const double g = common_gap(gaps, 1e-9);
    if (g == 0.0) return std::nullopt;
    return 2.0 * M_PI / g;
}

}  // namespace

PureState::PureState(CVector amplitudes, double tol) {
    if (amplitudes.size() < 1 || amplitudes.size() > kMaxDimension) {
        throw std::invalid_argument("PureState: bad dimension");
    }
    const double n = amplitudes.norm();
    if (std::abs(n - 1.0) > tol) {
        throw std::invalid_argument("PureState: norm " + std::to_string(n) +
                                    " differs from 1 beyond tolerance");
    }
    amps_ = amplitudes / n;
}

MeasurementBasis::MeasurementBasis(Matrix columns, std::string label,
                                   double tol)
    : label_(std::move(label)) {
    if (columns.rows() != columns.cols()) {
        throw std::invalid_argument("MeasurementBasis: need d vectors of dimension d");
    }
    const Matrix gram = columns.adjoint() * columns;
    const double err = (gram - Matrix::Identity(columns.cols(), columns.cols()))
                           .cwiseAbs()
                           .maxCoeff();
    if (err > tol) {
        throw std::invalid_argument("MeasurementBasis: Gram deviates from identity by " +
                                    std::to_string(err));
    }
    cols_ = std::move(columns);
}

ProbDist ProbDist::from_raw(RVector raw) {
    for (Eigen::Index i = 0; i < raw.size(); ++i) {
        if (raw(i) < -1e-12) {
            throw std::invalid_argument("ProbDist: negative probability " +
                                        std::to_string(raw(i)));
        }
        if (raw(i) < 0.0) raw(i) = 0.0;
    }
    const double sum = raw.sum();
    if (std::abs(sum - 1.0) > 1e-10) {
        throw std::invalid_argument("ProbDist: probabilities sum to " +
                                    std::to_string(sum));
    }
    return ProbDist(raw / sum);
}

double ProbDist::entropy() const {
    double s = 0.0;
    for (Eigen::Index i = 0; i < p_.size(); ++i) {
        if (p_(i) > 0.0) s -= p_(i) * std::log(p_(i));
    }
    return s;
}

StateFamily StateFamily::pure_unitary(PureState initial, HermitianOperator h,
                                      double t, std::string descriptor) {
    if (initial.dim() != h.dim()) {
        throw std::invalid_argument("pure_unitary: dimension mismatch");
    }
    if (t < 0.0) throw std::invalid_argument("pure_unitary: negative time");
    auto eig = herm_eig(h);
    auto period = detect_period(eig, t);
    StateFamily f(PureUnitary{std::move(initial), std::move(h), t,
                              std::move(eig)});
    f.period_ = period;
    f.descriptor_ = std::move(descriptor);
    return f;
}

StateFamily StateFamily::mixed_map(std::function<Matrix(double)> evaluator,
                                   double lo, double hi,
                                   std::string descriptor) {
    if (!(hi > lo)) throw std::invalid_argument("mixed_map: empty interval");
    StateFamily f(MixedMap{std::move(evaluator), lo, hi});
    f.descriptor_ = std::move(descriptor);
    // Spot-check the density invariant on a coarse grid.
    for (int k = 0; k <= 16; ++k) {
        const double lam = lo + (hi - lo) * k / 16.0;
        const auto diag = validate_density(family_eval(f, lam), 1e-10);
        if (!diag.ok) {
            throw std::invalid_argument(
                "mixed_map: evaluator output at lambda=" + std::to_string(lam) +
                " is not a density matrix (" + diag.violations.front() + ")");
        }
    }
    return f;
}

bool StateFamily::is_pure_unitary() const {
    return std::holds_alternative<PureUnitary>(kind_);
}

const PureUnitary& StateFamily::pure() const {
    return std::get<PureUnitary>(kind_);
}

const MixedMap& StateFamily::mixed() const {
    return std::get<MixedMap>(kind_);
}

int StateFamily::dim() const {
    if (is_pure_unitary()) return pure().initial.dim();
    return static_cast<int>(mixed().evaluator(mixed().lo).rows());
}

CVector StateFamily::state_vector(double lambda) const {
    const auto& pu = pure();
    const auto& eig = pu.gen_eig;
    CVector c = eig.eigenvectors.adjoint() * pu.initial.amps();
    for (Eigen::Index k = 0; k < c.size(); ++k) {
        c(k) *= std::exp(Complex(0.0, -lambda * pu.time * eig.eigenvalues(k)));
    }
    return eig.eigenvectors * c;
}

HermitianOperator family_eval(const StateFamily& f, double lambda) {
    if (f.is_pure_unitary()) {
        const CVector psi = f.state_vector(lambda);
        return HermitianOperator(psi * psi.adjoint());
    }
    const auto& mm = f.mixed();
    if (lambda < mm.lo || lambda > mm.hi) {
        throw std::out_of_range("family_eval: lambda=" + std::to_string(lambda) +
                                " outside validity interval [" +
                                std::to_string(mm.lo) + ", " +
                                std::to_string(mm.hi) + "]");
    }
    return HermitianOperator(mm.evaluator(lambda));
}

RVector raw_probs(const Matrix& rho, const MeasurementBasis& basis) {
    if (rho.rows() != basis.dim()) {
        throw std::invalid_argument("raw_probs: dimension mismatch");
    }
    RVector p(basis.dim());
    for (int m = 0; m < basis.dim(); ++m) {
        const Complex val = basis.vector(m).dot(rho * basis.vector(m));
        if (std::abs(val.imag()) > 1e-12) {
            throw std::runtime_error("raw_probs: imaginary residue " +
                                     std::to_string(val.imag()));
        }
        p(m) = val.real();
    }
    return p;
}

ProbDist measurement_probs(const HermitianOperator& rho,
                           const MeasurementBasis& basis) {
    RVector p = raw_probs(rho.mat(), basis);
    for (Eigen::Index m = 0; m < p.size(); ++m) p(m) = std::min(p(m), 1.0);
    return ProbDist::from_raw(p);
}

HermitianOperator derivative_rho(const StateFamily& f, double lambda,
                                 double step) {
    const double h = step > 0.0 ? step : default_fd_step(lambda);
    if (!f.is_pure_unitary()) {
        const auto& mm = f.mixed();
        if (lambda - h < mm.lo || lambda + h > mm.hi) {
            throw std::out_of_range(
                "derivative_rho: lambda +- step leaves the validity interval");
        }
    }
    const auto central = [&](double s) -> Matrix {
        return (family_eval(f, lambda + s).mat() -
                family_eval(f, lambda - s).mat()) /
               (2.0 * s);
    };
    const Matrix d1 = central(h);
    const Matrix d2 = central(0.5 * h);
    return HermitianOperator((4.0 * d2 - d1) / 3.0, 1e-8);
}

StateFamily single_qubit_family(double p, double t) {
    if (p < 0.0 || p > 1.0) {
        throw std::invalid_argument("single_qubit_family: p outside [0, 1]");
    }
    CVector amps(2);
    amps << std::sqrt(p), std::sqrt(1.0 - p);
    return StateFamily::pure_unitary(
        PureState(amps), HermitianOperator(0.5 * pauli_z()), t,
        "single_qubit(p=" + std::to_string(p) + ",t=" + std::to_string(t) + ")");
}

Matrix example_mixed_qubit_matrix(double lambda) {
    Matrix m(2, 2);
    m << lambda * lambda, lambda, lambda, 2.0 - lambda * lambda;
    return 0.5 * m;
}

StateFamily example_mixed_qubit_family(double delta) {
    if (delta < 0.0 || delta >= 0.5) {
        throw std::invalid_argument("example_mixed_qubit_family: bad delta");
    }
    return StateFamily::mixed_map(&example_mixed_qubit_matrix, delta,
                                  1.0 - delta, "mixed_qubit_example");
}

MeasurementBasis plus_minus_p_basis(double p) {
    if (p < 0.0 || p > 1.0) {
        throw std::invalid_argument("plus_minus_p_basis: p outside [0, 1]");
    }
    Matrix cols(2, 2);
    cols << std::sqrt(p), std::sqrt(1.0 - p), std::sqrt(1.0 - p), -std::sqrt(p);
    return MeasurementBasis(cols, "plus_minus_p(p=" + std::to_string(p) + ")");
}

MeasurementBasis phase_rotated_basis(double phi) {
    const Complex e = std::exp(Complex(0.0, phi));
    Matrix cols(2, 2);
    cols << Complex(1, 0), Complex(1, 0), e, -e;
    return MeasurementBasis(cols / std::sqrt(2.0),
                            "phase_rotated(phi=" + std::to_string(phi) + ")");
}

MeasurementBasis nonsld_basis(const PureState& psi0, const PureState& psiperp,
                              double q) {
    if (psi0.dim() != psiperp.dim()) {
        throw std::invalid_argument("nonsld_basis: dimension mismatch");
    }
    if (q <= 0.0 || q > 1.0) {
        throw std::invalid_argument("nonsld_basis: q outside (0, 1]");
    }
    const Complex overlap = psi0.amps().dot(psiperp.amps());
    if (std::abs(overlap) > 1e-10) {
        throw std::invalid_argument("nonsld_basis: inputs not orthogonal, |<psi0|psiperp>| = " +
                                    std::to_string(std::abs(overlap)));
    }
    const int d = psi0.dim();
    Matrix cols(d, d);
    cols.col(0) = std::sqrt(q) * psi0.amps() + std::sqrt(1.0 - q) * psiperp.amps();
    cols.col(1) = std::sqrt(1.0 - q) * psi0.amps() - std::sqrt(q) * psiperp.amps();
    // Complete with Gram-Schmidt over the standard basis.
    int filled = 2;
    for (int e = 0; e < d && filled < d; ++e) {
        CVector v = CVector::Zero(d);
        v(e) = 1.0;
        for (int c = 0; c < filled; ++c) v -= cols.col(c).dot(v) * cols.col(c);
        if (v.norm() > 1e-6) cols.col(filled++) = v / v.norm();
    }
    if (filled != d) throw std::runtime_error("nonsld_basis: completion failed");
    return MeasurementBasis(cols, "nonsld(q=" + std::to_string(q) + ")");
}

}  // namespace qmetro
