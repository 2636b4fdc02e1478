#include "qmetro/qfi.hpp"

#include <cmath>

namespace qmetro {

namespace {

// Richardson-refined central difference of a vector-valued curve.
template <typename F>
auto richardson_derivative(const F& eval, double lambda, double h) {
    const auto d1 = ((eval(lambda + h) - eval(lambda - h)) / (2.0 * h)).eval();
    const auto d2 =
        ((eval(lambda + 0.5 * h) - eval(lambda - 0.5 * h)) / h).eval();
    return ((4.0 * d2 - d1) / 3.0).eval();
}

}  // namespace

double qfi_pure(const PureState& psi, const HermitianOperator& h, double t) {
    if (psi.dim() != h.dim()) {
        throw std::invalid_argument("qfi_pure: dimension mismatch");
    }
    const CVector hpsi = h.mat() * psi.amps();
    const double mean = psi.amps().dot(hpsi).real();
    const double second = hpsi.squaredNorm();
    return 4.0 * t * t * (second - mean * mean);
}

SLDResult sld(const HermitianOperator& rho, const HermitianOperator& drho,
              double cutoff) {
    const auto diag = validate_density(rho, 1e-8);
    if (!diag.ok) {
        throw std::invalid_argument("sld: rho is not a density matrix (" +
                                    diag.violations.front() + ")");
    }
    if (std::abs(drho.mat().trace()) > 1e-8) {
        throw std::invalid_argument("sld: drho is not traceless");
    }
    const auto rho_eig = herm_eig(rho);
    const auto& w = rho_eig.eigenvalues;
    const Matrix m = rho_eig.eigenvectors.adjoint() * drho.mat() *
                     rho_eig.eigenvectors;
    const int d = rho.dim();
    Matrix ltilde = Matrix::Zero(d, d);
    double included_max = 0.0, excluded_max = 0.0;
    for (int j = 0; j < d; ++j) {
        for (int k = 0; k < d; ++k) {
            const double sum = w(j) + w(k);
            if (sum > cutoff) {
                ltilde(j, k) = 2.0 * m(j, k) / sum;
                included_max = std::max(included_max, std::abs(m(j, k)));
            } else {
                excluded_max = std::max(excluded_max, std::abs(m(j, k)));
            }
        }
    }
    if (excluded_max > 1e-8 && included_max < 1e-12) {
        throw DegenerateSupportError(
            "sld: drho is supported entirely on the kernel of rho");
    }
    SLDResult out{HermitianOperator(rho_eig.eigenvectors * ltilde *
                                        rho_eig.eigenvectors.adjoint(),
                                    1e-9),
                  SpectralDecomposition{}, 0.0, 0};
    out.spectrum = herm_eig(out.L);
    out.seminorm = out.spectrum.eigenvalues(d - 1) - out.spectrum.eigenvalues(0);
    for (int j = 0; j < d; ++j) {
        if (w(j) > cutoff) ++out.support_rank;
    }
    return out;
}

SLDResult sld_at(const StateFamily& f, double lambda, double step,
                 double cutoff) {
    return sld(family_eval(f, lambda), derivative_rho(f, lambda, step), cutoff);
}

double qfi_mixed(const StateFamily& f, double lambda, double step) {
    const auto rho = family_eval(f, lambda);
    const auto res = sld_at(f, lambda, step);
    return (res.L.mat() * res.L.mat() * rho.mat()).trace().real();
}

Eigen::Vector3d bloch_vector(const HermitianOperator& rho) {
    if (rho.dim() != 2) {
        throw std::invalid_argument("bloch_vector: qubit expected");
    }
    const Matrix& m = rho.mat();
    return {2.0 * m(0, 1).real(), -2.0 * m(0, 1).imag(),
            m(0, 0).real() - m(1, 1).real()};
}

double qfi_bloch_oracle(const StateFamily& f, double lambda, double step) {
    if (f.dim() != 2) {
        throw std::invalid_argument("qfi_bloch_oracle: qubit families only");
    }
    const double h = step > 0.0 ? step : default_fd_step(lambda);
    const auto bloch_at = [&](double lam) -> Eigen::Vector3d {
        return bloch_vector(family_eval(f, lam));
    };
    const Eigen::Vector3d r = bloch_at(lambda);
    const Eigen::Vector3d dr = richardson_derivative(bloch_at, lambda, h);
    const double r2 = r.squaredNorm();
    if (std::abs(std::sqrt(r2) - 1.0) <= 1e-9) {
        return dr.squaredNorm();
    }
    const double radial = r.dot(dr);
    return dr.squaredNorm() + radial * radial / (1.0 - r2);
}

VarianceIdentity variance_identity_check(const SLDResult& sld_result,
                                         const HermitianOperator& rho) {
    const auto& ell = sld_result.spectrum.eigenvalues;
    const RVector p = raw_probs(
        rho.mat(), MeasurementBasis(sld_result.spectrum.eigenvectors, "sld"));
    VarianceIdentity out{};
    out.lhs = (sld_result.L.mat() * sld_result.L.mat() * rho.mat())
                  .trace()
                  .real();
    double pairwise = 0.0, mean = 0.0;
    for (Eigen::Index a = 0; a < ell.size(); ++a) {
        mean += ell(a) * p(a);
        for (Eigen::Index b = 0; b < ell.size(); ++b) {
            const double diff = ell(a) - ell(b);
            pairwise += 0.5 * diff * diff * p(a) * p(b);
        }
    }
    out.rhs = pairwise + mean * mean;
    out.residual = std::abs(out.lhs - out.rhs);
    return out;
}

MeasurementBasis sld_measurement(const SLDResult& sld_result) {
    return MeasurementBasis(sld_result.spectrum.eigenvectors, "sld");
}

double classical_fisher_from_probs(
    const std::function<RVector(double)>& probs, double lambda, double step) {
    const RVector p = probs(lambda);
    const RVector dp = richardson_derivative(probs, lambda, step);
    double fisher = 0.0;
    for (Eigen::Index m = 0; m < p.size(); ++m) {
        if (p(m) < 1e-12) {
            if (std::abs(dp(m)) > 1e-6) {
                throw SingularOutcomeError(
                    "classical_fisher: outcome " + std::to_string(m) +
                    " has vanishing probability but derivative " +
                    std::to_string(dp(m)));
            }
            continue;  // p (d log p)^2 -> 0 along smooth families
        }
        fisher += dp(m) * dp(m) / p(m);
    }
    return fisher;
}

double classical_fisher(const StateFamily& f, const MeasurementBasis& basis,
                        double lambda, double step) {
    const double h = step > 0.0 ? step : default_fd_step(lambda);
    return classical_fisher_from_probs(
        [&](double lam) -> RVector {
            return raw_probs(family_eval(f, lam).mat(), basis);
        },
        lambda, h);
}

QfiSplit two_level_decompose(const std::function<double(double)>& p1,
                             const std::function<CVector(double)>& phi1,
                             const std::function<double(double)>& p2,
                             const std::function<CVector(double)>& phi2,
                             double lambda, double step) {
    const double h = step > 0.0 ? step : default_fd_step(lambda);
    const CVector v1 = phi1(lambda), v2 = phi2(lambda);
    if (std::abs(p1(lambda) + p2(lambda) - 1.0) > 1e-8) {
        throw std::invalid_argument("two_level_decompose: weights do not sum to 1");
    }
    if (std::abs(v1.dot(v2)) > 1e-8) {
        throw std::invalid_argument("two_level_decompose: ensemble members not orthogonal");
    }

    // Derivative of an ensemble member in a smooth gauge: each sample is
    // phase-aligned so its overlap with the center vector is real positive.
    const auto member_derivative = [&](const std::function<CVector(double)>& phi,
                                       const CVector& center) -> CVector {
        const auto aligned = [&](double lam) -> CVector {
            CVector v = phi(lam);
            const Complex u = center.dot(v);
            if (std::abs(u) > 1e-12) v *= std::conj(u) / std::abs(u);
            return v;
        };
        return richardson_derivative(aligned, lambda, h);
    };

    const double w1 = p1(lambda), w2 = p2(lambda);
    const auto scalar_derivative = [&](const std::function<double(double)>& g) {
        const double d1 = (g(lambda + h) - g(lambda - h)) / (2.0 * h);
        const double d2 = (g(lambda + 0.5 * h) - g(lambda - 0.5 * h)) / h;
        return (4.0 * d2 - d1) / 3.0;
    };
    const double dw1 = scalar_derivative(p1), dw2 = scalar_derivative(p2);

    QfiSplit split{};
    // dp_i / p_i diagonal coefficients, zero off the support of rho.
    const auto diag_coeff = [&](double w, double dw) -> double {
        if (w > kSldCutoff) {
            split.classical += dw * dw / w;
            return dw / w;
        }
        if (std::abs(dw) > 1e-6) {
            throw SingularOutcomeError(
                "two_level_decompose: vanishing weight with nonzero derivative");
        }
        return 0.0;
    };
    const double diag1 = diag_coeff(w1, dw1);
    const double diag2 = diag_coeff(w2, dw2);
    const CVector dphi1 = member_derivative(phi1, v1);
    const CVector dphi2 = member_derivative(phi2, v2);
    split.omega = 2.0 * w1 * dphi1.dot(v2) + 2.0 * w2 * v1.dot(dphi2);
    split.nonclassical = std::norm(split.omega);
    split.total = split.classical + split.nonclassical;
    split.ratio = split.total > 0.0 ? split.classical / split.total : 0.0;

    // Assemble L in the ensemble form and cross-check the direct solve.
    Matrix assembled = diag1 * v1 * v1.adjoint() + diag2 * v2 * v2.adjoint();
    assembled += split.omega * v1 * v2.adjoint() +
                 std::conj(split.omega) * v2 * v1.adjoint();
    const auto rho_of = [&](double lam) -> Matrix {
        const CVector a = phi1(lam), b = phi2(lam);
        return p1(lam) * a * a.adjoint() + p2(lam) * b * b.adjoint();
    };
    const Matrix rho = rho_of(lambda);
    const Matrix drho = richardson_derivative(rho_of, lambda, h);
    const auto direct =
        sld(HermitianOperator(rho, 1e-8), HermitianOperator(drho, 1e-8));
    const double mismatch =
        (assembled - direct.L.mat()).cwiseAbs().maxCoeff();
    if (mismatch > 1e-6) {
        throw std::runtime_error(
            "two_level_decompose: ensemble SLD deviates from direct solve by " +
            std::to_string(mismatch));
    }
    return split;
}

}  // namespace qmetro
