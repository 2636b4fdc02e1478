#include "qmetro/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace qmetro {

namespace {

// Rotate each column so its first component with |v_k| > 1e-12 is real
// positive; ties between equal eigenvalues keep a reproducible basis.
void fix_phases(Matrix& v) {
    for (Eigen::Index c = 0; c < v.cols(); ++c) {
        for (Eigen::Index r = 0; r < v.rows(); ++r) {
            const Complex z = v(r, c);
            if (std::abs(z) > 1e-12) {
                v.col(c) *= std::conj(z) / std::abs(z);
                break;
            }
        }
    }
}

Eigen::Index first_support_row(const Matrix& v, Eigen::Index c) {
    for (Eigen::Index r = 0; r < v.rows(); ++r) {
        if (std::abs(v(r, c)) > 1e-12) return r;
    }
    return v.rows();
}

bool column_less(const Matrix& v, Eigen::Index a, Eigen::Index b) {
    const Eigen::Index fa = first_support_row(v, a);
    const Eigen::Index fb = first_support_row(v, b);
    if (fa != fb) return fa < fb;
    for (Eigen::Index r = 0; r < v.rows(); ++r) {
        if (v(r, a).real() != v(r, b).real()) {
            return v(r, a).real() > v(r, b).real();
        }
        if (v(r, a).imag() != v(r, b).imag()) {
            return v(r, a).imag() > v(r, b).imag();
        }
    }
    return false;
}

// Within a degenerate eigenvalue block the solver's basis is arbitrary;
// ordering the phase-fixed columns lexicographically keeps emitted data
// reproducible.
void order_degenerate_blocks(SpectralDecomposition& dec) {
    const double scale =
        std::max(1.0, dec.eigenvalues.cwiseAbs().maxCoeff());
    Eigen::Index lo = 0;
    while (lo < dec.eigenvalues.size()) {
        Eigen::Index hi = lo + 1;
        while (hi < dec.eigenvalues.size() &&
               dec.eigenvalues(hi) - dec.eigenvalues(hi - 1) <=
                   1e-12 * scale) {
            ++hi;
        }
        for (Eigen::Index i = lo + 1; i < hi; ++i) {  // tiny blocks
            for (Eigen::Index j = i; j > lo; --j) {
                if (column_less(dec.eigenvectors, j, j - 1)) {
                    dec.eigenvectors.col(j).swap(dec.eigenvectors.col(j - 1));
                    std::swap(dec.eigenvalues(j), dec.eigenvalues(j - 1));
                } else {
                    break;
                }
            }
        }
        lo = hi;
    }
}

}  // namespace

HermitianOperator::HermitianOperator(Matrix m, double tol) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("HermitianOperator: matrix is not square");
    }
    if (m.rows() < 1 || m.rows() > kMaxDimension) {
        throw std::invalid_argument("HermitianOperator: dimension " +
                                    std::to_string(m.rows()) +
                                    " outside [1, " +
                                    std::to_string(kMaxDimension) + "]");
    }
    const double asym = (m - m.adjoint().eval()).cwiseAbs().maxCoeff();
    if (asym > tol) {
        throw std::invalid_argument(
            "HermitianOperator: |A - A^dagger| = " + std::to_string(asym) +
            " exceeds tolerance " + std::to_string(tol));
    }
    mat_ = 0.5 * (m + m.adjoint().eval());
}

SpectralDecomposition herm_eig(const HermitianOperator& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a.mat());
    if (solver.info() != Eigen::Success) {
        throw EigensolverError("herm_eig: eigensolver did not converge",
                               a.mat());
    }
    SpectralDecomposition dec;
    dec.eigenvalues = solver.eigenvalues();
    dec.eigenvectors = solver.eigenvectors();
    fix_phases(dec.eigenvectors);
    order_degenerate_blocks(dec);
    return dec;
}

double seminorm(const HermitianOperator& a) {
    const auto dec = herm_eig(a);
    return dec.eigenvalues(dec.eigenvalues.size() - 1) - dec.eigenvalues(0);
}

Matrix evolve_unitary(const HermitianOperator& h, double angle) {
    const auto dec = herm_eig(h);
    CVector phases(dec.eigenvalues.size());
    for (Eigen::Index k = 0; k < phases.size(); ++k) {
        phases(k) = std::exp(Complex(0.0, -angle * dec.eigenvalues(k)));
    }
    return dec.eigenvectors * phases.asDiagonal() *
           dec.eigenvectors.adjoint();
}

DensityDiagnostics validate_density(const HermitianOperator& rho, double tol) {
    DensityDiagnostics diag;
    diag.trace_error = std::abs(rho.mat().trace().real() - 1.0) +
                       std::abs(rho.mat().trace().imag());
    const auto dec = herm_eig(rho);
    diag.min_eigenvalue = dec.eigenvalues(0);
    if (diag.trace_error > tol) {
        diag.violations.push_back("trace differs from 1 by " +
                                  std::to_string(diag.trace_error));
    }
    if (diag.min_eigenvalue < -tol) {
        diag.violations.push_back("negative eigenvalue " +
                                  std::to_string(diag.min_eigenvalue));
    }
    diag.ok = diag.violations.empty();
    return diag;
}

Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Matrix pauli_y() {
    Matrix m(2, 2);
    m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    return m;
}

Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

}  // namespace qmetro
