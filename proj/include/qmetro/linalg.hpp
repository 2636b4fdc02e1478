#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qmetro {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// Desk-scale tool: dense matrices only, dimension capped.
inline constexpr int kMaxDimension = 64;

inline constexpr double kHermTol = 1e-12;
inline constexpr double kReconstructTol = 1e-10;

/// Thrown when the eigensolver fails; carries the offending matrix.
class EigensolverError : public std::runtime_error {
public:
    EigensolverError(std::string what, Matrix m)
        : std::runtime_error(std::move(what)), matrix(std::move(m)) {}
    Matrix matrix;
};

/// Dense Hermitian matrix. Construction enforces A = A^dagger within tol
/// and stores the exactly symmetrized (A + A^dagger)/2.
class HermitianOperator {
public:
    explicit HermitianOperator(Matrix m, double tol = kHermTol);

    int dim() const { return static_cast<int>(mat_.rows()); }
    const Matrix& mat() const { return mat_; }

private:
    Matrix mat_;
};

/// Eigenpairs of a Hermitian matrix: eigenvalues ascending, eigenvector
/// columns orthonormal and phase-fixed (first nonzero component real
/// positive) so repeated runs emit identical bytes.
struct SpectralDecomposition {
    RVector eigenvalues;
    Matrix eigenvectors;
};

SpectralDecomposition herm_eig(const HermitianOperator& a);

/// Spectral spread lambda_max - lambda_min. Invariant under shifts A + c*I.
double seminorm(const HermitianOperator& a);

/// exp(-i * angle * h), computed spectrally. Result unitary within 1e-10.
Matrix evolve_unitary(const HermitianOperator& h, double angle);

struct DensityDiagnostics {
    bool ok = false;
    double trace_error = 0.0;
    double min_eigenvalue = 0.0;
    std::vector<std::string> violations;
};

/// True iff trace(rho) = 1 within tol and all eigenvalues >= -tol.
DensityDiagnostics validate_density(const HermitianOperator& rho,
                                    double tol = kHermTol);

// Single-qubit constants.
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();

}  // namespace qmetro
