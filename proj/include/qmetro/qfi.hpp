#pragma once

#include <functional>

#include "qmetro/states.hpp"

namespace qmetro {

/// The symmetric logarithmic derivative is only defined up to the kernel
/// of rho; matrix elements on eigenvalue pairs with p_j + p_k below the
/// cutoff are set to zero. This cannot be done when the derivative lives
/// entirely inside that excluded block.
class DegenerateSupportError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An outcome probability vanished while its lambda-derivative did not,
/// so the Fisher sum would be singular.
class SingularOutcomeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Solution of d(rho) = (L rho + rho L)/2 on the support of rho.
struct SLDResult {
    HermitianOperator L;
    SpectralDecomposition spectrum;  // eigenpairs of L
    double seminorm;
    int support_rank;
};

/// Split of the QFI for a two-member ensemble: total = classical +
/// nonclassical, nonclassical = |omega|^2, ratio = classical/total.
struct QfiSplit {
    double total;
    double classical;
    double nonclassical;
    Complex omega;
    double ratio;
};

inline constexpr double kSldCutoff = 1e-10;

/// QFI of the unitary family exp(-i lambda h t)|psi>,
/// 4 t^2 (<psi|h^2|psi> - <psi|h|psi>^2); independent of lambda.
double qfi_pure(const PureState& psi, const HermitianOperator& h, double t);

/// SLD from a density matrix and its lambda-derivative:
/// L_jk = 2 (drho)_jk / (p_j + p_k) in the eigenbasis of rho, zero on the
/// excluded block.
SLDResult sld(const HermitianOperator& rho, const HermitianOperator& drho,
              double cutoff = kSldCutoff);

/// SLD of a family at lambda, with derivative_rho's stencil.
SLDResult sld_at(const StateFamily& f, double lambda, double step = 0.0,
                 double cutoff = kSldCutoff);

/// QFI of a general family, tr(L^2 rho).
double qfi_mixed(const StateFamily& f, double lambda, double step = 0.0);

/// Independent qubit QFI route via the Bloch vector r of rho_lambda:
/// |dr|^2 + (r . dr)^2 / (1 - |r|^2) for mixed states, |dr|^2 when
/// |r| = 1 within 1e-9.
double qfi_bloch_oracle(const StateFamily& f, double lambda,
                        double step = 0.0);

/// Bloch vector of a qubit density matrix.
Eigen::Vector3d bloch_vector(const HermitianOperator& rho);

struct VarianceIdentity {
    double lhs;       // tr(L^2 rho)
    double rhs;       // pairwise form + squared mean of the SLD spectrum
    double residual;  // |lhs - rhs|
};

/// tr(L^2 rho) against (1/2) sum_{l,l'} (l - l')^2 p_l p_l' plus the
/// squared mean (which vanishes because tr(L rho) = 0).
VarianceIdentity variance_identity_check(const SLDResult& sld_result,
                                         const HermitianOperator& rho);

/// The eigenbasis of L as a projective measurement; deterministic order
/// and phases come from herm_eig.
MeasurementBasis sld_measurement(const SLDResult& sld_result);

/// Fisher information sum_m (dp_m)^2 / p_m of a smooth outcome-probability
/// curve. Outcomes with p_m < 1e-12 and |dp_m| < 1e-6 contribute zero;
/// p_m < 1e-12 with a larger derivative raises SingularOutcomeError.
double classical_fisher_from_probs(
    const std::function<RVector(double)>& probs, double lambda, double step);

/// Classical Fisher information of a fixed projective measurement on a
/// family, by central differences on the outcome probabilities.
double classical_fisher(const StateFamily& f, const MeasurementBasis& basis,
                        double lambda, double step = 0.0);

/// QFI split of rho = p1|phi1><phi1| + p2|phi2><phi2| with
/// omega = 2 p1 <dphi1|phi2> + 2 p2 <phi1|dphi2>. Ensemble members are
/// differentiated in a smooth gauge (samples phase-aligned to the center
/// vector). Also assembles L from the ensemble form and cross-checks it
/// against sld() within 1e-6.
QfiSplit two_level_decompose(const std::function<double(double)>& p1,
                             const std::function<CVector(double)>& phi1,
                             const std::function<double(double)>& p2,
                             const std::function<CVector(double)>& phi2,
                             double lambda, double step = 0.0);

}  // namespace qmetro
