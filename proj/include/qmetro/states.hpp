#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>

#include "qmetro/linalg.hpp"

namespace qmetro {

/// Normalized complex amplitude vector. Construction renormalizes exactly
/// after checking the norm is within tol of 1.
class PureState {
public:
    explicit PureState(CVector amplitudes, double tol = kHermTol);

    int dim() const { return static_cast<int>(amps_.size()); }
    const CVector& amps() const { return amps_; }

private:
    CVector amps_;
};

/// Orthonormal projective measurement basis {|m>}, one column per outcome.
/// Gram matrix must equal the identity within tol.
class MeasurementBasis {
public:
    explicit MeasurementBasis(Matrix columns, std::string label = "",
                              double tol = 1e-10);

    int dim() const { return static_cast<int>(cols_.cols()); }
    const Matrix& columns() const { return cols_; }
    CVector vector(int m) const { return cols_.col(m); }
    const std::string& label() const { return label_; }

private:
    Matrix cols_;
    std::string label_;
};

/// Finite outcome distribution. Raw entries above -1e-12 are clipped to
/// zero and the distribution renormalized; larger negatives are errors,
/// as is a sum off 1 by more than 1e-10.
class ProbDist {
public:
    static ProbDist from_raw(RVector raw);

    int size() const { return static_cast<int>(p_.size()); }
    double operator[](int i) const { return p_(i); }
    const RVector& values() const { return p_; }

    /// Shannon entropy in nats, with 0*log(0) := 0.
    double entropy() const;

private:
    explicit ProbDist(RVector p) : p_(std::move(p)) {}
    RVector p_;
};

/// Unitary family |psi_lambda> = exp(-i lambda h t) |psi>.
struct PureUnitary {
    PureState initial;
    HermitianOperator generator;
    double time;
    SpectralDecomposition gen_eig;  // cached spectral data of the generator
};

/// Arbitrary mixed family lambda -> rho_lambda on a validity interval.
struct MixedMap {
    std::function<Matrix(double)> evaluator;
    double lo;
    double hi;
};

/// A lambda-parametrized state family, pure-unitary or general mixed.
/// PureUnitary families with commensurate generator gaps carry a period:
/// when every eigenvalue gap of t*h is an integer multiple of a common
/// gap g, period = 2*pi/g.
class StateFamily {
public:
    static StateFamily pure_unitary(PureState initial, HermitianOperator h,
                                    double t, std::string descriptor = "");
    static StateFamily mixed_map(std::function<Matrix(double)> evaluator,
                                 double lo, double hi,
                                 std::string descriptor = "");

    bool is_pure_unitary() const;
    const PureUnitary& pure() const;
    const MixedMap& mixed() const;
    std::optional<double> period() const { return period_; }
    int dim() const;
    const std::string& descriptor() const { return descriptor_; }

    /// Parametrized pure state (PureUnitary families only).
    CVector state_vector(double lambda) const;

private:
    explicit StateFamily(std::variant<PureUnitary, MixedMap> kind)
        : kind_(std::move(kind)) {}
    std::variant<PureUnitary, MixedMap> kind_;
    std::optional<double> period_;
    std::string descriptor_;
};

/// rho_lambda as a validated density matrix.
HermitianOperator family_eval(const StateFamily& f, double lambda);

/// Outcome probabilities p_m = <m|rho|m>, clipped per the ProbDist policy.
ProbDist measurement_probs(const HermitianOperator& rho,
                           const MeasurementBasis& basis);

/// Unclipped real diagonal <m|rho|m>; smooth in lambda, used by
/// finite-difference callers.
RVector raw_probs(const Matrix& rho, const MeasurementBasis& basis);

inline double default_fd_step(double lambda) {
    return 1e-4 * std::max(1.0, std::abs(lambda));
}

/// d(rho)/d(lambda) by central differences with one Richardson level
/// (steps h and h/2, O(h^4)). Pass step <= 0 for the default
/// 1e-4*max(1,|lambda|).
HermitianOperator derivative_rho(const StateFamily& f, double lambda,
                                 double step = 0.0);

/// Qubit family exp(-i lambda sigma_z/2 t) (sqrt(p)|0> + sqrt(1-p)|1>).
StateFamily single_qubit_family(double p, double t);

/// Closed form of the bundled mixed-qubit example family,
/// rho = [[l^2, l], [l, 2-l^2]] / 2; positive semidefinite for |l| <= 1.
Matrix example_mixed_qubit_matrix(double lambda);

/// The bundled mixed-qubit example as a family on [delta, 1-delta];
/// both endpoints are pure states, so the interval is clipped by delta.
StateFamily example_mixed_qubit_family(double delta = 1e-3);

/// Measurement basis {|+_p>, |-_p>} with |+_p> = sqrt(p)|0> + sqrt(1-p)|1>.
MeasurementBasis plus_minus_p_basis(double p);

/// Basis {(|0> + e^{i phi}|1>)/sqrt(2), (|0> - e^{i phi}|1>)/sqrt(2)}.
MeasurementBasis phase_rotated_basis(double phi);

/// Two-outcome basis {sqrt(q) psi0 + sqrt(1-q) psiperp,
/// sqrt(1-q) psi0 - sqrt(q) psiperp}; inputs must be orthogonal. For
/// dim > 2 the basis is completed deterministically on the complement.
MeasurementBasis nonsld_basis(const PureState& psi0, const PureState& psiperp,
                              double q);

}  // namespace qmetro
