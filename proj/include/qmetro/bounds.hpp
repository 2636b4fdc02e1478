#pragma once

#include <optional>
#include <vector>

#include "qmetro/thermo.hpp"

namespace qmetro {

/// One assembled inequality instance with everything needed to audit it.
struct InequalityCase {
    std::string family;
    double lambda = 0.0;
    std::string measurement;
    double shannon = 0.0;       // outcome entropy, nats
    double qfi = 0.0;           // tr(L^2 rho)
    double sld_seminorm = 0.0;  // spectral spread of L
    double purity = 0.0;        // tr(rho^2)
    int dim = 0;
    std::optional<QfiSplit> split;             // two-level split when dim = 2
    std::optional<double> classical_fisher;    // of an explicit basis
    BoundReport report;
};

enum class EqualityCase { PureState, BalancedTwoLevel, None };

/// Shannon entropy plus twice log(2) times the collision probability is
/// at least 2 log 2, with equality exactly at deterministic and
/// two-outcome-uniform distributions.
BoundReport entropy_purity_check(const ProbDist& p);

/// SLD-measurement entropy against its QFI bound,
/// S >= 4 log(2) F_Q / ||L||^2, at a fixed lambda. When the family is
/// stationary (F_Q = 0, ||L|| = 0) the bound is vacuous and reported as
/// holding with rhs 0. For qubit families the spectral two-level split is
/// attached.
InequalityCase sld_entropy_bound(const StateFamily& f, double lambda,
                                 double step = 0.0, double tol = 1e-8);

/// Two-level refinement of the bound:
/// S >= log(2) F_Q / (F_Q + (1/(4 p1 p2) - 1) F_c). The rhs never
/// exceeds log 2.
BoundReport two_level_entropy_bound(const QfiSplit& split, double p1,
                                    double shannon, double tol = 1e-9);

/// Classify a case as an equality family of the SLD-entropy bound:
/// purity above 1 - 1e-9, or a qubit split with F_c below 1e-9 * F_Q.
/// A classified case must sit within 1e-6 of equality.
EqualityCase equality_case_detect(const InequalityCase& c);

/// Sweep of calibrated two-outcome bases at lambda0: outcome entropy at
/// the calibration point collapses to zero as q -> 1 while the Fisher
/// information at the quarter-period operating point stays near the QFI.
/// The resulting under-shoots of the SLD bound are expected behavior for
/// non-SLD measurements, not failures.
std::vector<InequalityCase> violation_search(const StateFamily& f,
                                             double lambda0,
                                             const std::vector<double>& q_grid);

}  // namespace qmetro
