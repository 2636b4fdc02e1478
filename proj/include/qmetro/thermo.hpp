#pragma once

#include <array>

#include "qmetro/qfi.hpp"
#include "qmetro/states.hpp"

namespace qmetro {

/// Boltzmann constant, exact SI value, J/K.
inline constexpr double kBoltzmann = 1.380649e-23;

/// Uniform lambda-averaging window with trapezoid quadrature: the node
/// count (16 * 2^k) doubles until the entrywise change drops below
/// refine_tol. full_period() builds the window [0, period] of a family.
struct AveragingSpec {
    AveragingSpec(double lo, double hi, int nodes = 16,
                  double refine_tol = 1e-9);
    static AveragingSpec full_period(const StateFamily& f);

    double lo;
    double hi;
    int nodes;
    double refine_tol;
};

/// One evaluated inequality instance: holds iff lhs - rhs >= -tol.
struct BoundReport {
    BoundReport(std::string label_, double lhs_, double rhs_, double tol_,
                std::string context_ = "")
        : label(std::move(label_)),
          lhs(lhs_),
          rhs(rhs_),
          slack(lhs_ - rhs_),
          holds(lhs_ - rhs_ >= -tol_),
          tol(tol_),
          context(std::move(context_)) {}

    std::string label;
    double lhs;
    double rhs;
    double slack;
    bool holds;
    double tol;
    std::string context;
};

/// One measure-store-reset-erase round at a fixed lambda. The conditional
/// unitary reset of the probe dissipates nothing; the erasure of the
/// memory costs at least heat_kbt * k_B T.
struct CycleRecord {
    double lambda;
    ProbDist outcome_probs;
    double shannon_nats;  // entropy of the stored outcome distribution
    double heat_kbt;      // per-lambda erasure bound, units of k_B T
    double reset_heat;    // always 0: the probe reset is unitary
};

/// Thrown by entropy_chain_check when the generator's spectral spread is
/// not 1; the message names the rescaling (h/s, s*t) that fixes it.
class NormalizationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Uniform average of |psi_lambda><psi_lambda| over the window, validated
/// as a density matrix. Pure unitary families only; when the family has a
/// period the window must span a whole number of them.
HermitianOperator average_state(const StateFamily& f,
                                const AveragingSpec& spec);

/// Averaged outcome distribution <m|rho_s|m>.
ProbDist averaged_probs(const StateFamily& f, const MeasurementBasis& basis,
                        const AveragingSpec& spec);

/// -sum p log p in nats.
double shannon_entropy(const ProbDist& p);

/// -tr(rho log rho) in nats; zero eigenvalues are skipped.
double von_neumann_entropy(const HermitianOperator& rho);

/// Minimal erasure heat k_B * T * S for entropy S nats, in joules.
double landauer_bound(double entropy_nats, double temperature);

/// Heat bound k_B * T * log(2) * F_Q / t^2, in joules.
double qfi_heat_bound(double qfi, double t, double temperature);

/// Rescale (h, t) -> (h/s, s*t) so the generator has unit spectral
/// spread; the family and F_Q / t^2 are unchanged.
std::pair<HermitianOperator, double> rescale_to_unit_seminorm(
    const HermitianOperator& h, double t);

/// The averaged entropy chain: outcome Shannon entropy >= von Neumann
/// entropy of the averaged state >= log(2) F_Q / t^2. Requires a pure
/// unitary family whose generator has unit spectral spread. Returns the
/// two links plus the composite bound, each at tol 1e-9.
std::array<BoundReport, 3> entropy_chain_check(const StateFamily& f,
                                               const MeasurementBasis& basis,
                                               const AveragingSpec& spec);

/// Outcome statistics and erasure accounting of one metrological run.
CycleRecord memory_cycle(const StateFamily& f, const MeasurementBasis& basis,
                         double lambda);

}  // namespace qmetro
