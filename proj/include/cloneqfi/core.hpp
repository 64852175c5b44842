// core.hpp
// Domain types and closed-form scalar maps for scaled qudit states:
// quantum Fisher information, fidelity, and the inverse map eta(F).

#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace cloneqfi {

enum class MachineKind { Uqcm, Pqcm };

const char* to_string(MachineKind kind);
MachineKind machine_from_string(const std::string& name);

/// Equatorial input state: every basis amplitude is e^{i theta_k}/sqrt(d).
struct EquatorialState {
    int d;
    Eigen::VectorXd phases;  // theta_0 .. theta_{d-1}, radians

    EquatorialState(int dim, Eigen::VectorXd thetas);

    /// All phases zero (uniform real superposition).
    static EquatorialState zero_phases(int dim);
};

/// Shrunk copy of an equatorial state: eta |psi><psi| + (1-eta)/d I.
struct ScaledOutputState {
    int d;
    double eta;
    EquatorialState input;

    ScaledOutputState(double eta, EquatorialState state);
};

/// Cloning-machine amplitudes. `c` is meaningful for PQCM only.
struct MachineParams {
    MachineKind kind;
    int d;
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;

    /// |a^2 + b^2 + 2ab/d - 1| for UQCM, |(d-1)(a^2+b^2) + c^2 - 1| for PQCM.
    double normalization_residual() const;
    void validate(double tol = 1e-12) const;
};

/// One sample of a trade-off curve: both shrinking factors plus the derived
/// per-copy fidelities, QFIs and their sums.
struct TradeoffPoint {
    double eta_a = 0.0;
    double eta_b = 0.0;
    double fid_a = 0.0;
    double fid_b = 0.0;
    double qfi_a = 0.0;
    double qfi_b = 0.0;
    double sum_fid = 0.0;
    double sum_qfi = 0.0;
};

/// Validates eta against [0,1] with a 1e-12 slack for boundary round-off,
/// returning the clamped value. Throws std::domain_error otherwise.
double checked_eta(double eta);

/// QFI of any single phase theta_k of a scaled equatorial state:
/// 4(d-1)eta^2 / (2d + d(d-2)eta). Strictly increasing in eta.
double qfi_scaled(double eta, int d);

/// Overlap <psi|rho|psi> of the scaled state with its input:
/// eta + (1-eta)/d.
double fidelity_scaled(double eta, int d);

/// Unique eta in [0,1] with qfi_scaled(eta, d) == qfi.
double eta_from_qfi(double qfi, int d);

/// Largest admissible QFI for dimension d, i.e. qfi_scaled(1, d) = 4(d-1)/d^2.
double qfi_pure(int d);

TradeoffPoint make_tradeoff_point(double eta_a, double eta_b, int d);

double qfi_sum(const TradeoffPoint& point);
double fid_sum(const TradeoffPoint& point);

}  // namespace cloneqfi
