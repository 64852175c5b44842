#include "cloneqfi/core.hpp"

#include <cmath>

namespace cloneqfi {

namespace {
constexpr double kEtaSlack = 1e-12;

void check_dimension(int d) {
    if (d < 2) {
        throw std::domain_error("dimension must be at least 2, got " + std::to_string(d));
    }
}
}  // namespace

const char* to_string(MachineKind kind) {
    return kind == MachineKind::Uqcm ? "uqcm" : "pqcm";
}

MachineKind machine_from_string(const std::string& name) {
    if (name == "uqcm" || name == "UQCM") return MachineKind::Uqcm;
    if (name == "pqcm" || name == "PQCM") return MachineKind::Pqcm;
    throw std::invalid_argument("unknown machine kind: " + name);
}

EquatorialState::EquatorialState(int dim, Eigen::VectorXd thetas)
    : d(dim), phases(std::move(thetas)) {
    check_dimension(d);
    if (phases.size() != d) {
        throw std::invalid_argument("phase vector has " + std::to_string(phases.size()) +
                                    " entries, expected " + std::to_string(d));
    }
}

EquatorialState EquatorialState::zero_phases(int dim) {
    return EquatorialState(dim, Eigen::VectorXd::Zero(dim));
}

ScaledOutputState::ScaledOutputState(double eta_in, EquatorialState state)
    : d(state.d), eta(checked_eta(eta_in)), input(std::move(state)) {}

double MachineParams::normalization_residual() const {
    if (kind == MachineKind::Uqcm) {
        return std::abs(a * a + b * b + 2.0 * a * b / d - 1.0);
    }
    return std::abs((d - 1.0) * (a * a + b * b) + c * c - 1.0);
}

void MachineParams::validate(double tol) const {
    check_dimension(d);
    const double lo = -1e-12, hi = 1.0 + 1e-12;
    if (a < lo || a > hi || b < lo || b > hi || c < lo || c > hi) {
        throw std::domain_error("machine amplitudes must lie in [0, 1]");
    }
    const double res = normalization_residual();
    if (res > tol) {
        throw std::domain_error("machine normalization violated, residual " +
                                std::to_string(res));
    }
}

double checked_eta(double eta) {
    if (eta < -kEtaSlack || eta > 1.0 + kEtaSlack) {
        throw std::domain_error("shrinking factor " + std::to_string(eta) +
                                " outside [0, 1]");
    }
    return std::min(std::max(eta, 0.0), 1.0);
}

double qfi_scaled(double eta, int d) {
    check_dimension(d);
    const double e = checked_eta(eta);
    return 4.0 * (d - 1) * e * e / (2.0 * d + static_cast<double>(d) * (d - 2) * e);
}

double fidelity_scaled(double eta, int d) {
    check_dimension(d);
    const double e = checked_eta(eta);
    return e + (1.0 - e) / d;
}

double qfi_pure(int d) {
    check_dimension(d);
    return 4.0 * (d - 1) / (static_cast<double>(d) * d);
}

double eta_from_qfi(double qfi, int d) {
    check_dimension(d);
    const double max_qfi = qfi_pure(d);
    if (qfi < -kEtaSlack || qfi > max_qfi + kEtaSlack) {
        throw std::domain_error("QFI " + std::to_string(qfi) +
                                " exceeds the pure-state value for d=" + std::to_string(d));
    }
    const double f = std::min(std::max(qfi, 0.0), max_qfi);
    // Positive root of 4(d-1) eta^2 - d(d-2) f eta - 2 d f = 0. Both terms of
    // the numerator are non-negative, so the direct sum form carries no
    // cancellation anywhere in the admissible range.
    const double p = static_cast<double>(d) * (d - 2) * f;
    const double eta = (p + std::sqrt(p * p + 32.0 * d * (d - 1.0) * f)) / (8.0 * (d - 1));
    return std::min(std::max(eta, 0.0), 1.0);
}

TradeoffPoint make_tradeoff_point(double eta_a, double eta_b, int d) {
    TradeoffPoint pt;
    pt.eta_a = checked_eta(eta_a);
    pt.eta_b = checked_eta(eta_b);
    pt.fid_a = fidelity_scaled(pt.eta_a, d);
    pt.fid_b = fidelity_scaled(pt.eta_b, d);
    pt.qfi_a = qfi_scaled(pt.eta_a, d);
    pt.qfi_b = qfi_scaled(pt.eta_b, d);
    pt.sum_fid = pt.fid_a + pt.fid_b;
    pt.sum_qfi = pt.qfi_a + pt.qfi_b;
    return pt;
}

double qfi_sum(const TradeoffPoint& point) {
    return point.qfi_a + point.qfi_b;
}

double fid_sum(const TradeoffPoint& point) {
    return point.fid_a + point.fid_b;
}

}  // namespace cloneqfi
