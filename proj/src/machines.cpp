#include "cloneqfi/machines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cloneqfi/golden.hpp"

namespace cloneqfi {

namespace {

constexpr double kRadicandSlack = 1e-12;  // radicands in [-slack, 0) count as 0
constexpr int kCoarseGridPoints = 1024;

double clamp01(double x) {
    return std::min(std::max(x, 0.0), 1.0);
}

// Square root with tolerance for boundary round-off.
double safe_sqrt(double x) {
    if (x < -kRadicandSlack) {
        throw std::domain_error("negative radicand " + std::to_string(x));
    }
    return std::sqrt(std::max(x, 0.0));
}

void check_dimension(int d) {
    if (d < 2) {
        throw std::domain_error("dimension must be at least 2, got " + std::to_string(d));
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// UQCM
// ---------------------------------------------------------------------------

ShrinkPair uqcm_shrink(double a, double b, int d) {
    MachineParams params{MachineKind::Uqcm, d, a, b, 0.0};
    params.validate(1e-9);
    return {clamp01(1.0 - b * b), clamp01(1.0 - a * a)};
}

double uqcm_frontier_residual(double eta_a, double eta_b, int d) {
    const double C = (2.0 * d * d - 4.0) / (static_cast<double>(d) * d);
    return eta_a * eta_a + eta_b * eta_b + C * (1.0 - eta_a) * (1.0 - eta_b) - 1.0;
}

double uqcm_boundary(double eta_a, int d) {
    check_dimension(d);
    const double ea = checked_eta(eta_a);
    const double C = (2.0 * d * d - 4.0) / (static_cast<double>(d) * d);
    const double p = C * (1.0 - ea);                 // -linear coefficient
    const double q = ea * ea - 1.0 + C * (1.0 - ea); // constant coefficient
    const double disc = p * p - 4.0 * q;
    if (disc < -kRadicandSlack) {
        throw std::domain_error("no real frontier point for eta_a=" + std::to_string(ea));
    }
    // Larger root: the optimal frontier (upper arc of the ellipse).
    return clamp01(0.5 * (p + std::sqrt(std::max(disc, 0.0))));
}

MachineParams uqcm_params_from_eta(double eta_a, int d) {
    check_dimension(d);
    const double ea = checked_eta(eta_a);
    const double b = safe_sqrt(1.0 - ea);
    const double a = -b / d + safe_sqrt(b * b / (static_cast<double>(d) * d) + 1.0 - b * b);
    return {MachineKind::Uqcm, d, clamp01(a), clamp01(b), 0.0};
}

BoundarySample uqcm_boundary_sample(double eta_a, int d) {
    const MachineParams params = uqcm_params_from_eta(eta_a, d);
    const ShrinkPair pair = uqcm_shrink(params.a, params.b, d);
    return {pair.eta_a, pair.eta_b, params, true};
}

double uqcm_symmetric_eta(int d) {
    check_dimension(d);
    return (d + 2.0) / (2.0 * d + 2.0);
}

// ---------------------------------------------------------------------------
// PQCM
// ---------------------------------------------------------------------------

PqcmOptimum pqcm2_optimal(double eta_a) {
    const double ea = checked_eta(eta_a);
    return {safe_sqrt(1.0 - ea * ea), ea / std::sqrt(2.0)};
}

ShrinkPair pqcm_d_shrink(double a, double b, int d) {
    check_dimension(d);
    const double c = safe_sqrt(1.0 - (d - 1.0) * (a * a + b * b));
    return {clamp01((d - 2.0) * a * a + 2.0 * a * c),
            clamp01((d - 2.0) * b * b + 2.0 * b * c)};
}

double pqcm_d_tradeoff(double eta_a, double a, int d) {
    check_dimension(d);
    const double ea = checked_eta(eta_a);
    if (a <= 0.0) {
        throw std::domain_error("amplitude a must be positive in the trade-off relation");
    }
    const double t = (ea - (d - 2.0) * a * a) / (2.0 * a);
    if (t * t > 1.0 + kRadicandSlack) {
        throw std::domain_error("infeasible amplitude a=" + std::to_string(a) +
                                " for eta_a=" + std::to_string(ea));
    }
    const double inner = (1.0 - t * t) / (d - 1.0) - a * a;
    if (inner < -kRadicandSlack) {
        throw std::domain_error("infeasible amplitude a=" + std::to_string(a) +
                                " for eta_a=" + std::to_string(ea));
    }
    const double first = (d - 2.0) / (d - 1.0) * (1.0 - (d - 1.0) * a * a - t * t);
    return first + 2.0 * t * std::sqrt(std::max(inner, 0.0));
}

AmplitudeInterval pqcm_feasible_amplitudes(double eta_a, int d) {
    check_dimension(d);
    const double ea = checked_eta(eta_a);
    const double B = (d - 2.0) * ea + 2.0;
    const double disc = 4.0 * (1.0 - ea) * (1.0 + (d - 1.0) * ea);
    const double sq = std::sqrt(std::max(disc, 0.0));
    const double dd = static_cast<double>(d) * d;
    return {safe_sqrt(std::max((B - sq) / dd, 0.0)), safe_sqrt((B + sq) / dd)};
}

namespace {

// eta_a = 0 degenerate case: a = 0 decouples copy A entirely and leaves b
// free, so the frontier value is max_b [(d-2) b^2 + 2b sqrt(1-(d-1) b^2)].
PqcmOptimum pqcm_single_copy_max(int d, double tol) {
    const auto value = [d](double b) {
        return (d - 2.0) * b * b + 2.0 * b * std::sqrt(std::max(1.0 - (d - 1.0) * b * b, 0.0));
    };
    const double hi = 1.0 / std::sqrt(d - 1.0);
    const double b = golden_section_max(value, 0.0, hi, tol);
    return {clamp01(value(b)), 0.0};
}

double tradeoff_or_lowest(double eta_a, double a, int d) {
    try {
        return pqcm_d_tradeoff(eta_a, a, d);
    } catch (const std::domain_error&) {
        return -std::numeric_limits<double>::infinity();
    }
}

}  // namespace

PqcmOptimum pqcm_d_optimal(double eta_a, int d, double tol) {
    check_dimension(d);
    if (tol <= 0.0) {
        throw std::domain_error("tolerance must be positive");
    }
    const double ea = checked_eta(eta_a);
    if (ea == 0.0) {
        return pqcm_single_copy_max(d, tol);
    }
    const AmplitudeInterval window = pqcm_feasible_amplitudes(ea, d);
    if (!(window.hi > 0.0) || window.hi < window.lo) {
        throw std::domain_error("empty feasible amplitude set for eta_a=" + std::to_string(ea));
    }
    if (window.hi - window.lo <= tol) {
        const double a = 0.5 * (window.lo + window.hi);
        return {clamp01(tradeoff_or_lowest(ea, a, d)), a};
    }
    // Coarse localization, then golden-section refinement of the best cell.
    const double step = (window.hi - window.lo) / (kCoarseGridPoints - 1);
    double best_a = window.lo;
    double best_v = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < kCoarseGridPoints; ++i) {
        const double a = window.lo + i * step;
        const double v = tradeoff_or_lowest(ea, a, d);
        if (v > best_v) {
            best_v = v;
            best_a = a;
        }
    }
    if (!std::isfinite(best_v)) {
        throw std::domain_error("empty feasible amplitude set for eta_a=" + std::to_string(ea));
    }
    const double lo = std::max(window.lo, best_a - step);
    const double hi = std::min(window.hi, best_a + step);
    const double a_opt =
        golden_section_max([&](double a) { return tradeoff_or_lowest(ea, a, d); }, lo, hi, tol);
    return {clamp01(tradeoff_or_lowest(ea, a_opt, d)), a_opt};
}

MachineParams pqcm_params_from_amplitude(double eta_a, double a, int d) {
    check_dimension(d);
    const double ea = checked_eta(eta_a);
    if (a <= 0.0) {
        if (ea > kRadicandSlack) {
            throw std::domain_error("a = 0 realizes only eta_a = 0");
        }
        const double amp = 1.0 / std::sqrt(static_cast<double>(d));
        return {MachineKind::Pqcm, d, 0.0, amp, amp};
    }
    const double c = (ea - (d - 2.0) * a * a) / (2.0 * a);
    if (c < -kRadicandSlack || c > 1.0 + kRadicandSlack) {
        throw std::domain_error("amplitude a=" + std::to_string(a) +
                                " yields no physical machine at eta_a=" + std::to_string(ea));
    }
    const double cc = clamp01(c);
    const double b = safe_sqrt((1.0 - cc * cc) / (d - 1.0) - a * a);
    return {MachineKind::Pqcm, d, a, b, cc};
}

BoundarySample pqcm_optimal_sample(double eta_a, int d, double tol) {
    const PqcmOptimum opt = pqcm_d_optimal(eta_a, d, tol);
    const MachineParams params = pqcm_params_from_amplitude(eta_a, opt.a_opt, d);
    return {checked_eta(eta_a), opt.eta_b, params, true};
}

double pqcm_symmetric_eta(int d, double tol) {
    check_dimension(d);
    double lo = 0.0, hi = 1.0;
    // pqcm_d_optimal(eta).eta_b - eta decreases from 1 to -1 on [0, 1].
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (pqcm_d_optimal(mid, d, tol * 0.1).eta_b > mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace cloneqfi
