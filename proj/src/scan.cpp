#include "cloneqfi/scan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cloneqfi/golden.hpp"
#include "cloneqfi/machines.hpp"

namespace cloneqfi {

namespace {

// Amplitude-search tolerance used whenever a curve or refinement needs the
// PQCM frontier.
constexpr double kPqcmSearchTol = 1e-12;

// First differences at or below this magnitude count as flat. Sits two
// orders above the frontier evaluation noise and well below the smallest
// genuine slope resolved by the default grids.
constexpr double kFlatTol = 1e-12;

// A symmetric-point value within this of the lowest interior minimum counts
// as attaining the global minimum (degenerate or flat landscapes).
constexpr double kSymmetricTieTol = 1e-9;

// Mirror minima of a symmetric curve agree to this; the smaller eta_a of a
// tied pair is reported.
constexpr double kPairTieTol = 1e-10;

void check_dimension(int d) {
    if (d < 2) {
        throw std::domain_error("dimension must be at least 2, got " + std::to_string(d));
    }
}

}  // namespace

int ExtremaReport::interior_count() const {
    int count = 0;
    for (const Extremum& e : extrema) {
        if (!e.endpoint) ++count;
    }
    return count;
}

double frontier_eta_b(MachineKind machine, double eta_a, int d) {
    if (machine == MachineKind::Uqcm) {
        return uqcm_boundary(eta_a, d);
    }
    return pqcm_d_optimal(eta_a, d, kPqcmSearchTol).eta_b;
}

double sum_qfi_at(MachineKind machine, int d, double eta_a) {
    return qfi_scaled(eta_a, d) + qfi_scaled(frontier_eta_b(machine, eta_a, d), d);
}

double sum_fid_at(MachineKind machine, int d, double eta_a) {
    return fidelity_scaled(eta_a, d) + fidelity_scaled(frontier_eta_b(machine, eta_a, d), d);
}

double symmetric_point(MachineKind machine, int d) {
    if (machine == MachineKind::Uqcm) {
        return uqcm_symmetric_eta(d);
    }
    return pqcm_symmetric_eta(d);
}

Curve qfi_sum_curve(MachineKind machine, int d, int n) {
    check_dimension(d);
    if (n < 3) {
        throw std::domain_error("curve needs at least 3 samples, got " + std::to_string(n));
    }
    Curve curve{machine, d, {}};
    curve.points.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double eta_a = static_cast<double>(i) / (n - 1);
        curve.points.push_back(
            make_tradeoff_point(eta_a, frontier_eta_b(machine, eta_a, d), d));
    }
    return curve;
}

ExtremaReport find_extrema(const Curve& curve, double refine_tol) {
    const int n = static_cast<int>(curve.points.size());
    if (n < 3) {
        throw std::invalid_argument("curve must hold at least 3 points");
    }
    if (refine_tol <= 0.0) {
        throw std::domain_error("refinement tolerance must be positive");
    }
    const MachineKind machine = curve.machine;
    const int d = curve.d;
    const auto value = [machine, d](double eta) { return sum_qfi_at(machine, d, eta); };

    ExtremaReport report;
    report.d = d;
    report.machine = machine;
    report.symmetric_point = symmetric_point(machine, d);

    // Sign changes of first differences, with a flat band so that frontier
    // evaluation noise cannot fabricate extrema on constant stretches.
    int last_sign = 0;
    int last_sign_cell = -1;
    int last_change_cell = -1;
    int first_sign = 0;
    std::vector<Extremum> interior;
    for (int i = 0; i + 1 < n; ++i) {
        const double diff = curve.points[i + 1].sum_qfi - curve.points[i].sum_qfi;
        const int sign = std::abs(diff) <= kFlatTol ? 0 : (diff > 0.0 ? 1 : -1);
        if (sign == 0) continue;
        if (first_sign == 0) first_sign = sign;
        if (last_sign != 0 && sign != last_sign) {
            if (last_change_cell >= 0 && i - last_change_cell < 3) {
                throw ResolutionError("adjacent sign changes at cells " +
                                      std::to_string(last_change_cell) + " and " +
                                      std::to_string(i) + "; increase the grid resolution");
            }
            last_change_cell = i;
            const double lo = curve.points[last_sign_cell].eta_a;
            const double hi = curve.points[i + 1].eta_a;
            const ExtremumKind kind =
                last_sign < 0 ? ExtremumKind::Minimum : ExtremumKind::Maximum;
            const double eta = kind == ExtremumKind::Minimum
                                   ? golden_section_min(value, lo, hi, refine_tol)
                                   : golden_section_max(value, lo, hi, refine_tol);
            interior.push_back({eta, value(eta), kind, false});
        }
        last_sign = sign;
        last_sign_cell = i;
    }

    // Endpoints, classified by the adjacent slope. A fully flat curve attains
    // its minimum everywhere, endpoints included.
    const ExtremumKind left_kind =
        first_sign > 0 ? ExtremumKind::Minimum : ExtremumKind::Maximum;
    const ExtremumKind right_kind =
        last_sign < 0 ? ExtremumKind::Minimum : ExtremumKind::Maximum;
    const ExtremumKind flat = ExtremumKind::Minimum;
    report.extrema.push_back({curve.points.front().eta_a, curve.points.front().sum_qfi,
                              first_sign == 0 ? flat : left_kind, true});
    report.extrema.insert(report.extrema.end(), interior.begin(), interior.end());
    report.extrema.push_back({curve.points.back().eta_a, curve.points.back().sum_qfi,
                              last_sign == 0 ? flat : right_kind, true});

    // Global interior minimum. The symmetric point is itself a critical point
    // of every frontier sum; when it ties the best minimum within tolerance it
    // is reported, which also pins down flat landscapes deterministically.
    double best_value = std::numeric_limits<double>::infinity();
    for (const Extremum& e : interior) {
        if (e.kind == ExtremumKind::Minimum) best_value = std::min(best_value, e.sum_qfi);
    }
    const double sym_value = value(report.symmetric_point);
    if (sym_value <= best_value + kSymmetricTieTol) {
        report.global_min_eta_a = report.symmetric_point;
        report.global_min_value = sym_value;
    } else {
        double best_eta = std::numeric_limits<double>::quiet_NaN();
        for (const Extremum& e : interior) {
            if (e.kind != ExtremumKind::Minimum) continue;
            if (e.sum_qfi > best_value + kPairTieTol) continue;
            if (std::isnan(best_eta) || e.eta_a < best_eta) best_eta = e.eta_a;
        }
        report.global_min_eta_a = best_eta;
        report.global_min_value = best_value;
    }
    return report;
}

ScanRecord bifurcation_scan(MachineKind machine, int d_min, int d_max, int n,
                            double refine_tol) {
    if (d_min < 2 || d_min > d_max) {
        throw std::domain_error("invalid dimension range " + std::to_string(d_min) + ":" +
                                std::to_string(d_max));
    }
    ScanRecord record{machine, {}, -1, -1};
    const double grid_tol = 1.0 / (n - 1);
    for (int d = d_min; d <= d_max; ++d) {
        const ExtremaReport report = find_extrema(qfi_sum_curve(machine, d, n), refine_tol);
        const double mirror = frontier_eta_b(machine, report.global_min_eta_a, d);
        const bool is_symmetric =
            std::abs(report.global_min_eta_a - report.symmetric_point) <= grid_tol ||
            std::abs(mirror - report.symmetric_point) <= grid_tol;
        record.entries.push_back({d, report.global_min_eta_a, report.symmetric_point,
                                  is_symmetric, static_cast<int>(report.extrema.size())});
        if (is_symmetric) {
            record.last_symmetric_d = d;
        } else if (record.first_asymmetric_d < 0) {
            record.first_asymmetric_d = d;
        }
    }
    return record;
}

FidelityOptimum fidelity_optimum_check(int d, int n) {
    check_dimension(d);
    if (n < 3) {
        throw std::domain_error("grid needs at least 3 samples");
    }
    const auto value = [d](double eta) { return sum_fid_at(MachineKind::Uqcm, d, eta); };
    int best = 0;
    double best_value = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const double v = value(static_cast<double>(i) / (n - 1));
        if (v > best_value) {
            best_value = v;
            best = i;
        }
    }
    const double h = 1.0 / (n - 1);
    const double lo = std::max(0.0, (best - 1) * h);
    const double hi = std::min(1.0, (best + 1) * h);
    const double eta = golden_section_max(value, lo, hi, 1e-10);
    return {eta, value(eta)};
}

}  // namespace cloneqfi
