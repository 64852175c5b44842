// scan.hpp
// Distributability landscapes along the optimal frontiers: curve sampling,
// extrema detection with refinement, and the per-dimension bifurcation scan.

#pragma once

#include <stdexcept>
#include <vector>

#include "cloneqfi/core.hpp"

namespace cloneqfi {

/// Thrown when a sampled curve is too coarse to separate adjacent extrema.
class ResolutionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Trade-off points sampled on a uniform eta_a grid along one machine's
/// optimal frontier.
struct Curve {
    MachineKind machine;
    int d;
    std::vector<TradeoffPoint> points;
};

enum class ExtremumKind { Minimum, Maximum };

struct Extremum {
    double eta_a;
    double sum_qfi;
    ExtremumKind kind;
    bool endpoint;
};

struct ExtremaReport {
    int d;
    MachineKind machine;
    std::vector<Extremum> extrema;  // ordered by eta_a, endpoints included
    double global_min_eta_a;        // over interior extrema
    double global_min_value;
    double symmetric_point;

    int interior_count() const;
};

struct ScanEntry {
    int d;
    double global_min_eta_a;
    double symmetric_point;
    bool is_symmetric;
    int extrema_count;  // endpoints included
};

struct ScanRecord {
    MachineKind machine;
    std::vector<ScanEntry> entries;
    int last_symmetric_d;   // largest d whose global minimum is symmetric
    int first_asymmetric_d; // smallest d whose global minimum is not (-1 if none)
};

/// Optimal-frontier eta_b for either machine (PQCM via the amplitude search).
double frontier_eta_b(MachineKind machine, double eta_a, int d);

/// Summed QFI of both copies at a frontier point.
double sum_qfi_at(MachineKind machine, int d, double eta_a);

/// Summed fidelity of both copies at a frontier point.
double sum_fid_at(MachineKind machine, int d, double eta_a);

/// eta where the frontier crosses eta_a = eta_b: (d+2)/(2d+2) for the UQCM,
/// the bisection fixed point for the PQCM.
double symmetric_point(MachineKind machine, int d);

/// n uniformly spaced frontier samples over eta_a in [0, 1].
Curve qfi_sum_curve(MachineKind machine, int d, int n);

/// Locates interior extrema by sign changes of first differences and refines
/// each by golden-section search to refine_tol. Endpoints are classified
/// separately and excluded from the global interior minimum.
ExtremaReport find_extrema(const Curve& curve, double refine_tol);

/// Runs qfi_sum_curve + find_extrema for every d in [d_min, d_max] and
/// records where the global minimum sits relative to the symmetric point.
ScanRecord bifurcation_scan(MachineKind machine, int d_min, int d_max, int n = 4001,
                            double refine_tol = 1e-10);

struct FidelityOptimum {
    double argmax_eta_a;
    double max_sum;
};

/// Argmax of the summed fidelity along the UQCM frontier (grid + refinement).
FidelityOptimum fidelity_optimum_check(int d, int n);

}  // namespace cloneqfi
