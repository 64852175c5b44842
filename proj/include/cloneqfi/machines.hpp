// machines.hpp
// Parameterizations of the asymmetric universal (UQCM) and phase-covariant
// (PQCM) cloning machines in dimension d: amplitude -> shrinking-factor maps,
// optimal trade-off frontiers, and the scalar search for the free PQCM
// amplitude.

#pragma once

#include "cloneqfi/core.hpp"

namespace cloneqfi {

struct ShrinkPair {
    double eta_a;
    double eta_b;
};

/// A point of a machine's shrinking-factor trade-off together with the
/// amplitudes that realize it.
struct BoundarySample {
    double eta_a;
    double eta_b;
    MachineParams params;
    bool optimal;
};

// ---------------------------------------------------------------------------
// UQCM
// ---------------------------------------------------------------------------

/// Shrinking factors (1-b^2, 1-a^2) of the UQCM with amplitudes (a, b).
/// Requires the normalization a^2 + b^2 + 2ab/d = 1 within 1e-9.
ShrinkPair uqcm_shrink(double a, double b, int d);

/// Optimal-frontier eta_b for a given eta_a: the larger real root of
/// eta_b^2 - C(1-eta_a) eta_b + [eta_a^2 - 1 + C(1-eta_a)] = 0,
/// C = (2d^2-4)/d^2, clamped to [0, 1].
double uqcm_boundary(double eta_a, int d);

/// Residual of the no-cloning trade-off:
/// eta_a^2 + eta_b^2 + C(1-eta_a)(1-eta_b) - 1. Zero on the frontier.
double uqcm_frontier_residual(double eta_a, double eta_b, int d);

/// Amplitudes realizing the frontier point (eta_a, uqcm_boundary(eta_a, d)):
/// b = sqrt(1-eta_a), a = the root of a^2 + 2ab/d + b^2 - 1 = 0 in [0, 1].
MachineParams uqcm_params_from_eta(double eta_a, int d);

BoundarySample uqcm_boundary_sample(double eta_a, int d);

/// Symmetric operating point (d+2)/(2d+2) where eta_a = eta_b.
double uqcm_symmetric_eta(int d);

// ---------------------------------------------------------------------------
// PQCM
// ---------------------------------------------------------------------------

struct PqcmOptimum {
    double eta_b;
    double a_opt;
};

/// Optimal qubit PQCM frontier: eta_b = sqrt(1 - eta_a^2), a_opt = eta_a/sqrt(2).
PqcmOptimum pqcm2_optimal(double eta_a);

/// Shrinking factors of the d-dimensional PQCM with amplitudes (a, b):
/// eta_x = (d-2) x^2 + 2x sqrt(1 - (d-1)(a^2+b^2)).
ShrinkPair pqcm_d_shrink(double a, double b, int d);

/// Trade-off eta_b(eta_a, a) with the amplitude b eliminated. Throws
/// std::domain_error when a is infeasible for this eta_a.
double pqcm_d_tradeoff(double eta_a, double a, int d);

/// Feasible amplitude interval [lo, hi] for pqcm_d_tradeoff at fixed eta_a:
/// the roots of d^2 u^2 - 2[(d-2)eta_a + 2] u + eta_a^2 = 0 in u = a^2.
struct AmplitudeInterval {
    double lo;
    double hi;
};
AmplitudeInterval pqcm_feasible_amplitudes(double eta_a, int d);

/// Maximizes pqcm_d_tradeoff over the feasible amplitudes: coarse 1024-point
/// grid followed by golden-section refinement to tol. At eta_a = 0 the
/// amplitude a vanishes and b is free; the search then runs over b alone.
PqcmOptimum pqcm_d_optimal(double eta_a, int d, double tol);

/// Full amplitude triple (a, b, c) for a feasible (eta_a, a) pair.
MachineParams pqcm_params_from_amplitude(double eta_a, double a, int d);

BoundarySample pqcm_optimal_sample(double eta_a, int d, double tol);

/// Fixed point eta of the optimal frontier (eta_a = eta_b), found by
/// bisection on pqcm_d_optimal.
double pqcm_symmetric_eta(int d, double tol = 1e-11);

}  // namespace cloneqfi
