// oracle.hpp
// Independent density-matrix route: explicit states, cloning-machine outputs,
// the analytic eigenbasis of scaled states, and two QFI evaluations that never
// touch the closed form in core.hpp.

#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "cloneqfi/core.hpp"

namespace cloneqfi {

/// Dense Hermitian unit-trace matrix on a d-dimensional system.
struct DensityMatrix {
    int d;
    Eigen::MatrixXcd entries;

    double hermiticity_residual() const;
    double trace_residual() const;
    double min_eigenvalue() const;
    void validate(double tol = 1e-12, double psd_tol = 1e-10) const;
};

/// Spectral decomposition, eigenvalues sorted descending.
struct EigenSystem {
    Eigen::VectorXd values;
    Eigen::MatrixXcd vectors;  // column n is |psi_n>
};

/// Pure state of a composite system, amplitudes in row-major subsystem order
/// (first subsystem varies slowest).
struct JointState {
    std::vector<int> dims;
    Eigen::VectorXcd amplitudes;

    double norm_residual() const;
};

/// Thrown when a matrix claimed to be of scaled form is not; carries the
/// measured Frobenius residual.
class ScaledFormError : public std::runtime_error {
public:
    ScaledFormError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

/// Amplitude vector of the equatorial state: component k is e^{i theta_k}/sqrt(d).
Eigen::VectorXcd build_equatorial(const EquatorialState& state);

/// d/dtheta_k of build_equatorial: i e^{i theta_k}/sqrt(d) on component k.
Eigen::VectorXcd equatorial_derivative(const EquatorialState& state, int k);

/// eta |psi><psi| + (1-eta)/d I.
DensityMatrix build_scaled_rho(const EquatorialState& state, double eta);
DensityMatrix build_scaled_rho(const ScaledOutputState& state);

/// The d-1 orthogonal but unnormalized complement vectors |psi~_n>, built from
/// the seed vectors |phi_n> = (-e^{-i(theta_n - theta_0)} |0> + |n>)/sqrt(2)
/// by the explicit Gram-Schmidt combination
/// |psi~_n> = |phi_n> - (1/n) sum_{m<n} e^{i(theta_m - theta_n)} |phi_m>.
/// Column n-1 holds |psi~_n>; <psi~_n|psi~_n> = (n+1)/(2n).
Eigen::MatrixXcd gram_schmidt_raw(const EquatorialState& state);

/// Orthonormal complement of |psi>: gram_schmidt_raw columns scaled by
/// sqrt(2n/(n+1)). Together with build_equatorial they form a complete basis
/// that diagonalizes every scaled state of this input.
Eigen::MatrixXcd gram_schmidt_complement(const EquatorialState& state);

/// Eigendecomposition of a density matrix, descending eigenvalues.
EigenSystem diagonalize(const DensityMatrix& rho);

struct QfiTerms {
    double classical = 0.0;  // sum_n (d lambda_n)^2 / lambda_n
    double weighted = 0.0;   // sum_n lambda_n F_n (pure-state QFIs)
    double mixture = 0.0;    // sum_{n != m} 8 l_n l_m/(l_n+l_m) |<psi_n|d psi_m>|^2
    double value() const { return classical + weighted - mixture; }
};

/// QFI of theta_k for the scaled state, evaluated term by term in the
/// analytic eigenbasis with analytically propagated derivatives. The
/// eigenvalues are phase-independent, so the classical term is identically 0.
QfiTerms qfi_eq2_terms(const EquatorialState& state, double eta, int k);
double qfi_eq2(const EquatorialState& state, double eta, int k);

/// QFI from the symmetric logarithmic derivative with a central finite
/// difference: d rho ~ [rho(t+delta) - rho(t-delta)]/(2 delta), L_mn =
/// 2 (d rho)_mn/(l_m + l_n) where l_m + l_n > rank_tol (else 0), returning
/// Tr(rho L^2). Throws if d rho has support on the fully-null eigenspace.
double qfi_sld_fd(const std::function<DensityMatrix(double)>& rho_at, double theta0,
                  double delta, double rank_tol = 1e-12);

/// Tripartite output a|psi>_A |Phi+>_BR + b|psi>_B |Phi+>_AR with
/// |Phi+> = (1/sqrt(d)) sum_j |jj>. Subsystem order (A, B, R).
JointState clone_uqcm(const EquatorialState& state, const MachineParams& params);

/// Tripartite output of the d-dimensional phase-covariant cloner:
/// |i>_A |0>_B |S>_R -> c|ii>|S_i> + sum_{j != i} (a|ij> + b|ji>) |S_j>,
/// extended linearly to |psi>. Ancilla states are computational-basis kets.
JointState clone_pqcm(const EquatorialState& state, const MachineParams& params);

/// Reduced density matrix of the subsystem at index `keep`.
DensityMatrix partial_trace(const JointState& joint, int keep);

struct EtaExtraction {
    double eta;
    double residual;  // Frobenius distance to the nearest scaled form
};

/// Inverts the fidelity map: eta = (d <psi|rho|psi> - 1)/(d - 1). Throws
/// ScaledFormError when rho is farther than tol from the scaled form.
EtaExtraction extract_eta(const DensityMatrix& rho, const EquatorialState& state,
                          double tol = 1e-8);

}  // namespace cloneqfi
