#include "cloneqfi/oracle.hpp"

#include <cmath>
#include <complex>
#include <numeric>

namespace cloneqfi {

using std::complex;
using namespace std::complex_literals;

namespace {

constexpr double kNullSupportTol = 1e-6;

Eigen::MatrixXcd scaled_entries(const Eigen::VectorXcd& psi, double eta, int d) {
    Eigen::MatrixXcd rho = eta * (psi * psi.adjoint());
    rho += (1.0 - eta) / d * Eigen::MatrixXcd::Identity(d, d);
    return rho;
}

// Seed vectors |phi_n> and, when k >= 0, their theta_k derivatives.
void complement_seeds(const EquatorialState& state, int k, Eigen::MatrixXcd& phi,
                      Eigen::MatrixXcd& dphi) {
    const int d = state.d;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    phi.setZero(d, d - 1);
    if (k >= 0) dphi.setZero(d, d - 1);
    for (int n = 1; n < d; ++n) {
        const complex<double> head =
            -std::exp(-1i * (state.phases(n) - state.phases(0))) * inv_sqrt2;
        phi(0, n - 1) = head;
        phi(n, n - 1) = inv_sqrt2;
        if (k == n) {
            dphi(0, n - 1) = -1i * head;
        } else if (k == 0) {
            dphi(0, n - 1) = 1i * head;
        }
    }
}

// Unnormalized complement |psi~_n> plus derivatives, by the explicit
// combination of seed vectors (no recursion: coefficients are closed-form).
void complement_raw(const EquatorialState& state, int k, Eigen::MatrixXcd& raw,
                    Eigen::MatrixXcd& draw) {
    const int d = state.d;
    Eigen::MatrixXcd phi, dphi;
    complement_seeds(state, k, phi, dphi);
    raw.setZero(d, d - 1);
    if (k >= 0) draw.setZero(d, d - 1);
    for (int n = 1; n < d; ++n) {
        raw.col(n - 1) = phi.col(n - 1);
        if (k >= 0) draw.col(n - 1) = dphi.col(n - 1);
        for (int m = 1; m < n; ++m) {
            const complex<double> coeff =
                std::exp(1i * (state.phases(m) - state.phases(n))) / static_cast<double>(n);
            raw.col(n - 1) -= coeff * phi.col(m - 1);
            if (k >= 0) {
                const double dk = (k == m ? 1.0 : 0.0) - (k == n ? 1.0 : 0.0);
                draw.col(n - 1) -= coeff * (1i * dk * phi.col(m - 1) + dphi.col(m - 1));
            }
        }
    }
}

void check_phase_index(const EquatorialState& state, int k) {
    if (k < 0 || k >= state.d) {
        throw std::out_of_range("phase index " + std::to_string(k) + " outside [0, " +
                                std::to_string(state.d) + ")");
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// DensityMatrix / JointState invariants
// ---------------------------------------------------------------------------

double DensityMatrix::hermiticity_residual() const {
    return (entries - entries.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::trace_residual() const {
    return std::abs(entries.trace() - complex<double>(1.0, 0.0));
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(entries,
                                                           Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

void DensityMatrix::validate(double tol, double psd_tol) const {
    if (entries.rows() != d || entries.cols() != d) {
        throw std::invalid_argument("density matrix shape does not match dimension");
    }
    if (hermiticity_residual() > tol) {
        throw std::domain_error("density matrix is not Hermitian");
    }
    if (trace_residual() > tol) {
        throw std::domain_error("density matrix trace differs from 1");
    }
    if (min_eigenvalue() < -psd_tol) {
        throw std::domain_error("density matrix has a negative eigenvalue");
    }
}

double JointState::norm_residual() const {
    return std::abs(amplitudes.norm() - 1.0);
}

// ---------------------------------------------------------------------------
// States and the analytic eigenbasis
// ---------------------------------------------------------------------------

Eigen::VectorXcd build_equatorial(const EquatorialState& state) {
    const int d = state.d;
    Eigen::VectorXcd psi(d);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (int k = 0; k < d; ++k) {
        psi(k) = std::exp(1i * state.phases(k)) * scale;
    }
    return psi;
}

Eigen::VectorXcd equatorial_derivative(const EquatorialState& state, int k) {
    check_phase_index(state, k);
    Eigen::VectorXcd dpsi = Eigen::VectorXcd::Zero(state.d);
    dpsi(k) = 1i * std::exp(1i * state.phases(k)) / std::sqrt(static_cast<double>(state.d));
    return dpsi;
}

DensityMatrix build_scaled_rho(const EquatorialState& state, double eta) {
    const double e = checked_eta(eta);
    return {state.d, scaled_entries(build_equatorial(state), e, state.d)};
}

DensityMatrix build_scaled_rho(const ScaledOutputState& state) {
    return build_scaled_rho(state.input, state.eta);
}

Eigen::MatrixXcd gram_schmidt_raw(const EquatorialState& state) {
    Eigen::MatrixXcd raw, unused;
    complement_raw(state, -1, raw, unused);
    return raw;
}

Eigen::MatrixXcd gram_schmidt_complement(const EquatorialState& state) {
    Eigen::MatrixXcd vecs = gram_schmidt_raw(state);
    for (int n = 1; n < state.d; ++n) {
        vecs.col(n - 1) *= std::sqrt(2.0 * n / (n + 1.0));
    }
    return vecs;
}

EigenSystem diagonalize(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho.entries);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigendecomposition failed");
    }
    const int d = rho.d;
    EigenSystem sys;
    sys.values.resize(d);
    sys.vectors.resize(d, d);
    for (int i = 0; i < d; ++i) {  // solver sorts ascending; flip to descending
        sys.values(i) = solver.eigenvalues()(d - 1 - i);
        sys.vectors.col(i) = solver.eigenvectors().col(d - 1 - i);
    }
    return sys;
}

// ---------------------------------------------------------------------------
// QFI, two independent routes
// ---------------------------------------------------------------------------

QfiTerms qfi_eq2_terms(const EquatorialState& state, double eta, int k) {
    check_phase_index(state, k);
    const double e = checked_eta(eta);
    const int d = state.d;

    Eigen::MatrixXcd raw, draw;
    complement_raw(state, k, raw, draw);

    // Full eigenbasis: column 0 is |psi>, columns 1..d-1 the normalized
    // complement. Derivatives propagate through the phase-independent norms.
    Eigen::MatrixXcd basis(d, d), dbasis(d, d);
    basis.col(0) = build_equatorial(state);
    dbasis.col(0) = equatorial_derivative(state, k);
    for (int n = 1; n < d; ++n) {
        const double scale = std::sqrt(2.0 * n / (n + 1.0));
        basis.col(n) = scale * raw.col(n - 1);
        dbasis.col(n) = scale * draw.col(n - 1);
    }

    Eigen::VectorXd lambda(d);
    lambda(0) = ((d - 1) * e + 1.0) / d;
    for (int n = 1; n < d; ++n) lambda(n) = (1.0 - e) / d;
    const Eigen::VectorXd dlambda = Eigen::VectorXd::Zero(d);  // phase-independent spectrum

    QfiTerms terms;
    for (int n = 0; n < d; ++n) {
        if (lambda(n) > 1e-15) {
            terms.classical += dlambda(n) * dlambda(n) / lambda(n);
        }
    }
    for (int n = 0; n < d; ++n) {
        if (lambda(n) <= 1e-15) continue;
        const double grad_sq = dbasis.col(n).squaredNorm();
        const complex<double> overlap = basis.col(n).dot(dbasis.col(n));
        terms.weighted += lambda(n) * 4.0 * (grad_sq - std::norm(overlap));
    }
    for (int n = 0; n < d; ++n) {
        for (int m = 0; m < d; ++m) {
            if (m == n) continue;
            const double s = lambda(n) + lambda(m);
            if (s <= 1e-15) continue;
            const complex<double> overlap = basis.col(n).dot(dbasis.col(m));
            terms.mixture += 8.0 * lambda(n) * lambda(m) / s * std::norm(overlap);
        }
    }
    return terms;
}

double qfi_eq2(const EquatorialState& state, double eta, int k) {
    return qfi_eq2_terms(state, eta, k).value();
}

double qfi_sld_fd(const std::function<DensityMatrix(double)>& rho_at, double theta0,
                  double delta, double rank_tol) {
    if (delta <= 0.0) {
        throw std::domain_error("finite-difference step must be positive");
    }
    const DensityMatrix rho0 = rho_at(theta0);
    const Eigen::MatrixXcd drho =
        (rho_at(theta0 + delta).entries - rho_at(theta0 - delta).entries) / (2.0 * delta);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho0.entries);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigendecomposition failed");
    }
    const Eigen::VectorXd lambda = solver.eigenvalues();
    const Eigen::MatrixXcd M = solver.eigenvectors().adjoint() * drho * solver.eigenvectors();

    const int d = rho0.d;
    Eigen::MatrixXcd L = Eigen::MatrixXcd::Zero(d, d);
    for (int m = 0; m < d; ++m) {
        for (int n = 0; n < d; ++n) {
            const double s = lambda(m) + lambda(n);
            if (s > rank_tol) {
                L(m, n) = 2.0 * M(m, n) / s;
            } else if (std::abs(M(m, n)) > kNullSupportTol) {
                throw std::runtime_error(
                    "derivative has support on the null eigenspace; SLD undefined");
            }
        }
    }
    double qfi = 0.0;
    for (int m = 0; m < d; ++m) {
        const double lm = std::max(lambda(m), 0.0);
        for (int n = 0; n < d; ++n) {
            qfi += lm * std::norm(L(m, n));
        }
    }
    return qfi;
}

// ---------------------------------------------------------------------------
// Cloning transformations
// ---------------------------------------------------------------------------

JointState clone_uqcm(const EquatorialState& state, const MachineParams& params) {
    if (params.kind != MachineKind::Uqcm) {
        throw std::invalid_argument("clone_uqcm requires UQCM parameters");
    }
    if (params.d != state.d) {
        throw std::invalid_argument("machine and state dimensions differ");
    }
    params.validate();
    const int d = state.d;
    const Eigen::VectorXcd psi = build_equatorial(state);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(d * d * d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            amp((i * d + j) * d + j) += params.a * psi(i) * scale;  // a |psi>_A |Phi+>_BR
            amp((j * d + i) * d + j) += params.b * psi(i) * scale;  // b |psi>_B |Phi+>_AR
        }
    }
    return {{d, d, d}, amp};
}

JointState clone_pqcm(const EquatorialState& state, const MachineParams& params) {
    if (params.kind != MachineKind::Pqcm) {
        throw std::invalid_argument("clone_pqcm requires PQCM parameters");
    }
    if (params.d != state.d) {
        throw std::invalid_argument("machine and state dimensions differ");
    }
    params.validate();
    const int d = state.d;
    const Eigen::VectorXcd psi = build_equatorial(state);
    Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(d * d * d);
    for (int i = 0; i < d; ++i) {
        amp((i * d + i) * d + i) += params.c * psi(i);
        for (int j = 0; j < d; ++j) {
            if (j == i) continue;
            amp((i * d + j) * d + j) += params.a * psi(i);
            amp((j * d + i) * d + j) += params.b * psi(i);
        }
    }
    return {{d, d, d}, amp};
}

DensityMatrix partial_trace(const JointState& joint, int keep) {
    const int subsystems = static_cast<int>(joint.dims.size());
    if (keep < 0 || keep >= subsystems) {
        throw std::out_of_range("subsystem index " + std::to_string(keep) + " outside [0, " +
                                std::to_string(subsystems) + ")");
    }
    long total = 1;
    for (int dim : joint.dims) total *= dim;
    if (joint.amplitudes.size() != total) {
        throw std::invalid_argument("amplitude count does not match subsystem dimensions");
    }

    std::vector<long> stride(subsystems, 1);
    for (int i = subsystems - 2; i >= 0; --i) {
        stride[i] = stride[i + 1] * joint.dims[i + 1];
    }
    const int dk = joint.dims[keep];
    const long sk = stride[keep];

    std::vector<int> env;  // traced-out subsystems
    long env_total = 1;
    for (int i = 0; i < subsystems; ++i) {
        if (i != keep) {
            env.push_back(i);
            env_total *= joint.dims[i];
        }
    }

    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dk, dk);
    for (long e = 0; e < env_total; ++e) {
        long offset = 0;
        long rem = e;
        for (int i = static_cast<int>(env.size()) - 1; i >= 0; --i) {
            const int sub = env[i];
            offset += (rem % joint.dims[sub]) * stride[sub];
            rem /= joint.dims[sub];
        }
        for (int m = 0; m < dk; ++m) {
            const complex<double> am = joint.amplitudes(offset + m * sk);
            if (am == 0.0) continue;
            for (int n = 0; n < dk; ++n) {
                rho(m, n) += am * std::conj(joint.amplitudes(offset + n * sk));
            }
        }
    }
    return {dk, rho};
}

EtaExtraction extract_eta(const DensityMatrix& rho, const EquatorialState& state,
                          double tol) {
    if (rho.d != state.d) {
        throw std::invalid_argument("density matrix and state dimensions differ");
    }
    const int d = state.d;
    const Eigen::VectorXcd psi = build_equatorial(state);
    const double fidelity = std::real(psi.dot(rho.entries * psi));
    const double eta = (d * fidelity - 1.0) / (d - 1.0);
    const double residual = (rho.entries - scaled_entries(psi, eta, d)).norm();
    if (residual > tol) {
        throw ScaledFormError("matrix deviates from the scaled form by " +
                                  std::to_string(residual),
                              residual);
    }
    return {eta, residual};
}

}  // namespace cloneqfi
