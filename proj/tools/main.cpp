// cloneqfi command line: frontier curves, bifurcation scans, oracle
// verification sweeps, and single-point optimization, emitted as CSV or JSON.
//
// Exit codes: 0 success, 1 invalid usage or configuration, 2 output I/O
// failure, 3 verification failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cloneqfi/core.hpp"
#include "cloneqfi/io.hpp"
#include "cloneqfi/machines.hpp"
#include "cloneqfi/oracle.hpp"
#include "cloneqfi/scan.hpp"

namespace {

using nlohmann::json;

struct DimRange {
    int lo = 2;
    int hi = 2;
};

DimRange parse_dim_range(const std::string& text) {
    DimRange range;
    const auto colon = text.find(':');
    try {
        if (colon == std::string::npos) {
            range.lo = range.hi = std::stoi(text);
        } else {
            range.lo = std::stoi(text.substr(0, colon));
            range.hi = std::stoi(text.substr(colon + 1));
        }
    } catch (const std::exception&) {
        throw std::domain_error("cannot parse dimension '" + text + "'");
    }
    return range;
}

// Writes to the path, or stdout when the path is empty. Returns 0 or 2.
int write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::fwrite(content.data(), 1, content.size(), stdout);
        return 0;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open '" << path << "' for writing\n";
        return 2;
    }
    out << content;
    if (!out) {
        std::cerr << "error: write to '" << path << "' failed\n";
        return 2;
    }
    return 0;
}

int run_curve(const std::string& machine_name, const std::string& d_text, int n,
              const std::string& out, const std::string& format) {
    const cloneqfi::MachineKind machine = cloneqfi::machine_from_string(machine_name);
    const DimRange range = parse_dim_range(d_text);
    if (range.lo != range.hi) {
        throw std::domain_error("curve takes a single dimension, got a range");
    }
    const cloneqfi::Curve curve = cloneqfi::qfi_sum_curve(machine, range.lo, n);
    if (format == "csv") {
        return write_output(out, cloneqfi::curve_csv(curve));
    }
    const json doc = {{"config",
                       {{"command", "curve"},
                        {"machine", cloneqfi::to_string(machine)},
                        {"d", range.lo},
                        {"n", n},
                        {"format", format}}},
                      {"data", cloneqfi::curve_points_json(curve)}};
    return write_output(out, doc.dump(2) + "\n");
}

int run_scan(const std::string& machine_name, const std::string& d_text, int n,
             double refine_tol, const std::string& out, const std::string& format) {
    const cloneqfi::MachineKind machine = cloneqfi::machine_from_string(machine_name);
    const DimRange range = parse_dim_range(d_text);
    const cloneqfi::ScanRecord record =
        cloneqfi::bifurcation_scan(machine, range.lo, range.hi, n, refine_tol);
    if (format == "csv") {
        return write_output(out, cloneqfi::scan_csv(record));
    }
    const json doc = {{"config",
                       {{"command", "scan"},
                        {"machine", cloneqfi::to_string(machine)},
                        {"d_min", range.lo},
                        {"d_max", range.hi},
                        {"n", n},
                        {"refine_tol", refine_tol},
                        {"format", format}}},
                      {"data", cloneqfi::scan_entries_json(record)},
                      {"summary", cloneqfi::scan_summary_json(record)}};
    return write_output(out, doc.dump(2) + "\n");
}

int run_optimize(const std::string& machine_name, const std::string& d_text, double eta_a,
                 double tol, const std::string& out, const std::string& format) {
    const cloneqfi::MachineKind machine = cloneqfi::machine_from_string(machine_name);
    const DimRange range = parse_dim_range(d_text);
    if (range.lo != range.hi) {
        throw std::domain_error("optimize takes a single dimension, got a range");
    }
    const int d = range.lo;
    const cloneqfi::BoundarySample sample =
        machine == cloneqfi::MachineKind::Uqcm
            ? cloneqfi::uqcm_boundary_sample(eta_a, d)
            : cloneqfi::pqcm_optimal_sample(eta_a, d, tol);
    const cloneqfi::TradeoffPoint point =
        cloneqfi::make_tradeoff_point(sample.eta_a, sample.eta_b, d);
    if (format == "csv") {
        std::string csv = "eta_a,eta_b,a,b,c,sum_fid,sum_qfi\n";
        csv += cloneqfi::format_double(point.eta_a) + ',' +
               cloneqfi::format_double(point.eta_b) + ',' +
               cloneqfi::format_double(sample.params.a) + ',' +
               cloneqfi::format_double(sample.params.b) + ',' +
               cloneqfi::format_double(sample.params.c) + ',' +
               cloneqfi::format_double(point.sum_fid) + ',' +
               cloneqfi::format_double(point.sum_qfi) + '\n';
        return write_output(out, csv);
    }
    const json doc = {{"config",
                       {{"command", "optimize"},
                        {"machine", cloneqfi::to_string(machine)},
                        {"d", d},
                        {"eta_a", eta_a},
                        {"tol", tol},
                        {"format", format}}},
                      {"data",
                       {{"eta_a", point.eta_a},
                        {"eta_b", point.eta_b},
                        {"a", sample.params.a},
                        {"b", sample.params.b},
                        {"c", sample.params.c},
                        {"fid_a", point.fid_a},
                        {"fid_b", point.fid_b},
                        {"qfi_a", point.qfi_a},
                        {"qfi_b", point.qfi_b},
                        {"sum_fid", point.sum_fid},
                        {"sum_qfi", point.sum_qfi}}}};
    return write_output(out, doc.dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct WorstCase {
    double residual = 0.0;
    std::string where;

    void update(double r, const std::string& w) {
        if (r > residual) {
            residual = r;
            where = w;
        }
    }
};

struct CheckResult {
    std::string name;
    WorstCase worst;
    double tol;
    bool passed() const { return worst.residual <= tol; }
};

void print_check(const CheckResult& check) {
    std::printf("%-28s max residual %.3e  tol %.1e  %s\n", check.name.c_str(),
                check.worst.residual, check.tol, check.passed() ? "PASS" : "FAIL");
    if (!check.passed()) {
        std::printf("  worst case: %s\n", check.worst.where.c_str());
    }
}

cloneqfi::EquatorialState random_state(int d, std::mt19937& rng) {
    std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
    Eigen::VectorXd thetas(d);
    for (int i = 0; i < d; ++i) thetas(i) = phase(rng);
    return {d, thetas};
}

int run_verify(const std::string& d_text, double eta_step, int draws, unsigned seed,
               double tol_eq2, double tol_sld, double tol_closure, double tol_tradeoff) {
    const DimRange range = parse_dim_range(d_text);
    if (range.lo < 2 || range.lo > range.hi) {
        throw std::domain_error("invalid dimension range");
    }
    if (eta_step <= 0.0 || draws < 1) {
        throw std::domain_error("eta-step must be positive and draws at least 1");
    }
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);

    CheckResult eq2{"qfi: eq2 vs closed form", {}, tol_eq2};
    CheckResult sld{"qfi: sld-fd vs closed form", {}, tol_sld};
    CheckResult closure_u{"uqcm: scaled-form closure", {}, tol_closure};
    CheckResult closure_p{"pqcm: scaled-form closure", {}, tol_closure};

    for (int d = range.lo; d <= range.hi; ++d) {
        const cloneqfi::EquatorialState state = random_state(d, rng);
        for (double eta = 0.0; eta <= 1.0 + 1e-12; eta += eta_step) {
            const double e = std::min(eta, 1.0);
            const double reference = cloneqfi::qfi_scaled(e, d);
            for (int k = 0; k < d; ++k) {
                const double r = std::abs(cloneqfi::qfi_eq2(state, e, k) - reference);
                eq2.worst.update(r, "d=" + std::to_string(d) + " eta=" + std::to_string(e) +
                                        " k=" + std::to_string(k));
            }
            const int k = d - 1;
            const auto rho_at = [&state, e, k](double theta) {
                cloneqfi::EquatorialState shifted = state;
                shifted.phases(k) = theta;
                return cloneqfi::build_scaled_rho(shifted, e);
            };
            const double fd = cloneqfi::qfi_sld_fd(rho_at, state.phases(k), 1e-5);
            sld.worst.update(std::abs(fd - reference),
                             "d=" + std::to_string(d) + " eta=" + std::to_string(e));
        }

        for (int i = 0; i < draws; ++i) {
            // UQCM draw: b free, a fixed by the normalization.
            const cloneqfi::MachineParams up =
                cloneqfi::uqcm_params_from_eta(uniform(rng), d);
            const cloneqfi::JointState uout = cloneqfi::clone_uqcm(state, up);
            const auto resid = [&state, d](const cloneqfi::DensityMatrix& rho, double eta) {
                return (rho.entries - cloneqfi::build_scaled_rho(state, eta).entries).norm();
            };
            const double ru =
                std::max(resid(cloneqfi::partial_trace(uout, 0), 1.0 - up.b * up.b),
                         resid(cloneqfi::partial_trace(uout, 1), 1.0 - up.a * up.a));
            closure_u.worst.update(ru, "machine=uqcm d=" + std::to_string(d) +
                                           " a=" + std::to_string(up.a) +
                                           " b=" + std::to_string(up.b));

            // PQCM draw: (a, b) uniform over the feasible disk.
            double a, b;
            do {
                a = uniform(rng);
                b = uniform(rng);
            } while ((d - 1.0) * (a * a + b * b) > 1.0);
            const double c = std::sqrt(1.0 - (d - 1.0) * (a * a + b * b));
            const cloneqfi::MachineParams pp{cloneqfi::MachineKind::Pqcm, d, a, b, c};
            const cloneqfi::JointState pout = cloneqfi::clone_pqcm(state, pp);
            const cloneqfi::ShrinkPair etas = cloneqfi::pqcm_d_shrink(a, b, d);
            const double rp =
                std::max(resid(cloneqfi::partial_trace(pout, 0), etas.eta_a),
                         resid(cloneqfi::partial_trace(pout, 1), etas.eta_b));
            closure_p.worst.update(rp, "machine=pqcm d=" + std::to_string(d) +
                                           " a=" + std::to_string(a) +
                                           " b=" + std::to_string(b));
        }
    }

    std::vector<CheckResult> checks = {eq2, sld, closure_u, closure_p};

    if (range.lo <= 2 && 2 <= range.hi) {
        CheckResult saturation{"d=2 qfi trade-off saturation", {}, tol_tradeoff};
        for (int i = 0; i <= 400; ++i) {
            const double eta_a = i / 400.0;
            const double eta_b = cloneqfi::uqcm_boundary(eta_a, 2);
            const double fa = cloneqfi::qfi_scaled(eta_a, 2);
            const double fb = cloneqfi::qfi_scaled(eta_b, 2);
            const double r =
                std::abs(fa + fb + (std::sqrt(fa) - 1.0) * (std::sqrt(fb) - 1.0) - 1.0);
            saturation.worst.update(r, "machine=uqcm d=2 eta_a=" + std::to_string(eta_a));
        }
        checks.push_back(saturation);
    }

    bool all_passed = true;
    for (const CheckResult& check : checks) {
        print_check(check);
        all_passed = all_passed && check.passed();
    }
    if (!all_passed) {
        for (const CheckResult& check : checks) {
            if (!check.passed()) {
                std::printf("verification failed: %s at %s\n", check.name.c_str(),
                            check.worst.where.c_str());
            }
        }
        return 3;
    }
    std::printf("all residual checks passed\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Asymmetric qudit cloning machines: QFI and fidelity distributability"};
    app.require_subcommand(1);

    std::string machine = "uqcm";
    std::string d_text = "2";
    std::string out;
    std::string format = "csv";
    int n_curve = 401;
    int n_scan = 4001;
    double refine_tol = 1e-10;
    double eta_a = 0.5;
    double opt_tol = 1e-10;
    double eta_step = 0.05;
    int draws = 50;
    unsigned seed = 20240817;
    double tol_eq2 = 1e-8, tol_sld = 1e-6, tol_closure = 1e-10, tol_tradeoff = 1e-9;

    CLI::App* curve = app.add_subcommand("curve", "Sample a frontier trade-off curve");
    curve->add_option("--machine", machine, "uqcm or pqcm")->required();
    curve->add_option("--d", d_text, "dimension")->required();
    curve->add_option("--n", n_curve, "grid points");
    curve->add_option("--out", out, "output path (stdout when omitted)");
    curve->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

    CLI::App* scan = app.add_subcommand("scan", "Bifurcation scan over dimensions");
    scan->add_option("--machine", machine, "uqcm or pqcm")->required();
    scan->add_option("--d", d_text, "dimension range lo:hi")->required();
    scan->add_option("--n", n_scan, "grid points per curve");
    scan->add_option("--refine-tol", refine_tol, "extremum refinement tolerance");
    scan->add_option("--out", out, "output path (stdout when omitted)");
    scan->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

    CLI::App* verify = app.add_subcommand("verify", "Oracle-vs-analytic residual sweep");
    verify->add_option("--d", d_text, "dimension range lo:hi");
    verify->add_option("--eta-step", eta_step, "eta grid step");
    verify->add_option("--draws", draws, "random machine draws per dimension");
    verify->add_option("--seed", seed, "random seed");
    verify->add_option("--tol-eq2", tol_eq2, "eq2-vs-closed-form tolerance");
    verify->add_option("--tol-sld", tol_sld, "sld-vs-closed-form tolerance");
    verify->add_option("--tol-closure", tol_closure, "cloning closure tolerance");
    verify->add_option("--tol-tradeoff", tol_tradeoff, "d=2 saturation tolerance");

    CLI::App* optimize = app.add_subcommand("optimize", "Optimal frontier point at one eta_a");
    optimize->add_option("--machine", machine, "uqcm or pqcm")->required();
    optimize->add_option("--d", d_text, "dimension")->required();
    optimize->add_option("--eta-a", eta_a, "copy-A shrinking factor")->required();
    optimize->add_option("--tol", opt_tol, "amplitude search tolerance");
    optimize->add_option("--out", out, "output path (stdout when omitted)");
    optimize->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand(curve)) {
            return run_curve(machine, d_text, n_curve, out, format);
        }
        if (app.got_subcommand(scan)) {
            return run_scan(machine, d_text, n_scan, refine_tol, out, format);
        }
        if (app.got_subcommand(verify)) {
            if (!verify->count("--d")) d_text = "2:8";
            return run_verify(d_text, eta_step, draws, seed, tol_eq2, tol_sld, tol_closure,
                              tol_tradeoff);
        }
        if (app.got_subcommand(optimize)) {
            return run_optimize(machine, d_text, eta_a, opt_tol, out, format);
        }
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
