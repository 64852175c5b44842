#include <cmath>
#include <doctest.h>

#include "cloneqfi/core.hpp"
#include "cloneqfi/machines.hpp"

using namespace cloneqfi;

TEST_CASE("uqcm_shrink reference points") {
    const double r3 = 1.0 / std::sqrt(3.0);
    const ShrinkPair sym = uqcm_shrink(r3, r3, 2);
    CHECK(sym.eta_a == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(sym.eta_b == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

    const ShrinkPair trivial = uqcm_shrink(1.0, 0.0, 5);
    CHECK(trivial.eta_a == 1.0);
    CHECK(trivial.eta_b == 0.0);

    const double amp10 = std::sqrt(10.0 / 22.0);
    const ShrinkPair d10 = uqcm_shrink(amp10, amp10, 10);
    CHECK(d10.eta_a == doctest::Approx(12.0 / 22.0).epsilon(1e-15));
    CHECK(d10.eta_b == doctest::Approx(12.0 / 22.0).epsilon(1e-15));

    CHECK_THROWS_AS(uqcm_shrink(0.9, 0.9, 2), std::domain_error);
}

TEST_CASE("uqcm_boundary reference points") {
    CHECK(uqcm_boundary(2.0 / 3.0, 2) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(uqcm_boundary(1.0, 7) == 0.0);
    CHECK(uqcm_boundary(0.0, 2) == 1.0);
    // independently frozen via the quadratic residual of the trade-off relation
    const double eta_b = uqcm_boundary(0.4, 3);
    CHECK(eta_b == doctest::Approx(0.81943350814194538).epsilon(1e-14));
    CHECK(std::abs(uqcm_frontier_residual(0.4, eta_b, 3)) <= 1e-10);
}

TEST_CASE("uqcm frontier saturates the trade-off relation") {
    for (int d = 2; d <= 40; ++d) {
        for (int i = 0; i <= 100; ++i) {
            const double eta_a = i / 100.0;
            const double eta_b = uqcm_boundary(eta_a, d);
            CHECK(std::abs(uqcm_frontier_residual(eta_a, eta_b, d)) <= 1e-10);
        }
    }
}

TEST_CASE("uqcm frontier is an involution") {
    for (int d : {2, 3, 11, 40}) {
        for (int i = 0; i <= 20; ++i) {
            const double eta_a = i / 20.0;
            const double mirrored = uqcm_boundary(uqcm_boundary(eta_a, d), d);
            CHECK(mirrored == doctest::Approx(eta_a).epsilon(1e-9));
        }
    }
}

TEST_CASE("uqcm frontier approaches eta_a + eta_b = 1 for large d") {
    const int d = 10000;
    for (int i = 0; i <= 50; ++i) {
        const double eta_a = i / 50.0;
        CHECK(std::abs(uqcm_boundary(eta_a, d) + eta_a - 1.0) <= 1e-3);
    }
}

TEST_CASE("uqcm_params_from_eta round trips through the shrink map") {
    const MachineParams sym = uqcm_params_from_eta(2.0 / 3.0, 2);
    CHECK(sym.a == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
    CHECK(sym.b == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));

    const MachineParams pure = uqcm_params_from_eta(1.0, 2);
    CHECK(pure.a == 1.0);
    CHECK(pure.b == 0.0);

    const MachineParams p = uqcm_params_from_eta(0.55, 4);
    const ShrinkPair back = uqcm_shrink(p.a, p.b, 4);
    CHECK(back.eta_a == doctest::Approx(0.55).epsilon(1e-9));
    CHECK(back.eta_b == doctest::Approx(uqcm_boundary(0.55, 4)).epsilon(1e-9));
    CHECK(back.eta_b == doctest::Approx(0.64877757203878961).epsilon(1e-12));

    const BoundarySample sample = uqcm_boundary_sample(0.4, 3);
    CHECK(sample.optimal);
    CHECK(std::abs(uqcm_frontier_residual(sample.eta_a, sample.eta_b, 3)) <= 1e-10);
}

TEST_CASE("d=2 QFI trade-off saturates along the frontier") {
    for (int i = 0; i <= 400; ++i) {
        const double eta_a = i / 400.0;
        const double eta_b = uqcm_boundary(eta_a, 2);
        const double fa = qfi_scaled(eta_a, 2);
        const double fb = qfi_scaled(eta_b, 2);
        const double res = fa + fb + (std::sqrt(fa) - 1.0) * (std::sqrt(fb) - 1.0) - 1.0;
        CHECK(std::abs(res) <= 1e-9);
    }
}

TEST_CASE("pqcm2_optimal closed form") {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const PqcmOptimum sym = pqcm2_optimal(inv_sqrt2);
    CHECK(sym.eta_b == doctest::Approx(inv_sqrt2).epsilon(1e-15));
    CHECK(sym.a_opt == doctest::Approx(0.5).epsilon(1e-15));

    const PqcmOptimum pure = pqcm2_optimal(1.0);
    CHECK(pure.eta_b == 0.0);
    CHECK(pure.a_opt == doctest::Approx(inv_sqrt2).epsilon(1e-15));

    const PqcmOptimum p = pqcm2_optimal(0.6);
    CHECK(p.eta_b == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(p.a_opt == doctest::Approx(0.6 * inv_sqrt2).epsilon(1e-15));
}

TEST_CASE("pqcm_d_shrink reduces to the qubit form at d=2") {
    for (double a : {0.2, 0.5, 0.65}) {
        for (double b : {0.1, 0.4}) {
            const double c = std::sqrt(1.0 - a * a - b * b);
            const ShrinkPair pair = pqcm_d_shrink(a, b, 2);
            CHECK(pair.eta_a == doctest::Approx(2.0 * a * c).epsilon(1e-14));
            CHECK(pair.eta_b == doctest::Approx(2.0 * b * c).epsilon(1e-14));
        }
    }
}

TEST_CASE("pqcm_d_shrink symmetry and edge cases") {
    const ShrinkPair nothing = pqcm_d_shrink(0.0, 0.4, 5);
    CHECK(nothing.eta_a == 0.0);
    CHECK(nothing.eta_b > 0.0);

    const ShrinkPair equal = pqcm_d_shrink(0.35, 0.35, 3);
    CHECK(equal.eta_a == equal.eta_b);

    CHECK_THROWS_AS(pqcm_d_shrink(0.9, 0.9, 5), std::domain_error);
}

TEST_CASE("pqcm_d_tradeoff matches the qubit relation at d=2") {
    for (double eta_a : {0.2, 0.5, 0.8}) {
        for (double a : {0.45, 0.6}) {
            const double direct =
                eta_a / a * std::sqrt(1.0 - eta_a * eta_a / (4.0 * a * a) - a * a);
            CHECK(pqcm_d_tradeoff(eta_a, a, 2) == doctest::Approx(direct).epsilon(1e-14));
        }
    }
}

TEST_CASE("pqcm_d_tradeoff cross-checks against the shrink map") {
    // b solved from the eta_a relation reproduces eta_b for random machines
    const double pairs[][2] = {{0.4714, 0.2899}, {0.2730, 0.4556}, {0.5839, 0.0938},
                               {0.1375, 0.2493}, {0.3292, 0.0893}};
    for (const auto& ab : pairs) {
        const ShrinkPair pair = pqcm_d_shrink(ab[0], ab[1], 3);
        CHECK(pqcm_d_tradeoff(pair.eta_a, ab[0], 3) ==
              doctest::Approx(pair.eta_b).epsilon(1e-12));
    }
}

TEST_CASE("pqcm_d_tradeoff rejects infeasible amplitudes") {
    CHECK_THROWS_AS(pqcm_d_tradeoff(0.9, 0.01, 4), std::domain_error);
    CHECK_THROWS_AS(pqcm_d_tradeoff(0.5, -0.1, 4), std::domain_error);
    // feasibility window: inside evaluates, outside throws
    const AmplitudeInterval window = pqcm_feasible_amplitudes(0.6, 5);
    CHECK(window.lo < window.hi);
    CHECK_NOTHROW(pqcm_d_tradeoff(0.6, 0.5 * (window.lo + window.hi), 5));
    CHECK_THROWS_AS(pqcm_d_tradeoff(0.6, window.lo * 0.9, 5), std::domain_error);
    CHECK_THROWS_AS(pqcm_d_tradeoff(0.6, window.hi * 1.1, 5), std::domain_error);
}

TEST_CASE("pqcm feasible window degenerates to 1/sqrt(d) at eta_a = 1") {
    for (int d : {2, 3, 9}) {
        const AmplitudeInterval window = pqcm_feasible_amplitudes(1.0, d);
        CHECK(window.lo == doctest::Approx(1.0 / std::sqrt(double(d))).epsilon(1e-12));
        CHECK(window.hi == doctest::Approx(1.0 / std::sqrt(double(d))).epsilon(1e-12));
    }
}

TEST_CASE("pqcm_d_optimal agrees with the qubit closed form") {
    for (int i = 0; i <= 40; ++i) {
        const double eta_a = i / 40.0;
        const PqcmOptimum opt = pqcm_d_optimal(eta_a, 2, 1e-10);
        const PqcmOptimum exact = pqcm2_optimal(eta_a);
        CHECK(opt.eta_b == doctest::Approx(exact.eta_b).epsilon(1e-9));
        if (eta_a > 0.0) {
            CHECK(opt.a_opt == doctest::Approx(exact.a_opt).epsilon(1e-5));
        }
    }
}

TEST_CASE("pqcm_d_optimal endpoints") {
    for (int d : {2, 3, 7}) {
        // all quality to copy B: perfect transfer is feasible
        CHECK(pqcm_d_optimal(0.0, d, 1e-10).eta_b == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(pqcm_d_optimal(1.0, d, 1e-10).eta_b == doctest::Approx(0.0).epsilon(1e-9));
    }
    CHECK_THROWS_AS(pqcm_d_optimal(0.5, 3, -1.0), std::domain_error);
}

TEST_CASE("pqcm optimal frontier dominates the uqcm frontier") {
    for (int d : {3, 10, 20}) {
        for (int i = 0; i <= 100; ++i) {
            const double eta_a = i / 100.0;
            const double pq = pqcm_d_optimal(eta_a, d, 1e-10).eta_b;
            const double uq = uqcm_boundary(eta_a, d);
            CHECK(pq >= uq - 1e-9);
        }
    }
    // coarser sweep across the whole supported range
    for (int d = 2; d <= 40; ++d) {
        for (int i = 0; i <= 40; ++i) {
            const double eta_a = i / 40.0;
            CHECK(pqcm_d_optimal(eta_a, d, 1e-10).eta_b >=
                  uqcm_boundary(eta_a, d) - 1e-9);
        }
    }
}

TEST_CASE("pqcm optimal frontier is symmetric") {
    for (int d : {3, 7}) {
        for (double eta_a : {0.2, 0.45, 0.7}) {
            const double eta_b = pqcm_d_optimal(eta_a, d, 1e-12).eta_b;
            const double back = pqcm_d_optimal(eta_b, d, 1e-12).eta_b;
            CHECK(back == doctest::Approx(eta_a).epsilon(1e-8));
        }
    }
}

TEST_CASE("pqcm_params_from_amplitude rebuilds the machine") {
    for (int d : {2, 4, 6}) {
        for (double eta_a : {0.3, 0.6, 0.9}) {
            const PqcmOptimum opt = pqcm_d_optimal(eta_a, d, 1e-12);
            const MachineParams params = pqcm_params_from_amplitude(eta_a, opt.a_opt, d);
            CHECK(params.normalization_residual() <= 1e-12);
            const ShrinkPair pair = pqcm_d_shrink(params.a, params.b, d);
            CHECK(pair.eta_a == doctest::Approx(eta_a).epsilon(1e-9));
            CHECK(pair.eta_b == doctest::Approx(opt.eta_b).epsilon(1e-9));
        }
    }
    const BoundarySample sample = pqcm_optimal_sample(0.0, 5, 1e-10);
    CHECK(sample.params.a == 0.0);
    CHECK(sample.params.b == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-9));
    CHECK(sample.eta_b == doctest::Approx(1.0).epsilon(1e-9));

    CHECK_THROWS_AS(pqcm_params_from_amplitude(0.5, 0.0, 4), std::domain_error);
    // amplitude beyond the feasible window has no physical (a, b, c) triple
    CHECK_THROWS_AS(pqcm_params_from_amplitude(0.9, 0.05, 4), std::domain_error);
}

TEST_CASE("symmetric operating points") {
    CHECK(uqcm_symmetric_eta(2) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(uqcm_symmetric_eta(10) == doctest::Approx(12.0 / 22.0).epsilon(1e-15));

    const double sym2 = pqcm_symmetric_eta(2);
    CHECK(sym2 == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-9));
    const double sym3 = pqcm_symmetric_eta(3);
    CHECK(sym3 == doctest::Approx(0.6403882).epsilon(1e-6));
    CHECK(pqcm_d_optimal(sym3, 3, 1e-12).eta_b == doctest::Approx(sym3).epsilon(1e-8));
}
