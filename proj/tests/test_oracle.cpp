#include <cmath>
#include <random>

#include "doctest.h"
#include "hyperc/core.hpp"
#include "hyperc/errors.hpp"
#include "hyperc/oracle.hpp"
#include "hyperc/solver.hpp"

using namespace hyperc;

TEST_CASE("lp_norm") {
    for (double p : {1.0, 1.5, 3.0, 10.0}) CHECK(std::fabs(lp_norm(Z3Function(1, 1, 1), p) - 1.0) < 1e-15);
    CHECK(std::fabs(lp_norm(Z3Function(3, 0, 0), 2.0) - std::sqrt(3.0)) < 1e-15);
    for (double rho : {0.2, 0.7}) {
        const double p = 2.5;
        const double expected = std::pow(F_polar(p, rho, 0.0) / 3.0, 1.0 / p);
        CHECK(std::fabs(lp_norm(Z3Function(1 + 2 * rho, 1 - rho, 1 - rho), p) - expected) < 1e-15);
    }
    CHECK_THROWS_AS(Z3Function(-0.1, 1, 1), InputError);
}

TEST_CASE("apply_Tr") {
    const Z3Function c = apply_Tr(Z3Function(0.7, 0.7, 0.7), 0.4);
    for (int k = 0; k < 3; ++k) CHECK(std::fabs(c[k] - 0.7) < 1e-15);
    const Z3Function f(0.2, 0.9, 0.4);
    const Z3Function z = apply_Tr(f, 0.0);
    for (int k = 0; k < 3; ++k) CHECK(std::fabs(z[k] - f.mean()) < 1e-15);
    const double rho = 0.35, r = 0.6;
    const Z3Function t = apply_Tr(Z3Function(1 + 2 * rho, 1 - rho, 1 - rho), r);
    CHECK(std::fabs(t[0] - (1 + 2 * r * rho)) < 1e-15);
    CHECK(std::fabs(t[1] - (1 - r * rho)) < 1e-15);
    CHECK(std::fabs(t[2] - (1 - r * rho)) < 1e-15);
}

TEST_CASE("min_defect_segment") {
    const ExponentPair pair(2.0, 4.0);
    const DefectMinimum m0 = min_defect_segment(pair, 0.0);
    CHECK(m0.value == 0.0);
    CHECK(m0.rho == 0.0);

    const Z3Solution s = solve_z3(pair);
    const DefectMinimum mc = min_defect_segment(pair, wolff_2q(4.0));
    CHECK(std::fabs(mc.value) < 1e-10);
    // At criticality both 0 and rho0 are minimizers; the grid must see rho0 as one.
    CHECK(std::fabs(defect_segment(pair, wolff_2q(4.0), s.rho0())) < 1e-12);

    CHECK(min_defect_segment(pair, wolff_2q(4.0) + 0.01).value < -1e-6);
    CHECK_THROWS_AS(GridSpec({32, 256, 3}).validate(), InputError);
}

TEST_CASE("estimate_r against the solver") {
    CHECK(std::fabs(estimate_r(ExponentPair(2.0, 4.0)) - wolff_2q(4.0)) < 1e-4);
    CHECK(std::fabs(estimate_r(ExponentPair(4.0 / 3.0, 4.0)) - 0.32038) < 1e-4);
    CHECK(std::fabs(estimate_r(ExponentPair(3.0, 6.0)) - solve_z3(ExponentPair(3.0, 6.0)).r()) < 1e-4);
    CHECK(std::fabs(estimate_r(ExponentPair(1.5, 1.8)) - solve_z3(ExponentPair(1.5, 1.8)).r()) < 1e-4);
}

TEST_CASE("estimate_sigma") {
    const ExponentPair p24(2.0, 4.0);
    CHECK(std::fabs(estimate_sigma(BiasParam(1.0 / 3.0), p24) - estimate_r(p24)) < 2e-4);
    CHECK(std::fabs(estimate_sigma(BiasParam(0.25), ExponentPair(1.5, 3.0)) -
                    sigma_pp_star(BiasParam(0.25), 1.5).value) < 1e-4);
    CHECK(std::fabs(estimate_sigma(BiasParam(0.49), p24) - 1.0 / std::sqrt(3.0)) < 2e-3);
    CHECK(std::fabs(estimate_sigma(BiasParam(0.2), ExponentPair(1.5, 4.0)) -
                    solve_biased(BiasParam(0.2), ExponentPair(1.5, 4.0)).sigma) < 1e-4);
}

TEST_CASE("check_triangle") {
    const TriangleMinimum z = check_triangle(ExponentPair(1.5, 3.0), 0.0);
    CHECK(std::fabs(z.value) < 1e-15);

    const TriangleMinimum w = check_triangle(ExponentPair(2.0, 4.0), wolff_2q(4.0));
    CHECK(w.value > -1e-9);
    CHECK(w.value < 1e-9);

    const ExponentPair pair(1.5, 1.8);
    const TriangleMinimum m = check_triangle(pair, solve_z3(pair).r());
    CHECK(m.value >= -1e-9);

    CHECK(triangle_reduction_proved(ExponentPair(1.5, 1.8)));
    CHECK(triangle_reduction_proved(ExponentPair(2.0, 4.0)));
    CHECK_FALSE(triangle_reduction_proved(ExponentPair(3.0, 6.0)));
}

TEST_CASE("psi_value") {
    for (double q : {1.2, 1.5, 1.9}) {
        for (double y : {0.05, 0.2, 0.4}) CHECK(std::fabs(psi_value(q, std::sqrt(3.0) * y / 3.0, y)) < 1e-12);
    }
    CHECK(psi_value(1.5, 0.4, 0.1) < 0.0);
    CHECK(psi_value(1.9, 0.3, 0.2) < 0.0);
    CHECK_THROWS_AS(psi_value(1.5, 0.9, 0.3), InputError);
    CHECK_THROWS_AS(psi_value(2.5, 0.4, 0.1), InputError);
}

TEST_CASE("psi is negative on the open region") {
    const double ymax = std::sqrt(3.0) / 4.0;
    int bad = 0, total = 0;
    for (int k = 0; k < 16; ++k) {
        const double q = 1.0 + (k + 0.5) / 16.0;
        for (int j = 0; j < 64; ++j) {
            const double y = ymax * (j + 0.5) / 64.0;
            const double xlo = std::sqrt(3.0) * y / 3.0, xhi = 1.0 - std::sqrt(3.0) * y;
            for (int i = 0; i < 64; ++i) {
                const double x = xlo + (xhi - xlo) * (i + 0.5) / 64.0;
                ++total;
                if (!(psi_value(q, x, y) < 0.0)) ++bad;
            }
        }
    }
    CHECK(total == 64 * 64 * 16);
    CHECK(bad == 0);
}

TEST_CASE("Jacobian determinant of H") {
    CHECK(jacobian_sign_check(0.5, 0.25) < 0.0);
    CHECK(std::fabs(jacobian_sign_check(-0.5, 0.25) - jacobian_sign_check(0.5, 0.25)) < 1e-6);
    CHECK(jacobian_sign_check(0.1, 0.45) < 0.0);
    int bad = 0;
    for (int i = 0; i < 32; ++i) {
        const double a = -0.99 + 1.98 * i / 31.0;
        for (int j = 0; j < 32; ++j) {
            const double t = 0.01 + 0.48 * j / 31.0;
            if (!(jacobian_sign_check(a, t) < 0.0)) ++bad;
        }
    }
    CHECK(bad == 0);
}

TEST_CASE("contraction below and violation above the critical constant") {
    std::mt19937_64 rng(17);
    for (auto [p, q] : {std::pair{1.5, 3.0}, std::pair{2.0, 4.0}, std::pair{1.3, 1.9}, std::pair{3.0, 6.0}}) {
        const ExponentPair pair(p, q);
        const double rc = solve_z3(pair).r();
        for (int i = 0; i < 200; ++i) {
            const Z3Function f = random_z3_function(rng);
            CHECK(lp_norm(apply_Tr(f, 0.99 * rc), q) <= lp_norm(f, p) + 1e-12);
        }
        double best = 0.0;
        for (int i = 0; i <= 10000; ++i) best = std::min(best, defect_segment(pair, rc + 0.01, i / 10000.0));
        CHECK(best < -1e-9);
    }
}

TEST_CASE("reverse estimate and norm monotonicity") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> un(0.01, 0.99);
    for (int i = 0; i < 200; ++i) {
        const Z3Function f = random_z3_function(rng);
        const double r = un(rng);
        // The estimate is derived under 1 < q < 2; it fails for larger q.
        for (double q : {1.1, 1.5, 1.9, 2.0}) {
            CHECK(lp_norm(apply_Tr(f, r), q) >= std::pow(r, 1.0 / (q - 1.0)) * lp_norm(f, q) - 1e-12);
        }
        CHECK(lp_norm(f, 3.0) >= lp_norm(f, 1.5) - 1e-15);
    }
}

TEST_CASE("random functions follow the generator contract") {
    std::mt19937_64 rng(1);
    int zeroed = 0;
    for (int i = 0; i < 2000; ++i) {
        const Z3Function f = random_z3_function(rng);
        bool z = false;
        for (int k = 0; k < 3; ++k) {
            CHECK(f[k] >= 0.0);
            CHECK(f[k] <= 1.0);
            z = z || f[k] == 0.0;
        }
        zeroed += z ? 1 : 0;
    }
    CHECK(zeroed > 100);
    CHECK(zeroed < 300);
}

TEST_CASE("extremizer certificate") {
    const ExponentPair p24(2.0, 4.0);
    CHECK(check_extremizer(p24, solve_z3(p24), 1e-8).passed());

    const ExponentPair pd(4.0 / 3.0, 4.0);
    const Z3Solution sd = solve_z3(pd);
    CHECK(std::fabs(sd.rho0() - (1.0 - std::pow(2.0, -1.5)) / (1.0 + std::pow(2.0, -0.5))) < 1e-12);
    CHECK(check_extremizer(pd, sd, 1e-8).passed());

    const ExtremizerReport bad = check_extremizer(p24, solve_z3(p24).r(), solve_z3(p24).rho0() + 0.1, 1e-8);
    CHECK_FALSE(bad.passed());
    CHECK_FALSE(bad.slope_ok);
    CHECK(bad.failures().find("stationarity") != std::string::npos);

    Z3Solution tampered = solve_z3(p24);
    tampered.x = 0.3;
    CHECK_THROWS_AS(require_extremizer(p24, tampered), VerificationError);

    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> pp(1.1, 4.0), gap(0.2, 5.0);
    for (int i = 0; i < 10; ++i) {
        const double p = pp(rng);
        const ExponentPair pair(p, p + gap(rng));
        INFO("p=" << pair.p() << " q=" << pair.q());
        CHECK(check_extremizer(pair, solve_z3(pair), 1e-8).passed());
    }
}

TEST_CASE("sigma is nondecreasing in lambda (reported only)") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> pp(1.2, 3.0);
    int drops = 0;
    for (int i = 0; i < 5; ++i) {
        const double p = pp(rng);
        const ExponentPair pair(p, 2.0 * p);
        double prev = 0.0;
        for (int j = 0; j < 32; ++j) {
            const double lam = 0.49 * (j + 1) / 32.0;
            const double s = solve_biased(BiasParam(lam), pair).sigma;
            if (s < prev - 1e-12) ++drops;
            prev = s;
        }
    }
    MESSAGE("sigma monotonicity drops observed: " << drops);
}
