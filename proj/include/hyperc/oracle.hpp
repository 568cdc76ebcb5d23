#pragma once

// Brute-force checks that do not go through the characterizing systems:
// direct norms on Z_3 and on the biased two-point space, grid minimization of
// the defect, and spot checks of the sign conditions used in the proofs.

#include <array>
#include <cstdint>
#include <random>
#include <string>

#include "hyperc/core.hpp"
#include "hyperc/solver.hpp"

namespace hyperc {

// A nonnegative function on Z_3; each point carries mass 1/3.
class Z3Function {
public:
    Z3Function(double f0, double f1, double f2);

    const std::array<double, 3>& values() const noexcept { return v_; }
    double operator[](int k) const { return v_.at(static_cast<std::size_t>(k)); }
    double mean() const noexcept { return (v_[0] + v_[1] + v_[2]) / 3.0; }

private:
    std::array<double, 3> v_;
};

struct GridSpec {
    int n_rho = 4096;
    int n_theta = 256;
    int refine_depth = 3;

    void validate() const;
};

// Slack in the feasibility predicate of the bisections.
inline constexpr double kFeasibilitySlack = 1e-12;

double lp_norm(const Z3Function& f, double p);

// mean(f) + r (f - mean(f)).
Z3Function apply_Tr(const Z3Function& f, double r);

// Uniform triple in [0,1]^3, with one coordinate zeroed with probability 0.1.
Z3Function random_z3_function(std::mt19937_64& rng);

struct DefectMinimum {
    double value = 0.0;
    double rho = 0.0;
};

// min over rho in [0, 1] of defect_segment(pair, r, rho).
DefectMinimum min_defect_segment(const ExponentPair& pair, double r, const GridSpec& grid = {});

// ||1 + rho X||_p - ||1 + r rho X||_q for the biased variable X taking
// 1 - lambda with probability lambda and -lambda otherwise;
// rho in [-1/(1-lambda), 1/lambda].
double defect_biased(const BiasParam& lam, const ExponentPair& pair, double r, double rho);

// min of defect_biased over the full signed rho interval.
DefectMinimum min_defect_biased(const BiasParam& lam, const ExponentPair& pair, double r,
                                const GridSpec& grid = {});

// Largest r in [0, sqrt((p-1)/(q-1))] with min defect >= -slack, to within tol.
double estimate_r(const ExponentPair& pair, double tol = 1e-8, const GridSpec& grid = {});
double estimate_sigma(const BiasParam& lam, const ExponentPair& pair, double tol = 1e-8,
                      const GridSpec& grid = {});

struct TriangleMinimum {
    double value = 0.0;
    double rho = 0.0;
    double theta = 0.0;
};

// Global minimum of defect_polar over the fundamental triangle.
TriangleMinimum check_triangle(const ExponentPair& pair, double r, const GridSpec& grid = {});

// Pairs for which the reduction from the triangle to the segment is proved:
// 1 < p < q < 2 or 1 < p <= 2 < q.
bool triangle_reduction_proved(const ExponentPair& pair);

// A(q,2x)(-2y) + A(q,-x-sqrt3 y)(-sqrt3 x+y) + A(q,-x+sqrt3 y)(sqrt3 x+y) with
// A(q,t) = (1+t)^{q-1}(log(1+t) - t/(2(1+t))); 1 < q < 2 and x + iy in the
// closed triangle.
double psi_value(double q, double x, double y);

// det of the central-difference Jacobian of H at (alpha, t), step 1e-6.
double jacobian_sign_check(double alpha, double t);

struct ExtremizerReport {
    double defect = 0.0;
    double slope = 0.0;
    double endpoint = 0.0;
    bool defect_ok = false;
    bool slope_ok = false;
    bool endpoint_ok = false;

    bool passed() const noexcept { return defect_ok && slope_ok && endpoint_ok; }
    // Comma-separated names of the violated clauses.
    std::string failures() const;
};

// Defect vanishes at (r, rho0) within tol, its rho-derivative within sqrt(tol),
// and G(r, 1) > 0.
ExtremizerReport check_extremizer(const ExponentPair& pair, double r, double rho0, double tol = 1e-8);
ExtremizerReport check_extremizer(const ExponentPair& pair, const Z3Solution& sol, double tol = 1e-8);

// Throws VerificationError naming the violated clauses.
void require_extremizer(const ExponentPair& pair, const Z3Solution& sol, double tol = 1e-8);

}  // namespace hyperc
