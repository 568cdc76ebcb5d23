#pragma once

// Root finding for the characterizing systems. The symmetric case goes through
// the symmetrized curve family H: each curve is parametrized by its ordinate
// (which is monotone in t), and sign changes of the abscissa gap are bracketed
// on a geometric grid and then bisected.

#include <string>
#include <vector>

#include "hyperc/core.hpp"

namespace hyperc {

enum class Z3Method { closed_form_wolff, closed_form_dual, closed_form_pp_star, curve_intersection };
enum class BiasedMethod { closed_form_pp_star, curve_intersection };

std::string to_string(Z3Method m);
std::string to_string(BiasedMethod m);

struct Z3Solution {
    double x = 0.0;
    double y = 0.0;
    double residual_max = 0.0;
    Z3Method method = Z3Method::curve_intersection;
    // More than one crossing survived; the minimal cross ratio was taken.
    bool multiple_roots = false;
    // Set by solve_z3_direct when Newton failed and the seed was returned.
    bool newton_fallback = false;
    int iterations = 0;

    double r() const { return cross_ratio({x, y}); }
    double rho0() const { return (1.0 - x) / (1.0 + 2.0 * x); }
};

struct BiasedSolution {
    double x = 0.0;
    double y = 0.0;
    double sigma = 0.0;
    double residual_max = 0.0;
    BiasedMethod method = BiasedMethod::curve_intersection;
    bool multiple_roots = false;
};

struct ScanOptions {
    int n_scan = 2048;
    double v_floor = 1e-12;
    // Fraction of the ordinate supremum used as the top of the scan.
    double v_top_fraction = 1.0 - 1e-9;
    int max_bisections = 4096;
    // Largest refined gap (B-blowup units) accepted as a crossing.
    double accept_gap = 1e-6;
};

struct CurveCrossing {
    double t1 = 0.0;
    double t2 = 0.0;
    double log_t1 = 0.0;
    double log_t2 = 0.0;
    double v = 0.0;
    // Abscissa gap after refinement, in B-blowup units.
    double gap = 0.0;
};

struct CrossingSet {
    std::vector<CurveCrossing> roots;
    bool unique() const { return roots.size() == 1; }
};

// t in (0, 1) with H_2(alpha, t) = v. H_2(alpha, .) decreases from 1 at t = 0
// to 0 at t = 1, so v must lie in (0, 1).
double invert_H2(double alpha, double v, double tol = 1e-14);

// Same inversion returning log t, which keeps full relative precision for t
// close to 1.
double invert_H2_log(double alpha, double v);

// All crossings of H(alpha1, .) and H(alpha2, .) in the open upper half plane.
// Throws BracketError (with a dump of the scanned gap) when none is found.
CrossingSet intersect_H_curves(double alpha1, double alpha2, double tol = 1e-14,
                               const ScanOptions& options = {});

// Dispatch: q = p*, then p = 2 or q = 2, then p > 2 by duality, else the
// general curve intersection.
Z3Solution solve_z3(const ExponentPair& pair, double tol = 1e-12);

// Damped Newton on the stationarity system G = dG/drho = 0 in (r, rho),
// started from the seed. Returns the seed with newton_fallback set if Newton
// diverges or collapses onto the trivial branch rho = 0. Agreement with the
// seed is left to the caller.
Z3Solution solve_z3_direct(const ExponentPair& pair, const Z3Solution& seed, double tol = 1e-12);

// Biased system for 0 < lambda < 1/2.
BiasedSolution solve_biased(const BiasParam& lam, const ExponentPair& pair, double tol = 1e-12,
                            const ScanOptions& options = {});

}  // namespace hyperc
