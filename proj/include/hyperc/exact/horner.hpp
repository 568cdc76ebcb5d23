#pragma once

// Floating-point evaluation of integer polynomials with an a-posteriori error
// bound. Coefficients are scaled by a common power of two so that the largest
// lies in [1/2, 1); all reported quantities are in these scaled units.

#include "hyperc/exact/poly.hpp"

namespace hyperc::exact {

struct HornerValue {
    double value = 0.0;        // p(x) / 2^scale_exp
    double error_bound = 0.0;  // |value - p(x)/2^scale_exp| <= error_bound
    double abs_sum = 0.0;      // sum |c_i| |x|^i / 2^scale_exp
    double max_coeff = 0.0;    // max |c_i| / 2^scale_exp
    long scale_exp = 0;
    bool double_double = false;
};

// Compensated Horner (error-free transformations); the low parts of the
// coefficient conversions are folded into the correction term.
HornerValue compensated_horner(const IntPoly& p, double x);

// Horner in double-double arithmetic.
HornerValue double_double_horner(const IntPoly& p, double x);

struct RootTest {
    HornerValue eval;
    // rel_tol * max|c| * max(1, |x|)^deg, scaled.
    double threshold = 0.0;
    bool passed = false;
};

// |p(x)| <= rel_tol * max|c| * max(1,|x|)^deg, decided with the compensated
// value and its bound, falling back to double-double when inconclusive.
RootTest root_test(const IntPoly& p, double x, double rel_tol);

// root_test(...).passed; rel_tol must be >= 1e-10.
bool verify_root(const IntPoly& p, double r, double rel_tol);

}  // namespace hyperc::exact
