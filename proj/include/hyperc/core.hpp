#pragma once

// Closed-form evaluation layer: norms of the symmetric test functions on Z_3,
// defect functions, the characterizing equation systems, the curve families
// h / H (and their biased analogues), the symmetrizing coordinate changes and
// the blowups. Everything here is a pure function of its arguments.

#include <numbers>

namespace hyperc {

// Validated exponent pair 1 < p < q < inf.
class ExponentPair {
public:
    ExponentPair(double p, double q);

    double p() const noexcept { return p_; }
    double q() const noexcept { return q_; }
    double p_star() const noexcept { return p_ / (p_ - 1.0); }
    double q_star() const noexcept { return q_ / (q_ - 1.0); }
    // Symmetrized index alpha = 1 - 2/p; the conjugate exponent maps to -alpha.
    double alpha_p() const noexcept { return 1.0 - 2.0 / p_; }
    double alpha_q() const noexcept { return 1.0 - 2.0 / q_; }

    // The conjugate pair (q*, p*).
    ExponentPair dual() const { return {q_star(), p_star()}; }

private:
    double p_;
    double q_;
};

// Mass of the light atom of a biased Bernoulli variable, 0 < lambda <= 1/2.
class BiasParam {
public:
    explicit BiasParam(double lambda);

    double lambda() const noexcept { return lambda_; }
    // lambda / (1 - lambda)
    double odds() const noexcept { return lambda_ / (1.0 - lambda_); }
    bool symmetric() const noexcept { return lambda_ == 0.5; }

private:
    double lambda_;
};

// A point of the closed unit square. Solutions of the characterizing systems
// live in the interior; the boundary is admitted for probing limits.
struct UnitSquarePoint {
    UnitSquarePoint(double x, double y);

    bool interior() const noexcept { return x > 0.0 && x < 1.0 && y > 0.0 && y < 1.0; }

    double x;
    double y;
};

struct PlanePoint {
    double u = 0.0;
    double v = 0.0;
};

// Point rho * e^{i theta} of the fundamental triangle with vertices
// 0, 1, e^{i pi/3}/2.
class PolarPoint {
public:
    PolarPoint(double rho, double theta);

    double rho() const noexcept { return rho_; }
    double theta() const noexcept { return theta_; }

    // Radial extent of the triangle along direction theta.
    static double max_radius(double theta);

private:
    double rho_;
    double theta_;
};

struct Residual {
    double first = 0.0;
    double second = 0.0;
    double max_abs() const noexcept;
};

// Image of the domain symmetrization: exponent p and abscissa parameter x.
struct ExponentPoint {
    double p = 0.0;
    double x = 0.0;
};

struct IndexPoint {
    double alpha = 0.0;
    double t = 0.0;
};

// x^p for x in [0, 1], p > 0, with exact endpoint branches.
double unit_pow(double x, double p);

// (1/(1+2x)) ((1+2x^p)/3)^{1/p}: the abscissa of h(p, x).
double ell(double p, double x);

// (1-x)(1-x^{p-1}) / (1+2x^p): the ordinate of h(p, x).
double h_ordinate(double p, double x);

// Defect ||f_a||_p - ||T_r f_a||_q for the real family
// f_a = 1 + a chi + a conj(chi), a in [-1/2, 1].
double defect_real_family(const ExponentPair& pair, double r, double a);

// Segment defect G(r, rho), r and rho in [0, 1].
double defect_segment(const ExponentPair& pair, double r, double rho);

// F(p, rho, theta) = 3 ||f_{rho e^{i theta}}||_p^p for an arbitrary angle;
// the caller guarantees the three point values are real and nonnegative
// (up to rounding, which is absorbed by the absolute value).
double F_polar_unchecked(double p, double rho, double theta);

// Validates (rho, theta) against the triangle.
double F_polar(double p, double rho, double theta);

// G(r, rho, theta) = (F(p,rho,theta)/3)^{1/p} - (F(q,r rho,theta)/3)^{1/q}.
double defect_polar(const ExponentPair& pair, double r, const PolarPoint& point);

// Residuals (lhs - rhs) of the two-equation system characterizing r_{p,q}.
Residual residual_z3(const ExponentPair& pair, const UnitSquarePoint& pt);

// Residuals of the self-dual form ell(p,x) = ell(q,y),
// ell(p*, x^{p-1}) = ell(q*, y^{q-1}).
Residual residual_selfdual(const ExponentPair& pair, const UnitSquarePoint& pt);

// Residuals of the biased system.
Residual residual_biased(const BiasParam& lam, const ExponentPair& pair, const UnitSquarePoint& pt);

// Cross ratio (x, y; -1/2, 1) = (1+2x)(1-y) / ((1+2y)(1-x)).
double cross_ratio(const UnitSquarePoint& pt);

// (1-y)(x+k) / ((1-x)(y+k)) with k = lambda/(1-lambda).
double biased_cross_ratio(const BiasParam& lam, const UnitSquarePoint& pt);

// h(p, x) = (ell(p, x), h_ordinate(p, x)), x in [0, 1].
PlanePoint h_curve(double p, double x);

// (alpha, t) -> (2/(1-alpha), t^{1-alpha}).
ExponentPoint Phi(double alpha, double t);
IndexPoint Phi_inverse(double p, double x);

// (u, v) -> (log u + (1/2) log(9 - 6v), v).
PlanePoint Psi(const PlanePoint& pt);
PlanePoint Psi_inverse(const PlanePoint& pt);

// H(alpha, t) = Psi(h(Phi(alpha, t))) in closed form, t in [0, 1].
PlanePoint H_curve(double alpha, double t);

// Same curve parametrized by log t in (-inf, 0]; stays accurate for t
// extremely close to 0 or 1.
PlanePoint H_curve_log(double alpha, double log_t);

// b(u, v) = (u/v, v)
PlanePoint blowup_b(const PlanePoint& pt);
// B(u, v) = (u/v^{3/2}, v^{1/2})
PlanePoint blowup_B(const PlanePoint& pt);

// h_lambda(p, x): abscissa (lambda + (1-lambda)x^p)^{1/p} / (lambda + (1-lambda)x),
// ordinate (1-x)(1-x^{p-1}) / (lambda + (1-lambda)x^p).
PlanePoint h_lambda(const BiasParam& lam, double p, double x);

// log of the biased abscissa and the biased ordinate, parametrized by log x.
PlanePoint h_lambda_log(const BiasParam& lam, double p, double log_x);

// H_lambda(alpha, t), evaluated entirely in log space; finite for lambda as
// small as 1e-300.
PlanePoint H_lambda_curve(const BiasParam& lam, double alpha, double t);

// sqrt((p-1)/(q-1)): the two-point (Z_2) constant.
double z2_constant(const ExponentPair& pair);

// r_{2,q}(Z_3) = sqrt(2(4^{1/q}-1)/(4-4^{1/q})), q > 1.
double wolff_2q(double q);

// r_{p,p*}(Z_3) = 2(4^{1/p*}-1)/(4-4^{1/p*}), 1 < p < 2.
double dual_pair_constant(double p);

struct ClosedFormValue {
    double value = 0.0;
    // Set when the formula is 0/0 and the limit was returned instead.
    bool limit = false;
};

// sigma_{p,p*}(lambda) = sinh(L/p*) / sinh(L/p), L = log((1-lambda)/lambda).
ClosedFormValue sigma_pp_star(const BiasParam& lam, double p);

inline constexpr double kPi = std::numbers::pi;

}  // namespace hyperc
