#include "hyperc/core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "hyperc/errors.hpp"

namespace hyperc {
namespace {

constexpr double kRadialSlack = 1e-12;
constexpr double kAngleSlack = 1e-12;

void require(bool ok, const std::string& what) {
    if (!ok) throw InputError(what);
}

bool finite(double v) { return std::isfinite(v); }

void require_exponent(double p, const char* name) {
    require(finite(p) && p > 1.0, std::string(name) + " must be a finite exponent > 1");
}

void require_unit(double x, const char* name) {
    require(finite(x) && x >= 0.0 && x <= 1.0, std::string(name) + " must lie in [0, 1]");
}

void require_alpha(double alpha) {
    require(finite(alpha) && alpha > -1.0 && alpha < 1.0, "alpha must lie in (-1, 1)");
}

// log(a + b) from log a and log b.
double logaddexp(double a, double b) {
    if (a == -std::numeric_limits<double>::infinity()) return b;
    if (b == -std::numeric_limits<double>::infinity()) return a;
    const double hi = std::max(a, b);
    return hi + std::log1p(std::exp(-std::fabs(a - b)));
}

// log(lambda + (1 - lambda) exp(s * log_t)), never forming lambda or t^s directly.
struct BiasedLog {
    double log_lam;
    double log_rest;

    explicit BiasedLog(double lambda)
        : log_lam(std::log(lambda)), log_rest(std::log1p(-lambda)) {}

    double operator()(double s, double log_t) const {
        if (log_t == -std::numeric_limits<double>::infinity()) return log_lam;
        const double z = s * log_t;
        // Near t = 1 the value is small; log1p keeps its relative precision.
        if (z > -1.0) return std::log1p(std::exp(log_rest) * std::expm1(z));
        return logaddexp(log_lam, log_rest + z);
    }
};

// Taylor coefficients of log((1 + 2 e^z)/3) at z = 0. The derivative
// w = 2e^z/(1+2e^z) obeys w' = w(1 - w), which gives a recurrence.
constexpr int kSeriesTerms = 32;

const std::array<double, kSeriesTerms + 1>& log_mix_coefficients() {
    static const std::array<double, kSeriesTerms + 1> c = [] {
        std::array<double, kSeriesTerms> w{};
        w[0] = 2.0 / 3.0;
        for (int n = 0; n + 1 < kSeriesTerms; ++n) {
            double sq = 0.0;
            for (int i = 0; i <= n; ++i) sq += w[i] * w[n - i];
            w[n + 1] = (w[n] - sq) / (n + 1);
        }
        std::array<double, kSeriesTerms + 1> out{};
        for (int n = 0; n < kSeriesTerms; ++n) out[n + 1] = w[n] / (n + 1);
        return out;
    }();
    return c;
}

// First coordinate of H for small |log t|, where the closed form cancels to
// third order.
double H1_series(double alpha, double e) {
    const auto& c = log_mix_coefficients();
    const double a = (1.0 + alpha) * e;
    const double b = (1.0 - alpha) * e;
    const double d = 2.0 * e;
    double pa = a * a * a, pb = b * b * b, pd = d * d * d;
    double sum = 0.0;
    for (int k = 3; k <= kSeriesTerms; ++k) {
        sum += c[k] * ((pa - pb) - alpha * pd);
        pa *= a;
        pb *= b;
        pd *= d;
    }
    return 0.5 * sum;
}

// ((|1+2a|^p + 2|1-a|^p)/3)^{1/p}
double family_norm(double p, double a) {
    const double s = std::pow(std::fabs(1.0 + 2.0 * a), p) + 2.0 * std::pow(std::fabs(1.0 - a), p);
    return std::pow(s / 3.0, 1.0 / p);
}

}  // namespace

ExponentPair::ExponentPair(double p, double q) : p_(p), q_(q) {
    require_exponent(p, "p");
    require_exponent(q, "q");
    require(p < q, "exponents must satisfy p < q");
}

BiasParam::BiasParam(double lambda) : lambda_(lambda) {
    require(finite(lambda) && lambda > 0.0 && lambda <= 0.5, "lambda must lie in (0, 1/2]");
}

UnitSquarePoint::UnitSquarePoint(double x_, double y_) : x(x_), y(y_) {
    require_unit(x, "x");
    require_unit(y, "y");
}

PolarPoint::PolarPoint(double rho, double theta) : rho_(rho), theta_(theta) {
    require(finite(theta) && theta >= -kAngleSlack && theta <= kPi / 3.0 + kAngleSlack,
            "theta must lie in [0, pi/3]");
    theta_ = std::clamp(theta, 0.0, kPi / 3.0);
    require(finite(rho) && rho >= 0.0, "rho must be nonnegative");
    require(rho <= max_radius(theta_) + kRadialSlack, "point lies outside the fundamental triangle");
}

double PolarPoint::max_radius(double theta) { return 0.5 / std::sin(theta + kPi / 6.0); }

double Residual::max_abs() const noexcept { return std::max(std::fabs(first), std::fabs(second)); }

double unit_pow(double x, double p) {
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    return std::exp(p * std::log(x));
}

double ell(double p, double x) {
    require_exponent(p, "p");
    require_unit(x, "x");
    return std::pow((1.0 + 2.0 * unit_pow(x, p)) / 3.0, 1.0 / p) / (1.0 + 2.0 * x);
}

double h_ordinate(double p, double x) {
    require_exponent(p, "p");
    require_unit(x, "x");
    if (x == 0.0) return 1.0;
    const double lx = std::log(x);
    // 1 - x^{p-1} via expm1 keeps accuracy as x -> 1.
    return (-std::expm1(lx)) * (-std::expm1((p - 1.0) * lx)) / (1.0 + 2.0 * std::exp(p * lx));
}

double defect_real_family(const ExponentPair& pair, double r, double a) {
    require_unit(r, "r");
    require(finite(a) && a >= -0.5 && a <= 1.0, "a must lie in [-1/2, 1]");
    return family_norm(pair.p(), a) - family_norm(pair.q(), r * a);
}

double defect_segment(const ExponentPair& pair, double r, double rho) {
    require_unit(r, "r");
    require_unit(rho, "rho");
    if (rho == 0.0) return 0.0;
    return family_norm(pair.p(), rho) - family_norm(pair.q(), r * rho);
}

double F_polar_unchecked(double p, double rho, double theta) {
    constexpr double kThird = 2.0 * kPi / 3.0;
    double sum = 0.0;
    for (int k = 0; k < 3; ++k) {
        sum += std::pow(std::fabs(1.0 + 2.0 * rho * std::cos(theta + k * kThird)), p);
    }
    return sum;
}

double F_polar(double p, double rho, double theta) {
    require(finite(p) && p >= 1.0, "p must be >= 1");
    const PolarPoint pt(rho, theta);
    return F_polar_unchecked(p, pt.rho(), pt.theta());
}

double defect_polar(const ExponentPair& pair, double r, const PolarPoint& point) {
    require_unit(r, "r");
    if (point.rho() == 0.0) return 0.0;
    const double lhs = std::pow(F_polar_unchecked(pair.p(), point.rho(), point.theta()) / 3.0, 1.0 / pair.p());
    const double rhs =
        std::pow(F_polar_unchecked(pair.q(), r * point.rho(), point.theta()) / 3.0, 1.0 / pair.q());
    return lhs - rhs;
}

Residual residual_z3(const ExponentPair& pair, const UnitSquarePoint& pt) {
    return {ell(pair.p(), pt.x) - ell(pair.q(), pt.y),
            h_ordinate(pair.p(), pt.x) - h_ordinate(pair.q(), pt.y)};
}

Residual residual_selfdual(const ExponentPair& pair, const UnitSquarePoint& pt) {
    const double xd = unit_pow(pt.x, pair.p() - 1.0);
    const double yd = unit_pow(pt.y, pair.q() - 1.0);
    return {ell(pair.p(), pt.x) - ell(pair.q(), pt.y), ell(pair.p_star(), xd) - ell(pair.q_star(), yd)};
}

Residual residual_biased(const BiasParam& lam, const ExponentPair& pair, const UnitSquarePoint& pt) {
    const PlanePoint a = h_lambda(lam, pair.p(), pt.x);
    const PlanePoint b = h_lambda(lam, pair.q(), pt.y);
    return {a.u - b.u, a.v - b.v};
}

double cross_ratio(const UnitSquarePoint& pt) {
    if (pt.x == 1.0) throw SingularityError("cross ratio is singular at x = 1");
    return (1.0 + 2.0 * pt.x) * (1.0 - pt.y) / ((1.0 + 2.0 * pt.y) * (1.0 - pt.x));
}

double biased_cross_ratio(const BiasParam& lam, const UnitSquarePoint& pt) {
    if (pt.x == 1.0) throw SingularityError("cross ratio is singular at x = 1");
    const double k = lam.odds();
    return (1.0 - pt.y) * (pt.x + k) / ((1.0 - pt.x) * (pt.y + k));
}

PlanePoint h_curve(double p, double x) { return {ell(p, x), h_ordinate(p, x)}; }

ExponentPoint Phi(double alpha, double t) {
    require_alpha(alpha);
    require_unit(t, "t");
    return {2.0 / (1.0 - alpha), unit_pow(t, 1.0 - alpha)};
}

IndexPoint Phi_inverse(double p, double x) {
    require_exponent(p, "p");
    require_unit(x, "x");
    return {1.0 - 2.0 / p, unit_pow(x, p / 2.0)};
}

PlanePoint Psi(const PlanePoint& pt) {
    if (!(pt.u > 0.0)) throw InputError("Psi requires u > 0");
    require(pt.v < 1.5, "Psi requires v < 3/2");
    return {std::log(pt.u) + 0.5 * std::log(9.0 - 6.0 * pt.v), pt.v};
}

PlanePoint Psi_inverse(const PlanePoint& pt) {
    require(pt.v < 1.5, "Psi inverse requires v < 3/2");
    return {std::exp(pt.u) / std::sqrt(9.0 - 6.0 * pt.v), pt.v};
}

PlanePoint H_curve(double alpha, double t) {
    require_alpha(alpha);
    require_unit(t, "t");
    if (t == 0.0) return {0.5 * alpha * std::log(3.0), 1.0};
    return H_curve_log(alpha, std::log(t));
}

PlanePoint H_curve_log(double alpha, double log_t) {
    require_alpha(alpha);
    require(!std::isnan(log_t) && log_t <= 0.0, "log t must be <= 0");
    if (std::isinf(log_t)) return {0.5 * alpha * std::log(3.0), 1.0};
    const double e = log_t;
    double u = 0.0;
    if (e > -0.2) {
        u = H1_series(alpha, e);
    } else {
        const double l2 = std::log1p(2.0 * std::expm1(2.0 * e) / 3.0);
        const double lr = std::log1p(2.0 * std::exp((1.0 + alpha) * e)) - std::log1p(2.0 * std::exp((1.0 - alpha) * e));
        u = -0.5 * alpha * l2 + 0.5 * lr;
    }
    const double v = std::expm1((1.0 - alpha) * e) * std::expm1((1.0 + alpha) * e) / (1.0 + 2.0 * std::exp(2.0 * e));
    return {u, v};
}

PlanePoint blowup_b(const PlanePoint& pt) {
    if (!(pt.v > 0.0)) throw SingularityError("blowup requires v > 0");
    return {pt.u / pt.v, pt.v};
}

PlanePoint blowup_B(const PlanePoint& pt) {
    if (!(pt.v > 0.0)) throw SingularityError("blowup requires v > 0");
    const double s = std::sqrt(pt.v);
    return {pt.u / (pt.v * s), s};
}

PlanePoint h_lambda(const BiasParam& lam, double p, double x) {
    require_exponent(p, "p");
    require_unit(x, "x");
    const double l = lam.lambda();
    const double xp = unit_pow(x, p);
    const double den = l + (1.0 - l) * xp;
    const double u = std::pow(den, 1.0 / p) / (l + (1.0 - l) * x);
    const double v = (1.0 - x) * (1.0 - unit_pow(x, p - 1.0)) / den;
    return {u, v};
}

PlanePoint h_lambda_log(const BiasParam& lam, double p, double log_x) {
    require_exponent(p, "p");
    require(!std::isnan(log_x) && log_x <= 0.0, "log x must be <= 0");
    const BiasedLog L(lam.lambda());
    const double lp = L(p, log_x);
    const double lu = lp / p - L(1.0, log_x);
    double v = 0.0;
    if (std::isinf(log_x)) {
        v = std::exp(-L.log_lam);
    } else {
        v = std::expm1(log_x) * std::expm1((p - 1.0) * log_x) * std::exp(-lp);
    }
    return {lu, v};
}

PlanePoint H_lambda_curve(const BiasParam& lam, double alpha, double t) {
    require_alpha(alpha);
    require_unit(t, "t");
    if (lam.symmetric()) throw SingularityError("the biased curve family needs lambda < 1/2");
    const BiasedLog L(lam.lambda());
    const double e = (t == 0.0) ? -std::numeric_limits<double>::infinity() : std::log(t);
    const double l2 = L(2.0, e);
    const double lp = L(1.0 + alpha, e);
    const double lm = L(1.0 - alpha, e);
    return {(alpha * l2 - lp + lm) / L.log_lam, (-l2 + lp + lm) / L.log_lam};
}

double z2_constant(const ExponentPair& pair) { return std::sqrt((pair.p() - 1.0) / (pair.q() - 1.0)); }

double wolff_2q(double q) {
    require_exponent(q, "q");
    const double a = std::pow(4.0, 1.0 / q);
    return std::sqrt(2.0 * (a - 1.0) / (4.0 - a));
}

double dual_pair_constant(double p) {
    require_exponent(p, "p");
    const double ps = p / (p - 1.0);
    const double a = std::pow(4.0, 1.0 / ps);
    return 2.0 * (a - 1.0) / (4.0 - a);
}

ClosedFormValue sigma_pp_star(const BiasParam& lam, double p) {
    require(finite(p) && p > 1.0 && p < 2.0, "p must lie in (1, 2)");
    if (lam.symmetric()) return {p - 1.0, true};
    const double ps = p / (p - 1.0);
    const double L = std::log1p(-lam.lambda()) - std::log(lam.lambda());
    // sinh(a)/sinh(b) without overflow for tiny lambda.
    const double a = L / ps;
    const double b = L / p;
    return {std::exp(a - b) * std::expm1(-2.0 * a) / std::expm1(-2.0 * b), false};
}

}  // namespace hyperc
