#include "hyperc/exact/horner.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace hyperc::exact {
namespace {

constexpr double kUnit = std::numeric_limits<double>::epsilon() / 2.0;

double gamma(int k) { return k * kUnit / (1.0 - k * kUnit); }

struct Split {
    double hi;
    double lo;
};

struct Scaled {
    std::vector<Split> c;
    long exp = 0;
    double max_coeff = 0.0;
};

void two_sum(double a, double b, double& s, double& e) {
    s = a + b;
    const double z = s - a;
    e = (a - (s - z)) + (b - z);
}

void two_prod(double a, double b, double& p, double& e) {
    p = a * b;
    e = std::fma(a, b, -p);
}

// c ~ hi + lo after division by 2^exp; hi carries the top 53 bits.
Split split_scaled(const BigInt& c, long exp) {
    if (sgn(c) == 0) return {0.0, 0.0};
    long e = 0;
    const double d = mpz_get_d_2exp(&e, c.get_mpz_t());
    const double hi = std::ldexp(d, static_cast<int>(e - exp));
    if (e <= 53) return {hi, 0.0};
    BigInt top;
    mpz_set_d(top.get_mpz_t(), std::ldexp(d, 53));
    mpz_mul_2exp(top.get_mpz_t(), top.get_mpz_t(), static_cast<mp_bitcnt_t>(e - 53));
    const BigInt rest = c - top;
    if (sgn(rest) == 0) return {hi, 0.0};
    long er = 0;
    const double dr = mpz_get_d_2exp(&er, rest.get_mpz_t());
    return {hi, std::ldexp(dr, static_cast<int>(er - exp))};
}

Scaled scale(const IntPoly& p) {
    Scaled s;
    long top = std::numeric_limits<long>::min();
    for (const BigInt& c : p.coeffs()) {
        if (sgn(c) == 0) continue;
        long e = 0;
        mpz_get_d_2exp(&e, c.get_mpz_t());
        top = std::max(top, e);
    }
    s.exp = top;
    for (const BigInt& c : p.coeffs()) {
        s.c.push_back(split_scaled(c, top));
        s.max_coeff = std::max(s.max_coeff, std::fabs(s.c.back().hi));
    }
    return s;
}

double abs_sum(const Scaled& s, double x) {
    const double ax = std::fabs(x);
    double acc = 0.0;
    for (auto it = s.c.rbegin(); it != s.c.rend(); ++it) acc = acc * ax + std::fabs(it->hi) + std::fabs(it->lo);
    return acc;
}

}  // namespace

HornerValue compensated_horner(const IntPoly& p, double x) {
    if (p.is_zero()) throw InputError("cannot evaluate the zero polynomial");
    const Scaled sc = scale(p);
    const int n = p.degree();
    double s = sc.c[static_cast<std::size_t>(n)].hi;
    double corr = sc.c[static_cast<std::size_t>(n)].lo;
    for (int i = n - 1; i >= 0; --i) {
        double prod = 0.0, pi = 0.0, sigma = 0.0;
        two_prod(s, x, prod, pi);
        two_sum(prod, sc.c[static_cast<std::size_t>(i)].hi, s, sigma);
        corr = corr * x + (pi + sigma + sc.c[static_cast<std::size_t>(i)].lo);
    }
    HornerValue out;
    out.value = s + corr;
    out.abs_sum = abs_sum(sc, x) * (1.0 + gamma(2 * n + 2));
    out.max_coeff = sc.max_coeff;
    out.scale_exp = sc.exp;
    const double g = gamma(2 * n + 2);
    // Rounding of the final sum, the compensated Horner term and the
    // truncated low parts of the coefficient conversion.
    out.error_bound = (kUnit * std::fabs(out.value) + (2.0 * g * g + std::ldexp(1.0, -100)) * out.abs_sum) / (1.0 - kUnit);
    return out;
}

HornerValue double_double_horner(const IntPoly& p, double x) {
    if (p.is_zero()) throw InputError("cannot evaluate the zero polynomial");
    const Scaled sc = scale(p);
    const int n = p.degree();
    double hi = sc.c[static_cast<std::size_t>(n)].hi;
    double lo = sc.c[static_cast<std::size_t>(n)].lo;
    for (int i = n - 1; i >= 0; --i) {
        // (hi, lo) * x
        double ph = 0.0, pl = 0.0;
        two_prod(hi, x, ph, pl);
        pl = std::fma(lo, x, pl);
        two_sum(ph, pl, ph, pl);
        // + (c.hi, c.lo)
        double sh = 0.0, sl = 0.0;
        two_sum(ph, sc.c[static_cast<std::size_t>(i)].hi, sh, sl);
        sl += pl + sc.c[static_cast<std::size_t>(i)].lo;
        two_sum(sh, sl, hi, lo);
    }
    HornerValue out;
    out.value = hi + lo;
    out.abs_sum = abs_sum(sc, x) * (1.0 + gamma(2 * n + 2));
    out.max_coeff = sc.max_coeff;
    out.scale_exp = sc.exp;
    out.double_double = true;
    out.error_bound = kUnit * std::fabs(out.value) + (8.0 * (n + 1) * kUnit * kUnit + std::ldexp(1.0, -100)) * out.abs_sum;
    return out;
}

RootTest root_test(const IntPoly& p, double x, double rel_tol) {
    RootTest t;
    t.eval = compensated_horner(p, x);
    t.threshold = rel_tol * t.eval.max_coeff * std::pow(std::max(1.0, std::fabs(x)), p.degree());
    const double v = std::fabs(t.eval.value);
    if (v + t.eval.error_bound <= t.threshold) {
        t.passed = true;
    } else if (v - t.eval.error_bound > t.threshold) {
        t.passed = false;
    } else {
        t.eval = double_double_horner(p, x);
        t.passed = std::fabs(t.eval.value) <= t.threshold;
    }
    return t;
}

bool verify_root(const IntPoly& p, double r, double rel_tol) {
    if (!(rel_tol >= 1e-10)) throw InputError("rel_tol must be >= 1e-10");
    return root_test(p, r, rel_tol).passed;
}

}  // namespace hyperc::exact
