#include "hyperc/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "hyperc/errors.hpp"

namespace hyperc {
namespace {

constexpr double kSqrt3 = 1.7320508075688772;

// Golden-section minimization of a unimodal f on [a, b].
template <class F>
DefectMinimum golden_min(const F& f, double a, double b, int iterations) {
    constexpr double g = 0.6180339887498949;
    double c = b - g * (b - a);
    double d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < iterations; ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    return fc < fd ? DefectMinimum{fc, c} : DefectMinimum{fd, d};
}

// Grid scan of f on [a, b] followed by shrinking golden-section stages around
// the best sample.
template <class F>
DefectMinimum scan_min(const F& f, double a, double b, const GridSpec& grid) {
    grid.validate();
    const int n = grid.n_rho;
    const double h = (b - a) / n;
    DefectMinimum best{f(a), a};
    for (int i = 1; i <= n; ++i) {
        const double x = (i == n) ? b : a + h * i;
        const double v = f(x);
        if (v < best.value) best = {v, x};
    }
    double w = h;
    for (int d = 0; d < grid.refine_depth; ++d) {
        const double lo = std::max(a, best.rho - w);
        const double hi = std::min(b, best.rho + w);
        const DefectMinimum m = golden_min(f, lo, hi, 40);
        if (m.value < best.value) best = m;
        w /= 16.0;
    }
    return best;
}

double two_point_norm(double lambda, double p, double rho) {
    const double a = std::fabs(1.0 + (1.0 - lambda) * rho);
    const double b = std::fabs(1.0 - lambda * rho);
    return std::pow(lambda * std::pow(a, p) + (1.0 - lambda) * std::pow(b, p), 1.0 / p);
}

template <class Feasible>
double bisect_constant(double hi, double tol, const Feasible& feasible) {
    if (!(tol > 0.0)) throw InputError("tolerance must be positive");
    double lo = 0.0;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (feasible(mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double psi_weight(double q, double t) {
    const double s = 1.0 + t;
    return std::pow(s, q - 1.0) * (std::log1p(t) - t / (2.0 * s));
}

}  // namespace

Z3Function::Z3Function(double f0, double f1, double f2) : v_{f0, f1, f2} {
    for (double v : v_) {
        if (!(std::isfinite(v) && v >= 0.0)) throw InputError("function values must be finite and nonnegative");
    }
}

void GridSpec::validate() const {
    if (n_rho < 64) throw InputError("n_rho must be at least 64");
    if (n_theta < 2) throw InputError("n_theta must be at least 2");
    if (refine_depth < 0) throw InputError("refine_depth must be nonnegative");
}

double lp_norm(const Z3Function& f, double p) {
    if (!(p >= 1.0 && std::isfinite(p))) throw InputError("p must be >= 1");
    double s = 0.0;
    for (double v : f.values()) s += std::pow(v, p);
    return std::pow(s / 3.0, 1.0 / p);
}

Z3Function apply_Tr(const Z3Function& f, double r) {
    if (!(r >= 0.0 && r <= 1.0)) throw InputError("r must lie in [0, 1]");
    const double m = f.mean();
    auto g = [&](int k) { return std::max(0.0, m + r * (f[k] - m)); };
    return {g(0), g(1), g(2)};
}

Z3Function random_z3_function(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::array<double, 3> v{u(rng), u(rng), u(rng)};
    if (u(rng) < 0.1) v[std::uniform_int_distribution<int>(0, 2)(rng)] = 0.0;
    return {v[0], v[1], v[2]};
}

DefectMinimum min_defect_segment(const ExponentPair& pair, double r, const GridSpec& grid) {
    if (!(r >= 0.0 && r <= 1.0)) throw InputError("r must lie in [0, 1]");
    return scan_min([&](double rho) { return defect_segment(pair, r, rho); }, 0.0, 1.0, grid);
}

double defect_biased(const BiasParam& lam, const ExponentPair& pair, double r, double rho) {
    const double l = lam.lambda();
    if (!(rho >= -1.0 / (1.0 - l) && rho <= 1.0 / l)) throw InputError("rho outside [-1/(1-lambda), 1/lambda]");
    if (!(r >= 0.0 && r <= 1.0)) throw InputError("r must lie in [0, 1]");
    return two_point_norm(l, pair.p(), rho) - two_point_norm(l, pair.q(), r * rho);
}

DefectMinimum min_defect_biased(const BiasParam& lam, const ExponentPair& pair, double r, const GridSpec& grid) {
    const double l = lam.lambda();
    return scan_min([&](double rho) { return defect_biased(lam, pair, r, rho); }, -1.0 / (1.0 - l), 1.0 / l,
                    grid);
}

double estimate_r(const ExponentPair& pair, double tol, const GridSpec& grid) {
    return bisect_constant(z2_constant(pair), tol, [&](double r) {
        return min_defect_segment(pair, r, grid).value >= -kFeasibilitySlack;
    });
}

double estimate_sigma(const BiasParam& lam, const ExponentPair& pair, double tol, const GridSpec& grid) {
    return bisect_constant(z2_constant(pair), tol, [&](double r) {
        return min_defect_biased(lam, pair, r, grid).value >= -kFeasibilitySlack;
    });
}

TriangleMinimum check_triangle(const ExponentPair& pair, double r, const GridSpec& grid) {
    grid.validate();
    if (!(r >= 0.0 && r <= 1.0)) throw InputError("r must lie in [0, 1]");
    const double theta_max = kPi / 3.0;
    auto at = [&](double rho, double theta) {
        theta = std::clamp(theta, 0.0, theta_max);
        rho = std::clamp(rho, 0.0, PolarPoint::max_radius(theta));
        return defect_polar(pair, r, PolarPoint(rho, theta));
    };
    TriangleMinimum best{0.0, 0.0, 0.0};
    for (int j = 0; j < grid.n_theta; ++j) {
        const double theta = theta_max * j / (grid.n_theta - 1);
        const double rmax = PolarPoint::max_radius(theta);
        for (int i = 1; i <= grid.n_rho; ++i) {
            const double rho = rmax * i / grid.n_rho;
            const double v = at(rho, theta);
            if (v < best.value) best = {v, rho, theta};
        }
    }
    double wr = 1.0 / grid.n_rho;
    double wt = theta_max / (grid.n_theta - 1);
    for (int d = 0; d < grid.refine_depth; ++d) {
        const double th = best.theta;
        const DefectMinimum mr = golden_min([&](double rho) { return at(rho, th); }, std::max(0.0, best.rho - wr),
                                            std::min(PolarPoint::max_radius(th), best.rho + wr), 40);
        if (mr.value < best.value) best = {mr.value, mr.rho, th};
        const double rh = best.rho;
        const DefectMinimum mt = golden_min([&](double theta) { return at(rh, theta); },
                                            std::max(0.0, best.theta - wt), std::min(theta_max, best.theta + wt), 40);
        if (mt.value < best.value) {
            const double theta = std::clamp(mt.rho, 0.0, theta_max);
            best = {mt.value, std::min(rh, PolarPoint::max_radius(theta)), theta};
        }
        wr /= 16.0;
        wt /= 16.0;
    }
    return best;
}

bool triangle_reduction_proved(const ExponentPair& pair) {
    return pair.q() < 2.0 || (pair.p() <= 2.0 && pair.q() > 2.0);
}

double psi_value(double q, double x, double y) {
    if (!(q > 1.0 && q < 2.0)) throw InputError("q must lie in (1, 2)");
    const double slack = 1e-12;
    if (!(y >= 0.0 && y <= kSqrt3 / 4.0 + slack && x >= kSqrt3 * y / 3.0 - slack && x <= 1.0 - kSqrt3 * y + slack)) {
        throw InputError("point lies outside the triangle");
    }
    return psi_weight(q, 2.0 * x) * (-2.0 * y) + psi_weight(q, -x - kSqrt3 * y) * (-kSqrt3 * x + y) +
           psi_weight(q, -x + kSqrt3 * y) * (kSqrt3 * x + y);
}

double jacobian_sign_check(double alpha, double t) {
    constexpr double h = 1e-6;
    if (!(alpha - h > -1.0 && alpha + h < 1.0)) throw InputError("alpha must lie in (-1, 1)");
    if (!(t > 0.0 && t < 0.5)) throw InputError("t must lie in (0, 1/2)");
    const PlanePoint ap = H_curve(alpha + h, t), am = H_curve(alpha - h, t);
    const PlanePoint tp = H_curve(alpha, t + h), tm = H_curve(alpha, std::max(0.0, t - h));
    const double dt = (t + h) - std::max(0.0, t - h);
    const double u_a = (ap.u - am.u) / (2 * h), v_a = (ap.v - am.v) / (2 * h);
    const double u_t = (tp.u - tm.u) / dt, v_t = (tp.v - tm.v) / dt;
    return u_a * v_t - u_t * v_a;
}

std::string ExtremizerReport::failures() const {
    std::string out;
    auto add = [&](bool ok, const char* name) {
        if (ok) return;
        if (!out.empty()) out += ", ";
        out += name;
    };
    add(defect_ok, "defect-zero");
    add(slope_ok, "stationarity");
    add(endpoint_ok, "endpoint-positive");
    return out;
}

ExtremizerReport check_extremizer(const ExponentPair& pair, double r, double rho0, double tol) {
    constexpr double h = 1e-6;
    if (!(tol > 0.0)) throw InputError("tolerance must be positive");
    if (!(rho0 - h >= 0.0 && rho0 + h <= 1.0)) throw InputError("rho0 must lie inside (0, 1)");
    ExtremizerReport rep;
    rep.defect = defect_segment(pair, r, rho0);
    rep.slope = (defect_segment(pair, r, rho0 + h) - defect_segment(pair, r, rho0 - h)) / (2 * h);
    rep.endpoint = defect_segment(pair, r, 1.0);
    rep.defect_ok = std::fabs(rep.defect) < tol;
    rep.slope_ok = std::fabs(rep.slope) < std::sqrt(tol);
    rep.endpoint_ok = rep.endpoint > 0.0;
    return rep;
}

ExtremizerReport check_extremizer(const ExponentPair& pair, const Z3Solution& sol, double tol) {
    return check_extremizer(pair, sol.r(), sol.rho0(), tol);
}

void require_extremizer(const ExponentPair& pair, const Z3Solution& sol, double tol) {
    const ExtremizerReport rep = check_extremizer(pair, sol, tol);
    if (!rep.passed()) throw VerificationError("extremizer check failed: " + rep.failures());
}

}  // namespace hyperc
