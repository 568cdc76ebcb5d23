#include "hyperc/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "hyperc/errors.hpp"

namespace hyperc {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool same_exponent(double a, double b) { return std::fabs(a - b) <= 1e-14 * std::max(a, b); }

void check_tol(double tol) {
    if (!(tol >= 1e-14 && tol <= 1e-6)) throw InputError("tolerance must lie in [1e-14, 1e-6]");
}

// H_2(alpha, t) with t = exp(e).
double H2_log(double alpha, double e) {
    if (e == kNegInf) return 1.0;
    return std::expm1((1.0 - alpha) * e) * std::expm1((1.0 + alpha) * e) / (1.0 + 2.0 * std::exp(2.0 * e));
}

// Solves ordinate(e) = v for e = log t in (-inf, 0), where ordinate decreases
// in e from `top` at e = -inf to 0 at e = 0. The search variable is
// s = log(-e), so t -> 0 and t -> 1 are both reached without underflow.
template <class Ordinate>
double invert_ordinate(const Ordinate& ordinate, double v, double top) {
    if (!(v > 0.0 && v < top)) {
        std::ostringstream os;
        os << "ordinate " << v << " outside (0, " << top << ")";
        throw BracketError(os.str(), os.str());
    }
    auto f = [&](double s) { return ordinate(-std::exp(s)) - v; };
    double lo = -40.0;
    double hi = 8.0;
    while (f(lo) > 0.0) {
        lo -= 40.0;
        if (lo < -740.0) return -std::exp(lo);
    }
    while (f(hi) < 0.0) {
        hi += 4.0;
        if (hi > 700.0) throw BracketError("ordinate inversion failed to bracket", "upper bound exhausted");
    }
    for (int i = 0; i < 400; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (f(mid) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double s = std::fabs(f(lo)) <= std::fabs(f(hi)) ? lo : hi;
    return -std::exp(s);
}

struct GapSample {
    double log_v;
    double gap;
};

// Scans gap(log v) on a geometric grid, brackets sign changes, bisects and
// polishes each with a single secant step. The gap is already expressed in
// B-blowup units by the caller.
template <class Gap>
std::vector<double> scan_roots(const Gap& gap, double v_floor, double v_top, const ScanOptions& opt,
                               std::vector<GapSample>* samples) {
    if (opt.n_scan < 2) throw InputError("scan needs at least two samples");
    const double a = std::log(v_floor);
    const double b = std::log(v_top);
    std::vector<GapSample> grid(opt.n_scan);
    for (int k = 0; k < opt.n_scan; ++k) {
        const double lv = a + (b - a) * k / (opt.n_scan - 1);
        grid[k] = {lv, gap(lv)};
    }
    std::vector<double> roots;
    for (int k = 0; k < opt.n_scan; ++k) {
        if (grid[k].gap == 0.0) {
            roots.push_back(grid[k].log_v);
            continue;
        }
        if (k + 1 == opt.n_scan || grid[k + 1].gap == 0.0) continue;
        if ((grid[k].gap < 0.0) == (grid[k + 1].gap < 0.0)) continue;
        double lo = grid[k].log_v, hi = grid[k + 1].log_v;
        double glo = grid[k].gap, ghi = grid[k + 1].gap;
        for (int i = 0; i < opt.max_bisections; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            const double gm = gap(mid);
            if (gm == 0.0) {
                lo = hi = mid;
                glo = ghi = 0.0;
                break;
            }
            if ((gm < 0.0) == (glo < 0.0)) {
                lo = mid;
                glo = gm;
            } else {
                hi = mid;
                ghi = gm;
            }
        }
        double best = std::fabs(glo) <= std::fabs(ghi) ? lo : hi;
        double gbest = std::min(std::fabs(glo), std::fabs(ghi));
        if (hi > lo && ghi != glo) {
            const double sec = lo - glo * (hi - lo) / (ghi - glo);
            if (sec > lo && sec < hi) {
                const double gs = std::fabs(gap(sec));
                if (gs < gbest) best = sec;
            }
        }
        // A sign change across a jump is not a crossing.
        if (std::fabs(gap(best)) <= opt.accept_gap) roots.push_back(best);
    }
    if (samples) *samples = std::move(grid);
    return roots;
}

std::string dump_samples(const std::vector<GapSample>& samples) {
    std::ostringstream os;
    os << "log_v,gap\n";
    const std::size_t stride = std::max<std::size_t>(1, samples.size() / 32);
    for (std::size_t i = 0; i < samples.size(); i += stride) {
        char line[96];
        std::snprintf(line, sizeof line, "%.6f,%.6e\n", samples[i].log_v, samples[i].gap);
        os << line;
    }
    return os.str();
}

double two_curve_ordinate_at_half(double alpha) {
    const double a = std::pow(2.0, alpha);
    return (2.0 - a) * (2.0 - 1.0 / a) / 6.0;
}

// Inverse of the alpha = 0 ordinate (1-t)^2/(1+2t^2) on [0, 1].
double invert_axis_ordinate(double v) { return (1.0 - v) / (1.0 + std::sqrt(v * (3.0 - 2.0 * v))); }

Z3Solution finish(const ExponentPair& pair, double x, double y, Z3Method method, double tol) {
    Z3Solution s;
    s.x = x;
    s.y = y;
    s.method = method;
    if (!UnitSquarePoint(x, y).interior()) throw SolverError("solution left the open unit square");
    s.residual_max = residual_z3(pair, {x, y}).max_abs();
    if (!(s.residual_max < tol)) {
        std::ostringstream os;
        os << "residual " << s.residual_max << " exceeds tolerance " << tol << " for (p, q) = (" << pair.p()
           << ", " << pair.q() << ")";
        throw SolverError(os.str());
    }
    return s;
}

// ((1+2a)^p + 2(1-a)^p)/3)^{1/p} and its derivative in a, for a in [0, 1].
struct NormAndSlope {
    double value;
    double slope;
};

NormAndSlope family_norm_slope(double p, double a) {
    const double hi = 1.0 + 2.0 * a;
    const double lo = 1.0 - a;
    const double m = (std::pow(hi, p) + 2.0 * std::pow(lo, p)) / 3.0;
    const double value = std::pow(m, 1.0 / p);
    const double slope = 2.0 / 3.0 * std::pow(m, 1.0 / p - 1.0) * (std::pow(hi, p - 1.0) - std::pow(lo, p - 1.0));
    return {value, slope};
}

struct Stationarity {
    double g;
    double g_rho;
};

Stationarity stationarity(const ExponentPair& pair, double r, double rho) {
    const NormAndSlope a = family_norm_slope(pair.p(), rho);
    const NormAndSlope b = family_norm_slope(pair.q(), r * rho);
    return {a.value - b.value, a.slope - r * b.slope};
}

}  // namespace

std::string to_string(Z3Method m) {
    switch (m) {
        case Z3Method::closed_form_wolff: return "closed_form_wolff";
        case Z3Method::closed_form_dual: return "closed_form_dual";
        case Z3Method::closed_form_pp_star: return "closed_form_pp_star";
        case Z3Method::curve_intersection: return "curve_intersection";
    }
    return "unknown";
}

std::string to_string(BiasedMethod m) {
    switch (m) {
        case BiasedMethod::closed_form_pp_star: return "closed_form_pp_star";
        case BiasedMethod::curve_intersection: return "curve_intersection";
    }
    return "unknown";
}

double invert_H2_log(double alpha, double v) {
    if (!(alpha > -1.0 && alpha < 1.0)) throw InputError("alpha must lie in (-1, 1)");
    return invert_ordinate([alpha](double e) { return H2_log(alpha, e); }, v, 1.0);
}

double invert_H2(double alpha, double v, double tol) {
    if (!(tol > 0.0)) throw InputError("tolerance must be positive");
    const double t = std::exp(invert_H2_log(alpha, v));
    const double err = std::fabs(H_curve(alpha, t).v - v);
    if (err >= std::max(tol, 8.0 * std::numeric_limits<double>::epsilon())) {
        throw SolverError("ordinate inversion did not reach the requested tolerance");
    }
    return t;
}

CrossingSet intersect_H_curves(double alpha1, double alpha2, double tol, const ScanOptions& options) {
    if (!(alpha1 > -1.0 && alpha1 < 1.0 && alpha2 > -1.0 && alpha2 < 1.0)) {
        throw InputError("alpha must lie in (-1, 1)");
    }
    if (alpha1 == alpha2) throw InputError("curves must have distinct indices");
    if (!(tol > 0.0)) throw InputError("tolerance must be positive");

    auto gap = [&](double log_v) {
        const double v = std::exp(log_v);
        const double e1 = invert_H2_log(alpha1, v);
        const double e2 = invert_H2_log(alpha2, v);
        const double d = H_curve_log(alpha1, e1).u - H_curve_log(alpha2, e2).u;
        return d / (v * std::sqrt(v));
    };
    std::vector<GapSample> samples;
    const std::vector<double> roots =
        scan_roots(gap, options.v_floor, options.v_top_fraction, options, &samples);
    if (roots.empty()) {
        throw BracketError("no sign change of the abscissa gap between the two curves", dump_samples(samples));
    }
    CrossingSet out;
    for (double lv : roots) {
        CurveCrossing c;
        c.v = std::exp(lv);
        c.log_t1 = invert_H2_log(alpha1, c.v);
        c.log_t2 = invert_H2_log(alpha2, c.v);
        c.t1 = std::exp(c.log_t1);
        c.t2 = std::exp(c.log_t2);
        c.gap = gap(lv);
        out.roots.push_back(c);
    }
    return out;
}

Z3Solution solve_z3(const ExponentPair& pair, double tol) {
    check_tol(tol);
    const double p = pair.p();
    const double q = pair.q();
    if (same_exponent(q, pair.p_star())) {
        return finish(pair, std::pow(2.0, -2.0 / p), std::pow(2.0, -2.0 / pair.p_star()),
                      Z3Method::closed_form_pp_star, tol);
    }
    if (p == 2.0) {
        // The alpha_q curve meets the axis H_1 = 0 at t = 1/2.
        const double v = two_curve_ordinate_at_half(pair.alpha_q());
        return finish(pair, invert_axis_ordinate(v), std::pow(2.0, -2.0 / q), Z3Method::closed_form_wolff, tol);
    }
    if (q == 2.0) {
        const double v = two_curve_ordinate_at_half(pair.alpha_p());
        return finish(pair, std::pow(2.0, -2.0 / p), invert_axis_ordinate(v), Z3Method::closed_form_wolff, tol);
    }
    if (p > 2.0) {
        const Z3Solution d = solve_z3(pair.dual(), tol);
        const double x = std::pow(d.y, 1.0 / (p - 1.0));
        const double y = std::pow(d.x, 1.0 / (q - 1.0));
        Z3Solution s = finish(pair, x, y, Z3Method::closed_form_dual, tol);
        s.multiple_roots = d.multiple_roots;
        return s;
    }
    const CrossingSet set = intersect_H_curves(pair.alpha_p(), pair.alpha_q(), 1e-14);
    bool have = false;
    double bx = 0.0, by = 0.0, br = 0.0;
    for (const CurveCrossing& c : set.roots) {
        const double x = std::exp(2.0 / p * c.log_t1);
        const double y = std::exp(2.0 / q * c.log_t2);
        if (!(x > 0.0 && x < 1.0 && y > 0.0 && y < 1.0)) continue;
        const double r = cross_ratio({x, y});
        if (!have || r < br) {
            have = true;
            bx = x;
            by = y;
            br = r;
        }
    }
    if (!have) throw SolverError("curve crossings do not map into the open unit square");
    Z3Solution s = finish(pair, bx, by, Z3Method::curve_intersection, tol);
    s.multiple_roots = !set.unique();
    return s;
}

Z3Solution solve_z3_direct(const ExponentPair& pair, const Z3Solution& seed, double tol) {
    check_tol(tol);
    double r = seed.r();
    double rho = seed.rho0();
    constexpr double h = 1e-7;
    constexpr int kMaxIter = 50;
    auto norm = [](const Stationarity& s) { return std::max(std::fabs(s.g), std::fabs(s.g_rho)); };

    bool converged = false;
    int it = 0;
    Stationarity cur = stationarity(pair, r, rho);
    for (; it < kMaxIter; ++it) {
        // Rounding-level residual: further steps only chase noise.
        if (norm(cur) <= 4.0 * std::numeric_limits<double>::epsilon()) {
            converged = true;
            break;
        }
        const Stationarity dr = stationarity(pair, r + h, rho);
        const Stationarity dm = stationarity(pair, r - h, rho);
        const Stationarity pr = stationarity(pair, r, rho + h);
        const Stationarity pm = stationarity(pair, r, rho - h);
        const double j11 = (dr.g - dm.g) / (2 * h), j12 = (pr.g - pm.g) / (2 * h);
        const double j21 = (dr.g_rho - dm.g_rho) / (2 * h), j22 = (pr.g_rho - pm.g_rho) / (2 * h);
        const double det = j11 * j22 - j12 * j21;
        if (!std::isfinite(det) || det == 0.0) break;
        const double sr = -(j22 * cur.g - j12 * cur.g_rho) / det;
        const double sp = -(-j21 * cur.g + j11 * cur.g_rho) / det;
        double damp = 1.0;
        bool accepted = false;
        while (damp > 1e-4) {
            const double nr = r + damp * sr;
            const double np = rho + damp * sp;
            if (nr > 0.0 && nr < 1.0 && np > 0.0 && np < 1.0) {
                const Stationarity next = stationarity(pair, nr, np);
                if (norm(next) <= norm(cur) || damp == 1.0) {
                    r = nr;
                    rho = np;
                    cur = next;
                    accepted = true;
                    break;
                }
            }
            damp *= 0.5;
        }
        if (!accepted) break;
        if (std::fabs(damp * sr) <= 1e-15 && std::fabs(damp * sp) <= 1e-15) {
            converged = true;
            ++it;
            break;
        }
    }
    if (!converged && norm(cur) < 1e-14) converged = true;

    Z3Solution out = seed;
    out.iterations = it;
    // rho = 0 solves the system for every r; landing there is a failure.
    if (!converged || rho < 1e-6) {
        out.newton_fallback = true;
        return out;
    }
    const double x = (1.0 - rho) / (1.0 + 2.0 * rho);
    const double rr = r * rho;
    const double y = (1.0 - rr) / (1.0 + 2.0 * rr);
    out.x = x;
    out.y = y;
    out.residual_max = residual_z3(pair, {x, y}).max_abs();
    return out;
}

BiasedSolution solve_biased(const BiasParam& lam, const ExponentPair& pair, double tol, const ScanOptions& options) {
    check_tol(tol);
    if (lam.symmetric()) throw InputError("the biased solver needs lambda < 1/2");
    const double p = pair.p();
    const double q = pair.q();
    const double k = lam.odds();

    auto scaled_residual = [&](double x, double y) {
        const Residual res = residual_biased(lam, pair, {x, y});
        const PlanePoint hp = h_lambda(lam, p, x);
        return std::max(std::fabs(res.first) / std::max(1.0, hp.u), std::fabs(res.second) / std::max(1.0, hp.v));
    };

    BiasedSolution out;
    if (same_exponent(q, pair.p_star())) {
        out.x = std::pow(k, 2.0 / p);
        out.y = std::pow(k, 2.0 / pair.p_star());
        out.method = BiasedMethod::closed_form_pp_star;
    } else {
        const double top = 1.0 / lam.lambda();
        auto ord_p = [&](double e) { return h_lambda_log(lam, p, e).v; };
        auto ord_q = [&](double e) { return h_lambda_log(lam, q, e).v; };
        auto gap = [&](double log_v) {
            const double v = std::exp(log_v);
            const double ex = invert_ordinate(ord_p, v, top);
            const double ey = invert_ordinate(ord_q, v, top);
            return (h_lambda_log(lam, p, ex).u - h_lambda_log(lam, q, ey).u) / (v * std::sqrt(v));
        };
        std::vector<GapSample> samples;
        const std::vector<double> roots =
            scan_roots(gap, options.v_floor, top * options.v_top_fraction, options, &samples);
        if (roots.empty()) {
            throw BracketError("no sign change of the biased abscissa gap", dump_samples(samples));
        }
        bool have = false;
        for (double lv : roots) {
            const double v = std::exp(lv);
            const double x = std::exp(invert_ordinate(ord_p, v, top));
            const double y = std::exp(invert_ordinate(ord_q, v, top));
            if (!(x > 0.0 && x < 1.0 && y > 0.0 && y < 1.0)) continue;
            const double s = biased_cross_ratio(lam, {x, y});
            if (!have || s < out.sigma) {
                have = true;
                out.x = x;
                out.y = y;
                out.sigma = s;
            }
        }
        if (!have) throw SolverError("biased crossings do not map into the open unit square");
        out.multiple_roots = roots.size() > 1;
        out.method = BiasedMethod::curve_intersection;
    }
    out.sigma = biased_cross_ratio(lam, {out.x, out.y});
    out.residual_max = scaled_residual(out.x, out.y);
    if (!(out.residual_max < tol)) {
        std::ostringstream os;
        os << "biased residual " << out.residual_max << " exceeds tolerance " << tol;
        throw SolverError(os.str());
    }
    return out;
}

}  // namespace hyperc
