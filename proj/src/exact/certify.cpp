#include "hyperc/exact/certify.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace hyperc::exact {
namespace {

IntPoly one_plus_two(int e) {
    std::vector<BigInt> c(static_cast<std::size_t>(e) + 1, BigInt(0));
    c[0] += 1;
    c[static_cast<std::size_t>(e)] += 2;
    return IntPoly(std::move(c));
}

IntPoly one_minus(int e) {
    std::vector<BigInt> c(static_cast<std::size_t>(e) + 1, BigInt(0));
    c[0] += 1;
    c[static_cast<std::size_t>(e)] -= 1;
    return IntPoly(std::move(c));
}

// a(u) viewed in Z[u][v].
BiPoly in_u(const IntPoly& a) { return lift_inner(a).set_variable("u"); }

// a(v) viewed in Z[u][v].
BiPoly in_v(const IntPoly& a) { return BiPoly::constant(IntPoly(a).set_variable("v")).set_variable("u"); }

BiPoly to_bipoly_const(const BigInt& c) { return BiPoly::constant(IntPoly::constant(c)); }

int checked_int(long v, const char* what, int cap) {
    if (v > cap) {
        throw CapacityError(std::string(what) + " degree " + std::to_string(v) + " exceeds the cap " +
                            std::to_string(cap));
    }
    return static_cast<int>(v);
}

// Divides every coefficient of a (v outer, R inner) by g(v).
BiPoly divide_in_v(const BiPoly& a, const IntPoly& g) {
    BiPoly t = transpose(a);
    std::vector<IntPoly> out;
    for (const IntPoly& c : t.coeffs()) out.push_back(c.is_zero() ? c : exact_quotient(c, g));
    return transpose(BiPoly(std::move(out)));
}

// gcd in Z[v] of all R-coefficients of a.
IntPoly v_content(const BiPoly& a, IntPoly acc) {
    const BiPoly t = transpose(a);
    for (const IntPoly& c : t.coeffs()) {
        acc = gcd(acc, c);
        if (acc.degree() == 0) break;
    }
    return acc;
}

template <class T>
T checked_resultant(const Poly<T>& a, const Poly<T>& b, const CertifyOptions& opts, EliminationStats& st) {
    T res = resultant(a, b, opts.caps);
    if (opts.cross_check_dim > 0 && a.degree() + b.degree() <= opts.cross_check_dim) {
        if (resultant_bareiss(a, b) != res) throw CertificationError("subresultant and Bareiss resultants disagree");
        ++st.cross_checks;
    }
    return res;
}

}  // namespace

RationalExponents::RationalExponents(long m, long n, long j, long k) {
    if (m <= 0 || n <= 0 || j <= 0 || k <= 0) throw InputError("rational exponents need positive integers");
    const long g1 = std::gcd(m, n);
    const long g2 = std::gcd(j, k);
    m_ = m / g1;
    n_ = n / g1;
    j_ = j / g2;
    k_ = k / g2;
    if (m_ <= n_) throw InputError("p = m/n must exceed 1");
    if (j_ * n_ <= m_ * k_) throw InputError("q = j/k must exceed p");
}

std::string RationalExponents::to_string() const {
    auto frac = [](long a, long b) { return b == 1 ? std::to_string(a) : std::to_string(a) + "/" + std::to_string(b); };
    return "(" + frac(m_, n_) + ", " + frac(j_, k_) + ")";
}

std::pair<BiPoly, BiPoly> build_system(const RationalExponents& re, const SystemCaps& caps) {
    const long m = re.m(), n = re.n(), j = re.j(), k = re.k();
    checked_int(m * n * j, "P1 u", caps.max_degree);
    checked_int(m * j * k, "P1 v", caps.max_degree);
    checked_int(std::max(m, n * j), "P2 u", caps.max_degree);
    checked_int(std::max(j, k * m), "P2 v", caps.max_degree);
    const int mi = static_cast<int>(m), ni = static_cast<int>(n), ji = static_cast<int>(j), ki = static_cast<int>(k);

    const BiPoly lhs = to_bipoly_const(ipow(3, static_cast<unsigned long>(m * k))) *
                       in_u(one_plus_two(mi).pow(static_cast<unsigned>(n * j))) *
                       in_v(one_plus_two(ki).pow(static_cast<unsigned>(m * j)));
    const BiPoly rhs = to_bipoly_const(ipow(3, static_cast<unsigned long>(n * j))) *
                       in_v(one_plus_two(ji).pow(static_cast<unsigned>(m * k))) *
                       in_u(one_plus_two(ni).pow(static_cast<unsigned>(m * j)));
    BiPoly p1 = (lhs - rhs).set_variable("u");

    const BiPoly a = in_u(one_minus(ni) * one_minus(mi - ni)) * in_v(one_plus_two(ji));
    const BiPoly b = in_v(one_minus(ki) * one_minus(ji - ki)) * in_u(one_plus_two(mi));
    BiPoly p2 = (a - b).set_variable("u");
    return {std::move(p1), std::move(p2)};
}

TriPoly cross_ratio_relation(const RationalExponents& re) {
    const int n = static_cast<int>(re.n()), k = static_cast<int>(re.k());
    // Coefficients in Z[v][R].
    std::vector<IntPoly> r_times(static_cast<std::size_t>(k) + 1);
    r_times[0] = IntPoly{BigInt(0), BigInt(1)};
    r_times[static_cast<std::size_t>(k)] += IntPoly{BigInt(0), BigInt(2)};
    const BiPoly r_part(std::move(r_times), "v");  // R (1 + 2v^k)
    const BiPoly w = lift_inner(one_minus(k)).set_variable("v");  // 1 - v^k
    const BiPoly two_w = w.scaled(IntPoly::constant(BigInt(2)));

    std::vector<BiPoly> c(static_cast<std::size_t>(n) + 1);
    c[0] = r_part - w;
    c[static_cast<std::size_t>(n)] = c[static_cast<std::size_t>(n)] - r_part - two_w;
    return TriPoly(std::move(c), "u");
}

std::string EliminationStats::describe() const {
    std::ostringstream os;
    os << "P1 (" << p1_deg_u << "," << p1_deg_v << ") P2 (" << p2_deg_u << "," << p2_deg_v << ") R1 (" << r1_deg_v
       << "," << r1_deg_r << ") R2 (" << r2_deg_v << "," << r2_deg_r << ") common v-factor degree " << common_deg_v
       << " A (" << a_deg_v << "," << a_deg_r << ") B (" << b_deg_v << "," << b_deg_r << ") eliminant degree "
       << raw_degree << " squarefree degree " << final_degree;
    return os.str();
}

CertifiedPoly certify(const RationalExponents& re, double r_numeric, const CertifyOptions& opts) {
    if (!(r_numeric > 0.0 && r_numeric < 1.0)) throw InputError("r_numeric must lie in (0, 1)");
    const auto t0 = std::chrono::steady_clock::now();
    EliminationStats st;

    const auto [p1, p2] = build_system(re, opts.system);
    st.p1_deg_u = p1.degree();
    st.p1_deg_v = inner_degree(p1);
    st.p2_deg_u = p2.degree();
    st.p2_deg_v = inner_degree(p2);
    const TriPoly p3 = cross_ratio_relation(re);

    BiPoly r1 = checked_resultant(lift_inner(p1), p3, opts, st);
    BiPoly r2 = checked_resultant(lift_inner(p2), p3, opts, st);
    st.r1_deg_v = r1.degree();
    st.r1_deg_r = inner_degree(r1);
    st.r2_deg_v = r2.degree();
    st.r2_deg_r = inner_degree(r2);
    if (r1.is_zero() || r2.is_zero()) throw DegeneracyError("u-elimination vanished identically: " + st.describe());

    // Both eliminants pick up factors in v alone (the boundary point and a
    // spurious branch); their common part would make Res_v vanish.
    const IntPoly g = v_content(r2, v_content(r1, IntPoly()));
    st.common_deg_v = g.degree();
    const BiPoly a = g.degree() > 0 ? divide_in_v(r1, g) : r1;
    const BiPoly b = g.degree() > 0 ? divide_in_v(r2, g) : r2;
    st.a_deg_v = a.degree();
    st.a_deg_r = inner_degree(a);
    st.b_deg_v = b.degree();
    st.b_deg_r = inner_degree(b);

    IntPoly f = (a.degree() == 0 || b.degree() == 0) ? IntPoly() : checked_resultant(a, b, opts, st);
    st.raw_degree = f.degree();
    if (f.is_zero()) throw DegeneracyError("eliminant vanishes identically: " + st.describe());
    f = squarefree_part(f).set_variable("r");
    st.final_degree = f.degree();

    const RootTest t = root_test(f, r_numeric, opts.rel_tol);
    st.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    CertifiedPoly out;
    out.poly = f;
    out.evaluated_at = r_numeric;
    out.abs_value = std::fabs(t.eval.value) / t.eval.max_coeff;
    out.bound = t.threshold / t.eval.max_coeff;
    out.error_bound = t.eval.error_bound / t.eval.max_coeff;
    out.double_double = t.eval.double_double;
    out.stats = st;
    if (!t.passed) {
        std::ostringstream os;
        os << "eliminant of degree " << f.degree() << " does not vanish at r = " << r_numeric << ": |R(r)|/max|c| = "
           << out.abs_value << " > " << out.bound;
        throw CertificationError(os.str());
    }
    return out;
}

std::string CertifiedPoly::to_json(int indent) const {
    nlohmann::ordered_json j;
    j["variable"] = "r";
    nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
    for (const BigInt& c : poly.coeffs()) coeffs.push_back(to_decimal(c));
    j["coefficients"] = std::move(coeffs);
    j["evaluated_at"] = evaluated_at;
    j["abs_value"] = abs_value;
    j["bound"] = bound;
    j["error_bound"] = error_bound;
    j["degree"] = poly.degree();
    j["stats"] = {{"p1_degrees", {stats.p1_deg_u, stats.p1_deg_v}},
                  {"p2_degrees", {stats.p2_deg_u, stats.p2_deg_v}},
                  {"r1_degrees", {stats.r1_deg_v, stats.r1_deg_r}},
                  {"r2_degrees", {stats.r2_deg_v, stats.r2_deg_r}},
                  {"common_v_degree", stats.common_deg_v},
                  {"eliminant_degree", stats.raw_degree},
                  {"seconds", stats.seconds}};
    return j.dump(indent);
}

IntPoly r36_minimal_polynomial() {
    static const long high_first[] = {2600125,  2600125,  -54275,   3456600,  -1846590, -5287590, 901467,
                                      -3882063, 1557057,  4269364,  -3942536, 1575484,  1067232,  -1287048,
                                      407592,   97920,    -118680,  17160,    -5540,    -20,      -20};
    std::vector<BigInt> c;
    for (auto it = std::rbegin(high_first); it != std::rend(high_first); ++it) c.emplace_back(*it);
    return IntPoly(std::move(c), "r");
}

bool has_exact_factor(const IntPoly& a, const IntPoly& d) {
    try {
        exact_quotient(a, d);
        return true;
    } catch (const DivisibilityError&) {
        return false;
    }
}

}  // namespace hyperc::exact
