#include "hyperc/exact/poly.hpp"

#include <sstream>

namespace hyperc::exact {

BigInt content(const IntPoly& a) {
    BigInt g = 0;
    for (const BigInt& c : a.coeffs()) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

IntPoly primitive_part(const IntPoly& a) {
    if (a.is_zero()) return a;
    BigInt c = content(a);
    if (sgn(a.lc()) < 0) c = -c;
    return a.divided(c);
}

IntPoly gcd(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero()) return primitive_part(b).scaled(content(b));
    if (b.is_zero()) return primitive_part(a).scaled(content(a));
    BigInt c;
    const BigInt ca = content(a), cb = content(b);
    mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    IntPoly x = primitive_part(a);
    IntPoly y = primitive_part(b);
    if (x.degree() < y.degree()) std::swap(x, y);
    while (!y.is_zero()) {
        IntPoly r = pseudo_remainder(x, y);
        x = std::move(y);
        y = r.is_zero() ? r : primitive_part(r);
    }
    if (x.degree() == 0) return IntPoly::constant(c).set_variable(a.variable());
    return x.scaled(c).set_variable(a.variable());
}

IntPoly squarefree_part(const IntPoly& a) {
    if (a.degree() <= 0) return primitive_part(a);
    const IntPoly g = gcd(a, a.derivative());
    return primitive_part(exact_quotient(a, g)).set_variable(a.variable());
}

BiPoly lift_inner(const IntPoly& a) {
    std::vector<IntPoly> r;
    r.reserve(a.coeffs().size());
    for (const BigInt& c : a.coeffs()) r.push_back(IntPoly::constant(c));
    return BiPoly(std::move(r), a.variable());
}

TriPoly lift_inner(const BiPoly& a) {
    std::vector<BiPoly> r;
    r.reserve(a.coeffs().size());
    for (const IntPoly& c : a.coeffs()) r.push_back(lift_inner(c));
    return TriPoly(std::move(r), a.variable());
}

std::string to_string(const IntPoly& a) {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = a.degree(); i >= 0; --i) {
        const BigInt& c = a.coeffs()[static_cast<std::size_t>(i)];
        if (sgn(c) == 0) continue;
        BigInt mag = abs(c);
        if (first) {
            if (sgn(c) < 0) os << "-";
        } else {
            os << (sgn(c) < 0 ? " - " : " + ");
        }
        first = false;
        const bool unit = (mag == 1) && i > 0;
        if (!unit) os << mag.get_str();
        if (i > 0) {
            if (!unit) os << "*";
            os << a.variable();
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

}  // namespace hyperc::exact
