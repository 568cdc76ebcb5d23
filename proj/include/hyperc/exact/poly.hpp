#pragma once

// Dense univariate polynomials over an exact coefficient ring, lowest degree
// first. Nesting gives multivariate polynomials: Poly<Poly<BigInt>> is Z[y][x]
// with x outermost.

#include <algorithm>
#include <initializer_list>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "hyperc/errors.hpp"
#include "hyperc/exact/bigint.hpp"

namespace hyperc::exact {

template <class T>
class Poly;

inline BigInt unit_of(const BigInt*) { return BigInt(1); }

template <class T>
bool is_zero(const Poly<T>& a) {
    return a.is_zero();
}

template <class T>
class Poly {
public:
    using coeff_type = T;

    Poly() = default;
    explicit Poly(std::vector<T> c, std::string var = "x") : c_(std::move(c)), var_(std::move(var)) { trim(); }
    Poly(std::initializer_list<T> c) : c_(c) { trim(); }

    static Poly constant(const T& a) { return Poly(std::vector<T>{a}); }
    static Poly monomial(const T& a, int deg) {
        std::vector<T> c(static_cast<std::size_t>(deg) + 1, T());
        c.back() = a;
        return Poly(std::move(c));
    }

    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    const T& lc() const { return c_.back(); }
    const std::vector<T>& coeffs() const noexcept { return c_; }
    T coeff(int i) const { return (i >= 0 && i <= degree()) ? c_[static_cast<std::size_t>(i)] : T(); }

    const std::string& variable() const noexcept { return var_; }
    Poly& set_variable(std::string v) {
        var_ = std::move(v);
        return *this;
    }

    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(Poly a) {
        for (T& x : a.c_) x = -x;
        return a;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly({}, a.var_);
        std::vector<T> r(a.c_.size() + b.c_.size() - 1, T());
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (exact::is_zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) add_product(r[i + j], a.c_[i], b.c_[j]);
        }
        return Poly(std::move(r), a.var_);
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    // Coefficientwise product with a scalar of the coefficient ring.
    Poly scaled(const T& s) const {
        std::vector<T> r(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] * s;
        return Poly(std::move(r), var_);
    }
    // Coefficientwise exact division by a scalar.
    Poly divided(const T& s) const {
        std::vector<T> r(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] = exact_quotient(c_[i], s);
        return Poly(std::move(r), var_);
    }
    // Multiplication by x^k.
    Poly shifted(int k) const {
        if (is_zero()) return *this;
        std::vector<T> r(static_cast<std::size_t>(k), T());
        r.insert(r.end(), c_.begin(), c_.end());
        return Poly(std::move(r), var_);
    }
    Poly derivative() const {
        std::vector<T> r;
        for (int i = 1; i <= degree(); ++i) r.push_back(times_int(c_[static_cast<std::size_t>(i)], i));
        return Poly(std::move(r), var_);
    }
    Poly pow(unsigned e) const {
        Poly result = constant(one());
        Poly base = *this;
        while (e) {
            if (e & 1u) result = result * base;
            e >>= 1;
            if (e) base = base * base;
        }
        return result.set_variable(var_);
    }

    // Horner evaluation in any ring X that accepts T coefficients.
    template <class X>
    X evaluate(const X& x) const {
        X acc{};
        for (int i = degree(); i >= 0; --i) acc = acc * x + X(c_[static_cast<std::size_t>(i)]);
        return acc;
    }

    static T one() { return unit_of(static_cast<const T*>(nullptr)); }

private:
    static void add_product(T& acc, const T& a, const T& b) { acc += a * b; }
    void trim() {
        while (!c_.empty() && exact::is_zero(c_.back())) c_.pop_back();
    }

    std::vector<T> c_;
    std::string var_ = "x";
};

template <class U>
Poly<U> unit_of(const Poly<U>*) {
    return Poly<U>::constant(Poly<U>::one());
}

template <>
inline void Poly<BigInt>::add_product(BigInt& acc, const BigInt& a, const BigInt& b) {
    mpz_addmul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

template <class T>
Poly<T> times_int(const Poly<T>& a, long k) {
    std::vector<T> r;
    r.reserve(a.coeffs().size());
    for (const T& c : a.coeffs()) r.push_back(times_int(c, k));
    return Poly<T>(std::move(r), a.variable());
}

template <class T>
long max_bits(const Poly<T>& a) {
    long m = 0;
    for (const T& c : a.coeffs()) m = std::max(m, max_bits(c));
    return m;
}

// Exact quotient a / b; throws DivisibilityError on a nonzero remainder.
template <class T>
Poly<T> exact_quotient(const Poly<T>& a, const Poly<T>& b) {
    if (b.is_zero()) throw DivisibilityError("polynomial division by zero");
    if (a.is_zero()) return a;
    if (a.degree() < b.degree()) throw DivisibilityError("polynomial division leaves a remainder");
    Poly<T> rem = a;
    std::vector<T> q(static_cast<std::size_t>(a.degree() - b.degree() + 1), T());
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
        const int k = rem.degree() - b.degree();
        const T t = exact_quotient(rem.lc(), b.lc());
        rem -= b.scaled(t).shifted(k);
        q[static_cast<std::size_t>(k)] = t;
    }
    if (!rem.is_zero()) throw DivisibilityError("polynomial division leaves a remainder");
    return Poly<T>(std::move(q), a.variable());
}

template <class T>
T power(const T& base, unsigned e) {
    T result = unit_of(static_cast<const T*>(nullptr));
    T b = base;
    while (e) {
        if (e & 1u) result = result * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return result;
}

using IntPoly = Poly<BigInt>;
using BiPoly = Poly<IntPoly>;
using TriPoly = Poly<BiPoly>;

// Embeds each integer coefficient as a constant polynomial in a new innermost
// variable.
BiPoly lift_inner(const IntPoly& a);
TriPoly lift_inner(const BiPoly& a);

// Swaps the two variables of a bivariate polynomial.
template <class T>
Poly<Poly<T>> transpose(const Poly<Poly<T>>& a) {
    int inner = -1;
    for (const Poly<T>& c : a.coeffs()) inner = std::max(inner, c.degree());
    std::vector<std::vector<T>> grid(static_cast<std::size_t>(inner + 1),
                                     std::vector<T>(static_cast<std::size_t>(a.degree() + 1), T()));
    for (int i = 0; i <= a.degree(); ++i) {
        const Poly<T>& c = a.coeffs()[static_cast<std::size_t>(i)];
        for (int j = 0; j <= c.degree(); ++j) grid[j][i] = c.coeffs()[static_cast<std::size_t>(j)];
    }
    std::vector<Poly<T>> out;
    for (auto& row : grid) out.emplace_back(std::move(row));
    return Poly<Poly<T>>(std::move(out));
}

// Degree in the inner variable of a bivariate polynomial.
template <class T>
int inner_degree(const Poly<Poly<T>>& a) {
    int d = -1;
    for (const Poly<T>& c : a.coeffs()) d = std::max(d, c.degree());
    return d;
}

// Content and primitive part over Z (content positive, primitive part with
// positive leading coefficient).
BigInt content(const IntPoly& a);
IntPoly primitive_part(const IntPoly& a);

// gcd in Z[x] by the primitive remainder sequence; positive leading coefficient.
IntPoly gcd(const IntPoly& a, const IntPoly& b);

// a / gcd(a, a'), primitive with positive leading coefficient.
IntPoly squarefree_part(const IntPoly& a);

// Remainder of lc(b)^{deg a - deg b + 1} a modulo b.
template <class T>
Poly<T> pseudo_remainder(const Poly<T>& a, const Poly<T>& b) {
    if (b.is_zero()) throw DivisibilityError("pseudo-division by zero");
    if (a.degree() < b.degree()) return a;
    int e = a.degree() - b.degree() + 1;
    Poly<T> r = a;
    const T& blc = b.lc();
    while (!r.is_zero() && r.degree() >= b.degree()) {
        const int k = r.degree() - b.degree();
        const T rl = r.lc();
        r = r.scaled(blc) - b.scaled(rl).shifted(k);
        --e;
    }
    if (e > 0 && !r.is_zero()) r = r.scaled(power(blc, static_cast<unsigned>(e)));
    return r;
}

std::string to_string(const IntPoly& a);

}  // namespace hyperc::exact
