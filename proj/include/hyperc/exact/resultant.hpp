#pragma once

// Resultants over an exact integral domain T: the subresultant remainder
// sequence (main path) and a fraction-free Bareiss determinant of the
// Sylvester matrix (cross-check).

#include <string>
#include <utility>
#include <vector>

#include "hyperc/errors.hpp"
#include "hyperc/exact/poly.hpp"

namespace hyperc::exact {

struct ResultantCaps {
    int max_sylvester_dim = 64;
    long max_coeff_bits = 1L << 20;
};

namespace detail {

template <class T>
void check_caps(const Poly<T>& a, const Poly<T>& b, const ResultantCaps& caps) {
    const int dim = a.degree() + b.degree();
    if (dim > caps.max_sylvester_dim) {
        throw CapacityError("Sylvester dimension " + std::to_string(dim) + " exceeds the cap " +
                            std::to_string(caps.max_sylvester_dim));
    }
}

template <class T>
void check_bits(const Poly<T>& a, const ResultantCaps& caps) {
    const long bits = max_bits(a);
    if (bits > caps.max_coeff_bits) {
        throw CapacityError("coefficient size " + std::to_string(bits) + " bits exceeds the cap " +
                            std::to_string(caps.max_coeff_bits));
    }
}

}  // namespace detail

// Res(a, b) with the Sylvester-matrix sign convention.
template <class T>
T resultant(Poly<T> a, Poly<T> b, const ResultantCaps& caps = {}) {
    if (a.is_zero() || b.is_zero()) throw InputError("resultant of a zero polynomial");
    detail::check_caps(a, b, caps);
    bool negate = false;
    if (a.degree() < b.degree()) {
        std::swap(a, b);
        if (a.degree() % 2 == 1 && b.degree() % 2 == 1) negate = true;
    }
    auto sign = [&](T v) { return negate ? T(-v) : v; };
    if (b.degree() == 0) return sign(power(b.lc(), static_cast<unsigned>(a.degree())));

    T g = unit_of(static_cast<const T*>(nullptr));
    T h = g;
    for (;;) {
        const int delta = a.degree() - b.degree();
        if (a.degree() % 2 == 1 && b.degree() % 2 == 1) negate = !negate;
        Poly<T> r = pseudo_remainder(a, b);
        a = std::move(b);
        if (r.is_zero()) return T();
        b = r.divided(g * power(h, static_cast<unsigned>(delta)));
        detail::check_bits(b, caps);
        g = a.lc();
        if (delta >= 1) h = exact_quotient(power(g, static_cast<unsigned>(delta)), power(h, static_cast<unsigned>(delta - 1)));
        if (b.degree() > 0) continue;
        const unsigned da = static_cast<unsigned>(a.degree());
        h = exact_quotient(power(b.lc(), da), power(h, da - 1));
        return sign(h);
    }
}

// Sylvester matrix of a (degree m) and b (degree n): n shifted rows of a
// followed by m shifted rows of b, highest coefficients first.
template <class T>
std::vector<std::vector<T>> sylvester_matrix(const Poly<T>& a, const Poly<T>& b) {
    const int m = a.degree();
    const int n = b.degree();
    const int dim = m + n;
    std::vector<std::vector<T>> s(static_cast<std::size_t>(dim), std::vector<T>(static_cast<std::size_t>(dim), T()));
    for (int row = 0; row < n; ++row) {
        for (int i = 0; i <= m; ++i) s[row][row + i] = a.coeff(m - i);
    }
    for (int row = 0; row < m; ++row) {
        for (int i = 0; i <= n; ++i) s[n + row][row + i] = b.coeff(n - i);
    }
    return s;
}

// Fraction-free Gaussian elimination; every division is exact.
template <class T>
T bareiss_determinant(std::vector<std::vector<T>> m) {
    const std::size_t n = m.size();
    if (n == 0) return unit_of(static_cast<const T*>(nullptr));
    bool negate = false;
    T prev = unit_of(static_cast<const T*>(nullptr));
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (is_zero(m[k][k])) {
            std::size_t piv = k + 1;
            while (piv < n && is_zero(m[piv][k])) ++piv;
            if (piv == n) return T();
            std::swap(m[k], m[piv]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                T num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                m[i][j] = exact_quotient(num, prev);
            }
        }
        prev = m[k][k];
    }
    T det = m[n - 1][n - 1];
    return negate ? T(-det) : det;
}

template <class T>
T resultant_bareiss(const Poly<T>& a, const Poly<T>& b) {
    if (a.is_zero() || b.is_zero()) throw InputError("resultant of a zero polynomial");
    return bareiss_determinant(sylvester_matrix(a, b));
}

}  // namespace hyperc::exact
