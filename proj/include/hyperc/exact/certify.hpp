#pragma once

// Resultant-based certification that the optimal Z_3 constant is a root of a
// nonzero integer polynomial, for rational exponents p = m/n, q = j/k.

#include <string>
#include <utility>

#include "hyperc/exact/horner.hpp"
#include "hyperc/exact/poly.hpp"
#include "hyperc/exact/resultant.hpp"

namespace hyperc::exact {

class RationalExponents {
public:
    // Reduces both fractions; requires 1 < m/n < j/k.
    RationalExponents(long m, long n, long j, long k);

    long m() const noexcept { return m_; }
    long n() const noexcept { return n_; }
    long j() const noexcept { return j_; }
    long k() const noexcept { return k_; }
    double p() const noexcept { return static_cast<double>(m_) / static_cast<double>(n_); }
    double q() const noexcept { return static_cast<double>(j_) / static_cast<double>(k_); }
    std::string to_string() const;

private:
    long m_, n_, j_, k_;
};

struct SystemCaps {
    int max_degree = 256;  // per variable
};

// P1, P2 in Z[u][v] (u outer) vanishing at (u, v) = (x^{1/n}, y^{1/k}).
std::pair<BiPoly, BiPoly> build_system(const RationalExponents& re, const SystemCaps& caps = {});

// R (1+2v^k)(1-u^n) - (1+2u^n)(1-v^k) in Z[u][v][R] (u outer, R inner).
TriPoly cross_ratio_relation(const RationalExponents& re);

struct CertifyOptions {
    ResultantCaps caps;
    SystemCaps system;
    double rel_tol = 1e-6;
    // Bareiss cross-check of each resultant whose Sylvester dimension is at
    // most this value (0 disables).
    int cross_check_dim = 24;
};

struct EliminationStats {
    int p1_deg_u = 0, p1_deg_v = 0, p2_deg_u = 0, p2_deg_v = 0;
    int r1_deg_v = 0, r1_deg_r = 0, r2_deg_v = 0, r2_deg_r = 0;
    int common_deg_v = 0;  // degree of the common factor in v removed
    int a_deg_v = 0, a_deg_r = 0, b_deg_v = 0, b_deg_r = 0;
    int raw_degree = -1;   // Res_v before squarefree reduction
    int final_degree = -1;
    int cross_checks = 0;
    double seconds = 0.0;
    std::string describe() const;
};

struct CertifiedPoly {
    IntPoly poly;  // variable "r"
    double evaluated_at = 0.0;
    // |poly(r)| and the acceptance bound, both divided by max|coeff|.
    double abs_value = 0.0;
    double bound = 0.0;
    double error_bound = 0.0;
    bool double_double = false;
    EliminationStats stats;

    // {"variable", "coefficients" (decimal, lowest first), "evaluated_at",
    //  "abs_value", "bound", "error_bound", "degree", "stats"}
    std::string to_json(int indent = 2) const;
};

// Throws DegeneracyError if the eliminant vanishes identically,
// CertificationError if it does not vanish at r_numeric within the bound,
// CapacityError past the caps.
CertifiedPoly certify(const RationalExponents& re, double r_numeric, const CertifyOptions& opts = {});

// The degree-20 minimal polynomial of r_{3,6}(Z_3).
IntPoly r36_minimal_polynomial();

// True iff d divides a exactly in Z[x].
bool has_exact_factor(const IntPoly& a, const IntPoly& d);

}  // namespace hyperc::exact
