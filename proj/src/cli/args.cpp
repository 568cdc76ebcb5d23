#include "hyperc/cli/args.hpp"

#include <charconv>
#include <cmath>
#include <numeric>

#include "hyperc/errors.hpp"

namespace hyperc::cli {
namespace {

bool parse_long(const std::string& s, long& out) {
    if (s.empty()) return false;
    const char* first = s.data();
    if (*first == '+') ++first;
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

bool parse_decimal(const std::string& s, double& out) {
    if (s.empty()) return false;
    const char* first = s.data();
    if (*first == '+') ++first;
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && std::isfinite(out);
}

}  // namespace

Number parse_number(const std::string& text) {
    Number n;
    n.text = text;
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        long a = 0, b = 0;
        if (!parse_long(text.substr(0, slash), a) || !parse_long(text.substr(slash + 1), b)) {
            throw InputError("malformed fraction '" + text + "'");
        }
        if (b == 0) throw InputError("zero denominator in '" + text + "'");
        if (b < 0) {
            a = -a;
            b = -b;
        }
        const long g = std::gcd(a, b);
        n.rational = Fraction{a / g, b / g};
        n.value = static_cast<double>(a) / static_cast<double>(b);
        return n;
    }
    long a = 0;
    if (parse_long(text, a)) {
        n.rational = Fraction{a, 1};
        n.value = static_cast<double>(a);
        return n;
    }
    if (!parse_decimal(text, n.value)) throw InputError("malformed number '" + text + "'");
    return n;
}

std::string format_fraction(long num, long den) {
    const long g = std::gcd(num, den);
    if (g != 0) {
        num /= g;
        den /= g;
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) return "0";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

}  // namespace hyperc::cli
