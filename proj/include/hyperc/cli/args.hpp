#pragma once

#include <optional>
#include <string>

namespace hyperc::cli {

struct Fraction {
    long num = 0;
    long den = 1;
};

// A numeric argument given either as a decimal or as "m/n". Integers count
// as rationals with denominator 1; other decimals are used as-is.
struct Number {
    double value = 0.0;
    std::optional<Fraction> rational;
    std::string text;
};

// Throws InputError on malformed input.
Number parse_number(const std::string& text);

// "m/n" reduced, or "m" when n = 1.
std::string format_fraction(long num, long den);

// Shortest round-trip decimal for finite values; "nan", "inf", "-inf"
// otherwise. Locale independent.
std::string format_double(double v);

}  // namespace hyperc::cli
