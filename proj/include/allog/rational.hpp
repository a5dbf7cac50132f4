#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace allog {

// Exact non-negative fraction, always reduced.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d);

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    friend bool operator==(const Rational& a, const Rational& b) { return a.num == b.num && a.den == b.den; }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b);
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
};

// "n/d"
std::string to_string(const Rational& r);
// Percentage truncated to one decimal place: 4/15 -> "26.6 %".
std::string to_percent(const Rational& r);
// Accepts "0.13", "13%", "13 %", "2/15" and "1".
std::optional<Rational> parse_rational(std::string_view text);

}  // namespace allog
