#include "allog/rational.hpp"

#include <cctype>
#include <numeric>
#include <stdexcept>

namespace allog {

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (d == 0) throw std::invalid_argument("zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
}

std::string to_string(const Rational& r) { return std::to_string(r.num) + "/" + std::to_string(r.den); }

std::string to_percent(const Rational& r) {
    std::int64_t tenths = static_cast<std::int64_t>(static_cast<__int128>(r.num) * 1000 / r.den);
    return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10) + " %";
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::optional<std::int64_t> parse_int(std::string_view s) {
    if (s.empty() || s.size() > 15) return std::nullopt;
    std::int64_t v = 0;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
        v = v * 10 + (c - '0');
    }
    return v;
}

std::optional<Rational> parse_decimal(std::string_view s) {
    auto dot = s.find('.');
    if (dot == std::string_view::npos) {
        auto v = parse_int(s);
        if (!v) return std::nullopt;
        return Rational(*v, 1);
    }
    std::string_view whole = s.substr(0, dot), frac = s.substr(dot + 1);
    if (frac.empty() || frac.size() > 9) return std::nullopt;
    auto w = whole.empty() ? std::optional<std::int64_t>(0) : parse_int(whole);
    auto f = parse_int(frac);
    if (!w || !f) return std::nullopt;
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    return Rational(*w * scale + *f, scale);
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
    auto s = trim(text);
    if (s.empty()) return std::nullopt;
    if (s.back() == '%') {
        auto v = parse_decimal(trim(s.substr(0, s.size() - 1)));
        if (!v) return std::nullopt;
        return Rational(v->num, v->den * 100);
    }
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        auto n = parse_int(trim(s.substr(0, slash)));
        auto d = parse_int(trim(s.substr(slash + 1)));
        if (!n || !d || *d == 0) return std::nullopt;
        return Rational(*n, *d);
    }
    return parse_decimal(s);
}

}  // namespace allog
