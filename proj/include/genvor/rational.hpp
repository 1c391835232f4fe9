#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "genvor/error.hpp"

namespace genvor {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Exact value of a finite double.
inline Rational exact_rational(double v) {
    if (!std::isfinite(v)) throw Error(ErrorCode::ParseError, "non-finite value");
    if (v == 0.0) return Rational(0);
    int exp = 0;
    double mant = std::frexp(v, &exp);
    // 53 bits of mantissa as an integer
    auto m = static_cast<std::int64_t>(std::ldexp(mant, 53));
    exp -= 53;
    BigInt num(m);
    BigInt den(1);
    if (exp >= 0)
        num <<= exp;
    else
        den <<= -exp;
    return Rational(num, den);
}

/// Parses "12", "-0.125", "3.5e-4" or "p/q".
inline Rational parse_rational(std::string_view text) {
    auto fail = [&] { return Error(ErrorCode::ParseError, "bad rational '" + std::string(text) + "'"); };
    if (text.empty()) throw fail();
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Rational num = parse_rational(text.substr(0, slash));
        Rational den = parse_rational(text.substr(slash + 1));
        if (den == 0) throw fail();
        return num / den;
    }
    std::size_t pos = 0;
    bool negative = false;
    if (text[pos] == '+' || text[pos] == '-') {
        negative = text[pos] == '-';
        ++pos;
    }
    BigInt digits = 0;
    long long scale = 0;
    bool seen_digit = false;
    bool seen_point = false;
    for (; pos < text.size(); ++pos) {
        char c = text[pos];
        if (c >= '0' && c <= '9') {
            digits = digits * 10 + (c - '0');
            seen_digit = true;
            if (seen_point) --scale;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!seen_digit) throw fail();
    if (pos < text.size()) {
        if (text[pos] != 'e' && text[pos] != 'E') throw fail();
        ++pos;
        bool exp_negative = false;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
            exp_negative = text[pos] == '-';
            ++pos;
        }
        if (pos >= text.size()) throw fail();
        long long e = 0;
        for (; pos < text.size(); ++pos) {
            char c = text[pos];
            if (c < '0' || c > '9' || e > 100000) throw fail();
            e = e * 10 + (c - '0');
        }
        scale += exp_negative ? -e : e;
    }
    Rational value(digits);
    BigInt ten_pow = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(scale < 0 ? -scale : scale));
    if (scale < 0)
        value /= ten_pow;
    else
        value *= ten_pow;
    return negative ? Rational(-value) : value;
}

/// Terminating decimal when the denominator is 2^a 5^b, otherwise "p/q".
/// parse_rational(format_rational(r)) == r for every r.
inline std::string format_rational(const Rational& r) {
    BigInt num = boost::multiprecision::numerator(r);
    BigInt den = boost::multiprecision::denominator(r);
    BigInt rest = den;
    unsigned twos = 0, fives = 0;
    while (rest % 2 == 0) { rest /= 2; ++twos; }
    while (rest % 5 == 0) { rest /= 5; ++fives; }
    if (rest != 1) return num.str() + "/" + den.str();
    unsigned places = std::max(twos, fives);
    if (places == 0) return num.str();
    BigInt scaled = num * (boost::multiprecision::pow(BigInt(10), places) / den);
    bool negative = scaled < 0;
    if (negative) scaled = -scaled;
    std::string s = scaled.str();
    if (s.size() <= places) s.insert(0, places - s.size() + 1, '0');
    s.insert(s.size() - places, ".");
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
    return negative ? "-" + s : s;
}

} // namespace genvor
