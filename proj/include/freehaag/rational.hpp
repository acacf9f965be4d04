#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "freehaag/errors.hpp"

namespace freehaag {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) {
    return r.convert_to<double>();
}

inline double to_double(const BigInt& n) {
    return n.convert_to<double>();
}

/// Natural log of a positive big integer, safe far past double range.
inline double log_to_double(const BigInt& x) {
    if (x <= 0) throw std::invalid_argument("log_to_double: needs a positive value");
    const unsigned bits = msb(x);
    if (bits <= 900) return std::log(to_double(x));
    const unsigned drop = bits - 900;
    return std::log(to_double(BigInt(x >> drop))) + static_cast<double>(drop) * std::log(2.0);
}

/// x^e for a positive big integer and a real exponent, via logs.
inline double pow_to_double(const BigInt& x, double e) {
    return std::exp(e * log_to_double(x));
}

/// Serializes a rational as "p/q" (denominator always present, always positive).
inline std::string format_rational(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

/// Parses "p/q" or a bare integer "p". Rejects zero denominators and junk.
inline Rational parse_rational(std::string_view s) {
    const auto slash = s.find('/');
    try {
        if (slash == std::string_view::npos) {
            return Rational(BigInt(std::string(s)));
        }
        BigInt num{std::string(s.substr(0, slash))};
        BigInt den{std::string(s.substr(slash + 1))};
        if (den == 0) {
            throw input_error("rational with zero denominator: " + std::string(s));
        }
        return Rational(num, den);
    } catch (const input_error&) {
        throw;
    } catch (const std::exception&) {
        throw input_error("malformed rational: " + std::string(s));
    }
}

/// Exact complex number with rational real and imaginary parts.
struct Complex {
    Rational re{0};
    Rational im{0};

    Complex() = default;
    Complex(Rational r) : re(std::move(r)) {}
    Complex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    Complex conj() const { return {re, -im}; }
    Rational abs_sq() const { return re * re + im * im; }

    friend Complex operator+(const Complex& a, const Complex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend Complex operator-(const Complex& a, const Complex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator*(const Rational& a, const Complex& b) {
        return {a * b.re, a * b.im};
    }
    Complex& operator+=(const Complex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Complex& operator*=(const Complex& o) { return *this = *this * o; }
    friend bool operator==(const Complex&, const Complex&) = default;
};

/// Rational upper bound for sqrt(q): returns r with r*r >= q and
/// r - sqrt(q) < 2^-bits * max(1, sqrt(q)). Requires q >= 0.
inline Rational sqrt_upper(const Rational& q, unsigned bits = 64) {
    if (q < 0) {
        throw std::invalid_argument("sqrt_upper of negative value");
    }
    if (q == 0) {
        return Rational(0);
    }
    // sqrt(p/d) = sqrt(p*d)/d; scale so the integer sqrt carries `bits`
    // fractional bits.
    const BigInt p = numerator(q), d = denominator(q);
    BigInt scaled = p * d;
    scaled <<= 2 * bits;
    BigInt root = sqrt(scaled); // floor sqrt
    ++root;                     // round up: root^2 >= scaled always holds now
    Rational r(root, d << bits);
    return r;
}

} // namespace freehaag
