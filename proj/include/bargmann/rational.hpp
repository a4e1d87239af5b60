#pragma once

/// \file rational.hpp
/// Exact rational and complex-rational scalars used by the symbolic layer.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>

namespace bargmann {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

namespace detail {

inline bool is_digit(char c) { return c >= '0' && c <= '9'; }

inline BigInt pow10(unsigned k) {
  BigInt r = 1;
  for (unsigned i = 0; i < k; ++i) r *= 10;
  return r;
}

}  // namespace detail

/// Parses `[+-]digits[.digits][(e|E)[+-]digits]` or `[+-]p/q` into an exact
/// rational. No binary floating point is involved. Throws std::invalid_argument
/// on malformed input.
inline Rational rational_from_decimal(std::string_view text) {
  constexpr int kMaxExponent = 400;
  auto fail = [&]() -> Rational {
    throw std::invalid_argument("not a decimal literal: '" + std::string(text) + "'");
  };
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  BigInt mantissa = 0;
  int scale = 0;
  std::size_t digits = 0;
  while (i < text.size() && detail::is_digit(text[i])) {
    mantissa = mantissa * 10 + (text[i] - '0');
    ++i;
    ++digits;
  }
  if (i < text.size() && text[i] == '/') {
    if (digits == 0) return fail();
    ++i;
    BigInt den = 0;
    std::size_t den_digits = 0;
    while (i < text.size() && detail::is_digit(text[i])) {
      den = den * 10 + (text[i] - '0');
      ++i;
      ++den_digits;
    }
    if (den_digits == 0 || i != text.size() || den == 0) return fail();
    Rational r(mantissa, den);
    return negative ? Rational(-r) : r;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && detail::is_digit(text[i])) {
      mantissa = mantissa * 10 + (text[i] - '0');
      ++i;
      ++digits;
      --scale;
    }
  }
  if (digits == 0) return fail();
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool exp_negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      exp_negative = text[i] == '-';
      ++i;
    }
    int exponent = 0;
    std::size_t exp_digits = 0;
    while (i < text.size() && detail::is_digit(text[i])) {
      exponent = exponent * 10 + (text[i] - '0');
      if (exponent > kMaxExponent) return fail();
      ++i;
      ++exp_digits;
    }
    if (exp_digits == 0) return fail();
    scale += exp_negative ? -exponent : exponent;
  }
  if (i != text.size()) return fail();
  Rational r = scale >= 0 ? Rational(mantissa * detail::pow10(static_cast<unsigned>(scale)))
                          : Rational(mantissa, detail::pow10(static_cast<unsigned>(-scale)));
  return negative ? Rational(-r) : r;
}

/// The rational whose decimal expansion is the shortest round-trip
/// representation of `x` (so 0.1 becomes exactly 1/10).
inline Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite value has no rational form");
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) throw std::invalid_argument("to_chars failed");
  return rational_from_decimal(std::string_view(buf, static_cast<std::size_t>(end - buf)));
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Decimal text when the denominator is of the form 2^a 5^b, `p/q` otherwise.
inline std::string to_string(const Rational& r) {
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  BigInt rest = den;
  unsigned twos = 0, fives = 0;
  while (rest % 2 == 0) { rest /= 2; ++twos; }
  while (rest % 5 == 0) { rest /= 5; ++fives; }
  if (rest != 1) return num.str() + "/" + den.str();
  unsigned places = std::max(twos, fives);
  bool negative = num < 0;
  BigInt scaled = (negative ? BigInt(-num) : num) * detail::pow10(places) / den;
  std::string digits = scaled.str();
  if (digits.size() <= places) digits.insert(0, places - digits.size() + 1, '0');
  digits.insert(digits.size() - places, 1, '.');
  return negative ? "-" + digits : digits;
}

/// Exact complex rational re + i*im.
struct Coefficient {
  Rational re{0};
  Rational im{0};

  Coefficient() = default;
  Coefficient(Rational real, Rational imag = 0) : re(std::move(real)), im(std::move(imag)) {}
  Coefficient(int real) : re(real) {}

  static Coefficient i() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return re == 0 && im == 0; }
  Coefficient conj() const { return {re, -im}; }
  std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }

  Coefficient& operator+=(const Coefficient& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Coefficient& operator-=(const Coefficient& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Coefficient& operator*=(const Coefficient& o) {
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  friend Coefficient operator+(Coefficient a, const Coefficient& b) { return a += b; }
  friend Coefficient operator-(Coefficient a, const Coefficient& b) { return a -= b; }
  friend Coefficient operator*(Coefficient a, const Coefficient& b) { return a *= b; }
  friend Coefficient operator-(const Coefficient& a) { return {-a.re, -a.im}; }
  friend bool operator==(const Coefficient& a, const Coefficient& b) {
    return a.re == b.re && a.im == b.im;
  }
};

inline std::string to_string(const Coefficient& c) {
  return "(" + to_string(c.re) + "," + to_string(c.im) + ")";
}

}  // namespace bargmann
