#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace heiscr {

/// Exact rational number on 64-bit words.
///
/// Always stored normalized: gcd(num, den) = 1, den > 0, zero is 0/1.
/// Intermediate products go through __int128; results that do not fit
/// back into 64 bits throw instead of wrapping. The quantities handled
/// here (structure constants, low-degree polynomial coefficients) stay
/// tiny, so an overflow indicates a logic error upstream.
class Rational {
public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}
  Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

  long long num() const { return num_; }
  long long den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  Rational operator-() const { return Rational(from128(-static_cast<__int128>(num_)), den_); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    __int128 n = static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_;
    __int128 d = static_cast<__int128>(a.den_) * b.den_;
    return make128(n, d);
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    __int128 n = static_cast<__int128>(a.num_) * b.num_;
    __int128 d = static_cast<__int128>(a.den_) * b.den_;
    return make128(n, d);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
    __int128 n = static_cast<__int128>(a.num_) * b.den_;
    __int128 d = static_cast<__int128>(a.den_) * b.num_;
    return make128(n, d);
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
  }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  /// Best rational approximation with bounded denominator (continued
  /// fractions). For the decimal and dyadic inputs used throughout this
  /// project the result converts back to exactly the same double.
  static Rational from_double(double v, long long max_den = 1000000) {
    if (!(v == v)) throw std::invalid_argument("Rational::from_double: NaN");
    bool neg = v < 0;
    double x = neg ? -v : v;
    long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = x;
    for (int it = 0; it < 64; ++it) {
      long long a = static_cast<long long>(frac);
      long long p2 = a * p1 + p0, q2 = a * q1 + q0;
      if (q2 > max_den) break;
      p0 = p1;
      q0 = q1;
      p1 = p2;
      q1 = q2;
      double rem = frac - static_cast<double>(a);
      if (rem < 1e-15) break;
      frac = 1.0 / rem;
    }
    Rational r(neg ? -p1 : p1, q1 == 0 ? 1 : q1);
    return r;
  }

private:
  static long long from128(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("Rational: 64-bit overflow");
    return static_cast<long long>(v);
  }
  static Rational make128(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    if (d < 0) { n = -n; d = -d; }
    __int128 a = n < 0 ? -n : n;
    __int128 g = gcd128(a, d);
    if (g > 1) { n /= g; d /= g; }
    Rational r;
    r.num_ = from128(n);
    r.den_ = from128(d);
    return r;
  }
  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) { __int128 t = a % b; a = b; b = t; }
    return a < 0 ? -a : a;
  }
  void normalize() {
    *this = make128(num_, den_);
  }

  long long num_;
  long long den_;
};

} // namespace heiscr
