#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace proprank {

using BigInt = boost::multiprecision::cpp_int;

// Exact fraction, always in lowest terms with a positive denominator.
// Every quantity in this library (weights, budgets, prices, flows) is one of
// these; there is no floating point anywhere.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rational(BigInt n) : num_(std::move(n)), den_(1) {}
  Rational(BigInt numerator, BigInt denominator);

  // Accepts "p", "-p", "p/q" and decimal literals like "0.6" or "67.5".
  static Rational parse(const std::string& text);

  const BigInt& numerator() const { return num_; }
  const BigInt& denominator() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }
  int sign() const { return num_ == 0 ? 0 : (num_ < 0 ? -1 : 1); }

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    BigInt lhs = a.num_ * b.den_;
    BigInt rhs = b.num_ * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  // Renders "p/q", or just "p" when the denominator is 1.
  std::string str() const;

  double to_double() const;  // display only, never used in computations

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  void normalize();

  BigInt num_;
  BigInt den_;  // > 0
};

inline Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline Rational abs(const Rational& a) { return a.is_negative() ? -a : a; }

// floor(a) as a BigInt (towards negative infinity).
BigInt floor_int(const Rational& a);

}  // namespace proprank
