#include "proprank/rational.hpp"

#include <ostream>

#include "proprank/errors.hpp"

namespace proprank {

namespace {

BigInt gcd_big(BigInt a, BigInt b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  return boost::multiprecision::gcd(a, b);
}

}  // namespace

Rational::Rational(BigInt numerator, BigInt denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (den_ == 0) throw InvalidInputError("rational with zero denominator");
  normalize();
}

void Rational::normalize() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_ == 0) {
    den_ = 1;
    return;
  }
  BigInt g = gcd_big(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational Rational::operator-() const {
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ *= o.den_;
  normalize();
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  num_ = num_ * o.den_ - o.num_ * den_;
  den_ *= o.den_;
  normalize();
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  normalize();
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw InvalidInputError("rational division by zero");
  num_ *= o.den_;
  den_ *= o.num_;
  normalize();
  return *this;
}

Rational Rational::parse(const std::string& text) {
  if (text.empty()) throw InvalidInputError("empty rational literal");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    std::string p = text.substr(0, slash);
    std::string q = text.substr(slash + 1);
    if (p.empty() || q.empty()) throw InvalidInputError("malformed fraction '" + text + "'");
    try {
      return Rational(BigInt(p), BigInt(q));
    } catch (const std::exception&) {
      throw InvalidInputError("malformed fraction '" + text + "'");
    }
  }
  auto dot = text.find('.');
  if (dot != std::string::npos) {
    std::string whole = text.substr(0, dot);
    std::string frac = text.substr(dot + 1);
    bool neg = !whole.empty() && whole[0] == '-';
    if (neg) whole = whole.substr(1);
    if (whole.empty()) whole = "0";
    for (char c : whole + frac) {
      if (c < '0' || c > '9') throw InvalidInputError("malformed decimal '" + text + "'");
    }
    if (frac.empty()) throw InvalidInputError("malformed decimal '" + text + "'");
    BigInt den = 1;
    for (size_t i = 0; i < frac.size(); ++i) den *= 10;
    BigInt num = BigInt(whole) * den + BigInt(frac);
    if (neg) num = -num;
    return Rational(num, den);
  }
  try {
    return Rational(BigInt(text));
  } catch (const std::exception&) {
    throw InvalidInputError("malformed integer '" + text + "'");
  }
}

std::string Rational::str() const {
  if (den_ == 1) return num_.str();
  return num_.str() + "/" + den_.str();
}

double Rational::to_double() const {
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

BigInt floor_int(const Rational& a) {
  BigInt q = a.numerator() / a.denominator();
  if (a.numerator() < 0 && q * a.denominator() != a.numerator()) q -= 1;
  return q;
}

}  // namespace proprank
