#ifndef QWICK_RATIONAL_HPP
#define QWICK_RATIONAL_HPP

#include <stdexcept>
#include <string>
#include <utility>

#include "qwick/bigint.hpp"

namespace qwick {

/// Exact rational number, always reduced, denominator > 0.
class Rational {
public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}
  Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }
  Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

  /// Parses "p" or "p/r".
  static Rational from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(BigInt::from_string(s), BigInt(1));
    return Rational(BigInt::from_string(s.substr(0, slash)),
                    BigInt::from_string(s.substr(slash + 1)));
  }

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  int signum() const { return num_.signum(); }

  Rational operator-() const { return Rational(-num_, den_, already_reduced{}); }
  Rational operator+(const Rational& o) const {
    return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  }
  Rational operator-(const Rational& o) const {
    return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
  }
  Rational operator*(const Rational& o) const {
    return Rational(num_ * o.num_, den_ * o.den_);
  }
  Rational operator/(const Rational& o) const {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    return Rational(num_ * o.den_, den_ * o.num_);
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const { return (num_ * o.den_) < (o.num_ * den_); }

  Rational abs() const { return Rational(num_.abs(), den_, already_reduced{}); }
  Rational pow(unsigned e) const { return Rational(num_.pow(e), den_.pow(e), already_reduced{}); }

  double to_double() const {
    int bn = num_.bit_length(), bd = den_.bit_length();
    if (bn < 900 && bd < 900) return num_.to_double() / den_.to_double();
    // scale both down to dodge double overflow; relative error stays ~1e-16
    BigInt two(2);
    BigInt shift = two.pow(static_cast<unsigned>(std::max(bn, bd) - 500));
    return (num_ / shift).to_double() / (den_ / shift).to_double();
  }

  std::string to_string() const {
    if (den_ == BigInt(1)) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
  }

private:
  struct already_reduced {};
  Rational(BigInt n, BigInt d, already_reduced) : num_(std::move(n)), den_(std::move(d)) {}

  void normalize() {
    if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
    if (den_.signum() < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    if (num_.is_zero()) {
      den_ = BigInt(1);
      return;
    }
    BigInt g = BigInt::gcd(num_, den_);
    if (!(g == BigInt(1))) {
      num_ = num_ / g;
      den_ = den_ / g;
    }
  }

  BigInt num_, den_;
};

/// Complex number with exact rational real and imaginary parts.
struct CRat {
  Rational re, im;

  CRat() = default;
  CRat(long long r) : re(r) {}
  CRat(Rational r) : re(std::move(r)) {}
  CRat(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  CRat conj() const { return CRat(re, -im); }

  CRat operator-() const { return CRat(-re, -im); }
  CRat operator+(const CRat& o) const { return CRat(re + o.re, im + o.im); }
  CRat operator-(const CRat& o) const { return CRat(re - o.re, im - o.im); }
  CRat operator*(const CRat& o) const {
    return CRat(re * o.re - im * o.im, re * o.im + im * o.re);
  }
  CRat& operator+=(const CRat& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  CRat& operator-=(const CRat& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  bool operator==(const CRat& o) const { return re == o.re && im == o.im; }
  bool operator!=(const CRat& o) const { return !(*this == o); }

  std::string to_string() const {
    if (im.is_zero()) return re.to_string();
    return "(" + re.to_string() + "," + im.to_string() + ")";
  }
};

}  // namespace qwick

#endif
