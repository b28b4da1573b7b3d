#ifndef QWICK_QPOLY_HPP
#define QWICK_QPOLY_HPP

#include <complex>
#include <string>
#include <vector>

#include "qwick/rational.hpp"

namespace qwick {

/// Polynomial in the formal deformation variable q, with complex-rational
/// coefficients.  The zero polynomial has an empty coefficient vector.
class QPoly {
public:
  QPoly() = default;
  QPoly(long long c) {
    if (c != 0) coef_.push_back(CRat(c));
  }
  QPoly(CRat c) {
    if (!c.is_zero()) coef_.push_back(std::move(c));
  }

  static QPoly monomial(int degree, CRat c = CRat(1)) {
    QPoly p;
    if (c.is_zero() || degree < 0) return p;
    p.coef_.assign(degree + 1, CRat());
    p.coef_.back() = std::move(c);
    return p;
  }

  bool is_zero() const { return coef_.empty(); }
  int degree() const { return static_cast<int>(coef_.size()) - 1; }
  const std::vector<CRat>& coefficients() const { return coef_; }
  CRat coefficient(int k) const {
    return (k >= 0 && k < static_cast<int>(coef_.size())) ? coef_[k] : CRat();
  }

  QPoly conj() const {
    QPoly r = *this;
    for (auto& c : r.coef_) c = c.conj();
    return r;
  }

  QPoly operator-() const {
    QPoly r = *this;
    for (auto& c : r.coef_) c = -c;
    return r;
  }

  QPoly operator+(const QPoly& o) const {
    QPoly r;
    r.coef_.resize(std::max(coef_.size(), o.coef_.size()));
    for (size_t i = 0; i < r.coef_.size(); ++i) {
      if (i < coef_.size()) r.coef_[i] += coef_[i];
      if (i < o.coef_.size()) r.coef_[i] += o.coef_[i];
    }
    r.trim();
    return r;
  }

  QPoly operator-(const QPoly& o) const { return *this + (-o); }

  QPoly operator*(const QPoly& o) const {
    QPoly r;
    if (coef_.empty() || o.coef_.empty()) return r;
    r.coef_.assign(coef_.size() + o.coef_.size() - 1, CRat());
    for (size_t i = 0; i < coef_.size(); ++i) {
      if (coef_[i].is_zero()) continue;
      for (size_t j = 0; j < o.coef_.size(); ++j) {
        if (o.coef_[j].is_zero()) continue;
        r.coef_[i + j] += coef_[i] * o.coef_[j];
      }
    }
    r.trim();
    return r;
  }

  QPoly& operator+=(const QPoly& o) { return *this = *this + o; }
  QPoly& operator-=(const QPoly& o) { return *this = *this - o; }
  QPoly& operator*=(const QPoly& o) { return *this = *this * o; }

  bool operator==(const QPoly& o) const { return coef_ == o.coef_; }
  bool operator!=(const QPoly& o) const { return !(*this == o); }

  CRat eval(const Rational& q) const {
    CRat acc;
    for (size_t i = coef_.size(); i-- > 0;) {
      acc = CRat(acc.re * q + coef_[i].re, acc.im * q + coef_[i].im);
    }
    return acc;
  }

  std::complex<double> eval(double q) const {
    std::complex<double> acc(0.0, 0.0);
    for (size_t i = coef_.size(); i-- > 0;)
      acc = acc * q + std::complex<double>(coef_[i].re.to_double(), coef_[i].im.to_double());
    return acc;
  }

  /// Largest coefficient magnitude (sup of |re|, |im| over coefficients),
  /// as a double; the residual measure for symbolic checks.
  double max_coeff_abs() const {
    double m = 0.0;
    for (const auto& c : coef_) {
      m = std::max(m, std::abs(c.re.to_double()));
      m = std::max(m, std::abs(c.im.to_double()));
    }
    return m;
  }

  std::string to_string() const {
    if (coef_.empty()) return "0";
    std::string s;
    for (size_t i = 0; i < coef_.size(); ++i) {
      if (coef_[i].is_zero()) continue;
      if (!s.empty()) s += " + ";
      s += coef_[i].to_string();
      if (i == 1) s += "*q";
      if (i > 1) s += "*q^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
  }

private:
  std::vector<CRat> coef_;

  void trim() {
    while (!coef_.empty() && coef_.back().is_zero()) coef_.pop_back();
  }
};

}  // namespace qwick

#endif
