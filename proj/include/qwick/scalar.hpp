#ifndef QWICK_SCALAR_HPP
#define QWICK_SCALAR_HPP

#include <cmath>
#include <complex>
#include <string>

#include "qwick/qpoly.hpp"

namespace qwick {

using cplx = std::complex<double>;

/// Integer power for double bases (std::pow is awkward for negative q).
inline double ipow(double base, long long e) {
  double r = 1.0, b = base;
  for (long long k = e; k > 0; k >>= 1) {
    if (k & 1) r *= b;
    b *= b;
  }
  return r;
}

/// The three scalar backends share a minimal free-function surface.
template <class S>
struct scalar_ops;

template <>
struct scalar_ops<QPoly> {
  static QPoly zero() { return QPoly(); }
  static QPoly one() { return QPoly(1); }
  static QPoly from_int(long long v) { return QPoly(v); }
  static QPoly conj(const QPoly& s) { return s.conj(); }
  static bool is_zero(const QPoly& s) { return s.is_zero(); }
  static double abs_measure(const QPoly& s) { return s.max_coeff_abs(); }
  static std::string name() { return "exact-symbolic"; }
};

template <>
struct scalar_ops<CRat> {
  static CRat zero() { return CRat(); }
  static CRat one() { return CRat(1); }
  static CRat from_int(long long v) { return CRat(v); }
  static CRat conj(const CRat& s) { return s.conj(); }
  static bool is_zero(const CRat& s) { return s.is_zero(); }
  static double abs_measure(const CRat& s) {
    return std::max(std::abs(s.re.to_double()), std::abs(s.im.to_double()));
  }
  static std::string name() { return "exact-rational"; }
};

template <>
struct scalar_ops<cplx> {
  static cplx zero() { return cplx(0.0, 0.0); }
  static cplx one() { return cplx(1.0, 0.0); }
  static cplx from_int(long long v) { return cplx(static_cast<double>(v), 0.0); }
  static cplx conj(const cplx& s) { return std::conj(s); }
  static bool is_zero(const cplx& s) { return s.real() == 0.0 && s.imag() == 0.0; }
  static double abs_measure(const cplx& s) { return std::abs(s); }
  static std::string name() { return "float"; }
};

/// q-power providers: every deformed operator is assembled from powers of q,
/// and this is the only place the three backends differ in how q enters.
struct SymbolicQ {
  using scalar = QPoly;
  QPoly operator()(long long k) const { return QPoly::monomial(static_cast<int>(k)); }
};

struct RationalQ {
  using scalar = CRat;
  Rational q;
  CRat operator()(long long k) const { return CRat(q.pow(static_cast<unsigned>(k))); }
};

struct FloatQ {
  using scalar = cplx;
  double q = 0.0;
  cplx operator()(long long k) const { return cplx(ipow(q, k), 0.0); }
};

}  // namespace qwick

#endif
