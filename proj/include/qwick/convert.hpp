#ifndef QWICK_CONVERT_HPP
#define QWICK_CONVERT_HPP

#include "qwick/tensor.hpp"

namespace qwick {

/// Backend bridges: evaluate symbolic objects at a numeric q, and lower
/// exact-rational objects to floats, entry by entry.

inline cplx to_cplx(const CRat& c) { return cplx(c.re.to_double(), c.im.to_double()); }

inline Tensor<CRat> eval_tensor(const Tensor<QPoly>& t, const Rational& q) {
  Tensor<CRat> r(t.legs, t.dim);
  for (int64_t i = 0; i < t.size(); ++i) r.a[i] = t.a[i].eval(q);
  return r;
}

inline Tensor<cplx> eval_tensor(const Tensor<QPoly>& t, double q) {
  Tensor<cplx> r(t.legs, t.dim);
  for (int64_t i = 0; i < t.size(); ++i) r.a[i] = t.a[i].eval(q);
  return r;
}

inline Tensor<cplx> to_float(const Tensor<CRat>& t) {
  Tensor<cplx> r(t.legs, t.dim);
  for (int64_t i = 0; i < t.size(); ++i) r.a[i] = to_cplx(t.a[i]);
  return r;
}

inline LinMap<CRat> eval_map(const LinMap<QPoly>& m, const Rational& q) {
  LinMap<CRat> r(m.dst_legs, m.src_legs, m.dim);
  for (size_t i = 0; i < m.m.size(); ++i) r.m[i] = m.m[i].eval(q);
  return r;
}

inline LinMap<cplx> eval_map(const LinMap<QPoly>& m, double q) {
  LinMap<cplx> r(m.dst_legs, m.src_legs, m.dim);
  for (size_t i = 0; i < m.m.size(); ++i) r.m[i] = m.m[i].eval(q);
  return r;
}

inline LinMap<cplx> to_float(const LinMap<CRat>& m) {
  LinMap<cplx> r(m.dst_legs, m.src_legs, m.dim);
  for (size_t i = 0; i < m.m.size(); ++i) r.m[i] = to_cplx(m.m[i]);
  return r;
}

/// Largest entrywise deviation relative to scale (for float comparisons).
template <class S>
double relative_gap(const LinMap<S>& a, const LinMap<S>& b) {
  double scale = std::max(1.0, std::max(a.max_abs(), b.max_abs()));
  return (a - b).max_abs() / scale;
}

template <class S>
double relative_gap(const Tensor<S>& a, const Tensor<S>& b) {
  double scale = std::max(1.0, std::max(a.max_abs(), b.max_abs()));
  return (a - b).max_abs() / scale;
}

}  // namespace qwick

#endif
