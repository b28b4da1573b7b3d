#ifndef QWICK_TENSOR_HPP
#define QWICK_TENSOR_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qwick/combinatorics.hpp"
#include "qwick/scalar.hpp"

namespace qwick {

/// dim^legs with an overflow guard; flat sizes stay well under 2^62.
inline int64_t tensor_size(int dim, int legs) {
  if (dim < 1 || legs < 0) throw std::invalid_argument("tensor_size: bad shape");
  int64_t s = 1;
  for (int i = 0; i < legs; ++i) {
    if (s > (int64_t(1) << 56) / dim) throw std::invalid_argument("tensor_size: shape too large");
    s *= dim;
  }
  return s;
}

/// Dense element of H^{otimes legs} for H = C^dim.  Flat storage is
/// row-major with leg 1 most significant; legs == 0 means a single scalar.
template <class S>
struct Tensor {
  int legs = 0;
  int dim = 1;
  std::vector<S> a;

  Tensor() : a(1, scalar_ops<S>::zero()) {}
  Tensor(int legs_, int dim_)
      : legs(legs_), dim(dim_), a(tensor_size(dim_, legs_), scalar_ops<S>::zero()) {}

  int64_t size() const { return static_cast<int64_t>(a.size()); }

  static Tensor basis(int legs, int dim, int64_t flat) {
    Tensor t(legs, dim);
    t.a[flat] = scalar_ops<S>::one();
    return t;
  }
  static Tensor scalar(int dim, S v) {
    Tensor t(0, dim);
    t.a[0] = std::move(v);
    return t;
  }

  /// one-indexed basis legs (v[0] is leg 1) to flat index
  static int64_t encode(const std::vector<int>& digits, int dim) {
    int64_t idx = 0;
    for (int v : digits) idx = idx * dim + v;
    return idx;
  }
  std::vector<int> decode(int64_t flat) const {
    std::vector<int> digits(legs);
    for (int i = legs; i-- > 0;) {
      digits[i] = static_cast<int>(flat % dim);
      flat /= dim;
    }
    return digits;
  }

  Tensor operator+(const Tensor& o) const {
    require_same_shape(o);
    Tensor r = *this;
    for (int64_t i = 0; i < size(); ++i) r.a[i] = r.a[i] + o.a[i];
    return r;
  }
  Tensor operator-(const Tensor& o) const {
    require_same_shape(o);
    Tensor r = *this;
    for (int64_t i = 0; i < size(); ++i) r.a[i] = r.a[i] - o.a[i];
    return r;
  }
  Tensor scaled(const S& c) const {
    Tensor r = *this;
    for (auto& v : r.a) v = v * c;
    return r;
  }
  void add_scaled(const Tensor& o, const S& c) {
    require_same_shape(o);
    for (int64_t i = 0; i < size(); ++i)
      if (!scalar_ops<S>::is_zero(o.a[i])) a[i] = a[i] + o.a[i] * c;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& v : a) m = std::max(m, scalar_ops<S>::abs_measure(v));
    return m;
  }
  bool is_zero() const {
    for (const auto& v : a)
      if (!scalar_ops<S>::is_zero(v)) return false;
    return true;
  }

  void require_same_shape(const Tensor& o) const {
    if (legs != o.legs || dim != o.dim) throw std::invalid_argument("Tensor: shape mismatch");
  }
};

/// x tensor y: legs concatenate, x legs most significant.
template <class S>
Tensor<S> tensor_product(const Tensor<S>& x, const Tensor<S>& y) {
  if (x.dim != y.dim) throw std::invalid_argument("tensor_product: dim mismatch");
  Tensor<S> r(x.legs + y.legs, x.dim);
  const int64_t sy = y.size();
  for (int64_t i = 0; i < x.size(); ++i) {
    if (scalar_ops<S>::is_zero(x.a[i])) continue;
    for (int64_t j = 0; j < sy; ++j) {
      if (scalar_ops<S>::is_zero(y.a[j])) continue;
      r.a[i * sy + j] = x.a[i] * y.a[j];
    }
  }
  return r;
}

/// Dense linear map H^{otimes src_legs} -> H^{otimes dst_legs},
/// row-major (m[row * srcSize + col]).
template <class S>
struct LinMap {
  int src_legs = 0;
  int dst_legs = 0;
  int dim = 1;
  std::vector<S> m;

  LinMap() : m(1, scalar_ops<S>::zero()) {}
  LinMap(int dst, int src, int dim_)
      : src_legs(src), dst_legs(dst), dim(dim_),
        m(tensor_size(dim_, src) * tensor_size(dim_, dst), scalar_ops<S>::zero()) {}

  int64_t src_size() const { return tensor_size(dim, src_legs); }
  int64_t dst_size() const { return tensor_size(dim, dst_legs); }
  S& at(int64_t r, int64_t c) { return m[r * src_size() + c]; }
  const S& at(int64_t r, int64_t c) const { return m[r * src_size() + c]; }

  static LinMap identity(int legs, int dim) {
    LinMap map(legs, legs, dim);
    for (int64_t i = 0; i < map.src_size(); ++i) map.at(i, i) = scalar_ops<S>::one();
    return map;
  }

  Tensor<S> apply(const Tensor<S>& x) const {
    if (x.legs != src_legs || x.dim != dim) throw std::invalid_argument("LinMap: shape mismatch");
    Tensor<S> y(dst_legs, dim);
    const int64_t ns = src_size(), nd = dst_size();
    for (int64_t c = 0; c < ns; ++c) {
      if (scalar_ops<S>::is_zero(x.a[c])) continue;
      for (int64_t r = 0; r < nd; ++r) {
        const S& e = m[r * ns + c];
        if (scalar_ops<S>::is_zero(e)) continue;
        y.a[r] = y.a[r] + e * x.a[c];
      }
    }
    return y;
  }

  LinMap operator+(const LinMap& o) const {
    require_same_shape(o);
    LinMap r = *this;
    for (size_t i = 0; i < m.size(); ++i) r.m[i] = r.m[i] + o.m[i];
    return r;
  }
  LinMap operator-(const LinMap& o) const {
    require_same_shape(o);
    LinMap r = *this;
    for (size_t i = 0; i < m.size(); ++i) r.m[i] = r.m[i] - o.m[i];
    return r;
  }
  LinMap scaled(const S& c) const {
    LinMap r = *this;
    for (auto& v : r.m) v = v * c;
    return r;
  }
  void add_scaled(const LinMap& o, const S& c) {
    require_same_shape(o);
    for (size_t i = 0; i < m.size(); ++i)
      if (!scalar_ops<S>::is_zero(o.m[i])) m[i] = m[i] + o.m[i] * c;
  }

  /// conjugate transpose
  LinMap adjoint() const {
    LinMap r(src_legs, dst_legs, dim);
    const int64_t ns = src_size(), nd = dst_size();
    for (int64_t rr = 0; rr < nd; ++rr)
      for (int64_t c = 0; c < ns; ++c) r.m[c * nd + rr] = scalar_ops<S>::conj(m[rr * ns + c]);
    return r;
  }

  double max_abs() const {
    double mx = 0.0;
    for (const auto& v : m) mx = std::max(mx, scalar_ops<S>::abs_measure(v));
    return mx;
  }
  bool is_zero() const {
    for (const auto& v : m)
      if (!scalar_ops<S>::is_zero(v)) return false;
    return true;
  }

  void require_same_shape(const LinMap& o) const {
    if (src_legs != o.src_legs || dst_legs != o.dst_legs || dim != o.dim)
      throw std::invalid_argument("LinMap: shape mismatch");
  }
};

/// a following b (matrix product a*b), with zero-skipping.
template <class S>
LinMap<S> compose(const LinMap<S>& a, const LinMap<S>& b) {
  if (a.src_legs != b.dst_legs || a.dim != b.dim)
    throw std::invalid_argument("compose: leg mismatch");
  LinMap<S> c(a.dst_legs, b.src_legs, a.dim);
  const int64_t an = a.src_size(), ad = a.dst_size(), bn = b.src_size();
  for (int64_t k = 0; k < an; ++k) {
    for (int64_t col = 0; col < bn; ++col) {
      const S& bv = b.m[k * bn + col];
      if (scalar_ops<S>::is_zero(bv)) continue;
      for (int64_t row = 0; row < ad; ++row) {
        const S& av = a.m[row * an + k];
        if (scalar_ops<S>::is_zero(av)) continue;
        c.m[row * bn + col] = c.m[row * bn + col] + av * bv;
      }
    }
  }
  return c;
}

template <class S>
LinMap<S> kron(const LinMap<S>& a, const LinMap<S>& b) {
  if (a.dim != b.dim) throw std::invalid_argument("kron: dim mismatch");
  LinMap<S> c(a.dst_legs + b.dst_legs, a.src_legs + b.src_legs, a.dim);
  const int64_t arn = a.dst_size(), acn = a.src_size();
  const int64_t brn = b.dst_size(), bcn = b.src_size();
  for (int64_t ar = 0; ar < arn; ++ar)
    for (int64_t ac = 0; ac < acn; ++ac) {
      const S& av = a.m[ar * acn + ac];
      if (scalar_ops<S>::is_zero(av)) continue;
      for (int64_t br = 0; br < brn; ++br)
        for (int64_t bc = 0; bc < bcn; ++bc) {
          const S& bv = b.m[br * bcn + bc];
          if (scalar_ops<S>::is_zero(bv)) continue;
          c.m[(ar * brn + br) * (acn * bcn) + (ac * bcn + bc)] = av * bv;
        }
    }
  return c;
}

/// The permutation action sending basis leg-string alpha to beta with
/// beta_l = alpha_{pi(l)}; compositions satisfy M_sigma M_rho = M_{rho o sigma}.
template <class S>
LinMap<S> permutation_map(const comb::Permutation& pi, int dim) {
  const int n = pi.size();
  LinMap<S> map(n, n, dim);
  const int64_t sz = map.src_size();
  std::vector<int> alpha(n), beta(n);
  for (int64_t col = 0; col < sz; ++col) {
    int64_t rest = col;
    for (int i = n; i-- > 0;) {
      alpha[i] = static_cast<int>(rest % dim);
      rest /= dim;
    }
    for (int l = 0; l < n; ++l) beta[l] = alpha[pi.image[l] - 1];
    map.at(Tensor<S>::encode(beta, dim), col) = scalar_ops<S>::one();
  }
  return map;
}

/// M_pi applied directly to a tensor (scatter form).
template <class S>
Tensor<S> apply_leg_permutation(const Tensor<S>& t, const comb::Permutation& pi) {
  if (pi.size() != t.legs) throw std::invalid_argument("apply_leg_permutation: size mismatch");
  Tensor<S> out(t.legs, t.dim);
  const int n = t.legs;
  std::vector<int> alpha(n), beta(n);
  for (int64_t idx = 0; idx < t.size(); ++idx) {
    if (scalar_ops<S>::is_zero(t.a[idx])) continue;
    int64_t rest = idx;
    for (int i = n; i-- > 0;) {
      alpha[i] = static_cast<int>(rest % t.dim);
      rest /= t.dim;
    }
    for (int l = 0; l < n; ++l) beta[l] = alpha[pi.image[l] - 1];
    out.a[Tensor<S>::encode(beta, t.dim)] = t.a[idx];
  }
  return out;
}

}  // namespace qwick

#endif
