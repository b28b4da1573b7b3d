#ifndef QWICK_FOCK_HPP
#define QWICK_FOCK_HPP

#include <cmath>

#include "qwick/numeric.hpp"
#include "qwick/qgram.hpp"

namespace qwick {

/// Graded element of the truncated deformed Fock space: levels 0..trunc,
/// level m holding an m-leg tensor; level 0 is the vacuum line.
template <class S>
struct FockVector {
  int dim = 1;
  int trunc = 0;
  std::vector<Tensor<S>> levels;

  FockVector() = default;
  FockVector(int trunc_, int dim_) : dim(dim_), trunc(trunc_) {
    levels.reserve(trunc_ + 1);
    for (int m = 0; m <= trunc_; ++m) levels.emplace_back(m, dim_);
  }

  static FockVector vacuum(int trunc, int dim) {
    FockVector v(trunc, dim);
    v.levels[0].a[0] = scalar_ops<S>::one();
    return v;
  }
  static FockVector embed(const Tensor<S>& t, int trunc) {
    if (t.legs > trunc) throw std::invalid_argument("FockVector: level exceeds truncation");
    FockVector v(trunc, t.dim);
    v.levels[t.legs] = t;
    return v;
  }

  FockVector operator+(const FockVector& o) const {
    require_same_shape(o);
    FockVector r = *this;
    for (int m = 0; m <= trunc; ++m) r.levels[m] = r.levels[m] + o.levels[m];
    return r;
  }
  FockVector operator-(const FockVector& o) const {
    require_same_shape(o);
    FockVector r = *this;
    for (int m = 0; m <= trunc; ++m) r.levels[m] = r.levels[m] - o.levels[m];
    return r;
  }
  FockVector scaled(const S& c) const {
    FockVector r = *this;
    for (auto& l : r.levels) l = l.scaled(c);
    return r;
  }

  double max_abs() const {
    double mx = 0.0;
    for (const auto& l : levels) mx = std::max(mx, l.max_abs());
    return mx;
  }
  bool is_zero() const {
    for (const auto& l : levels)
      if (!l.is_zero()) return false;
    return true;
  }
  void require_same_shape(const FockVector& o) const {
    if (dim != o.dim || trunc != o.trunc) throw std::invalid_argument("FockVector: shape mismatch");
  }
};

/// Deformed inner product of the graded space: the level sum of q-inner
/// products.
template <class QP>
typename QP::scalar fock_inner(const FockVector<typename QP::scalar>& x,
                               const FockVector<typename QP::scalar>& y, GramCache<QP>& gram) {
  using S = typename QP::scalar;
  x.require_same_shape(y);
  S acc = scalar_ops<S>::zero();
  for (int m = 0; m <= x.trunc; ++m) acc = acc + q_inner(x.levels[m], y.levels[m], gram);
  return acc;
}

/// Block operator on the truncated Fock space; blocks[dst * (trunc+1) + src].
template <class S>
struct FockOperator {
  int dim = 1;
  int trunc = 0;
  std::vector<LinMap<S>> blocks;

  FockOperator() = default;
  FockOperator(int trunc_, int dim_) : dim(dim_), trunc(trunc_) {
    blocks.reserve((trunc_ + 1) * (trunc_ + 1));
    for (int dst = 0; dst <= trunc_; ++dst)
      for (int src = 0; src <= trunc_; ++src) blocks.emplace_back(dst, src, dim_);
  }

  LinMap<S>& block(int dst, int src) { return blocks[dst * (trunc + 1) + src]; }
  const LinMap<S>& block(int dst, int src) const { return blocks[dst * (trunc + 1) + src]; }

  static FockOperator identity(int trunc, int dim) {
    FockOperator op(trunc, dim);
    for (int m = 0; m <= trunc; ++m) op.block(m, m) = LinMap<S>::identity(m, dim);
    return op;
  }

  FockVector<S> apply(const FockVector<S>& x) const {
    if (x.dim != dim || x.trunc != trunc) throw std::invalid_argument("FockOperator: shape mismatch");
    FockVector<S> y(trunc, dim);
    for (int src = 0; src <= trunc; ++src) {
      if (x.levels[src].is_zero()) continue;
      for (int dst = 0; dst <= trunc; ++dst) {
        const LinMap<S>& b = block(dst, src);
        if (b.is_zero()) continue;
        y.levels[dst] = y.levels[dst] + b.apply(x.levels[src]);
      }
    }
    return y;
  }

  FockOperator operator+(const FockOperator& o) const {
    require_same_shape(o);
    FockOperator r = *this;
    for (size_t i = 0; i < blocks.size(); ++i) r.blocks[i] = r.blocks[i] + o.blocks[i];
    return r;
  }
  FockOperator operator-(const FockOperator& o) const {
    require_same_shape(o);
    FockOperator r = *this;
    for (size_t i = 0; i < blocks.size(); ++i) r.blocks[i] = r.blocks[i] - o.blocks[i];
    return r;
  }
  FockOperator scaled(const S& c) const {
    FockOperator r = *this;
    for (auto& b : r.blocks) b = b.scaled(c);
    return r;
  }

  double max_abs() const {
    double mx = 0.0;
    for (const auto& b : blocks) mx = std::max(mx, b.max_abs());
    return mx;
  }
  bool is_zero() const {
    for (const auto& b : blocks)
      if (!b.is_zero()) return false;
    return true;
  }
  void require_same_shape(const FockOperator& o) const {
    if (dim != o.dim || trunc != o.trunc) throw std::invalid_argument("FockOperator: shape mismatch");
  }
};

template <class S>
FockOperator<S> compose(const FockOperator<S>& a, const FockOperator<S>& b) {
  a.require_same_shape(b);
  FockOperator<S> c(a.trunc, a.dim);
  for (int dst = 0; dst <= a.trunc; ++dst)
    for (int mid = 0; mid <= a.trunc; ++mid) {
      if (a.block(dst, mid).is_zero()) continue;
      for (int src = 0; src <= a.trunc; ++src) {
        if (b.block(mid, src).is_zero()) continue;
        c.block(dst, src) = c.block(dst, src) + compose(a.block(dst, mid), b.block(mid, src));
      }
    }
  return c;
}

/// Left tensoring by a one-leg vector; the top level is compressed away.
template <class S>
FockOperator<S> creation(const Tensor<S>& v, int trunc) {
  if (v.legs != 1) throw std::invalid_argument("creation: one-leg vector expected");
  const int d = v.dim;
  FockOperator<S> op(trunc, d);
  for (int m = 0; m + 1 <= trunc; ++m) {
    LinMap<S>& b = op.block(m + 1, m);
    const int64_t cols = tensor_size(d, m);
    for (int i = 0; i < d; ++i) {
      if (scalar_ops<S>::is_zero(v.a[i])) continue;
      for (int64_t c = 0; c < cols; ++c) b.at(i * cols + c, c) = v.a[i];
    }
  }
  return op;
}

/// The adjoint of creation: removes one leg at every position, geometrically
/// damped, pairing against the removed coordinate.
template <class QP>
FockOperator<typename QP::scalar> annihilation(const Tensor<typename QP::scalar>& v, int trunc,
                                               const QP& qp) {
  using S = typename QP::scalar;
  if (v.legs != 1) throw std::invalid_argument("annihilation: one-leg vector expected");
  const int d = v.dim;
  FockOperator<S> op(trunc, d);
  std::vector<S> vbar(d);
  for (int i = 0; i < d; ++i) vbar[i] = scalar_ops<S>::conj(v.a[i]);
  for (int m = 1; m <= trunc; ++m) {
    LinMap<S>& b = op.block(m - 1, m);
    const int64_t cols = tensor_size(d, m);
    std::vector<int> digits(m);
    for (int64_t c = 0; c < cols; ++c) {
      int64_t rest = c;
      for (int i = m; i-- > 0;) {
        digits[i] = static_cast<int>(rest % d);
        rest /= d;
      }
      for (int l = 0; l < m; ++l) {
        if (scalar_ops<S>::is_zero(vbar[digits[l]])) continue;
        // drop leg l (zero-indexed); weight q^l
        int64_t row = 0;
        for (int i = 0; i < m; ++i)
          if (i != l) row = row * d + digits[i];
        b.at(row, c) = b.at(row, c) + vbar[digits[l]] * qp(l);
      }
    }
  }
  return op;
}

/// creation + annihilation of a real one-leg vector.
template <class QP>
FockOperator<typename QP::scalar> field_operator(const Tensor<typename QP::scalar>& v, int trunc,
                                                 const QP& qp) {
  using S = typename QP::scalar;
  for (const auto& e : v.a)
    if (!scalar_ops<S>::is_zero(e - scalar_ops<S>::conj(e)))
      throw std::invalid_argument("field_operator: vector must be real");
  return creation(v, trunc) + annihilation(v, trunc, qp);
}

namespace detail {

/// Per-word data reused when applying a Wick operator: the shuffled
/// coefficient tensors, one per creation count.
template <class S>
struct WickPlan {
  int word_legs = 0;
  std::vector<Tensor<S>> coeff;  // coeff[j]: (j creation legs, n-j annihilation legs)
};

template <class QP>
WickPlan<typename QP::scalar> make_wick_plan(const Tensor<typename QP::scalar>& word,
                                             const QP& qp) {
  WickPlan<typename QP::scalar> plan;
  plan.word_legs = word.legs;
  plan.coeff.reserve(word.legs + 1);
  for (int j = 0; j <= word.legs; ++j)
    plan.coeff.push_back(apply_split_shuffle(word, 0, j, word.legs - j, qp));
  return plan;
}

/// M applied to the leading `s` legs of a tensor (M: s legs -> s legs).
template <class S>
Tensor<S> apply_to_leading_legs(const LinMap<S>& m, const Tensor<S>& t) {
  const int s = m.src_legs;
  if (s > t.legs) throw std::invalid_argument("apply_to_leading_legs: too few legs");
  Tensor<S> out(t.legs, t.dim);
  const int64_t tail = tensor_size(t.dim, t.legs - s);
  const int64_t head = tensor_size(t.dim, s);
  for (int64_t y = 0; y < head; ++y) {
    for (int64_t w = 0; w < tail; ++w) {
      const S& val = t.a[y * tail + w];
      if (scalar_ops<S>::is_zero(val)) continue;
      for (int64_t r = 0; r < head; ++r) {
        const S& e = m.at(r, y);
        if (scalar_ops<S>::is_zero(e)) continue;
        out.a[r * tail + w] = out.a[r * tail + w] + e * val;
      }
    }
  }
  return out;
}

}  // namespace detail

/// Applies the Wick operator of `word` to a graded vector: every subset of
/// the word's legs acts by creations, the complement by conjugated
/// annihilations, weighted by the subset's inversion statistic.  Assembled
/// from the shuffled coefficient tensors so whole annihilation strings
/// collapse into one contraction per level.
template <class QP>
FockVector<typename QP::scalar> wick_apply(const detail::WickPlan<typename QP::scalar>& plan,
                                           const FockVector<typename QP::scalar>& x,
                                           GramCache<QP>& gram) {
  using S = typename QP::scalar;
  const int n = plan.word_legs;
  const int trunc = x.trunc;
  const int d = x.dim;
  FockVector<S> out(trunc, d);
  for (int m = 0; m <= trunc; ++m) {
    if (x.levels[m].is_zero()) continue;
    for (int s = 0; s <= std::min(n, m); ++s) {
      const int j = n - s;  // creations
      const int dst = m - s + j;
      if (dst > trunc) continue;
      // annihilation string: shuffle the level, contract the leading legs
      Tensor<S> u = apply_split_shuffle(x.levels[m], 0, s, m - s, gram.qpow());
      const LinMap<S> rev_gram = compose(leg_reversal<S>(s, d), gram.pqn(s));
      Tensor<S> v = detail::apply_to_leading_legs(rev_gram, u);
      // pair the coefficient tensor's annihilation legs against v's lead legs
      const Tensor<S>& g = plan.coeff[j];
      const int64_t szG = tensor_size(d, j);
      const int64_t szD = tensor_size(d, s);
      const int64_t szW = tensor_size(d, m - s);
      Tensor<S>& target = out.levels[dst];
      for (int64_t gi = 0; gi < szG; ++gi)
        for (int64_t di = 0; di < szD; ++di) {
          const S& coeff = g.a[gi * szD + di];
          if (scalar_ops<S>::is_zero(coeff)) continue;
          for (int64_t w = 0; w < szW; ++w) {
            const S& val = v.a[di * szW + w];
            if (scalar_ops<S>::is_zero(val)) continue;
            target.a[gi * szW + w] = target.a[gi * szW + w] + coeff * val;
          }
        }
    }
  }
  return out;
}

template <class QP>
FockVector<typename QP::scalar> wick_apply(const Tensor<typename QP::scalar>& word,
                                           const FockVector<typename QP::scalar>& x,
                                           GramCache<QP>& gram) {
  return wick_apply(detail::make_wick_plan(word, gram.qpow()), x, gram);
}

/// Materialized Wick operator; the unique operator sending the vacuum to the
/// word, compressed to the truncated space.
template <class QP>
FockOperator<typename QP::scalar> wick_operator(const Tensor<typename QP::scalar>& word, int trunc,
                                                GramCache<QP>& gram) {
  using S = typename QP::scalar;
  if (word.legs > trunc) throw std::invalid_argument("wick_operator: word exceeds truncation");
  const int d = word.dim;
  const auto plan = detail::make_wick_plan(word, gram.qpow());
  FockOperator<S> op(trunc, d);
  for (int src = 0; src <= trunc; ++src) {
    const int64_t cols = tensor_size(d, src);
    for (int64_t c = 0; c < cols; ++c) {
      FockVector<S> basis(trunc, d);
      basis.levels[src].a[c] = scalar_ops<S>::one();
      FockVector<S> img = wick_apply(plan, basis, gram);
      for (int dst = 0; dst <= trunc; ++dst) {
        const Tensor<S>& col = img.levels[dst];
        if (col.is_zero()) continue;
        LinMap<S>& b = op.block(dst, src);
        for (int64_t r = 0; r < col.size(); ++r)
          if (!scalar_ops<S>::is_zero(col.a[r])) b.at(r, c) = col.a[r];
      }
    }
  }
  return op;
}

/// The product of two Wick words applied to the vacuum, computed from the
/// shuffle decomposition: middle pairings of shuffled halves, one summand
/// per contraction depth.  Shares no code with the subset expansion behind
/// wick_apply.
template <class QP>
FockVector<typename QP::scalar> wick_product(const Tensor<typename QP::scalar>& xi,
                                             const Tensor<typename QP::scalar>& eta, int trunc,
                                             GramCache<QP>& gram) {
  using S = typename QP::scalar;
  if (xi.dim != eta.dim) throw std::invalid_argument("wick_product: dim mismatch");
  const int n = xi.legs, k = eta.legs;
  if (n + k > trunc) throw std::invalid_argument("wick_product: exceeds truncation");
  FockVector<S> out(trunc, xi.dim);
  for (int j = 0; j <= std::min(n, k); ++j) {
    Tensor<S> left = apply_split_shuffle(xi, 0, n - j, j, gram.qpow());
    Tensor<S> right = apply_split_shuffle(eta, 0, j, k - j, gram.qpow());
    Tensor<S> term = pair_modular(j, left, right, gram);
    out.levels[n + k - 2 * j] = out.levels[n + k - 2 * j] + term;
  }
  return out;
}

/// Functorial lift of a one-particle map: level m acts by the m-fold tensor
/// power; the vacuum is fixed.  The one-particle map must be real; the
/// float backend additionally rejects expansive maps (exact backends carry
/// no norm, so the contraction requirement is a float-mode check).
template <class S>
FockOperator<S> second_quantization(const LinMap<S>& t, int trunc) {
  if (t.src_legs != 1 || t.dst_legs != 1)
    throw std::invalid_argument("second_quantization: one-particle map expected");
  for (const auto& e : t.m)
    if (!scalar_ops<S>::is_zero(e - scalar_ops<S>::conj(e)))
      throw std::invalid_argument("second_quantization: map must be real");
  if constexpr (std::is_same_v<S, cplx>) {
    if (num::sigma_max(t.m, t.dim, t.dim) > 1.0 + 1e-12)
      throw std::invalid_argument("second_quantization: map must be a contraction");
  }
  FockOperator<S> op(trunc, t.dim);
  LinMap<S> power = LinMap<S>::identity(0, t.dim);
  op.block(0, 0) = power;
  for (int m = 1; m <= trunc; ++m) {
    power = kron(power, t);
    op.block(m, m) = power;
  }
  return op;
}

/// Projection onto one level.
template <class S>
FockOperator<S> level_projection(int n, int trunc, int dim) {
  if (n < 0 || n > trunc) throw std::invalid_argument("level_projection: level out of range");
  FockOperator<S> op(trunc, dim);
  op.block(n, n) = LinMap<S>::identity(n, dim);
  return op;
}

/// Projection onto all levels up to n.
template <class S>
FockOperator<S> cutoff_projection(int n, int trunc, int dim) {
  if (n < 0 || n > trunc) throw std::invalid_argument("cutoff_projection: level out of range");
  FockOperator<S> op(trunc, dim);
  for (int m = 0; m <= n; ++m) op.block(m, m) = LinMap<S>::identity(m, dim);
  return op;
}

/// Diagonal operator scaling level m by weights[m].
inline FockOperator<cplx> level_scaling(const std::vector<double>& weights, int trunc, int dim) {
  FockOperator<cplx> op(trunc, dim);
  for (int m = 0; m <= trunc && m < static_cast<int>(weights.size()); ++m) {
    if (weights[m] == 0.0) continue;
    op.block(m, m) = LinMap<cplx>::identity(m, dim).scaled(cplx(weights[m], 0.0));
  }
  return op;
}

/// Heat semigroup at time t on the graded space: level m scaled by e^{-mt}.
inline FockOperator<cplx> heat_operator(double t, int trunc, int dim) {
  if (t < 0) throw std::invalid_argument("heat_operator: negative time");
  std::vector<double> w(trunc + 1);
  for (int m = 0; m <= trunc; ++m) w[m] = std::exp(-t * m);
  return level_scaling(w, trunc, dim);
}

/// Heat damping composed with the level cutoff.  Time zero is admitted only
/// in the degenerate full-cutoff configuration, where the result is the
/// identity.
inline FockOperator<cplx> heat_cutoff_operator(int n, double t, int trunc, int dim) {
  if (t < 0 || (t == 0 && n != trunc))
    throw std::invalid_argument("heat_cutoff_operator: time must be positive");
  std::vector<double> w(trunc + 1, 0.0);
  for (int m = 0; m <= std::min(n, trunc); ++m) w[m] = std::exp(-t * m);
  return level_scaling(w, trunc, dim);
}

}  // namespace qwick

#endif
