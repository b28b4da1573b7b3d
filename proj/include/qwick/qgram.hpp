#ifndef QWICK_QGRAM_HPP
#define QWICK_QGRAM_HPP

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "qwick/tensor.hpp"

namespace qwick {

/// Result of an identity check: a float residual and, for exact backends,
/// whether the difference vanished structurally.
struct CheckResult {
  double residual = 0.0;
  bool exact_zero = true;
};

namespace detail {

/// Subset data reused by shuffle builders: the leg permutation that lists A
/// first (one-indexed, within the leg range) and its inversion statistic.
struct ShuffleTerm {
  std::vector<int> perm;  // perm[l] = source leg for target slot l (one-indexed)
  long long weight_power;
};

inline std::vector<ShuffleTerm> shuffle_terms(int a, int b) {
  const int n = a + b;
  if (a < 0 || b < 0 || comb::binomial(n, a) > (1 << 22))
    throw std::invalid_argument("shuffle_terms: too many shuffles at this split");
  // lexicographic walk over the a-element subsets of the leg range; the
  // range may exceed the exhaustive-enumeration ceiling since only the
  // subset count matters here
  std::vector<ShuffleTerm> terms;
  comb::Subset cur;
  cur.n = n;
  cur.elements.resize(a);
  for (int i = 0; i < a; ++i) cur.elements[i] = i + 1;
  while (true) {
    ShuffleTerm t;
    t.perm = comb::subset_to_permutation(cur).image;
    t.weight_power = comb::inversion_stat(cur);
    terms.push_back(std::move(t));
    int i = a - 1;
    while (i >= 0 && cur.elements[i] == n - (a - 1 - i)) --i;
    if (i < 0) break;
    ++cur.elements[i];
    for (int l = i + 1; l < a; ++l) cur.elements[l] = cur.elements[l - 1] + 1;
  }
  return terms;
}

}  // namespace detail

/// The q-symmetrizer on H^{otimes n}: the weighted sum over all leg
/// permutations with weight q^(number of inversions).  Self-adjoint, and
/// positive definite for |q| < 1.
template <class QP>
LinMap<typename QP::scalar> q_symmetrizer(int n, int d, const QP& qp) {
  using S = typename QP::scalar;
  if (n < 0 || n > comb::kEnumerationCeiling)
    throw std::invalid_argument("q_symmetrizer: level out of range");
  const int64_t sz = tensor_size(d, n);
  const int maxdeg = static_cast<int>(n) * (n - 1) / 2;

  // every permutation once, with its inversion count
  struct PermEntry {
    std::vector<int> image;
    long long inversions;
  };
  std::vector<PermEntry> perms;
  comb::Permutation pi = comb::Permutation::identity(n);
  do {
    perms.push_back({pi.image, comb::inversions(pi)});
  } while (std::next_permutation(pi.image.begin(), pi.image.end()));

  // integer counts per q-degree, accumulated one column at a time
  LinMap<S> map(n, n, d);
  std::vector<int64_t> counts(static_cast<size_t>(sz) * (maxdeg + 1), 0);
  std::vector<char> seen(sz, 0);
  std::vector<int64_t> touched;
  std::vector<int> alpha(n), beta(n);
  for (int64_t col = 0; col < sz; ++col) {
    int64_t rest = col;
    for (int i = n; i-- > 0;) {
      alpha[i] = static_cast<int>(rest % d);
      rest /= d;
    }
    touched.clear();
    for (const auto& perm : perms) {
      for (int l = 0; l < n; ++l) beta[l] = alpha[perm.image[l] - 1];
      const int64_t row = Tensor<S>::encode(beta, d);
      if (!seen[row]) {
        seen[row] = 1;
        touched.push_back(row);
      }
      ++counts[row * (maxdeg + 1) + perm.inversions];
    }
    for (int64_t row : touched) {
      S v = scalar_ops<S>::zero();
      int64_t* slot = &counts[row * (maxdeg + 1)];
      for (int k = 0; k <= maxdeg; ++k) {
        if (slot[k]) v = v + qp(k) * scalar_ops<S>::from_int(slot[k]);
        slot[k] = 0;
      }
      map.at(row, col) = std::move(v);
      seen[row] = 0;
    }
  }
  return map;
}

/// The shuffle operator splitting H^{otimes(a+b)} against the (a, b)
/// grading: the sum over all a-element subsets A of the leg range, each
/// listing A's legs first, weighted by q^(inversion statistic of A).
/// Satisfies  q_symmetrizer(a+b) = kron(q_symmetrizer(a), q_symmetrizer(b))
/// composed with this map.
template <class QP>
LinMap<typename QP::scalar> split_shuffle(int a, int b, int d, const QP& qp) {
  using S = typename QP::scalar;
  if (a < 0 || b < 0 || a + b > comb::kEnumerationCeiling)
    throw std::invalid_argument("split_shuffle: legs out of range");
  const int n = a + b;
  const int64_t sz = tensor_size(d, n);
  LinMap<S> map(n, n, d);
  std::vector<int> alpha(n), beta(n);
  for (const auto& term : detail::shuffle_terms(a, b)) {
    const S w = qp(term.weight_power);
    for (int64_t col = 0; col < sz; ++col) {
      int64_t rest = col;
      for (int i = n; i-- > 0;) {
        alpha[i] = static_cast<int>(rest % d);
        rest /= d;
      }
      for (int l = 0; l < n; ++l) beta[l] = alpha[term.perm[l] - 1];
      const int64_t row = Tensor<S>::encode(beta, d);
      map.at(row, col) = map.at(row, col) + w;
    }
  }
  return map;
}

/// Three-factor splitting, computed through the two-factor operators:
/// first split against (a, b+c), then split the tail against (b, c).
template <class QP>
LinMap<typename QP::scalar> split_shuffle3(int a, int b, int c, int d, const QP& qp) {
  using S = typename QP::scalar;
  LinMap<S> tail = kron(LinMap<S>::identity(a, d), split_shuffle(b, c, d, qp));
  return compose(tail, split_shuffle(a, b + c, d, qp));
}

/// Leg reversal; a self-adjoint unitary permutation matrix.
template <class S>
LinMap<S> leg_reversal(int n, int d) {
  return permutation_map<S>(comb::Permutation::reversal(n), d);
}

/// Entrywise complex conjugation in the standard real basis.
template <class S>
Tensor<S> conjugate_i(const Tensor<S>& t) {
  Tensor<S> r = t;
  for (auto& v : r.a) v = scalar_ops<S>::conj(v);
  return r;
}

/// The modular conjugation: entrywise conjugation composed with leg reversal.
template <class S>
Tensor<S> conjugate_j(const Tensor<S>& t) {
  return conjugate_i(apply_leg_permutation(t, comb::Permutation::reversal(t.legs)));
}

/// Caches the q-symmetrizers per leg count for one (dim, q) context.
/// Append-only; duplicate builds are idempotent.
template <class QP>
class GramCache {
public:
  using S = typename QP::scalar;

  GramCache(int dim, QP qp, int max_legs = 8) : dim_(dim), qp_(std::move(qp)), max_legs_(max_legs) {}

  int dim() const { return dim_; }
  int max_legs() const { return max_legs_; }
  const QP& qpow() const { return qp_; }

  const LinMap<S>& pqn(int legs) {
    if (legs < 0 || legs > max_legs_)
      throw std::invalid_argument("GramCache: level exceeds the configured ceiling");
    auto it = cache_.find(legs);
    if (it == cache_.end()) it = cache_.emplace(legs, q_symmetrizer(legs, dim_, qp_)).first;
    return it->second;
  }

private:
  int dim_;
  QP qp_;
  int max_legs_;
  std::map<int, LinMap<S>> cache_;
};

/// (Id_off tensor split_shuffle(a,b) tensor Id_rest) applied by scattering
/// the nonzero entries; cheap when the input is sparse.
template <class QP>
Tensor<typename QP::scalar> apply_split_shuffle(const Tensor<typename QP::scalar>& t, int off,
                                                int a, int b, const QP& qp) {
  using S = typename QP::scalar;
  if (off < 0 || off + a + b > t.legs) throw std::invalid_argument("apply_split_shuffle: leg range");
  if (a == 0 || b == 0) return t;
  Tensor<S> out(t.legs, t.dim);
  const auto terms = detail::shuffle_terms(a, b);
  std::vector<S> weights;
  weights.reserve(terms.size());
  for (const auto& term : terms) weights.push_back(qp(term.weight_power));
  const int n = t.legs;
  std::vector<int> digits(n), permuted(n);
  for (int64_t idx = 0; idx < t.size(); ++idx) {
    if (scalar_ops<S>::is_zero(t.a[idx])) continue;
    int64_t rest = idx;
    for (int i = n; i-- > 0;) {
      digits[i] = static_cast<int>(rest % t.dim);
      rest /= t.dim;
    }
    permuted = digits;
    for (size_t ti = 0; ti < terms.size(); ++ti) {
      for (int l = 0; l < a + b; ++l) permuted[off + l] = digits[off + terms[ti].perm[l] - 1];
      const int64_t row = Tensor<S>::encode(permuted, t.dim);
      out.a[row] = out.a[row] + t.a[idx] * weights[ti];
    }
  }
  return out;
}

/// (Id_off tensor reversal_j tensor Id_rest) applied to a tensor.
template <class S>
Tensor<S> apply_leg_reversal_range(const Tensor<S>& t, int off, int j) {
  if (off < 0 || off + j > t.legs) throw std::invalid_argument("apply_leg_reversal_range: leg range");
  if (j <= 1) return t;
  Tensor<S> out(t.legs, t.dim);
  const int n = t.legs;
  std::vector<int> digits(n);
  for (int64_t idx = 0; idx < t.size(); ++idx) {
    if (scalar_ops<S>::is_zero(t.a[idx])) continue;
    int64_t rest = idx;
    for (int i = n; i-- > 0;) {
      digits[i] = static_cast<int>(rest % t.dim);
      rest /= t.dim;
    }
    std::reverse(digits.begin() + off, digits.begin() + off + j);
    out.a[Tensor<S>::encode(digits, t.dim)] = t.a[idx];
  }
  return out;
}

/// Applies the q-symmetrizer to a tensor without materializing the dense
/// matrix at high leg counts: peel the last leg with a shuffle, recurse on
/// the leading block.
template <class QP>
Tensor<typename QP::scalar> apply_q_symmetrizer(const Tensor<typename QP::scalar>& t,
                                                GramCache<QP>& gram, int dense_cap = 6) {
  using S = typename QP::scalar;
  const int m = t.legs;
  if (m <= std::min(dense_cap, gram.max_legs())) return gram.pqn(m).apply(t);
  Tensor<S> s = apply_split_shuffle(t, 0, m - 1, 1, gram.qpow());
  const int d = t.dim;
  const int64_t block = s.size() / d;
  Tensor<S> out(m, d);
  Tensor<S> slice(m - 1, d);
  for (int l = 0; l < d; ++l) {
    for (int64_t i = 0; i < block; ++i) slice.a[i] = s.a[i * d + l];
    Tensor<S> ps = apply_q_symmetrizer(slice, gram, dense_cap);
    for (int64_t i = 0; i < block; ++i) out.a[i * d + l] = std::move(ps.a[i]);
  }
  return out;
}

/// The deformed inner product <x, P y>, linear in the second argument.
template <class QP>
typename QP::scalar q_inner(const Tensor<typename QP::scalar>& x,
                            const Tensor<typename QP::scalar>& y, GramCache<QP>& gram) {
  using S = typename QP::scalar;
  x.require_same_shape(y);
  Tensor<S> py = apply_q_symmetrizer(y, gram);
  S acc = scalar_ops<S>::zero();
  for (int64_t i = 0; i < x.size(); ++i) {
    if (scalar_ops<S>::is_zero(x.a[i]) || scalar_ops<S>::is_zero(py.a[i])) continue;
    acc = acc + scalar_ops<S>::conj(x.a[i]) * py.a[i];
  }
  return acc;
}

/// Middle contraction through the modular pairing: on a joined tensor with
/// an (a, b) split, fuses the last j legs of the a-block against the first
/// j legs of the b-block via <J ., .>_q.  Bilinear, no conjugation of
/// coordinates: out[u, w] = sum_{x,y} P^j[reverse(x), y] z[u, x, y, w].
template <class QP>
Tensor<typename QP::scalar> contract_modular(int j, const Tensor<typename QP::scalar>& z, int a,
                                             int b, GramCache<QP>& gram, bool reverse_left = true) {
  using S = typename QP::scalar;
  if (j < 0 || j > a || j > b || a + b != z.legs)
    throw std::invalid_argument("contract_modular: bad split");
  const int d = z.dim;
  const LinMap<S>& pj = gram.pqn(j);
  Tensor<S> out(a + b - 2 * j, d);
  const int64_t szW = tensor_size(d, b - j);
  const int64_t szY = tensor_size(d, j);
  const int64_t szX = szY;
  std::vector<int> xd(j), xr(j);
  for (int64_t idx = 0; idx < z.size(); ++idx) {
    if (scalar_ops<S>::is_zero(z.a[idx])) continue;
    int64_t rest = idx;
    const int64_t w = rest % szW;
    rest /= szW;
    const int64_t y = rest % szY;
    rest /= szY;
    const int64_t x = rest % szX;
    const int64_t u = rest / szX;
    int64_t xleft = x;
    if (reverse_left && j > 1) {
      for (int i = j; i-- > 0;) {
        xd[i] = static_cast<int>(xleft % d);
        xleft /= d;
      }
      for (int i = 0; i < j; ++i) xr[i] = xd[j - 1 - i];
      xleft = Tensor<S>::encode(xr, d);
    } else {
      xleft = x;
    }
    const S& pe = pj.at(xleft, y);
    if (scalar_ops<S>::is_zero(pe)) continue;
    out.a[u * szW + w] = out.a[u * szW + w] + pe * z.a[idx];
  }
  return out;
}

/// As contract_modular but through the plain conjugation pairing <I ., .>_q
/// (no leg reversal on the contracted block).
template <class QP>
Tensor<typename QP::scalar> contract_plain(int j, const Tensor<typename QP::scalar>& z, int a,
                                           int b, GramCache<QP>& gram) {
  return contract_modular(j, z, a, b, gram, /*reverse_left=*/false);
}

/// Pairing of two tensors: contract the last j legs of x against the first
/// j legs of y through the modular pairing.
template <class QP>
Tensor<typename QP::scalar> pair_modular(int j, const Tensor<typename QP::scalar>& x,
                                         const Tensor<typename QP::scalar>& y,
                                         GramCache<QP>& gram) {
  if (j > x.legs || j > y.legs) throw std::invalid_argument("pair_modular: j too large");
  return contract_modular(j, tensor_product(x, y), x.legs, y.legs, gram);
}

template <class QP>
Tensor<typename QP::scalar> pair_plain(int j, const Tensor<typename QP::scalar>& x,
                                       const Tensor<typename QP::scalar>& y, GramCache<QP>& gram) {
  if (j > x.legs || j > y.legs) throw std::invalid_argument("pair_plain: j too large");
  return contract_plain(j, tensor_product(x, y), x.legs, y.legs, gram);
}

/// Verifies that one long modular pairing equals the two-stage pairing with
/// a shuffle absorbed into the left factor, over the full product basis.
template <class QP>
CheckResult pairing_composition_check(int s, int j, GramCache<QP>& gram) {
  using S = typename QP::scalar;
  const int d = gram.dim();
  const int n = s + j;
  const auto shuffle = split_shuffle(s, j, d, gram.qpow());
  CheckResult res;
  const int64_t sz = tensor_size(d, n);
  for (int64_t ai = 0; ai < sz; ++ai) {
    const Tensor<S> x = Tensor<S>::basis(n, d, ai);
    const Tensor<S> xs = shuffle.apply(x);
    for (int64_t bi = 0; bi < sz; ++bi) {
      const Tensor<S> y = Tensor<S>::basis(n, d, bi);
      const Tensor<S> lhs = pair_modular(n, x, y, gram);
      Tensor<S> z = tensor_product(xs, y);
      z = contract_modular(j, z, n, n, gram);
      const Tensor<S> rhs = contract_modular(s, z, s, s, gram);
      const Tensor<S> diff = lhs - rhs;
      res.residual = std::max(res.residual, diff.max_abs());
      res.exact_zero = res.exact_zero && diff.is_zero();
    }
  }
  return res;
}

}  // namespace qwick

#endif
