#ifndef QWICK_SPARSE_FOCK_HPP
#define QWICK_SPARSE_FOCK_HPP

#include <map>

#include "qwick/fock.hpp"

namespace qwick {

/// Graded vector with sparse levels, for norm traces at truncations where a
/// dense vector would not fit.  Entries live in ordered maps; reductions
/// stay deterministic.
struct SparseFock {
  int dim = 1;
  int trunc = 0;
  std::vector<std::map<int64_t, cplx>> levels;

  SparseFock() = default;
  SparseFock(int trunc_, int dim_) : dim(dim_), trunc(trunc_), levels(trunc_ + 1) {}

  static SparseFock vacuum(int trunc, int dim) {
    SparseFock v(trunc, dim);
    v.levels[0][0] = cplx(1.0, 0.0);
    return v;
  }

  void add(int level, int64_t idx, cplx v) {
    if (v == cplx(0.0, 0.0)) return;
    auto [it, fresh] = levels[level].try_emplace(idx, v);
    if (!fresh) {
      it->second += v;
      if (it->second == cplx(0.0, 0.0)) levels[level].erase(it);
    }
  }

  void axpy(const cplx& c, const SparseFock& o) {
    for (int m = 0; m <= trunc; ++m)
      for (const auto& [idx, v] : o.levels[m]) add(m, idx, c * v);
  }
  void scale(const cplx& c) {
    for (auto& lvl : levels)
      for (auto& [idx, v] : lvl) v *= c;
  }

  int64_t nnz() const {
    int64_t n = 0;
    for (const auto& lvl : levels) n += static_cast<int64_t>(lvl.size());
    return n;
  }
};

/// Plain coordinate dot product conj(x) . y.
inline cplx sparse_dot(const SparseFock& x, const SparseFock& y) {
  cplx acc(0, 0);
  for (int m = 0; m <= std::min(x.trunc, y.trunc); ++m) {
    const auto& a = x.levels[m];
    const auto& b = y.levels[m];
    if (a.empty() || b.empty()) continue;
    if (a.size() <= b.size()) {
      for (const auto& [idx, v] : a) {
        auto it = b.find(idx);
        if (it != b.end()) acc += std::conj(v) * it->second;
      }
    } else {
      for (const auto& [idx, v] : b) {
        auto it = a.find(idx);
        if (it != a.end()) acc += std::conj(it->second) * v;
      }
    }
  }
  return acc;
}

namespace detail {

/// One level of the shuffle scatter on a sparse map.
inline std::map<int64_t, cplx> sparse_split_shuffle(const std::map<int64_t, cplx>& in, int legs,
                                                    int dim, int off, int a, int b, double q) {
  if (a == 0 || b == 0) return in;
  std::map<int64_t, cplx> out;
  const auto terms = shuffle_terms(a, b);
  std::vector<int> digits(legs), permuted(legs);
  for (const auto& [idx, val] : in) {
    int64_t rest = idx;
    for (int i = legs; i-- > 0;) {
      digits[i] = static_cast<int>(rest % dim);
      rest /= dim;
    }
    permuted = digits;
    for (const auto& term : terms) {
      for (int l = 0; l < a + b; ++l) permuted[off + l] = digits[off + term.perm[l] - 1];
      int64_t row = 0;
      for (int v : permuted) row = row * dim + v;
      const cplx add = val * num::cplx(ipow(q, term.weight_power), 0.0);
      auto [it, fresh] = out.try_emplace(row, add);
      if (!fresh) it->second += add;
    }
  }
  return out;
}

/// q-symmetrizer on one sparse level: peel the last leg, recurse on the
/// leading block, dense base case at small leg counts.
inline std::map<int64_t, cplx> sparse_apply_symmetrizer(const std::map<int64_t, cplx>& in,
                                                        int legs, GramCache<FloatQ>& gram,
                                                        int dense_cap = 6) {
  const int d = gram.dim();
  if (legs <= std::min(dense_cap, gram.max_legs())) {
    const auto& p = gram.pqn(legs);
    const int64_t sz = p.src_size();
    std::map<int64_t, cplx> out;
    for (const auto& [idx, val] : in)
      for (int64_t r = 0; r < sz; ++r) {
        const cplx e = p.at(r, idx);
        if (e == cplx(0.0, 0.0)) continue;
        auto [it, fresh] = out.try_emplace(r, e * val);
        if (!fresh) it->second += e * val;
      }
    return out;
  }
  auto shuffled = sparse_split_shuffle(in, legs, d, 0, legs - 1, 1, gram.qpow().q);
  // split by the least significant leg, recurse, reassemble
  std::map<int64_t, cplx> out;
  for (int l = 0; l < d; ++l) {
    std::map<int64_t, cplx> slice;
    for (const auto& [idx, val] : shuffled)
      if (idx % d == l) slice.emplace(idx / d, val);
    if (slice.empty()) continue;
    auto ps = sparse_apply_symmetrizer(slice, legs - 1, gram, dense_cap);
    for (const auto& [idx, val] : ps) {
      auto [it, fresh] = out.try_emplace(idx * d + l, val);
      if (!fresh) it->second += val;
    }
  }
  return out;
}

}  // namespace detail

/// Levelwise q-symmetrizer application.
inline SparseFock sparse_apply_gram(const SparseFock& x, GramCache<FloatQ>& gram) {
  SparseFock out(x.trunc, x.dim);
  for (int m = 0; m <= x.trunc; ++m)
    if (!x.levels[m].empty())
      out.levels[m] = detail::sparse_apply_symmetrizer(x.levels[m], m, gram);
  return out;
}

/// Wick operator applied term by term: each nonzero of each shuffled
/// coefficient tensor contributes one creation string over one annihilation
/// string.  Costly when supports spread, exact on the chain-like vectors it
/// exists for.
inline SparseFock sparse_wick_apply(const detail::WickPlan<cplx>& plan, const SparseFock& x,
                                    GramCache<FloatQ>& gram) {
  const int n = plan.word_legs;
  const int d = x.dim;
  const double q = gram.qpow().q;
  SparseFock out(x.trunc, x.dim);
  std::vector<int> gamma(n), delta(n), digits;
  for (int j = 0; j <= n; ++j) {
    const int s = n - j;
    const Tensor<cplx>& g = plan.coeff[j];
    const int64_t szD = tensor_size(d, s);
    for (int64_t gi = 0; gi < g.size(); ++gi) {
      const cplx coeff = g.a[gi];
      if (coeff == cplx(0.0, 0.0)) continue;
      int64_t rest = gi;
      for (int i = s; i-- > 0;) {
        delta[i] = static_cast<int>(rest % d);
        rest /= d;
      }
      const int64_t gflat = gi / szD;
      for (int m = s; m <= x.trunc; ++m) {
        const int dst = m - s + j;
        if (dst > x.trunc || x.levels[m].empty()) continue;
        // annihilation string: rightmost vector acts first
        std::map<int64_t, cplx> cur = x.levels[m];
        int cur_legs = m;
        for (int step = s; step-- > 0;) {
          const int want = delta[step];
          std::map<int64_t, cplx> next;
          digits.assign(cur_legs, 0);
          for (const auto& [idx, val] : cur) {
            int64_t r2 = idx;
            for (int i = cur_legs; i-- > 0;) {
              digits[i] = static_cast<int>(r2 % d);
              r2 /= d;
            }
            for (int l = 0; l < cur_legs; ++l) {
              if (digits[l] != want) continue;
              int64_t dropped = 0;
              for (int i = 0; i < cur_legs; ++i)
                if (i != l) dropped = dropped * d + digits[i];
              const cplx add = val * cplx(ipow(q, l), 0.0);
              auto [it, fresh] = next.try_emplace(dropped, add);
              if (!fresh) it->second += add;
            }
          }
          cur = std::move(next);
          --cur_legs;
        }
        // creation string: prepend the whole block
        const int64_t tail = tensor_size(d, cur_legs);
        for (const auto& [idx, val] : cur) out.add(dst, gflat * tail + idx, coeff * val);
      }
    }
  }
  return out;
}

}  // namespace qwick

#endif
