#ifndef QWICK_NORMLAB_HPP
#define QWICK_NORMLAB_HPP

#include <cstdint>
#include <random>

#include "qwick/numeric.hpp"
#include "qwick/sparse_fock.hpp"

namespace qwick::norms {

/// Gram data for one (dim, q) float context: the dense symmetrizers plus
/// their Cholesky factors per leg count.  A failed factorization surfaces
/// num::gram_error, the structured signal that q is too close to 1.
class FloatGram {
public:
  FloatGram(int dim, double q, int max_legs = 8)
      : cache_(dim, FloatQ{q}, max_legs) {}

  int dim() const { return cache_.dim(); }
  double q() const { return cache_.qpow().q; }
  int max_legs() const { return cache_.max_legs(); }
  GramCache<FloatQ>& gram() { return cache_; }
  const LinMap<cplx>& pqn(int legs) { return cache_.pqn(legs); }

  const std::vector<double>& chol(int legs) {
    auto it = chol_.find(legs);
    if (it != chol_.end()) return it->second;
    const LinMap<cplx>& p = cache_.pqn(legs);
    const int n = static_cast<int>(p.src_size());
    std::vector<double> real(static_cast<size_t>(n) * n);
    for (size_t i = 0; i < real.size(); ++i) real[i] = p.m[i].real();
    return chol_.emplace(legs, num::chol_lower(real, n)).first->second;
  }

  /// Factor of the product Gram on an (a, b) graded pair: kron of factors.
  std::vector<double> chol_product(int a, int b) {
    const auto& la = chol(a);
    const auto& lb = chol(b);
    const int na = static_cast<int>(tensor_size(dim(), a));
    const int nb = static_cast<int>(tensor_size(dim(), b));
    std::vector<double> out(static_cast<size_t>(na) * nb * na * nb, 0.0);
    for (int i = 0; i < na; ++i)
      for (int j = 0; j < na; ++j) {
        const double v = la[static_cast<size_t>(i) * na + j];
        if (v == 0.0) continue;
        for (int r = 0; r < nb; ++r)
          for (int c = 0; c < nb; ++c) {
            const double w = lb[static_cast<size_t>(r) * nb + c];
            if (w == 0.0) continue;
            out[(static_cast<size_t>(i) * nb + r) * (static_cast<size_t>(na) * nb) +
                (static_cast<size_t>(j) * nb + c)] = v * w;
          }
      }
    return out;
  }

  /// Flat (undeformed) factor: the identity.
  std::vector<double> chol_flat(int legs) {
    const int n = static_cast<int>(tensor_size(dim(), legs));
    std::vector<double> out(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) out[static_cast<size_t>(i) * n + i] = 1.0;
    return out;
  }

private:
  GramCache<FloatQ> cache_;
  std::map<int, std::vector<double>> chol_;
};

/// Operator norm of a map between two graded spaces given their Gram
/// factors.
inline double qop_norm(const LinMap<cplx>& m, const std::vector<double>& lower_dst,
                       const std::vector<double>& lower_src) {
  return num::conjugated_sigma_max(m.m, static_cast<int>(m.dst_size()),
                                   static_cast<int>(m.src_size()), lower_dst, lower_src);
}

/// Operator norm between the deformed leg gradings (or flat ones).
inline double qop_norm(const LinMap<cplx>& m, FloatGram& fg, bool src_deformed = true,
                       bool dst_deformed = true) {
  const auto lsrc = src_deformed ? fg.chol(m.src_legs) : fg.chol_flat(m.src_legs);
  const auto ldst = dst_deformed ? fg.chol(m.dst_legs) : fg.chol_flat(m.dst_legs);
  return qop_norm(m, ldst, lsrc);
}

struct SplitShuffleNorm {
  double split_norm;  // the splitting direction, into the (n, k) graded pair
  double embed_norm;  // the identity embedding back into the joint grading
};

/// Norms of the shuffle operator between the joint deformed grading and the
/// (n, k) product grading, and of the reverse embedding.
inline SplitShuffleNorm split_shuffle_norm(int n, int k, FloatGram& fg) {
  SplitShuffleNorm r{};
  const auto m = split_shuffle(n, k, fg.dim(), FloatQ{fg.q()});
  const auto lsrc = fg.chol(n + k);
  const auto ldst = fg.chol_product(n, k);
  r.split_norm = qop_norm(m, ldst, lsrc);
  r.embed_norm = qop_norm(LinMap<cplx>::identity(n + k, fg.dim()), lsrc, ldst);
  return r;
}

/// Tensor with matrix coefficients: an element of M_amp tensor H^{otimes legs}.
/// Amplification is capped at 4.
struct AmpTensor {
  int amp = 1;
  std::vector<Tensor<cplx>> entries;  // amp*amp, row-major

  AmpTensor() = default;
  explicit AmpTensor(Tensor<cplx> plain) : amp(1), entries{std::move(plain)} {}
  AmpTensor(int amp_, int legs, int dim) : amp(amp_) {
    if (amp_ < 1 || amp_ > 4) throw std::invalid_argument("AmpTensor: amplification must be 1..4");
    entries.reserve(static_cast<size_t>(amp_) * amp_);
    for (int i = 0; i < amp_ * amp_; ++i) entries.emplace_back(legs, dim);
  }

  int legs() const { return entries.at(0).legs; }
  int dim() const { return entries.at(0).dim; }
  const Tensor<cplx>& at(int a, int b) const { return entries[static_cast<size_t>(a) * amp + b]; }
  Tensor<cplx>& at(int a, int b) { return entries[static_cast<size_t>(a) * amp + b]; }
};

namespace detail_norm {

inline void mat_mul_real_left(const std::vector<double>& lt, int n, std::vector<cplx>& block,
                              int cols, bool transpose_left) {
  // block <- L^T * block  (or L * block)
  std::vector<cplx> out(static_cast<size_t>(n) * cols, cplx(0, 0));
  for (int r = 0; r < n; ++r)
    for (int k = 0; k < n; ++k) {
      const double v = transpose_left ? lt[static_cast<size_t>(k) * n + r]
                                      : lt[static_cast<size_t>(r) * n + k];
      if (v == 0.0) continue;
      for (int c = 0; c < cols; ++c)
        out[static_cast<size_t>(r) * cols + c] += v * block[static_cast<size_t>(k) * cols + c];
    }
  block = std::move(out);
}

inline void mat_mul_real_right(std::vector<cplx>& block, int rows, const std::vector<double>& l,
                               int n) {
  // block <- block * L
  std::vector<cplx> out(static_cast<size_t>(rows) * n, cplx(0, 0));
  for (int r = 0; r < rows; ++r)
    for (int k = 0; k < n; ++k) {
      const cplx v = block[static_cast<size_t>(r) * n + k];
      if (v == cplx(0.0, 0.0)) continue;
      for (int c = 0; c < n; ++c)
        out[static_cast<size_t>(r) * n + c] += v * l[static_cast<size_t>(k) * n + c];
    }
  block = std::move(out);
}

}  // namespace detail_norm

/// Norm of an amplified tensor in the column-row realization of the
/// (legs - split, split) grading: the assembled matrix of Gram-conjugated
/// reshapes.  At q = 0 this is the plain reshape norm.
inline double column_row_norm(const AmpTensor& zeta, int split, FloatGram& fg) {
  const int legs = zeta.legs();
  if (split < 0 || split > legs) throw std::invalid_argument("column_row_norm: bad split");
  const int a = legs - split;
  const int m = zeta.amp;
  const int ra = static_cast<int>(tensor_size(zeta.dim(), a));
  const int rb = static_cast<int>(tensor_size(zeta.dim(), split));
  const auto& la = fg.chol(a);
  const auto& lb = fg.chol(split);
  std::vector<cplx> big(static_cast<size_t>(m) * ra * m * rb, cplx(0, 0));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      std::vector<cplx> block(zeta.at(i, j).a);
      detail_norm::mat_mul_real_left(la, ra, block, rb, /*transpose_left=*/true);
      detail_norm::mat_mul_real_right(block, ra, lb, rb);
      for (int r = 0; r < ra; ++r)
        for (int c = 0; c < rb; ++c)
          big[(static_cast<size_t>(i) * ra + r) * (static_cast<size_t>(m) * rb) +
              (static_cast<size_t>(j) * rb + c)] = block[static_cast<size_t>(r) * rb + c];
    }
  return num::sigma_max(big, m * ra, m * rb);
}

// ---------------------------------------------------------------------------
// Lanczos norm estimation for (sums of) Wick operators on the truncated space
// ---------------------------------------------------------------------------

namespace detail_norm {

struct DenseState {
  std::vector<FockVector<cplx>> comp;  // amp components
  void axpy(const cplx& c, const DenseState& o) {
    for (size_t i = 0; i < comp.size(); ++i) {
      for (int mlev = 0; mlev <= comp[i].trunc; ++mlev)
        comp[i].levels[mlev].add_scaled(o.comp[i].levels[mlev], c);
    }
  }
  void scale(const cplx& c) {
    for (auto& f : comp)
      for (auto& lvl : f.levels)
        for (auto& e : lvl.a) e *= c;
  }
};

inline cplx dense_dot(const DenseState& x, const DenseState& y) {
  cplx acc(0, 0);
  for (size_t i = 0; i < x.comp.size(); ++i)
    for (int m = 0; m <= x.comp[i].trunc; ++m) {
      const auto& a = x.comp[i].levels[m].a;
      const auto& b = y.comp[i].levels[m].a;
      for (size_t k = 0; k < a.size(); ++k) acc += std::conj(a[k]) * b[k];
    }
  return acc;
}

struct SparseState {
  std::vector<SparseFock> comp;
  void axpy(const cplx& c, const SparseState& o) {
    for (size_t i = 0; i < comp.size(); ++i) comp[i].axpy(c, o.comp[i]);
  }
  void scale(const cplx& c) {
    for (auto& f : comp) f.scale(c);
  }
};

inline cplx sparse_state_dot(const SparseState& x, const SparseState& y) {
  cplx acc(0, 0);
  for (size_t i = 0; i < x.comp.size(); ++i) acc += sparse_dot(x.comp[i], y.comp[i]);
  return acc;
}

/// Block operator made of Wick words: component a receives, from component
/// b, the sum of the listed words.  The adjoint blocks hold the modular
/// conjugates of the transposed entries, which realizes the q-metric
/// adjoint exactly.
struct WickBlockPlans {
  int amp = 1;
  std::vector<std::vector<detail::WickPlan<cplx>>> forward;  // amp*amp lists
  std::vector<std::vector<detail::WickPlan<cplx>>> adjoint;
};

inline WickBlockPlans make_block_plans(const AmpTensor& word, const FloatQ& qp) {
  WickBlockPlans p;
  p.amp = word.amp;
  p.forward.resize(static_cast<size_t>(word.amp) * word.amp);
  p.adjoint.resize(static_cast<size_t>(word.amp) * word.amp);
  for (int a = 0; a < word.amp; ++a)
    for (int b = 0; b < word.amp; ++b) {
      const auto& t = word.at(a, b);
      if (!t.is_zero()) p.forward[static_cast<size_t>(a) * word.amp + b].push_back(detail::make_wick_plan(t, qp));
      const auto& tt = word.at(b, a);
      if (!tt.is_zero())
        p.adjoint[static_cast<size_t>(a) * word.amp + b].push_back(
            detail::make_wick_plan(conjugate_j(tt), qp));
    }
  return p;
}

/// A sum of words on a single component (projection lower bounds).
inline WickBlockPlans make_poly_plans(const std::vector<Tensor<cplx>>& words, const FloatQ& qp) {
  WickBlockPlans p;
  p.amp = 1;
  p.forward.resize(1);
  p.adjoint.resize(1);
  for (const auto& w : words) {
    if (w.is_zero()) continue;
    p.forward[0].push_back(detail::make_wick_plan(w, qp));
    p.adjoint[0].push_back(detail::make_wick_plan(conjugate_j(w), qp));
  }
  return p;
}

}  // namespace detail_norm

/// Truncation trace of a norm estimate: certified lower bounds of the true
/// operator norm, nondecreasing by construction (each entry is the best
/// bound seen so far), with the relative increment over the last two steps
/// as the convergence indicator.
struct NormTrace {
  std::vector<int> truncations;
  std::vector<double> estimates;
  double value = 0.0;
  double last_increment_rel = 1.0;
  bool converged = false;
};

namespace detail_norm {

/// One Lanczos run in the q metric at a fixed truncation: the largest
/// eigenvalue of the compressed positive operator X*X over the Krylov space
/// of the vacuum-supported seed, reported as a singular value.
template <class State, class ApplyB, class ApplyGram, class Dot>
double lanczos_top(State seed, const ApplyB& apply_b, const ApplyGram& apply_gram, const Dot& dot,
                   int max_steps) {
  std::vector<State> basis;
  std::vector<State> gram_basis;
  std::vector<double> alpha, beta;

  State v = std::move(seed);
  State pv = apply_gram(v);
  double nrm = std::sqrt(std::max(0.0, dot(v, pv).real()));
  if (nrm == 0.0) return 0.0;
  v.scale(cplx(1.0 / nrm, 0));
  pv.scale(cplx(1.0 / nrm, 0));

  for (int step = 0; step < max_steps; ++step) {
    basis.push_back(v);
    gram_basis.push_back(pv);
    State w = apply_b(v);
    State pw = apply_gram(w);
    const double a = dot(v, pw).real();
    alpha.push_back(a);
    w.axpy(cplx(-a, 0), basis.back());
    pw.axpy(cplx(-a, 0), gram_basis.back());
    if (step > 0) {
      w.axpy(cplx(-beta.back(), 0), basis[step - 1]);
      pw.axpy(cplx(-beta.back(), 0), gram_basis[step - 1]);
    }
    // two full reorthogonalization passes against the kept basis
    for (int pass = 0; pass < 2; ++pass)
      for (size_t i = 0; i < basis.size(); ++i) {
        const cplx c = dot(basis[i], pw);
        if (std::abs(c) == 0.0) continue;
        w.axpy(-c, basis[i]);
        pw.axpy(-c, gram_basis[i]);
      }
    const double b = std::sqrt(std::max(0.0, dot(w, pw).real()));
    if (b < 1e-11 || step + 1 >= max_steps) break;
    beta.push_back(b);
    w.scale(cplx(1.0 / b, 0));
    pw.scale(cplx(1.0 / b, 0));
    v = std::move(w);
    pv = std::move(pw);
  }
  const double top = num::tridiag_lambda_max(alpha, beta);
  return std::sqrt(std::max(0.0, top));
}

inline int64_t dense_total_size(int dim, int trunc, int amp) {
  int64_t total = 0;
  for (int m = 0; m <= trunc; ++m) {
    total += tensor_size(dim, m);
    if (total > (int64_t(1) << 40)) return total;
  }
  return total * amp;
}

inline double wick_norm_at(const AmpTensor& word, int trunc, FloatGram& fg, int max_steps,
                           int64_t dense_cap, uint64_t seed) {
  const int amp = word.amp;
  const int d = word.dim();
  auto plans = make_block_plans(word, FloatQ{fg.q()});
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.25, 1.0);
  std::vector<cplx> weights(amp);
  for (auto& wgt : weights) wgt = cplx(unit(rng), unit(rng) - 0.625);

  if (dense_total_size(d, trunc, amp) <= dense_cap) {
    DenseState s;
    s.comp.reserve(amp);
    for (int a = 0; a < amp; ++a) {
      auto f = FockVector<cplx>(trunc, d);
      f.levels[0].a[0] = weights[a];
      s.comp.push_back(std::move(f));
    }
    auto apply_b = [&](const DenseState& x) {
      DenseState mid;
      mid.comp.assign(amp, FockVector<cplx>(trunc, d));
      for (int a = 0; a < amp; ++a)
        for (int b = 0; b < amp; ++b)
          for (const auto& plan : plans.forward[static_cast<size_t>(a) * amp + b]) {
            auto img = wick_apply(plan, x.comp[b], fg.gram());
            for (int m = 0; m <= trunc; ++m)
              mid.comp[a].levels[m].add_scaled(img.levels[m], cplx(1, 0));
          }
      DenseState out;
      out.comp.assign(amp, FockVector<cplx>(trunc, d));
      for (int a = 0; a < amp; ++a)
        for (int b = 0; b < amp; ++b)
          for (const auto& plan : plans.adjoint[static_cast<size_t>(a) * amp + b]) {
            auto img = wick_apply(plan, mid.comp[b], fg.gram());
            for (int m = 0; m <= trunc; ++m)
              out.comp[a].levels[m].add_scaled(img.levels[m], cplx(1, 0));
          }
      return out;
    };
    auto apply_gram = [&](const DenseState& x) {
      DenseState out;
      out.comp.reserve(amp);
      for (int a = 0; a < amp; ++a) {
        FockVector<cplx> g(trunc, d);
        for (int m = 0; m <= trunc; ++m)
          g.levels[m] = apply_q_symmetrizer(x.comp[a].levels[m], fg.gram());
        out.comp.push_back(std::move(g));
      }
      return out;
    };
    return lanczos_top(std::move(s), apply_b, apply_gram, dense_dot, max_steps);
  }

  SparseState s;
  s.comp.reserve(amp);
  for (int a = 0; a < amp; ++a) {
    SparseFock f(trunc, d);
    f.levels[0][0] = weights[a];
    s.comp.push_back(std::move(f));
  }
  auto apply_b = [&](const SparseState& x) {
    SparseState mid;
    mid.comp.assign(amp, SparseFock(trunc, d));
    for (int a = 0; a < amp; ++a)
      for (int b = 0; b < amp; ++b)
        for (const auto& plan : plans.forward[static_cast<size_t>(a) * amp + b])
          mid.comp[a].axpy(cplx(1, 0), sparse_wick_apply(plan, x.comp[b], fg.gram()));
    SparseState out;
    out.comp.assign(amp, SparseFock(trunc, d));
    for (int a = 0; a < amp; ++a)
      for (int b = 0; b < amp; ++b)
        for (const auto& plan : plans.adjoint[static_cast<size_t>(a) * amp + b])
          out.comp[a].axpy(cplx(1, 0), sparse_wick_apply(plan, mid.comp[b], fg.gram()));
    return out;
  };
  auto apply_gram = [&](const SparseState& x) {
    SparseState out;
    out.comp.reserve(amp);
    for (int a = 0; a < amp; ++a) out.comp.push_back(sparse_apply_gram(x.comp[a], fg.gram()));
    return out;
  };
  return lanczos_top(std::move(s), apply_b, apply_gram, sparse_state_dot, max_steps);
}

}  // namespace detail_norm

struct WickNormOptions {
  double rel_tol = 0.005;    // converged when two consecutive steps add less
  int step = 2;              // truncation stride
  int max_steps = 48;        // Lanczos depth cap
  int64_t dense_cap = 1 << 21;  // switch to the sparse path above this size
  uint64_t seed = 1;
};

/// Lower-bound trace for the norm of an (amplified) Wick operator: Lanczos
/// from vacuum-supported seeds at increasing truncation.  Values are lower
/// bounds of the true norm; the trace reports the running best.
inline NormTrace wick_norm_estimate(const AmpTensor& word, int max_trunc, FloatGram& fg,
                                    WickNormOptions opt = {}) {
  const int n = word.legs();
  NormTrace trace;
  if (n == 0 && word.amp == 1) {
    // scalar word: the operator is that multiple of the identity
    trace.truncations = {0};
    trace.estimates = {std::abs(word.at(0, 0).a[0])};
    trace.value = trace.estimates[0];
    trace.last_increment_rel = 0.0;
    trace.converged = true;
    return trace;
  }
  double best = 0.0;
  const int start = std::max(n, 1);
  std::vector<int> points;
  for (int trunc = start; trunc < std::max(start, max_trunc); trunc += opt.step)
    points.push_back(trunc);
  points.push_back(std::max(start, max_trunc));
  for (int trunc : points) {
    const int steps = std::min(opt.max_steps, trunc + 1);
    const double est =
        detail_norm::wick_norm_at(word, trunc, fg, steps, opt.dense_cap, opt.seed);
    best = std::max(best, est);
    trace.truncations.push_back(trunc);
    trace.estimates.push_back(best);
    const size_t c = trace.estimates.size();
    if (c >= 3) {
      const double inc = trace.estimates[c - 1] - trace.estimates[c - 3];
      trace.last_increment_rel = inc / std::max(trace.estimates[c - 1], 1e-300);
      if (trace.last_increment_rel < opt.rel_tol) {
        trace.converged = true;
        break;
      }
    }
  }
  trace.value = best;
  if (!trace.truncations.empty() && trace.estimates.size() < 3)
    trace.last_increment_rel = trace.converged ? 0.0 : 1.0;
  return trace;
}

inline NormTrace wick_norm_estimate(const Tensor<cplx>& word, int max_trunc, FloatGram& fg,
                                    WickNormOptions opt = {}) {
  return wick_norm_estimate(AmpTensor(word), max_trunc, fg, opt);
}

struct KhintchineReport {
  int legs = 0;
  int amp = 1;
  double q = 0.0;
  std::vector<double> split_norms;  // column-row norm per split
  double lhs = 0.0;                 // max over splits
  NormTrace estimate;
  double ratio = 0.0;               // estimate / lhs
  double ratio_per_degree = 0.0;    // ratio / (legs + 1)
  bool lower_inequality_ok = false;
};

/// The finite-amplification Khintchine experiment for one word: the max of
/// the Gram-conjugated reshape norms against the Wick norm trace.  The
/// lower inequality is asserted within the trace's convergence slack.
inline KhintchineReport khintchine_report(const AmpTensor& word, int max_trunc, FloatGram& fg,
                                          WickNormOptions opt = {}) {
  KhintchineReport rep;
  rep.legs = word.legs();
  rep.amp = word.amp;
  rep.q = fg.q();
  const int n = rep.legs;
  for (int split = 0; split <= n; ++split) {
    AmpTensor shuffled(word.amp, n, word.dim());
    for (int a = 0; a < word.amp; ++a)
      for (int b = 0; b < word.amp; ++b)
        shuffled.at(a, b) =
            apply_split_shuffle(word.at(a, b), 0, n - split, split, FloatQ{fg.q()});
    rep.split_norms.push_back(column_row_norm(shuffled, split, fg));
    rep.lhs = std::max(rep.lhs, rep.split_norms.back());
  }
  rep.estimate = wick_norm_estimate(word, max_trunc, fg, opt);
  rep.ratio = rep.estimate.value / std::max(rep.lhs, 1e-300);
  rep.ratio_per_degree = rep.ratio / (n + 1);
  const double slack =
      std::max(rep.estimate.last_increment_rel, 0.0) + (rep.estimate.converged ? 0.0 : 0.05) + 1e-9;
  rep.lower_inequality_ok = rep.lhs <= rep.estimate.value * (1.0 + slack);
  return rep;
}

struct HaagerupTailReport {
  int level = 0;
  double t = 0.0;
  double c_fit = 1.0;
  double tail_closed_form = 0.0;
  double tail_brute_force = 0.0;
  int minimal_level_for_eps = -1;
  double eps = 0.0;
  double heat_norm = 0.0;        // q-operator norm of the damped cutoff
  double weight_residual = 0.0;  // max deviation of the block weights
};

/// Closed form of c * sum_{k > n} k e^{-kt}: differentiate the geometric
/// series and keep the tail.
inline double heat_tail_closed_form(int n, double t, double c_fit) {
  if (t <= 0) throw std::invalid_argument("heat_tail_closed_form: time must be positive");
  const double r = std::exp(-t);
  const double rn1 = std::pow(r, n + 1);
  return c_fit * rn1 * ((n + 1) - n * r) / ((1 - r) * (1 - r));
}

inline double heat_tail_brute_force(int n, double t, double c_fit) {
  double acc = 0.0;
  for (int k = n + 1; k < n + 20000; ++k) {
    const double term = k * std::exp(-t * k);
    acc += term;
    if (term < 1e-300 || term < 1e-17 * std::max(acc, 1e-300)) break;
  }
  return c_fit * acc;
}

/// The tail estimate driving the approximation argument, with the verified
/// graded facts: unit norm of the damped cutoff and exact block weights.
inline HaagerupTailReport haagerup_tail_report(int n, double t, double c_fit, double eps,
                                               FloatGram& fg, int check_trunc = 5) {
  if (t <= 0) throw std::invalid_argument("haagerup_tail_report: time must be positive");
  HaagerupTailReport rep;
  rep.level = n;
  rep.t = t;
  rep.c_fit = c_fit;
  rep.eps = eps;
  rep.tail_closed_form = heat_tail_closed_form(n, t, c_fit);
  rep.tail_brute_force = heat_tail_brute_force(n, t, c_fit);
  for (int m = 0; m <= 4 * 1000 * 1000; ++m)
    if (heat_tail_closed_form(m, t, c_fit) <= eps) {
      rep.minimal_level_for_eps = m;
      break;
    }

  const int d = fg.dim();
  const int trunc = std::min(check_trunc, fg.max_legs());
  auto damped = heat_operator(t, trunc, d);
  for (int m = 0; m <= trunc; ++m) {
    // the block is a scalar multiple of the identity; its weight is read off
    const auto& b = damped.block(m, m);
    double w = b.m.empty() ? 0.0 : b.at(0, 0).real();
    rep.weight_residual = std::max(rep.weight_residual, std::abs(w - std::exp(-t * m)));
  }
  auto cutoff = heat_cutoff_operator(std::min(n, trunc), t, trunc, d);
  double nrm = 0.0;
  for (int m = 0; m <= trunc; ++m) {
    const auto& b = cutoff.block(m, m);
    if (b.is_zero()) continue;
    nrm = std::max(nrm, qop_norm(b, fg));
  }
  rep.heat_norm = nrm;
  return rep;
}

struct ProjectionBoundReport {
  int level = 0;
  int samples = 0;
  double max_ratio = 0.0;
  std::vector<double> ratios;
};

/// Norm estimate for a sum of Wick words on a single component, same Lanczos
/// engine and vacuum seed as the amplified estimator.
inline double wick_polynomial_norm(const std::vector<Tensor<cplx>>& words, int trunc,
                                   FloatGram& fg, int max_steps = 48) {
  const int d = fg.dim();
  auto plans = detail_norm::make_poly_plans(words, FloatQ{fg.q()});
  detail_norm::DenseState st;
  st.comp.assign(1, FockVector<cplx>(trunc, d));
  st.comp[0].levels[0].a[0] = cplx(1.0, 0.0);
  auto apply_b = [&](const detail_norm::DenseState& x) {
    detail_norm::DenseState mid;
    mid.comp.assign(1, FockVector<cplx>(trunc, d));
    for (const auto& plan : plans.forward[0]) {
      auto img = wick_apply(plan, x.comp[0], fg.gram());
      for (int m = 0; m <= trunc; ++m) mid.comp[0].levels[m].add_scaled(img.levels[m], cplx(1, 0));
    }
    detail_norm::DenseState out;
    out.comp.assign(1, FockVector<cplx>(trunc, d));
    for (const auto& plan : plans.adjoint[0]) {
      auto img = wick_apply(plan, mid.comp[0], fg.gram());
      for (int m = 0; m <= trunc; ++m) out.comp[0].levels[m].add_scaled(img.levels[m], cplx(1, 0));
    }
    return out;
  };
  auto apply_gram = [&](const detail_norm::DenseState& x) {
    detail_norm::DenseState out;
    FockVector<cplx> g(trunc, d);
    for (int m = 0; m <= trunc; ++m) g.levels[m] = apply_q_symmetrizer(x.comp[0].levels[m], fg.gram());
    out.comp.push_back(std::move(g));
    return out;
  };
  return detail_norm::lanczos_top(std::move(st), apply_b, apply_gram, detail_norm::dense_dot,
                                  std::min(max_steps, trunc + 1));
}

/// Sampled lower bounds for the norm of the level projection: the ratio of
/// the top word's norm against the norm of the full polynomial, both through
/// the same estimator.  The first sample is the pure word, whose ratio is
/// one by construction.
inline ProjectionBoundReport projection_lower_bound(int level, int samples, int trunc,
                                                    uint64_t seed, FloatGram& fg,
                                                    WickNormOptions opt = {}) {
  ProjectionBoundReport rep;
  rep.level = level;
  rep.samples = samples;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  const int d = fg.dim();
  for (int s = 0; s < samples; ++s) {
    std::vector<Tensor<cplx>> words;
    Tensor<cplx> top(level, d);
    for (int64_t i = 0; i < top.size(); ++i) top.a[i] = cplx(coef(rng), coef(rng));
    words.push_back(top);
    if (s > 0) {
      for (int k = 0; k < level; ++k) {
        Tensor<cplx> w(k, d);
        for (int64_t i = 0; i < w.size(); ++i) w.a[i] = cplx(coef(rng), coef(rng));
        words.push_back(std::move(w));
      }
    }
    const double top_norm = wick_polynomial_norm({top}, trunc, fg, opt.max_steps);
    const double poly_norm = wick_polynomial_norm(words, trunc, fg, opt.max_steps);
    const double ratio = top_norm / std::max(poly_norm, 1e-300);
    rep.ratios.push_back(ratio);
    rep.max_ratio = std::max(rep.max_ratio, ratio);
  }
  return rep;
}

}  // namespace qwick::norms

#endif
