#ifndef QWICK_CMAPKERNEL_HPP
#define QWICK_CMAPKERNEL_HPP

#include <map>

#include "qwick/fock.hpp"

namespace qwick::cmap {

/// The product-of-two-words map acting on a joined (n + k)-leg tensor:
/// shuffle each half against its contraction depth, then pair the middle
/// legs, one graded summand per depth.  Linear in the joined tensor, which
/// is the form every identity in this module is checked in.
template <class QP>
FockVector<typename QP::scalar> wick_pair_product(const Tensor<typename QP::scalar>& joined,
                                                  int n, int k, int trunc, GramCache<QP>& gram) {
  using S = typename QP::scalar;
  if (n < 0 || k < 0 || n + k != joined.legs)
    throw std::invalid_argument("wick_pair_product: bad split");
  if (n + k > trunc) throw std::invalid_argument("wick_pair_product: exceeds truncation");
  FockVector<S> out(trunc, joined.dim);
  for (int j = 0; j <= std::min(n, k); ++j) {
    Tensor<S> z = apply_split_shuffle(joined, 0, n - j, j, gram.qpow());
    z = apply_split_shuffle(z, n, j, k - j, gram.qpow());
    Tensor<S> term = contract_modular(j, z, n, k, gram);
    out.levels[n + k - 2 * j] = out.levels[n + k - 2 * j] + term;
  }
  return out;
}

enum class Strategy { factored, simplified };

/// The depth-j contracted product map: plain-pair j middle legs of the two
/// shuffled halves, then take the product of the shortened words.  The
/// `simplified` strategy is the algebraically flattened form in which the
/// depth enters only through a reversal and one inner shuffle.  Both
/// strategies agree identically on every input.
template <class QP>
struct ContractedProductMap {
  using S = typename QP::scalar;

  int j, n, k, dim;
  Strategy strategy = Strategy::factored;

  FockVector<S> apply(const Tensor<S>& joined, int trunc, GramCache<QP>& gram) const {
    if (j < 0 || j > std::min(n, k)) throw std::invalid_argument("ContractedProductMap: depth out of range");
    if (n + k != joined.legs || joined.dim != dim)
      throw std::invalid_argument("ContractedProductMap: shape mismatch");
    return strategy == Strategy::factored ? apply_factored(joined, trunc, gram)
                                          : apply_simplified(joined, trunc, gram);
  }

private:
  FockVector<S> apply_factored(const Tensor<S>& joined, int trunc, GramCache<QP>& gram) const {
    Tensor<S> z = apply_split_shuffle(joined, 0, n - j, j, gram.qpow());
    z = apply_split_shuffle(z, n, j, k - j, gram.qpow());
    Tensor<S> middle = contract_plain(j, z, n, k, gram);
    return wick_pair_product(middle, n - j, k - j, trunc, gram);
  }

  FockVector<S> apply_simplified(const Tensor<S>& joined, int trunc, GramCache<QP>& gram) const {
    FockVector<S> out(trunc, dim);
    for (int p = j; p <= std::min(n, k); ++p) {
      Tensor<S> z = apply_split_shuffle(joined, 0, n - p, p, gram.qpow());
      z = apply_split_shuffle(z, n, p, k - p, gram.qpow());
      z = apply_split_shuffle(z, n, j, p - j, gram.qpow());
      z = apply_leg_reversal_range(z, n, j);
      Tensor<S> term = contract_modular(p, z, n, k, gram);
      out.levels[n + k - 2 * p] = out.levels[n + k - 2 * p] + term;
    }
    return out;
  }
};

/// The level-p cancellation operator: the alternating-coefficient sum of
/// reversed-head shuffles.  Must be the identity at p = 0 and vanish
/// identically for every p >= 1; this vanishing is the combinatorial core
/// of the whole construction.
template <class QP>
LinMap<typename QP::scalar> cancellation_operator(int p, int dim, const QP& qp) {
  using S = typename QP::scalar;
  if (p < 0) throw std::invalid_argument("cancellation_operator: negative level");
  LinMap<S> acc(p, p, dim);
  for (int j = 0; j <= p; ++j) {
    LinMap<S> term = compose(kron(leg_reversal<S>(j, dim), LinMap<S>::identity(p - j, dim)),
                             split_shuffle(j, p - j, dim, qp));
    acc.add_scaled(term, comb::alternating_coefficient(j, qp));
  }
  return acc;
}

/// One grouped term of the cancellation operator: a head-decreasing
/// permutation together with the coefficient polynomial it collects and how
/// many (depth, subset) pairs produced it.
struct CancellationGroup {
  std::vector<int> image;
  int contributions = 0;
  QPoly coefficient;
};

/// Expands the cancellation operator permutation by permutation (symbolic
/// backend).  For p >= 1 every permutation must be hit exactly twice, by
/// adjacent depths, with coefficients cancelling to the zero polynomial.
inline std::vector<CancellationGroup> cancellation_groups(int p) {
  std::map<std::vector<int>, CancellationGroup> groups;
  const SymbolicQ sym;
  for (int j = 0; j <= p; ++j) {
    const QPoly alpha = comb::alternating_coefficient(j, sym);
    for (const auto& sub : comb::enumerate_subsets(p, j)) {
      comb::Permutation pi = comb::subset_to_permutation(sub);
      std::reverse(pi.image.begin(), pi.image.begin() + j);
      auto& g = groups[pi.image];
      g.image = pi.image;
      g.contributions += 1;
      g.coefficient += alpha * QPoly::monomial(static_cast<int>(comb::inversion_stat(sub)));
    }
  }
  std::vector<CancellationGroup> out;
  out.reserve(groups.size());
  for (auto& [img, g] : groups) out.push_back(std::move(g));
  return out;
}

/// Checks that the alternating-coefficient combination of contracted product
/// maps recovers the identity on the top level and kills every lower level,
/// over the full product basis (or seeded rational samples when the basis is
/// too large; the suites stay within basis range).
template <class QP>
CheckResult recovery_identity_check(int n, int k, int trunc, GramCache<QP>& gram,
                                    Strategy strategy = Strategy::factored) {
  using S = typename QP::scalar;
  const int d = gram.dim();
  if (n + k > trunc) throw std::invalid_argument("recovery_identity_check: exceeds truncation");
  CheckResult res;
  const int64_t sz = tensor_size(d, n + k);
  for (int64_t b = 0; b < sz; ++b) {
    const Tensor<S> zeta = Tensor<S>::basis(n + k, d, b);
    FockVector<S> acc(trunc, d);
    for (int j = 0; j <= std::min(n, k); ++j) {
      ContractedProductMap<QP> w{j, n, k, d, strategy};
      acc = acc + w.apply(zeta, trunc, gram).scaled(comb::alternating_coefficient(j, gram.qpow()));
    }
    acc.levels[n + k] = acc.levels[n + k] - zeta;
    res.residual = std::max(res.residual, acc.max_abs());
    res.exact_zero = res.exact_zero && acc.is_zero();
  }
  return res;
}

/// Rebuilds the cancellation family with a single exponent bumped by one and
/// reports the smallest level (at most bump + 1) where it stops cancelling;
/// -1 would mean the perturbation went unnoticed.
template <class QP>
int perturbation_breaks_at(int bump, int dim, const QP& qp) {
  using S = typename QP::scalar;
  for (int p = 0; p <= bump + 1; ++p) {
    LinMap<S> acc(p, p, dim);
    for (int j = 0; j <= p; ++j) {
      S alpha = comb::alternating_coefficient(j, qp);
      if (j == bump) alpha = alpha * qp(1);
      LinMap<S> term = compose(kron(leg_reversal<S>(j, dim), LinMap<S>::identity(p - j, dim)),
                               split_shuffle(j, p - j, dim, qp));
      acc.add_scaled(term, alpha);
    }
    if (p == 0) {
      if (!(acc - LinMap<S>::identity(0, dim)).is_zero()) return p;
    } else if (!acc.is_zero()) {
      return p;
    }
  }
  return -1;
}

}  // namespace qwick::cmap

#endif
