#ifndef QWICK_COMBINATORICS_HPP
#define QWICK_COMBINATORICS_HPP

#include <cstdint>
#include <vector>

#include "qwick/scalar.hpp"

namespace qwick::comb {

/// A permutation of [1..n], stored one-indexed as its image array:
/// image[l-1] = pi(l).  Zero-indexing happens only at tensor boundaries.
struct Permutation {
  std::vector<int> image;

  int size() const { return static_cast<int>(image.size()); }
  int operator()(int l) const { return image[l - 1]; }  // one-indexed
  bool operator==(const Permutation& o) const { return image == o.image; }
  bool operator<(const Permutation& o) const { return image < o.image; }

  static Permutation identity(int n);
  static Permutation reversal(int n);
  bool is_valid() const;
};

/// A subset of [1..n], elements strictly increasing, with ambient size n.
struct Subset {
  std::vector<int> elements;
  int n = 0;

  int k() const { return static_cast<int>(elements.size()); }
  bool is_valid() const;
};

/// Number of pairs i < j with pi(i) > pi(j).
long long inversions(const Permutation& pi);

/// i(A) = sum_l (i_l - l): the cost of moving A to the front of [n].
long long inversion_stat(const Subset& a);

/// The minimal-inversion permutation that lists A first (in order), then the
/// complement in increasing order.  Its inversion count equals inversion_stat.
Permutation subset_to_permutation(const Subset& a);

/// All subsets of [1..n] of size k, in lexicographic order.
std::vector<Subset> enumerate_subsets(int n, int k);

/// Is pi decreasing on positions 1..j and increasing on positions j+1..n?
bool has_decreasing_head(const Permutation& pi, int j);

/// All permutations of [n] that decrease on the first j positions and
/// increase afterwards; there are C(n, j) of them.
std::vector<Permutation> head_decreasing_perms(int n, int j);

/// For pi with a decreasing head of length j, the other head lengths k != j
/// that also describe pi.  Exactly one exists: j-1 when pi(j) = 1, else j+1.
/// Membership is established by direct monotonicity scans.
/// Throws std::invalid_argument when pi has no decreasing head of length j.
std::vector<int> twin_classes(const Permutation& pi, int j);

/// Binomial coefficient as a plain integer (small arguments).
long long binomial(int n, int k);

/// The alternating coefficient (-1)^j q^(j(j-1)/2) driving the telescoping
/// cancellation over head-decreasing permutations.
template <class QP>
typename QP::scalar alternating_coefficient(int j, const QP& qp) {
  using S = typename QP::scalar;
  S v = qp(binomial(j, 2));
  if (j % 2 == 1) v = -v;
  return v;
}

/// Enforced ceiling for exhaustive permutation/subset enumeration.
inline constexpr int kEnumerationCeiling = 12;

}  // namespace qwick::comb

#endif
