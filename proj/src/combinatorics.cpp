#include "qwick/combinatorics.hpp"

#include <algorithm>
#include <stdexcept>

namespace qwick::comb {

Permutation Permutation::identity(int n) {
  Permutation p;
  p.image.resize(n);
  for (int i = 0; i < n; ++i) p.image[i] = i + 1;
  return p;
}

Permutation Permutation::reversal(int n) {
  Permutation p;
  p.image.resize(n);
  for (int i = 0; i < n; ++i) p.image[i] = n - i;
  return p;
}

bool Permutation::is_valid() const {
  const int n = size();
  std::vector<char> seen(n + 1, 0);
  for (int v : image) {
    if (v < 1 || v > n || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

bool Subset::is_valid() const {
  int prev = 0;
  for (int v : elements) {
    if (v <= prev || v > n) return false;
    prev = v;
  }
  return true;
}

long long inversions(const Permutation& pi) {
  long long count = 0;
  const int n = pi.size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (pi.image[i] > pi.image[j]) ++count;
  return count;
}

long long inversion_stat(const Subset& a) {
  long long s = 0;
  for (int l = 0; l < a.k(); ++l) s += a.elements[l] - (l + 1);
  return s;
}

Permutation subset_to_permutation(const Subset& a) {
  Permutation p;
  p.image = a.elements;
  std::vector<char> in_a(a.n + 1, 0);
  for (int v : a.elements) in_a[v] = 1;
  for (int v = 1; v <= a.n; ++v)
    if (!in_a[v]) p.image.push_back(v);
  return p;
}

std::vector<Subset> enumerate_subsets(int n, int k) {
  if (n < 0 || k < 0 || k > n || n > kEnumerationCeiling)
    throw std::invalid_argument("enumerate_subsets: arguments out of range");
  std::vector<Subset> out;
  Subset cur;
  cur.n = n;
  cur.elements.resize(k);
  // lexicographic successor walk
  for (int i = 0; i < k; ++i) cur.elements[i] = i + 1;
  if (k == 0) {
    out.push_back(cur);
    return out;
  }
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur.elements[i] == n - (k - 1 - i)) --i;
    if (i < 0) break;
    ++cur.elements[i];
    for (int l = i + 1; l < k; ++l) cur.elements[l] = cur.elements[l - 1] + 1;
  }
  return out;
}

bool has_decreasing_head(const Permutation& pi, int j) {
  const int n = pi.size();
  if (j < 0 || j > n) return false;
  for (int l = 1; l < j; ++l)
    if (pi.image[l - 1] < pi.image[l]) return false;
  for (int l = j + 1; l < n; ++l)
    if (pi.image[l - 1] > pi.image[l]) return false;
  return true;
}

std::vector<Permutation> head_decreasing_perms(int n, int j) {
  if (j < 0 || j > n || n > kEnumerationCeiling)
    throw std::invalid_argument("head_decreasing_perms: arguments out of range");
  std::vector<Permutation> out;
  for (const Subset& a : enumerate_subsets(n, j)) {
    Permutation p = subset_to_permutation(a);
    std::reverse(p.image.begin(), p.image.begin() + j);
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<int> twin_classes(const Permutation& pi, int j) {
  if (!pi.is_valid() || !has_decreasing_head(pi, j))
    throw std::invalid_argument("twin_classes: permutation has no decreasing head of this length");
  std::vector<int> out;
  for (int k = 0; k <= pi.size(); ++k) {
    if (k == j) continue;
    if (has_decreasing_head(pi, k)) out.push_back(k);
  }
  return out;
}

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace qwick::comb
