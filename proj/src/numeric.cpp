#include "qwick/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace qwick::num {

std::vector<double> chol_lower(const std::vector<double>& a, int n) {
  std::vector<double> l(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = a[static_cast<size_t>(i) * n + j];
      for (int k = 0; k < j; ++k)
        s -= l[static_cast<size_t>(i) * n + k] * l[static_cast<size_t>(j) * n + k];
      if (i == j) {
        if (s <= 0.0) throw gram_error("Gram matrix is not positive definite at this q");
        l[static_cast<size_t>(i) * n + j] = std::sqrt(s);
      } else {
        l[static_cast<size_t>(i) * n + j] = s / l[static_cast<size_t>(j) * n + j];
      }
    }
  }
  return l;
}

void solve_lower(const std::vector<double>& lower, int n, std::vector<cplx>& x) {
  for (int i = 0; i < n; ++i) {
    cplx s = x[i];
    for (int k = 0; k < i; ++k) s -= lower[static_cast<size_t>(i) * n + k] * x[k];
    x[i] = s / lower[static_cast<size_t>(i) * n + i];
  }
}

void solve_lower_transposed(const std::vector<double>& lower, int n, std::vector<cplx>& x) {
  for (int i = n; i-- > 0;) {
    cplx s = x[i];
    for (int k = i + 1; k < n; ++k) s -= lower[static_cast<size_t>(k) * n + i] * x[k];
    x[i] = s / lower[static_cast<size_t>(i) * n + i];
  }
}

namespace {

// deterministic start vector so repeated runs give identical reports
void seed_vector(std::vector<cplx>& v) {
  uint64_t state = 0x9e3779b97f4a7c15ull;
  for (auto& e : v) {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    const double re = 0.5 + static_cast<double>(state >> 40) / (1ull << 25);
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    const double im = static_cast<double>(state >> 40) / (1ull << 25) - 0.5;
    e = cplx(re, im);
  }
}

double norm2(const std::vector<cplx>& v) {
  double s = 0.0;
  for (const auto& e : v) s += std::norm(e);
  return std::sqrt(s);
}

}  // namespace

double sigma_max(const std::vector<cplx>& m, int rows, int cols, int max_iters, double tol) {
  if (rows == 0 || cols == 0) return 0.0;
  std::vector<cplx> v(cols), av(rows), bv(cols);
  seed_vector(v);
  double nv = norm2(v);
  for (auto& e : v) e /= nv;
  double lambda = 0.0;
  for (int it = 0; it < max_iters; ++it) {
    for (int r = 0; r < rows; ++r) {
      cplx s(0, 0);
      const cplx* row = &m[static_cast<size_t>(r) * cols];
      for (int c = 0; c < cols; ++c) s += row[c] * v[c];
      av[r] = s;
    }
    for (int c = 0; c < cols; ++c) bv[c] = cplx(0, 0);
    for (int r = 0; r < rows; ++r) {
      const cplx* row = &m[static_cast<size_t>(r) * cols];
      const cplx a = av[r];
      for (int c = 0; c < cols; ++c) bv[c] += std::conj(row[c]) * a;
    }
    const double nb = norm2(bv);
    if (nb == 0.0) return 0.0;
    const double next = nb;  // |M^H M v| for unit v -> sigma_max^2
    for (int c = 0; c < cols; ++c) v[c] = bv[c] / nb;
    if (it > 4 && std::abs(next - lambda) <= tol * std::max(1.0, next)) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return std::sqrt(lambda);
}

double conjugated_sigma_max(const std::vector<cplx>& m, int rows, int cols,
                            const std::vector<double>& lower_dst,
                            const std::vector<double>& lower_src) {
  // Y = M * Lsrc^{-T}: each row solves against the lower factor
  std::vector<cplx> y(m);
  std::vector<cplx> scratch(cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) scratch[c] = y[static_cast<size_t>(r) * cols + c];
    solve_lower(lower_src, cols, scratch);
    for (int c = 0; c < cols; ++c) y[static_cast<size_t>(r) * cols + c] = scratch[c];
  }
  // X = Ldst^T * Y
  std::vector<cplx> x(static_cast<size_t>(rows) * cols, cplx(0, 0));
  for (int r = 0; r < rows; ++r)
    for (int k = r; k < rows; ++k) {
      const double lkr = lower_dst[static_cast<size_t>(k) * rows + r];
      if (lkr == 0.0) continue;
      const cplx* yrow = &y[static_cast<size_t>(k) * cols];
      cplx* xrow = &x[static_cast<size_t>(r) * cols];
      for (int c = 0; c < cols; ++c) xrow[c] += lkr * yrow[c];
    }
  return sigma_max(x, rows, cols);
}

std::vector<double> sym_eigenvalues(std::vector<double> a, int n) {
  const int max_sweeps = 64;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        off += a[static_cast<size_t>(i) * n + j] * a[static_cast<size_t>(i) * n + j];
    if (off < 1e-26 * n * n) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        const double apq = a[static_cast<size_t>(p) * n + q];
        if (std::abs(apq) < 1e-300) continue;
        const double app = a[static_cast<size_t>(p) * n + p];
        const double aqq = a[static_cast<size_t>(q) * n + q];
        const double theta = (aqq - app) / (2.0 * apq);
        const double t =
            (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a[static_cast<size_t>(k) * n + p];
          const double akq = a[static_cast<size_t>(k) * n + q];
          a[static_cast<size_t>(k) * n + p] = c * akp - s * akq;
          a[static_cast<size_t>(k) * n + q] = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a[static_cast<size_t>(p) * n + k];
          const double aqk = a[static_cast<size_t>(q) * n + k];
          a[static_cast<size_t>(p) * n + k] = c * apk - s * aqk;
          a[static_cast<size_t>(q) * n + k] = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> eig(n);
  for (int i = 0; i < n; ++i) eig[i] = a[static_cast<size_t>(i) * n + i];
  std::sort(eig.begin(), eig.end());
  return eig;
}

double spd_lambda_min(const std::vector<double>& lower, int n, int max_iters, double tol) {
  std::vector<cplx> v(n);
  seed_vector(v);
  double nv = norm2(v);
  for (auto& e : v) e /= nv;
  double mu = 0.0;
  for (int it = 0; it < max_iters; ++it) {
    std::vector<cplx> w = v;
    solve_lower(lower, n, w);
    solve_lower_transposed(lower, n, w);
    const double nw = norm2(w);
    if (nw == 0.0) break;
    const double next = nw;  // approximates 1 / lambda_min
    for (int i = 0; i < n; ++i) v[i] = w[i] / nw;
    if (it > 4 && std::abs(next - mu) <= tol * std::max(1.0, next)) {
      mu = next;
      break;
    }
    mu = next;
  }
  return mu > 0.0 ? 1.0 / mu : 0.0;
}

double tridiag_lambda_max(const std::vector<double>& diag, const std::vector<double>& off) {
  const int n = static_cast<int>(diag.size());
  if (n == 0) return 0.0;
  std::vector<double> a(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) a[static_cast<size_t>(i) * n + i] = diag[i];
  for (int i = 0; i + 1 < n; ++i) {
    a[static_cast<size_t>(i) * n + i + 1] = off[i];
    a[static_cast<size_t>(i + 1) * n + i] = off[i];
  }
  return sym_eigenvalues(std::move(a), n).back();
}

}  // namespace qwick::num
