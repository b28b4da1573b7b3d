#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qwick/cmapkernel.hpp"
#include "qwick/convert.hpp"
#include "qwick/normlab.hpp"

using namespace qwick;
using namespace qwick::norms;

namespace {

// [j]_q! with [i]_q = 1 + q + ... + q^{i-1}
double q_factorial(double q, int j) {
  double acc = 1.0;
  for (int i = 1; i <= j; ++i) {
    double bracket = 0.0, p = 1.0;
    for (int s = 0; s < i; ++s) {
      bracket += p;
      p *= q;
    }
    acc *= bracket;
  }
  return acc;
}

Tensor<cplx> random_ctensor(int legs, int dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Tensor<cplx> t(legs, dim);
  for (int64_t i = 0; i < t.size(); ++i) t.a[i] = cplx(u(rng), u(rng));
  return t;
}

}  // namespace

TEST_CASE("numeric kernels: cholesky, solves, eigenvalues") {
  // A = L L^T for a hand-built SPD matrix
  std::vector<double> a = {4, 2, 0, 2, 5, 3, 0, 3, 6};
  auto l = num::chol_lower(a, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0;
      for (int k = 0; k < 3; ++k) s += l[i * 3 + k] * l[j * 3 + k];
      CHECK(s == doctest::Approx(a[i * 3 + j]).epsilon(1e-12));
    }
  std::vector<num::cplx> rhs = {{1, 1}, {2, -1}, {0, 3}};
  auto x = rhs;
  num::solve_lower(l, 3, x);
  num::solve_lower_transposed(l, 3, x);
  // residual of A x = rhs
  for (int i = 0; i < 3; ++i) {
    num::cplx s(0, 0);
    for (int j = 0; j < 3; ++j) s += a[i * 3 + j] * x[j];
    CHECK(std::abs(s - rhs[i]) < 1e-12);
  }
  std::vector<double> sym = {2, 1, 1, 2};
  auto eig = num::sym_eigenvalues(sym, 2);
  CHECK(eig[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(eig[1] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(num::spd_lambda_min(num::chol_lower(sym, 2), 2) == doctest::Approx(1.0).epsilon(1e-9));

  std::vector<double> non_pd = {1, 2, 2, 1};
  CHECK_THROWS_AS(num::chol_lower(non_pd, 2), num::gram_error);

  // sigma_max of a known matrix [[3,0],[4,0]] -> 5
  std::vector<num::cplx> m = {{3, 0}, {0, 0}, {4, 0}, {0, 0}};
  CHECK(num::sigma_max(m, 2, 2) == doctest::Approx(5.0).epsilon(1e-10));
}

TEST_CASE("gram positivity across the admissible q range") {
  for (double q : {-0.9, -0.5, 0.0, 0.5, 0.9})
    for (int d = 2; d <= 3; ++d) {
      FloatGram fg(d, q, 6);
      for (int n = 0; n <= 6; ++n) {
        const auto& l = fg.chol(n);  // factorization succeeding is the certificate
        const int sz = static_cast<int>(tensor_size(d, n));
        if (n > 0) CHECK(num::spd_lambda_min(l, sz) > 0.0);
      }
    }
  // at |q| = 1 the level-two gram degenerates and the error is structured
  FloatGram degenerate(2, 1.0, 4);
  CHECK_THROWS_AS(degenerate.chol(2), num::gram_error);
}

TEST_CASE("second quantization of random contractions stays contractive") {
  std::mt19937_64 rng(307);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int done = 0;
  while (done < 20) {
    const int d = 2 + static_cast<int>(rng() % 2);
    const double q = (done % 2 == 0) ? 0.5 : -0.4;
    const int trunc = (d == 2) ? 5 : 4;
    FloatGram fg(d, q, trunc);
    LinMap<cplx> t(1, 1, d);
    for (auto& e : t.m) e = cplx(u(rng), 0.0);
    const double nrm = num::sigma_max(t.m, d, d);
    t = t.scaled(cplx(0.999 / std::max(nrm, 1e-12), 0.0));
    auto gamma = second_quantization(t, trunc);
    double worst = 0.0;
    for (int m = 0; m <= trunc; ++m) worst = std::max(worst, qop_norm(gamma.block(m, m), fg));
    CHECK(worst <= 1.0 + 1e-9);
    ++done;
  }

  // an expansive map is rejected in the float backend
  LinMap<cplx> grow(1, 1, 2);
  grow.at(0, 0) = cplx(1.5, 0.0);
  grow.at(1, 1) = cplx(0.5, 0.0);
  CHECK_THROWS_AS(second_quantization(grow, 3), std::invalid_argument);
}

TEST_CASE("qop_norm: identity, symmetrizer, reversal isometry") {
  FloatGram fg(2, 0.5, 6);
  for (int legs = 0; legs <= 4; ++legs)
    CHECK(qop_norm(LinMap<cplx>::identity(legs, 2), fg) == doctest::Approx(1.0).epsilon(1e-10));

  // flat-to-flat grading sees the raw largest eigenvalue 1 + q
  CHECK(qop_norm(fg.pqn(2), fg, false, false) == doctest::Approx(1.5).epsilon(1e-10));

  for (int n = 1; n <= 4; ++n)
    CHECK(qop_norm(leg_reversal<cplx>(n, 2), fg) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("qop_norm is submultiplicative on random composable pairs") {
  FloatGram fg(2, 0.5, 6);
  std::mt19937_64 rng(211);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int iter = 0; iter < 20; ++iter) {
    LinMap<cplx> a(2, 3, 2), b(3, 2, 2);
    for (auto& e : a.m) e = cplx(u(rng), u(rng));
    for (auto& e : b.m) e = cplx(u(rng), u(rng));
    auto ab = compose(a, b);
    CHECK(qop_norm(ab, fg) <= qop_norm(a, fg) * qop_norm(b, fg) * (1 + 1e-9));
  }
}

TEST_CASE("split shuffle norms: frozen free values and the bounded table") {
  FloatGram free_gram(2, 0.0, 8);
  for (int n = 0; n <= 3; ++n)
    for (int k = 0; n + k <= 5 && k <= 3; ++k) {
      auto r = split_shuffle_norm(n, k, free_gram);
      CHECK(r.split_norm == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(r.embed_norm == doctest::Approx(1.0).epsilon(1e-12));
    }

  FloatGram fg(2, 0.5, 8);
  double prev = 0.0;
  for (int total = 1; total <= 6; ++total) {
    double worst = 0.0;
    for (int n = 0; n <= total; ++n) {
      auto r = split_shuffle_norm(n, total - n, fg);
      CHECK(r.split_norm >= 1.0 - 1e-12);
      CHECK(std::isfinite(r.split_norm));
      worst = std::max(worst, r.split_norm);
    }
    CHECK(worst >= prev - 1e-9);  // recorded trend is nondecreasing in total degree
    prev = worst;
  }
  // degenerate splits are exact isometries
  CHECK(split_shuffle_norm(3, 0, fg).split_norm == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(split_shuffle_norm(0, 3, fg).split_norm == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("column-row norm: unit vectors, rank-one products, free flatness") {
  FloatGram fg(2, 0.5, 6);
  AmpTensor e1(Tensor<cplx>::basis(1, 2, 0));
  CHECK(column_row_norm(e1, 0, fg) == doctest::Approx(1.0).epsilon(1e-12));

  // rank-one reshape: the norm is the product of the two q-norms
  for (int n = 2; n <= 4; ++n)
    for (int k = 0; k <= n; ++k) {
      AmpTensor chain(Tensor<cplx>::basis(n, 2, 0));
      const double expect =
          std::sqrt(q_factorial(0.5, n - k)) * std::sqrt(q_factorial(0.5, k));
      CHECK(column_row_norm(chain, k, fg) == doctest::Approx(expect).epsilon(1e-10));
    }

  // free case: plain reshape operator norm
  FloatGram free_gram(2, 0.0, 6);
  std::mt19937_64 rng(223);
  for (int iter = 0; iter < 5; ++iter) {
    auto z = random_ctensor(4, 2, rng);
    AmpTensor az(z);
    const double got = column_row_norm(az, 2, free_gram);
    const double expect = num::sigma_max(z.a, 4, 4);
    CHECK(got == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("column-row norm equals the q-norm of the matching wick block") {
  // the (n-k <- k) block of the wick operator is the shuffled reshape in
  // disguise; their norms must coincide
  std::mt19937_64 rng(227);
  for (double q : {0.5, -0.7}) {
    FloatGram fg(2, q, 6);
    const int n = 3;
    auto xi = random_ctensor(n, 2, rng);
    auto wop = wick_operator(xi, n, fg.gram());
    for (int k = 0; k <= n; ++k) {
      auto shuffled = apply_split_shuffle(xi, 0, n - k, k, FloatQ{q});
      const double via_reshape = column_row_norm(AmpTensor(shuffled), k, fg);
      const double via_block = qop_norm(wop.block(n - k, k), fg.chol(n - k), fg.chol(k));
      CHECK(via_reshape == doctest::Approx(via_block).epsilon(1e-9));
    }
  }
}

TEST_CASE("wick norm trace: free single-vector chain matches the shift oracle") {
  FloatGram fg(2, 0.0, 6);
  auto e1 = Tensor<cplx>::basis(1, 2, 0);
  WickNormOptions opt;
  opt.rel_tol = 0.0;  // never stop early; inspect the raw trace
  auto trace = wick_norm_estimate(e1, 20, fg, opt);
  REQUIRE(trace.truncations.size() >= 5);
  for (size_t i = 0; i < trace.truncations.size(); ++i) {
    const int trunc = trace.truncations[i];
    const double oracle = 2.0 * std::cos(M_PI / (trunc + 2));
    CHECK(trace.estimates[i] == doctest::Approx(oracle).epsilon(1e-8));
  }
  for (size_t i = 1; i < trace.estimates.size(); ++i)
    CHECK(trace.estimates[i] >= trace.estimates[i - 1] - 1e-12);
}

TEST_CASE("wick norm trace: deformed chain approaches the support endpoint") {
  FloatGram fg(2, 0.5, 6);
  auto e1 = Tensor<cplx>::basis(1, 2, 0);
  WickNormOptions opt;
  opt.rel_tol = 0.0;
  auto trace = wick_norm_estimate(e1, 30, fg, opt);
  const double endpoint = 2.0 / std::sqrt(1.0 - 0.5);
  CHECK(trace.value <= endpoint + 1e-9);
  CHECK(trace.value > endpoint * 0.99);

  // oracle: the orthonormalized chain is the Jacobi matrix with sqrt
  // bracket off-diagonals; its top eigenvalue is the exact truncated value
  const int top = trace.truncations.back();
  std::vector<double> diag(top + 1, 0.0), off(top, 0.0);
  for (int m = 1; m <= top; ++m) {
    double bracket = 0.0, p = 1.0;
    for (int s = 0; s < m; ++s) {
      bracket += p;
      p *= 0.5;
    }
    off[m - 1] = std::sqrt(bracket);
  }
  const double oracle = num::tridiag_lambda_max(diag, off);
  CHECK(trace.value == doctest::Approx(oracle).epsilon(1e-7));
}

TEST_CASE("wick norm trace: negative deformation against the chain oracle") {
  const double q = -0.6;
  FloatGram fg(2, q, 6);
  auto e1 = Tensor<cplx>::basis(1, 2, 0);
  WickNormOptions opt;
  opt.rel_tol = 0.0;
  auto trace = wick_norm_estimate(e1, 30, fg, opt);
  const double endpoint = 2.0 / std::sqrt(1.0 - q);  // signed: 2/sqrt(1.6)
  CHECK(trace.value <= endpoint + 1e-9);
  CHECK(trace.value > endpoint * 0.99);
  const int top = trace.truncations.back();
  std::vector<double> diag(top + 1, 0.0), off(top, 0.0);
  for (int m = 1; m <= top; ++m)
    off[m - 1] = std::sqrt((1.0 - ipow(q, m)) / (1.0 - q));
  CHECK(trace.value == doctest::Approx(num::tridiag_lambda_max(diag, off)).epsilon(1e-7));
}

TEST_CASE("wick norm estimate: scalars, dense-sparse agreement, amplification") {
  FloatGram fg(2, 0.5, 6);
  auto scalar = Tensor<cplx>::scalar(2, cplx(-2.5, 1.0));
  auto strace = wick_norm_estimate(scalar, 4, fg);
  CHECK(strace.value == doctest::Approx(std::abs(cplx(-2.5, 1.0))).epsilon(1e-12));

  std::mt19937_64 rng(229);
  auto word = random_ctensor(2, 2, rng);
  WickNormOptions dense_opt;
  WickNormOptions sparse_opt;
  sparse_opt.dense_cap = 1;  // force the sparse path
  auto dense_trace = wick_norm_estimate(word, 8, fg, dense_opt);
  auto sparse_trace = wick_norm_estimate(word, 8, fg, sparse_opt);
  REQUIRE(dense_trace.truncations == sparse_trace.truncations);
  for (size_t i = 0; i < dense_trace.estimates.size(); ++i)
    CHECK(dense_trace.estimates[i] == doctest::Approx(sparse_trace.estimates[i]).epsilon(1e-8));

  // block-diagonal amplification with equal words has the same norm
  AmpTensor amp(2, 1, 2);
  amp.at(0, 0) = Tensor<cplx>::basis(1, 2, 0);
  amp.at(1, 1) = Tensor<cplx>::basis(1, 2, 0);
  auto amp_trace = wick_norm_estimate(amp, 12, fg);
  auto single = wick_norm_estimate(Tensor<cplx>::basis(1, 2, 0), 12, fg);
  CHECK(amp_trace.value == doctest::Approx(single.value).epsilon(1e-7));

  // a single off-diagonal entry also reproduces the plain norm
  AmpTensor corner(2, 1, 2);
  corner.at(0, 1) = Tensor<cplx>::basis(1, 2, 0);
  auto corner_trace = wick_norm_estimate(corner, 12, fg);
  CHECK(corner_trace.value == doctest::Approx(single.value).epsilon(1e-7));

  CHECK_THROWS_AS(AmpTensor(5, 1, 2), std::invalid_argument);
}

TEST_CASE("wick norm estimates are deterministic") {
  FloatGram fg(2, 0.5, 6);
  std::mt19937_64 rng(233);
  auto word = random_ctensor(2, 2, rng);
  auto t1 = wick_norm_estimate(word, 8, fg);
  auto t2 = wick_norm_estimate(word, 8, fg);
  REQUIRE(t1.estimates.size() == t2.estimates.size());
  for (size_t i = 0; i < t1.estimates.size(); ++i) CHECK(t1.estimates[i] == t2.estimates[i]);
}

TEST_CASE("khintchine report: frozen one-leg case and the free lower inequality") {
  FloatGram fg(2, 0.5, 6);
  auto rep = khintchine_report(AmpTensor(Tensor<cplx>::basis(1, 2, 0)), 30, fg);
  REQUIRE(rep.split_norms.size() == 2);
  CHECK(rep.split_norms[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(rep.split_norms[1] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(rep.lhs == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(rep.estimate.value == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(0.01));
  CHECK(rep.ratio == doctest::Approx(2.83).epsilon(0.02));
  CHECK(rep.lower_inequality_ok);

  auto scalar_rep = khintchine_report(AmpTensor(Tensor<cplx>::scalar(2, cplx(0.7, 0))), 4, fg);
  CHECK(scalar_rep.lhs == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(scalar_rep.ratio == doctest::Approx(1.0).epsilon(1e-10));

  FloatGram free_gram(2, 0.0, 6);
  std::mt19937_64 rng(239);
  for (int n = 1; n <= 3; ++n) {
    auto rep_free = khintchine_report(AmpTensor(random_ctensor(n, 2, rng)), 12, free_gram);
    CHECK(rep_free.lower_inequality_ok);
  }
}

TEST_CASE("khintchine ratio per degree stays bounded across deformations") {
  std::mt19937_64 rng(311);
  for (double q : {0.3, 0.7}) {
    FloatGram fg(2, q, 6);
    double prev = 0.0;
    for (int n = 1; n <= 3; ++n) {
      double mean = 0.0;
      const int samples = 4;
      for (int s = 0; s < samples; ++s) {
        auto rep = khintchine_report(AmpTensor(random_ctensor(n, 2, rng)), 10, fg);
        CHECK(rep.lower_inequality_ok);
        mean += rep.ratio_per_degree / samples;
      }
      if (n > 1) CHECK(mean < 2.0 * prev);  // no doubling between consecutive degrees
      prev = mean;
    }
  }
}

TEST_CASE("haagerup tail: closed form matches brute force and frozen values") {
  FloatGram fg(2, 0.5, 6);
  for (double t : {0.3, 1.0, 2.0})
    for (int n : {0, 3, 10}) {
      auto rep = haagerup_tail_report(n, t, 1.0, 0.01, fg);
      CHECK(rep.tail_closed_form ==
            doctest::Approx(rep.tail_brute_force).epsilon(1e-10));
    }
  // frozen: sum_{k >= 11} k e^{-k} computed by the partial-sum oracle
  auto rep = haagerup_tail_report(10, 1.0, 1.0, 0.01, fg);
  CHECK(rep.tail_closed_form == doctest::Approx(3.0602e-4).epsilon(1e-3));

  // minimal level for eps: recheck by descending the brute-force sums
  auto rep2 = haagerup_tail_report(5, 0.5, 2.0, 0.1, fg);
  int expect = -1;
  for (int m = 0; m < 1000; ++m)
    if (heat_tail_brute_force(m, 0.5, 2.0) <= 0.1) {
      expect = m;
      break;
    }
  CHECK(rep2.minimal_level_for_eps == expect);

  CHECK(rep.heat_norm == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.weight_residual < 1e-12);
  CHECK_THROWS_AS(haagerup_tail_report(3, 0.0, 1.0, 0.1, fg), std::invalid_argument);
  CHECK_THROWS_AS(haagerup_tail_report(3, -2.0, 1.0, 0.1, fg), std::invalid_argument);

  // the tail vanishes as the level grows
  double prev = 1e300;
  for (int n : {10, 100, 1000}) {
    const double tail = heat_tail_closed_form(n, 1.0, 1.0);
    CHECK(tail < prev);
    prev = tail;
  }
  CHECK(prev < 1e-300);
}

TEST_CASE("second quantization of a scaled identity is the heat damping") {
  const double t = 0.7;
  LinMap<cplx> damp(1, 1, 2);
  damp.at(0, 0) = damp.at(1, 1) = cplx(std::exp(-t), 0.0);
  auto gamma = second_quantization(damp, 5);
  auto heat = heat_operator(t, 5, 2);
  CHECK((gamma - heat).max_abs() < 1e-14);
}

TEST_CASE("projection lower bounds: pure ratio is one, scalars stay below one") {
  FloatGram fg(2, 0.5, 6);
  auto rep = projection_lower_bound(2, 5, 8, 777, fg);
  REQUIRE(rep.ratios.size() == 5);
  CHECK(rep.ratios[0] == doctest::Approx(1.0).epsilon(1e-9));
  for (double r : rep.ratios) CHECK(std::isfinite(r));
  CHECK(rep.max_ratio >= 1.0 - 1e-9);

  auto rep0 = projection_lower_bound(0, 4, 6, 778, fg);
  for (double r : rep0.ratios) CHECK(r <= 1.0 + 1e-9);
}
