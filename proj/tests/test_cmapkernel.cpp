#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qwick/cmapkernel.hpp"
#include "qwick/convert.hpp"
#include "test_util.hpp"

using namespace qwick;
using namespace qwick::cmap;

namespace {
const SymbolicQ sym;
}

TEST_CASE("pair product on joined tensors matches the two-argument product") {
  GramCache<SymbolicQ> gram(2, sym);
  std::mt19937_64 rng(101);
  for (int n = 0; n <= 3; ++n)
    for (int k = 0; n + k <= 5 && k <= 3; ++k) {
      auto xi = testutil::random_rational_tensor(n, 2, rng);
      auto eta = testutil::random_rational_tensor(k, 2, rng);
      auto joined = tensor_product(xi, eta);
      auto lhs = wick_pair_product(joined, n, k, n + k, gram);
      auto rhs = wick_product(xi, eta, n + k, gram);
      for (int m = 0; m <= n + k; ++m) CHECK((lhs.levels[m] - rhs.levels[m]).is_zero());
    }
}

TEST_CASE("pair product: degenerate splits") {
  GramCache<SymbolicQ> gram(2, sym);
  std::mt19937_64 rng(103);
  auto c = Tensor<QPoly>::scalar(2, QPoly(CRat(Rational(5, 3))));
  auto v00 = wick_pair_product(c, 0, 0, 2, gram);
  CHECK(v00.levels[0].a[0] == QPoly(CRat(Rational(5, 3))));

  auto xi = testutil::random_rational_tensor(3, 2, rng);
  auto vn0 = wick_pair_product(xi, 3, 0, 3, gram);
  CHECK((vn0.levels[3] - xi).is_zero());
  for (int m = 0; m < 3; ++m) CHECK(vn0.levels[m].is_zero());
}

TEST_CASE("contracted product map at depth zero is the plain pair product") {
  GramCache<SymbolicQ> gram(2, sym);
  std::mt19937_64 rng(107);
  for (int n = 1; n <= 3; ++n)
    for (int k = 1; n + k <= 5 && k <= 3; ++k) {
      auto joined = testutil::random_rational_tensor(n + k, 2, rng);
      ContractedProductMap<SymbolicQ> w0{0, n, k, 2, Strategy::factored};
      auto lhs = w0.apply(joined, n + k, gram);
      auto rhs = wick_pair_product(joined, n, k, n + k, gram);
      for (int m = 0; m <= n + k; ++m) CHECK((lhs.levels[m] - rhs.levels[m]).is_zero());
    }
}

TEST_CASE("contracted product map: frozen depth-one case") {
  GramCache<SymbolicQ> gram(2, sym);
  std::mt19937_64 rng(109);
  auto xi = testutil::random_rational_tensor(1, 2, rng);
  auto eta = testutil::random_rational_tensor(1, 2, rng);
  ContractedProductMap<SymbolicQ> w1{1, 1, 1, 2, Strategy::factored};
  auto out = w1.apply(tensor_product(xi, eta), 2, gram);
  QPoly pairing;  // plain bilinear pairing of the two one-leg words
  for (int i = 0; i < 2; ++i) pairing += xi.a[i] * eta.a[i];
  CHECK(out.levels[0].a[0] == pairing);
  CHECK(out.levels[1].is_zero());
  CHECK(out.levels[2].is_zero());
  CHECK_THROWS_AS((ContractedProductMap<SymbolicQ>{2, 1, 1, 2, Strategy::factored}
                       .apply(tensor_product(xi, eta), 2, gram)),
                  std::invalid_argument);
}

TEST_CASE("factored and simplified strategies agree symbolically on the full basis") {
  GramCache<SymbolicQ> gram(2, sym);
  for (int n = 1; n <= 3; ++n)
    for (int k = 1; n + k <= 5 && k <= 3; ++k)
      for (int j = 0; j <= std::min(n, k); ++j) {
        const int64_t sz = tensor_size(2, n + k);
        for (int64_t b = 0; b < sz; ++b) {
          auto zeta = Tensor<QPoly>::basis(n + k, 2, b);
          ContractedProductMap<SymbolicQ> wf{j, n, k, 2, Strategy::factored};
          ContractedProductMap<SymbolicQ> ws{j, n, k, 2, Strategy::simplified};
          auto lhs = wf.apply(zeta, n + k, gram);
          auto rhs = ws.apply(zeta, n + k, gram);
          for (int m = 0; m <= n + k; ++m) REQUIRE((lhs.levels[m] - rhs.levels[m]).is_zero());
        }
      }
}

TEST_CASE("strategies agree at the free point and at a rational point") {
  FloatQ q0{0.0};
  GramCache<FloatQ> gram0(2, q0);
  RationalQ qr{Rational(2, 5)};
  GramCache<RationalQ> gramr(2, qr);
  std::mt19937_64 rng(113);
  for (int iter = 0; iter < 4; ++iter) {
    auto zeta_sym = testutil::random_rational_tensor(4, 2, rng);
    for (int j = 0; j <= 2; ++j) {
      ContractedProductMap<FloatQ> wf0{j, 2, 2, 2, Strategy::factored};
      ContractedProductMap<FloatQ> ws0{j, 2, 2, 2, Strategy::simplified};
      auto zf = eval_tensor(zeta_sym, 0.0);
      auto l0 = wf0.apply(zf, 4, gram0), r0 = ws0.apply(zf, 4, gram0);
      for (int m = 0; m <= 4; ++m) CHECK((l0.levels[m] - r0.levels[m]).max_abs() < 1e-14);

      ContractedProductMap<RationalQ> wfr{j, 2, 2, 2, Strategy::factored};
      ContractedProductMap<RationalQ> wsr{j, 2, 2, 2, Strategy::simplified};
      auto zr = eval_tensor(zeta_sym, Rational(2, 5));
      auto lr = wfr.apply(zr, 4, gramr), rr = wsr.apply(zr, 4, gramr);
      for (int m = 0; m <= 4; ++m) CHECK((lr.levels[m] - rr.levels[m]).is_zero());
    }
  }
}

TEST_CASE("cancellation operator: identity at level zero, zero afterwards") {
  auto s0 = cancellation_operator(0, 2, sym);
  CHECK((s0 - LinMap<QPoly>::identity(0, 2)).is_zero());
  for (int p = 1; p <= 5; ++p) {
    auto sp = cancellation_operator(p, 2, sym);
    CHECK(sp.is_zero());
  }
}

TEST_CASE("cancellation at level two is the frozen three-term collapse") {
  // depth 0: identity; depth 1: -(Id + q Swap); depth 2: +q Swap
  auto term0 = split_shuffle(0, 2, 2, sym);
  CHECK((term0 - LinMap<QPoly>::identity(2, 2)).is_zero());
  auto term1 = compose(kron(leg_reversal<QPoly>(1, 2), LinMap<QPoly>::identity(1, 2)),
                       split_shuffle(1, 1, 2, sym));
  CHECK((term1 - q_symmetrizer(2, 2, sym)).is_zero());
  auto term2 = compose(leg_reversal<QPoly>(2, 2), split_shuffle(2, 0, 2, sym));
  CHECK((term2 - leg_reversal<QPoly>(2, 2)).is_zero());
  auto total = term0 - term1 + term2.scaled(QPoly::monomial(1));
  CHECK(total.is_zero());
}

TEST_CASE("per-permutation cancellation: every group is an adjacent twin pair") {
  for (int p = 1; p <= 6; ++p) {
    auto groups = cancellation_groups(p);
    CHECK(static_cast<long long>(groups.size()) == (1LL << (p - 1)));
    for (const auto& g : groups) {
      CHECK(g.contributions == 2);
      CHECK(g.coefficient.is_zero());
      // the group's permutation is head-decreasing for exactly two depths
      comb::Permutation pi{g.image};
      int heads = 0;
      for (int j = 0; j <= p; ++j)
        if (comb::has_decreasing_head(pi, j)) ++heads;
      CHECK(heads == 2);
    }
  }
  auto trivial = cancellation_groups(0);
  REQUIRE(trivial.size() == 1);
  CHECK(trivial[0].coefficient == QPoly(1));
}

TEST_CASE("identity recovery: symbolic, small sizes") {
  GramCache<SymbolicQ> gram(2, sym);
  for (int n = 1; n <= 2; ++n)
    for (int k = 1; k <= 2; ++k) {
      auto res = recovery_identity_check(n, k, n + k, gram, Strategy::factored);
      CHECK(res.exact_zero);
      auto res2 = recovery_identity_check(n, k, n + k, gram, Strategy::simplified);
      CHECK(res2.exact_zero);
    }
}

TEST_CASE("identity recovery at a rational point and in the free case") {
  RationalQ qr{Rational(-3, 7)};
  GramCache<RationalQ> gram(2, qr);
  auto res = recovery_identity_check(3, 2, 5, gram);
  CHECK(res.exact_zero);

  FloatQ q0{0.0};
  GramCache<FloatQ> gram0(2, q0);
  for (int n = 1; n <= 3; ++n)
    for (int k = 1; k <= 3 && n + k <= 6; ++k)
      CHECK(recovery_identity_check(n, k, n + k, gram0).residual < 1e-13);
}

TEST_CASE("every single-exponent perturbation breaks some adjacent level") {
  for (int bump = 0; bump <= 6; ++bump) {
    const int broke_at = perturbation_breaks_at(bump, 2, sym);
    CHECK(broke_at >= 0);
    CHECK(broke_at <= bump + 1);
  }
}

TEST_CASE("cross-backend: depth maps at q = 1/2 match float") {
  GramCache<SymbolicQ> gsym(2, sym);
  FloatQ flt{0.5};
  GramCache<FloatQ> gflt(2, flt);
  std::mt19937_64 rng(127);
  auto zeta = testutil::random_rational_tensor(4, 2, rng);
  for (int j = 0; j <= 2; ++j) {
    ContractedProductMap<SymbolicQ> we{j, 2, 2, 2, Strategy::factored};
    ContractedProductMap<FloatQ> wf{j, 2, 2, 2, Strategy::factored};
    auto exact = we.apply(zeta, 4, gsym);
    auto approx = wf.apply(eval_tensor(zeta, 0.5), 4, gflt);
    for (int m = 0; m <= 4; ++m)
      CHECK(relative_gap(eval_tensor(exact.levels[m], 0.5), approx.levels[m]) < 1e-12);
  }
}
