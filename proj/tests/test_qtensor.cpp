#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qwick/convert.hpp"
#include "qwick/qgram.hpp"
#include "test_util.hpp"

using namespace qwick;

namespace {
const SymbolicQ sym;

Tensor<QPoly> basis2(int legs, int64_t flat) { return Tensor<QPoly>::basis(legs, 2, flat); }
}  // namespace

TEST_CASE("q-symmetrizer: identity at level one, swap structure at level two") {
  auto p1 = q_symmetrizer(1, 3, sym);
  CHECK((p1 - LinMap<QPoly>::identity(1, 3)).is_zero());

  auto p2 = q_symmetrizer(2, 2, sym);
  // expected: Id + q * Swap
  LinMap<QPoly> expected = LinMap<QPoly>::identity(2, 2);
  expected.at(1, 2) = expected.at(1, 2) + QPoly::monomial(1);
  expected.at(2, 1) = expected.at(2, 1) + QPoly::monomial(1);
  expected.at(0, 0) = QPoly(1) + QPoly::monomial(1);
  expected.at(3, 3) = QPoly(1) + QPoly::monomial(1);
  CHECK((p2 - expected).is_zero());

  // eigenvectors by hand at q = 1/2: symmetric 1+q, antisymmetric 1-q
  auto pf = eval_map(p2, 0.5);
  Tensor<cplx> symvec(2, 2), anti(2, 2);
  symvec.a[1] = 1.0;
  symvec.a[2] = 1.0;
  anti.a[1] = 1.0;
  anti.a[2] = -1.0;
  CHECK(relative_gap(pf.apply(symvec), symvec.scaled(cplx(1.5, 0))) < 1e-14);
  CHECK(relative_gap(pf.apply(anti), anti.scaled(cplx(0.5, 0))) < 1e-14);
}

TEST_CASE("q-symmetrizer reduces to the identity at q = 0") {
  FloatQ q0{0.0};
  for (int n = 0; n <= 4; ++n) {
    auto p = q_symmetrizer(n, 2, q0);
    CHECK(relative_gap(p, LinMap<cplx>::identity(n, 2)) == 0.0);
  }
}

TEST_CASE("q_inner: frozen examples") {
  GramCache<SymbolicQ> gram(2, sym);
  auto e1 = basis2(1, 0);
  CHECK(q_inner(e1, e1, gram) == QPoly(1));
  auto e11 = basis2(2, 0);
  CHECK(q_inner(e11, e11, gram) == QPoly(1) + QPoly::monomial(1));
  auto e12 = basis2(2, 1), e21 = basis2(2, 2);
  CHECK(q_inner(e12, e21, gram) == QPoly::monomial(1));
}

TEST_CASE("split shuffle: degenerate splits are the identity") {
  for (int a = 0; a <= 3; ++a) {
    CHECK((split_shuffle(a, 0, 2, sym) - LinMap<QPoly>::identity(a, 2)).is_zero());
    CHECK((split_shuffle(0, a, 2, sym) - LinMap<QPoly>::identity(a, 2)).is_zero());
  }
}

TEST_CASE("split shuffle at (1,1) equals the level-two symmetrizer") {
  CHECK((split_shuffle(1, 1, 2, sym) - q_symmetrizer(2, 2, sym)).is_zero());
}

TEST_CASE("split shuffle is trivial in the free case") {
  FloatQ q0{0.0};
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; a + b <= 4; ++b)
      CHECK(relative_gap(split_shuffle(a, b, 2, q0), LinMap<cplx>::identity(a + b, 2)) == 0.0);
}

TEST_CASE("defining factorization of the shuffle operator, symbolically") {
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; a + b <= 4; ++b) {
      auto lhs = q_symmetrizer(a + b, 2, sym);
      auto rhs = compose(kron(q_symmetrizer(a, 2, sym), q_symmetrizer(b, 2, sym)),
                         split_shuffle(a, b, 2, sym));
      CHECK((lhs - rhs).is_zero());
    }
}

TEST_CASE("defining factorization holds symbolically at dimension three") {
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; a + b <= 3; ++b) {
      auto lhs = q_symmetrizer(a + b, 3, sym);
      auto rhs = compose(kron(q_symmetrizer(a, 3, sym), q_symmetrizer(b, 3, sym)),
                         split_shuffle(a, b, 3, sym));
      CHECK((lhs - rhs).is_zero());
    }
}

TEST_CASE("three-factor splitting: both factorizations agree symbolically") {
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 2; ++b)
      for (int c = 0; a + b + c <= 5 && c <= 2; ++c) {
        auto left = split_shuffle3(a, b, c, 2, sym);
        auto right = compose(kron(split_shuffle(a, b, 2, sym), LinMap<QPoly>::identity(c, 2)),
                             split_shuffle(a + b, c, 2, sym));
        CHECK((left - right).is_zero());
      }
  CHECK((split_shuffle3(1, 1, 0, 2, sym) - split_shuffle(1, 1, 2, sym)).is_zero());
}

TEST_CASE("leg reversal: permutation structure and involution") {
  CHECK((leg_reversal<QPoly>(1, 2) - LinMap<QPoly>::identity(1, 2)).is_zero());
  auto swap = leg_reversal<QPoly>(2, 2);
  CHECK(swap.at(1, 2) == QPoly(1));
  CHECK(swap.at(2, 1) == QPoly(1));
  CHECK(swap.at(0, 0) == QPoly(1));
  CHECK((compose(swap, swap) - LinMap<QPoly>::identity(2, 2)).is_zero());

  auto s3 = leg_reversal<QPoly>(3, 2);
  // e1 x e1 x e2 (flat 1) -> e2 x e1 x e1 (flat 4); e1 x e2 x e1 fixed
  auto t = Tensor<QPoly>::basis(3, 2, 1);
  CHECK(s3.apply(t).a[4] == QPoly(1));
  auto fixed = Tensor<QPoly>::basis(3, 2, 2);
  CHECK((s3.apply(fixed) - fixed).is_zero());
}

TEST_CASE("permutation action composes contravariantly") {
  std::mt19937_64 rng(4);
  for (int iter = 0; iter < 20; ++iter) {
    comb::Permutation s = comb::Permutation::identity(4), r = comb::Permutation::identity(4);
    std::shuffle(s.image.begin(), s.image.end(), rng);
    std::shuffle(r.image.begin(), r.image.end(), rng);
    comb::Permutation rs;  // r o s: (r o s)(l) = r(s(l))
    rs.image.resize(4);
    for (int l = 1; l <= 4; ++l) rs.image[l - 1] = r(s(l));
    auto lhs = compose(permutation_map<QPoly>(s, 2), permutation_map<QPoly>(r, 2));
    CHECK((lhs - permutation_map<QPoly>(rs, 2)).is_zero());
  }
}

TEST_CASE("conjugations: involutions, reality, antiunitarity") {
  std::mt19937_64 rng(11);
  GramCache<SymbolicQ> gram(2, sym);
  for (int legs = 1; legs <= 3; ++legs) {
    auto real = testutil::random_real_tensor(legs, 2, rng);
    CHECK((conjugate_i(real) - real).is_zero());
    auto x = testutil::random_rational_tensor(legs, 2, rng);
    auto y = testutil::random_rational_tensor(legs, 2, rng);
    CHECK((conjugate_j(conjugate_j(x)) - x).is_zero());
    CHECK((conjugate_i(conjugate_i(x)) - x).is_zero());
    // antiunitarity with the product linear in the second slot:
    // <Jx, Jy>_q = <y, x>_q = conj(<x, y>_q); J preserves the q-norm
    auto lhs = q_inner(conjugate_j(x), conjugate_j(y), gram);
    CHECK(lhs == q_inner(y, x, gram));
    CHECK(lhs == q_inner(x, y, gram).conj());
    CHECK(q_inner(conjugate_j(x), conjugate_j(x), gram) == q_inner(x, x, gram));
    CHECK(q_inner(conjugate_i(x), conjugate_i(y), gram) == q_inner(y, x, gram));
  }
  // J on a simple real product reverses the legs
  auto e12 = basis2(2, 1);
  auto e21 = basis2(2, 2);
  CHECK((conjugate_j(e12) - e21).is_zero());
}

TEST_CASE("modular pairing: frozen small cases") {
  GramCache<SymbolicQ> gram(2, sym);
  auto e1 = basis2(1, 0), e2 = basis2(1, 1);

  // j = 0 is plain concatenation
  auto x = basis2(2, 3), y = basis2(1, 0);
  CHECK((pair_modular(0, x, y, gram) - tensor_product(x, y)).is_zero());

  auto s = pair_modular(1, e1, e1, gram);
  REQUIRE(s.legs == 0);
  CHECK(s.a[0] == QPoly(1));
  CHECK(pair_modular(1, e1, e2, gram).a[0].is_zero());

  auto e12 = basis2(2, 1);
  auto out = pair_modular(1, e12, e2, gram);
  REQUIRE(out.legs == 1);
  CHECK(out.a[0] == QPoly(1));
  CHECK(out.a[1].is_zero());

  CHECK_THROWS_AS(pair_modular(2, e1, e1, gram), std::invalid_argument);
}

TEST_CASE("plain and modular pairings agree up to j = 1 and differ at j = 2") {
  GramCache<SymbolicQ> gram(2, sym);
  std::mt19937_64 rng(17);
  for (int iter = 0; iter < 10; ++iter) {
    auto x = testutil::random_rational_tensor(2, 2, rng);
    auto y = testutil::random_rational_tensor(2, 2, rng);
    CHECK((pair_plain(0, x, y, gram) - pair_modular(0, x, y, gram)).is_zero());
    CHECK((pair_plain(1, x, y, gram) - pair_modular(1, x, y, gram)).is_zero());
  }
  auto e12 = basis2(2, 1);
  CHECK(pair_modular(2, e12, e12, gram).a[0] == QPoly::monomial(1));
  CHECK(pair_plain(2, e12, e12, gram).a[0] == QPoly(1));
}

TEST_CASE("plain pairing is the modular pairing after reversing the contracted block") {
  GramCache<SymbolicQ> gram(2, sym);
  std::mt19937_64 rng(23);
  for (int b = 2; b <= 3; ++b)
    for (int iter = 0; iter < 6; ++iter) {
      auto x = testutil::random_rational_tensor(2, 2, rng);
      auto y = testutil::random_rational_tensor(b, 2, rng);
      auto lhs = pair_plain(2, x, y, gram);
      auto rhs = pair_modular(2, x, apply_leg_reversal_range(y, 0, 2), gram);
      CHECK((lhs - rhs).is_zero());
    }
}

TEST_CASE("long pairing equals staged pairing with an absorbed shuffle") {
  GramCache<SymbolicQ> gram(2, sym);
  for (int s = 0; s <= 2; ++s)
    for (int j = 0; s + j <= 3 && j <= 2; ++j) {
      auto res = pairing_composition_check(s, j, gram);
      CHECK(res.exact_zero);
      CHECK(res.residual == 0.0);
    }
}

TEST_CASE("scatter shuffle application matches the dense matrix") {
  std::mt19937_64 rng(29);
  for (int off = 0; off <= 1; ++off)
    for (int a = 1; a <= 2; ++a)
      for (int b = 1; a + b + off <= 4; ++b) {
        const int legs = off + a + b + 1;
        if (legs > 5) continue;
        auto t = testutil::random_rational_tensor(legs, 2, rng);
        auto dense = kron(kron(LinMap<QPoly>::identity(off, 2), split_shuffle(a, b, 2, sym)),
                          LinMap<QPoly>::identity(legs - off - a - b, 2));
        CHECK((apply_split_shuffle(t, off, a, b, sym) - dense.apply(t)).is_zero());
      }
}

TEST_CASE("recursive symmetrizer application matches the dense matrix") {
  std::mt19937_64 rng(31);
  GramCache<SymbolicQ> gram(2, sym);
  for (int legs = 1; legs <= 5; ++legs) {
    auto t = testutil::random_rational_tensor(legs, 2, rng);
    auto dense = gram.pqn(legs).apply(t);
    auto recursive = apply_q_symmetrizer(t, gram, /*dense_cap=*/1);
    CHECK((recursive - dense).is_zero());
  }
}

TEST_CASE("rejection paths: shapes, splits, ceilings") {
  GramCache<SymbolicQ> gram(2, sym);
  auto a = Tensor<QPoly>::basis(2, 2, 0);
  auto b = Tensor<QPoly>::basis(3, 2, 0);
  CHECK_THROWS_AS(q_inner(a, b, gram), std::invalid_argument);
  CHECK_THROWS_AS(a + b, std::invalid_argument);
  CHECK_THROWS_AS(q_symmetrizer(13, 2, sym), std::invalid_argument);
  CHECK_THROWS_AS(split_shuffle(13, 0, 2, sym), std::invalid_argument);
  CHECK_THROWS_AS(contract_modular(2, a, 1, 1, gram), std::invalid_argument);
  CHECK_THROWS_AS(apply_split_shuffle(a, 1, 1, 1, sym), std::invalid_argument);
  CHECK_THROWS_AS(compose(q_symmetrizer(2, 2, sym), q_symmetrizer(3, 2, sym)),
                  std::invalid_argument);
  CHECK_THROWS_AS(tensor_size(2, 60), std::invalid_argument);
}

TEST_CASE("gram cache enforces its ceiling and is idempotent") {
  GramCache<SymbolicQ> gram(2, sym, 4);
  CHECK_THROWS_AS(gram.pqn(5), std::invalid_argument);
  auto a = gram.pqn(3);
  auto b = gram.pqn(3);
  CHECK((a - b).is_zero());
}

TEST_CASE("cross-backend: symbolic objects at q = 1/2 match float builds") {
  FloatQ flt{0.5};
  Rational half(1, 2);
  for (int n = 0; n <= 4; ++n) {
    auto gap = relative_gap(eval_map(q_symmetrizer(n, 2, sym), 0.5), q_symmetrizer(n, 2, flt));
    CHECK(gap < 1e-12);
  }
  for (int a = 1; a <= 2; ++a)
    for (int b = 1; b <= 2; ++b) {
      auto gap = relative_gap(eval_map(split_shuffle(a, b, 2, sym), 0.5),
                              split_shuffle(a, b, 2, flt));
      CHECK(gap < 1e-12);
    }
  // q_inner through the exact-rational backend agrees with float
  std::mt19937_64 rng(37);
  GramCache<SymbolicQ> gsym(2, sym);
  GramCache<FloatQ> gflt(2, flt);
  for (int legs = 1; legs <= 3; ++legs) {
    auto xs = testutil::random_rational_tensor(legs, 2, rng);
    auto ys = testutil::random_rational_tensor(legs, 2, rng);
    auto exact = q_inner(xs, ys, gsym).eval(half);
    auto approx = q_inner(eval_tensor(xs, 0.5), eval_tensor(ys, 0.5), gflt);
    CHECK(std::abs(to_cplx(exact) - approx) < 1e-12);
  }
}
