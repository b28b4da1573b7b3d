#ifndef QWICK_SAMPLING_HPP
#define QWICK_SAMPLING_HPP

#include <random>

#include "qwick/tensor.hpp"

namespace qwick::sampling {

/// Random tensor with small rational complex entries, carried as a
/// degree-zero symbolic tensor so one draw serves every backend.
inline Tensor<QPoly> rational_tensor(int legs, int dim, std::mt19937_64& rng,
                                     bool complex_entries = true) {
  Tensor<QPoly> t(legs, dim);
  for (int64_t i = 0; i < t.size(); ++i) {
    Rational re(static_cast<long long>(rng() % 9) - 4, 1 + static_cast<long long>(rng() % 3));
    Rational im = complex_entries ? Rational(static_cast<long long>(rng() % 9) - 4,
                                             1 + static_cast<long long>(rng() % 3))
                                  : Rational(0);
    t.a[i] = QPoly(CRat(re, im));
  }
  return t;
}

/// Random rational deformation parameter with |q| <= 9/10.
inline Rational rational_q(std::mt19937_64& rng) {
  long long num = 0;
  while (num == 0) num = static_cast<long long>(rng() % 19) - 9;
  const long long den = 10 + static_cast<long long>(rng() % 10);
  return Rational(num, den);
}

/// Random complex float tensor with entries in the unit box.
inline Tensor<cplx> box_tensor(int legs, int dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Tensor<cplx> t(legs, dim);
  for (int64_t i = 0; i < t.size(); ++i) t.a[i] = cplx(u(rng), u(rng));
  return t;
}

}  // namespace qwick::sampling

#endif
