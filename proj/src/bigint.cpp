#include "qwick/bigint.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace qwick {

namespace {
constexpr uint64_t kBase = 1ull << 32;
}

BigInt::BigInt(long long v) {
  if (v == 0) return;
  sign_ = v < 0 ? -1 : 1;
  // avoid UB on LLONG_MIN
  uint64_t m = v < 0 ? ~static_cast<uint64_t>(v) + 1 : static_cast<uint64_t>(v);
  mag_.push_back(static_cast<uint32_t>(m));
  if (m >> 32) mag_.push_back(static_cast<uint32_t>(m >> 32));
}

BigInt BigInt::from_string(const std::string& s) {
  BigInt r;
  size_t i = 0;
  int sgn = 1;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    sgn = s[i] == '-' ? -1 : 1;
    ++i;
  }
  if (i >= s.size()) throw std::invalid_argument("BigInt: empty numeral");
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("BigInt: bad digit");
    r = r * BigInt(10) + BigInt(s[i] - '0');
  }
  if (!r.is_zero()) r.sign_ = sgn;
  return r;
}

void BigInt::trim() {
  while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
  if (mag_.empty()) sign_ = 0;
}

int BigInt::cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

std::vector<uint32_t> BigInt::add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
  const std::vector<uint32_t>& x = a.size() >= b.size() ? a : b;
  const std::vector<uint32_t>& y = a.size() >= b.size() ? b : a;
  std::vector<uint32_t> r(x.size() + 1, 0);
  uint64_t carry = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    uint64_t s = carry + x[i] + (i < y.size() ? y[i] : 0);
    r[i] = static_cast<uint32_t>(s);
    carry = s >> 32;
  }
  r[x.size()] = static_cast<uint32_t>(carry);
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

// requires |a| >= |b|
std::vector<uint32_t> BigInt::sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
  std::vector<uint32_t> r(a.size(), 0);
  int64_t borrow = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    int64_t s = static_cast<int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0);
    if (s < 0) {
      s += static_cast<int64_t>(kBase);
      borrow = 1;
    } else {
      borrow = 0;
    }
    r[i] = static_cast<uint32_t>(s);
  }
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

std::vector<uint32_t> BigInt::mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<uint32_t> r(a.size() + b.size(), 0);
  for (size_t i = 0; i < a.size(); ++i) {
    uint64_t carry = 0;
    uint64_t ai = a[i];
    for (size_t j = 0; j < b.size(); ++j) {
      uint64_t s = static_cast<uint64_t>(r[i + j]) + ai * b[j] + carry;
      r[i + j] = static_cast<uint32_t>(s);
      carry = s >> 32;
    }
    size_t k = i + b.size();
    while (carry) {
      uint64_t s = static_cast<uint64_t>(r[k]) + carry;
      r[k] = static_cast<uint32_t>(s);
      carry = s >> 32;
      ++k;
    }
  }
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

// Knuth algorithm D on 32-bit limbs.
void BigInt::divmod_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                        std::vector<uint32_t>& q, std::vector<uint32_t>& r) {
  if (b.empty()) throw std::domain_error("BigInt: division by zero");
  if (cmp_mag(a, b) < 0) {
    q.clear();
    r = a;
    return;
  }
  if (b.size() == 1) {
    uint64_t d = b[0], rem = 0;
    q.assign(a.size(), 0);
    for (size_t i = a.size(); i-- > 0;) {
      uint64_t cur = (rem << 32) | a[i];
      q[i] = static_cast<uint32_t>(cur / d);
      rem = cur % d;
    }
    while (!q.empty() && q.back() == 0) q.pop_back();
    r.clear();
    if (rem) r.push_back(static_cast<uint32_t>(rem));
    return;
  }

  // normalize so the divisor's top limb has its high bit set
  int shift = 0;
  for (uint32_t top = b.back(); !(top & 0x80000000u); top <<= 1) ++shift;
  const size_t n = b.size();
  const size_t m = a.size() - n;
  std::vector<uint32_t> u(a.size() + 1, 0), v(n, 0);
  uint32_t carry_u = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    uint64_t s = (static_cast<uint64_t>(a[i]) << shift) | carry_u;
    u[i] = static_cast<uint32_t>(s);
    carry_u = static_cast<uint32_t>(s >> 32);
  }
  u[a.size()] = carry_u;
  uint32_t carry_v = 0;
  for (size_t i = 0; i < n; ++i) {
    uint64_t s = (static_cast<uint64_t>(b[i]) << shift) | carry_v;
    v[i] = static_cast<uint32_t>(s);
    carry_v = static_cast<uint32_t>(s >> 32);
  }

  q.assign(m + 1, 0);
  const uint64_t vtop = v[n - 1];
  const uint64_t vsecond = v[n - 2];
  for (size_t j = m + 1; j-- > 0;) {
    uint64_t num = (static_cast<uint64_t>(u[j + n]) << 32) | u[j + n - 1];
    uint64_t qhat, rhat;
    if (u[j + n] >= vtop) {
      qhat = kBase - 1;
      rhat = num - qhat * vtop;
    } else {
      qhat = num / vtop;
      rhat = num % vtop;
    }
    while (rhat < kBase && qhat * vsecond > ((rhat << 32) | u[j + n - 2])) {
      --qhat;
      rhat += vtop;
    }
    // multiply-subtract
    int64_t borrow = 0;
    uint64_t carry = 0;
    for (size_t i = 0; i < n; ++i) {
      uint64_t p = qhat * v[i] + carry;
      carry = p >> 32;
      int64_t t = static_cast<int64_t>(u[i + j]) - static_cast<int64_t>(p & 0xffffffffull) - borrow;
      if (t < 0) {
        t += static_cast<int64_t>(kBase);
        borrow = 1;
      } else {
        borrow = 0;
      }
      u[i + j] = static_cast<uint32_t>(t);
    }
    int64_t t = static_cast<int64_t>(u[j + n]) - static_cast<int64_t>(carry) - borrow;
    if (t < 0) {
      // qhat was one too large: add the divisor back
      t += static_cast<int64_t>(kBase);
      --qhat;
      uint64_t c2 = 0;
      for (size_t i = 0; i < n; ++i) {
        uint64_t s = static_cast<uint64_t>(u[i + j]) + v[i] + c2;
        u[i + j] = static_cast<uint32_t>(s);
        c2 = s >> 32;
      }
      t += static_cast<int64_t>(c2);
      t &= 0xffffffffll;
    }
    u[j + n] = static_cast<uint32_t>(t);
    q[j] = static_cast<uint32_t>(qhat);
  }
  while (!q.empty() && q.back() == 0) q.pop_back();

  // denormalize remainder
  r.assign(n, 0);
  uint32_t carry_down = 0;
  for (size_t i = n; i-- > 0;) {
    uint64_t cur = (static_cast<uint64_t>(carry_down) << 32) | u[i];
    r[i] = static_cast<uint32_t>(cur >> shift);
    carry_down = shift ? static_cast<uint32_t>(cur & ((1u << shift) - 1)) : 0;
  }
  while (!r.empty() && r.back() == 0) r.pop_back();
}

BigInt BigInt::operator-() const {
  BigInt r = *this;
  r.sign_ = -r.sign_;
  return r;
}

BigInt BigInt::operator+(const BigInt& o) const {
  if (sign_ == 0) return o;
  if (o.sign_ == 0) return *this;
  BigInt r;
  if (sign_ == o.sign_) {
    r.mag_ = add_mag(mag_, o.mag_);
    r.sign_ = sign_;
  } else {
    int c = cmp_mag(mag_, o.mag_);
    if (c == 0) return BigInt();
    if (c > 0) {
      r.mag_ = sub_mag(mag_, o.mag_);
      r.sign_ = sign_;
    } else {
      r.mag_ = sub_mag(o.mag_, mag_);
      r.sign_ = o.sign_;
    }
  }
  r.trim();
  return r;
}

BigInt BigInt::operator-(const BigInt& o) const { return *this + (-o); }

BigInt BigInt::operator*(const BigInt& o) const {
  BigInt r;
  if (sign_ == 0 || o.sign_ == 0) return r;
  r.mag_ = mul_mag(mag_, o.mag_);
  r.sign_ = sign_ * o.sign_;
  r.trim();
  return r;
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
  std::vector<uint32_t> qm, rm;
  divmod_mag(a.mag_, b.mag_, qm, rm);
  q = BigInt();
  r = BigInt();
  q.mag_ = std::move(qm);
  r.mag_ = std::move(rm);
  q.sign_ = q.mag_.empty() ? 0 : a.sign_ * b.sign_;
  r.sign_ = r.mag_.empty() ? 0 : a.sign_;
  q.trim();
  r.trim();
}

BigInt BigInt::operator/(const BigInt& o) const {
  BigInt q, r;
  divmod(*this, o, q, r);
  return q;
}

BigInt BigInt::operator%(const BigInt& o) const {
  BigInt q, r;
  divmod(*this, o, q, r);
  return r;
}

bool BigInt::operator==(const BigInt& o) const {
  return sign_ == o.sign_ && mag_ == o.mag_;
}

bool BigInt::operator<(const BigInt& o) const {
  if (sign_ != o.sign_) return sign_ < o.sign_;
  int c = cmp_mag(mag_, o.mag_);
  return sign_ >= 0 ? c < 0 : c > 0;
}

BigInt BigInt::abs() const {
  BigInt r = *this;
  if (r.sign_ < 0) r.sign_ = 1;
  return r;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
  a = a.abs();
  b = b.abs();
  while (!b.is_zero()) {
    BigInt r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

BigInt BigInt::pow(unsigned e) const {
  BigInt base = *this, r(1);
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

int BigInt::bit_length() const {
  if (mag_.empty()) return 0;
  int bits = 32 * static_cast<int>(mag_.size() - 1);
  uint32_t top = mag_.back();
  while (top) {
    ++bits;
    top >>= 1;
  }
  return bits;
}

double BigInt::to_double() const {
  if (sign_ == 0) return 0.0;
  int bl = bit_length();
  double v;
  if (bl <= 63) {
    uint64_t m = mag_[0];
    if (mag_.size() > 1) m |= static_cast<uint64_t>(mag_[1]) << 32;
    v = static_cast<double>(m);
  } else {
    // top 64 bits of the magnitude, then scale by the discarded bit count
    uint64_t m = 0;
    int taken = 0;
    for (size_t i = mag_.size(); i-- > 0 && taken < 64;) {
      m = (m << 32) | mag_[i];
      taken += 32;
    }
    int top_used = bl - 32 * (static_cast<int>(mag_.size()) - 1);  // bits in top limb
    int have = top_used + (taken - 32);                            // bits held in m
    if (have > 64) {
      m >>= (have - 64);
      have = 64;
    }
    v = std::ldexp(static_cast<double>(m), bl - have);
  }
  return sign_ < 0 ? -v : v;
}

std::string BigInt::to_string() const {
  if (is_zero()) return "0";
  std::vector<uint32_t> tmp = mag_;
  std::string digits;
  while (!tmp.empty()) {
    uint64_t rem = 0;
    for (size_t i = tmp.size(); i-- > 0;) {
      uint64_t cur = (rem << 32) | tmp[i];
      tmp[i] = static_cast<uint32_t>(cur / 1000000000ull);
      rem = cur % 1000000000ull;
    }
    while (!tmp.empty() && tmp.back() == 0) tmp.pop_back();
    for (int k = 0; k < 9; ++k) {
      digits.push_back(static_cast<char>('0' + rem % 10));
      rem /= 10;
    }
  }
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  if (sign_ < 0) digits.push_back('-');
  return std::string(digits.rbegin(), digits.rend());
}

bool BigInt::fits_int64() const {
  if (bit_length() < 63) return true;
  if (bit_length() > 63) return false;
  return false;  // magnitude needs 63 bits: only LLONG_MIN fits, not worth it
}

long long BigInt::to_int64() const {
  uint64_t m = 0;
  if (!mag_.empty()) m = mag_[0];
  if (mag_.size() > 1) m |= static_cast<uint64_t>(mag_[1]) << 32;
  long long v = static_cast<long long>(m);
  return sign_ < 0 ? -v : v;
}

}  // namespace qwick
