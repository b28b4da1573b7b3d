#ifndef QWICK_BIGINT_HPP
#define QWICK_BIGINT_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace qwick {

/// Arbitrary-precision signed integer, sign-magnitude with 32-bit limbs
/// (little-endian).  Only what exact rational arithmetic needs: ring ops,
/// truncating divmod, gcd, powers, decimal I/O and a double conversion.
class BigInt {
public:
  BigInt() = default;
  BigInt(long long v);

  static BigInt from_string(const std::string& s);

  bool is_zero() const { return sign_ == 0; }
  int signum() const { return sign_; }

  BigInt operator-() const;
  BigInt operator+(const BigInt& o) const;
  BigInt operator-(const BigInt& o) const;
  BigInt operator*(const BigInt& o) const;
  /// Truncating division (rounds toward zero, like built-in integers).
  BigInt operator/(const BigInt& o) const;
  BigInt operator%(const BigInt& o) const;
  BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
  BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
  BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

  /// quotient and remainder in one pass; remainder has the dividend's sign.
  static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);

  bool operator==(const BigInt& o) const;
  bool operator!=(const BigInt& o) const { return !(*this == o); }
  bool operator<(const BigInt& o) const;
  bool operator<=(const BigInt& o) const { return !(o < *this); }
  bool operator>(const BigInt& o) const { return o < *this; }
  bool operator>=(const BigInt& o) const { return !(*this < o); }

  BigInt abs() const;
  static BigInt gcd(BigInt a, BigInt b);
  BigInt pow(unsigned e) const;

  /// Number of bits in the magnitude (0 for zero).
  int bit_length() const;
  /// Nearest double; overflows to +-inf for huge values.
  double to_double() const;
  std::string to_string() const;

  /// Fits in long long (for fast paths and tests).
  bool fits_int64() const;
  long long to_int64() const;

private:
  int sign_ = 0;                    // -1, 0, +1
  std::vector<uint32_t> mag_;       // little-endian limbs, no leading zeros

  void trim();
  static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
  static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
  static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
  static std::vector<uint32_t> mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
  static void divmod_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                         std::vector<uint32_t>& q, std::vector<uint32_t>& r);
};

}  // namespace qwick

#endif
