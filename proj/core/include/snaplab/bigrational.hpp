#pragma once

#include <compare>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace snaplab::dio {

using BigInt = mpz_class;

// Reduced fraction with positive denominator.
class BigRational {
public:
  BigRational() = default;
  BigRational(long n) : q_(n) {}  // NOLINT(google-explicit-constructor)
  explicit BigRational(const BigInt& n) : q_(n) {}
  BigRational(const BigInt& num, const BigInt& den);
  explicit BigRational(const mpq_class& q);

  // "P/Q" or "P".
  static BigRational parse(std::string_view text);

  BigInt numerator() const { return q_.get_num(); }
  BigInt denominator() const { return q_.get_den(); }
  const mpq_class& raw() const noexcept { return q_; }

  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }
  BigInt floor() const;
  BigRational abs() const;
  double to_double() const { return q_.get_d(); }
  std::string to_string() const;

  BigRational& operator+=(const BigRational& o);
  BigRational& operator-=(const BigRational& o);
  BigRational& operator*=(const BigRational& o);
  BigRational& operator/=(const BigRational& o);

  friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
  friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
  friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
  friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }
  friend BigRational operator-(const BigRational& a) { return BigRational(mpq_class(-a.q_)); }

  friend bool operator==(const BigRational& a, const BigRational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const BigRational& a, const BigRational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

private:
  mpq_class q_{0};
};

// base^exp for exp >= 0.
BigInt pow_int(long base, unsigned long exp);
BigRational pow(const BigRational& x, long exp);

}  // namespace snaplab::dio
