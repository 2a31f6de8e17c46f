#pragma once

#include <compare>
#include <string>

#include "snaplab/bigrational.hpp"

namespace snaplab::dio {

// A real number mantissa * 2^exponent with a double mantissa in [0.5, 1)
// (or zero). Keeps magnitudes like 10^-4320 that underflow a double.
class ScaledReal {
public:
  enum class Round { Down, Up, Nearest };

  ScaledReal() = default;
  ScaledReal(double mantissa, long exponent);

  static ScaledReal from_double(double v);
  static ScaledReal from_rational(const BigRational& v, Round r = Round::Nearest);

  double mantissa() const noexcept { return mantissa_; }
  long exponent() const noexcept { return exponent_; }
  bool is_zero() const noexcept { return mantissa_ == 0.0; }
  int sign() const noexcept { return mantissa_ > 0 ? 1 : (mantissa_ < 0 ? -1 : 0); }

  // May underflow to 0 or overflow to inf.
  double to_double() const;
  double log2_abs() const;
  double log10_abs() const;
  // Decimal scientific notation, e.g. "3.14159e-4320".
  std::string to_string(int significant = 6) const;

  friend ScaledReal operator*(const ScaledReal& a, const ScaledReal& b);
  friend ScaledReal operator/(const ScaledReal& a, const ScaledReal& b);
  friend bool operator==(const ScaledReal& a, const ScaledReal& b) = default;
  friend std::partial_ordering operator<=>(const ScaledReal& a, const ScaledReal& b);

private:
  double mantissa_ = 0.0;
  long exponent_ = 0;
};

struct RealInterval {
  ScaledReal lo;
  ScaledReal hi;

  bool contains_zero() const { return lo.sign() <= 0 && hi.sign() >= 0; }
  bool is_exact_zero() const { return lo.is_zero() && hi.is_zero(); }
  // (hi - lo) / hi in double; 0 for an exact zero.
  double relative_width() const;
};

// Distance from x to the nearest integer, exact.
BigRational distance_to_integer(const BigRational& x);

// Nearest integer, ties to even.
BigInt nearest_integer(const BigRational& x);

// Certified enclosure of |sin(pi * x)|. The argument is reduced exactly, so
// the result depends only on x mod 1 and an integer argument gives exactly 0.
RealInterval exact_sine_abs(const BigRational& theta_over_pi);

// Enclosure of |sin(pi * y)| over all y with |y - center| <= radius.
RealInterval sine_abs_enclosure(const BigRational& center, const BigRational& radius);

// pi as a certified interval of rationals with the given number of bits.
BigRational pi_lower(int bits = 128);
BigRational pi_upper(int bits = 128);

}  // namespace snaplab::dio
