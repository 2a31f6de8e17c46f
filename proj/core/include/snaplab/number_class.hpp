#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "snaplab/bigrational.hpp"

namespace snaplab::dio {

enum class NumberKind { Rational, IrrationalBounded, Liouville, OddTypeLiouville };

std::string_view to_string(NumberKind kind) noexcept;

// x = sum_{j >= 1} a_j base^{-j!}, the coefficients cycling through `coeffs`.
struct LiouvilleRule {
  long base = 10;
  std::vector<long> coeffs{1};
  int depth = 0;  // truncation depth J of the stored value

  long coefficient(int j) const { return coeffs[static_cast<std::size_t>(j - 1) % coeffs.size()]; }
  bool all_ones() const;
};

// Symbolic descriptor of a real number: what kind of number it is, a rational
// truncation, and a certified bound |x - value| <= error_bound.
struct NumberClass {
  NumberKind kind = NumberKind::Rational;
  BigRational value;
  BigRational error_bound;
  // Irrationality measure certificate for IrrationalBounded: |x - p/q| >= c q^-measure.
  int measure = 0;
  LiouvilleRule rule;  // Liouville kinds only
  long scale = 1;      // x = scale * (construction)
  std::string label;

  bool is_exact() const { return error_bound.sign() == 0; }
  bool is_irrational() const { return kind != NumberKind::Rational; }
  double approx() const { return value.to_double(); }
  // Same class re-truncated at depth J (Liouville kinds only).
  NumberClass at_depth(int J) const;
};

// Largest supported truncation depth; base^{8!} is out of desk scale.
inline constexpr int kMaxLiouvilleDepth = 7;

unsigned long factorial(int j);

// sum_{j <= J} a_j base^{-j!}, exact.
BigRational liouville_sum(const LiouvilleRule& rule, int J);

// base^{-(J+1)! + 1}, which bounds the tail when every a_j <= base - 1.
BigRational liouville_tail_bound(long base, int J);

NumberClass rational_class(const BigRational& value);
NumberClass irrational_bounded(const BigRational& approx, const BigRational& error, int measure,
                               std::string label);
// sqrt(d) for non-square d > 1, truncated to `bits` binary digits; measure 2.
NumberClass sqrt_class(long d, int bits = 256);
// (1 + sqrt 5) / 2; measure 2.
NumberClass golden_class(int bits = 256);
// pi or e with a caller-supplied measure bound.
NumberClass pi_class(int measure, int bits = 256);
NumberClass e_class(int measure, int bits = 256);

// Coefficients must lie in {1, ..., base-1}. An odd base gives a number of
// odd type (all approximants have odd denominators base^{k!}).
NumberClass liouville_truncation(long base, const std::vector<long>& coeffs, int J);
// Ternary construction sum c_j 3^{-j!} with c_j in {0, 1, 2}, not all zero.
NumberClass odd_type_truncation(const std::vector<long>& coeffs, int J);

NumberClass scaled(const NumberClass& x, long factor);

// Text forms used by the CLI:
//   P/Q | rational:P/Q | sqrt:D | golden | pi:MU | e:MU
//   liouville:B:C1,C2,...:J | oddtype:C1,...:J | K*<form>
NumberClass parse_number_class(std::string_view text);

}  // namespace snaplab::dio
