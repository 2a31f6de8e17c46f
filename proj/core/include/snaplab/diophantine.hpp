#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "snaplab/bigrational.hpp"
#include "snaplab/certified.hpp"
#include "snaplab/number_class.hpp"
#include "snaplab/spectral.hpp"

namespace snaplab::dio {

struct ContinuedFraction {
  std::vector<BigInt> partial_quotients;  // [a0; a1, a2, ...]
  std::vector<BigRational> convergents;   // p_k / q_k
};

// Euclid expansion, stopping at the exact end or after max_terms terms.
ContinuedFraction continued_fraction(const BigRational& x, int max_terms);

struct ExponentEntry {
  BigRational convergent;
  double mu_lower;  // certified: |x - p/q| < q^{-mu_lower}
};

struct ExponentProbe {
  std::vector<ExponentEntry> entries;
  bool terminated = false;      // exact rational expansion ended
  bool precision_limit = false;  // stopped where the error bound swamps the gap
};

// mu_k = -log|x - p_k/q_k| / log q_k over the convergents with q_k >= 2.
// Liouville constructions are re-truncated at the deepest supported depth.
// Throws PrecisionExhausted when not even the first gap is certified.
ExponentProbe irrationality_exponent_probe(const NumberClass& x, int depth);

struct SequencePoint {
  long l = 0;
  double value = 0.0;
};

struct SmallDenominatorRow {
  long l = 0;
  RealInterval value;  // encloses |sin((l + shift) beta pi)|
};

struct SmallDenominatorTable {
  long shift_num = 0;
  long shift_den = 1;
  std::vector<SmallDenominatorRow> rows;
  // -slope of log(block minimum) against log(block start) over dyadic blocks;
  // +inf when some block minimum is an exact zero.
  double decay_exponent = 0.0;

  std::vector<SequencePoint> lower_bounds() const;
};

// Rows start at l = 1 for a zero shift, else at l = 0.
SmallDenominatorTable small_denominator_sequence(const NumberClass& beta, long shift_num,
                                                 long shift_den, long L);

struct SlowDecayResult {
  bool passes = false;
  double C = 0.0;
  long argmin = 0;
};

// C = min value * (1 + l)^M; passes iff C > 0 and no value is zero.
SlowDecayResult slow_decay_check(std::span<const SequencePoint> table, int M);

struct JointBoundResult {
  double C = 0.0;
  bool passes = false;
  double argmin_x = 0.0;
  std::size_t points = 0;
};

// min over x in (0, x_max] of (|sin x| + |sin alpha x|) / x * (1 + x)^N. The
// sum is concave between consecutive zeros of either sine, so the sweep
// evaluates a uniform grid plus every zero, where the sine values are
// certified from alpha's rational enclosure.
JointBoundResult joint_sine_lower_bound_check(const NumberClass& alpha, int N, double x_max,
                                              std::size_t samples);

struct SlowlyDecreasingRow {
  double xi = 0.0;
  std::optional<double> eta;  // witness, absent on failure
  double value = 0.0;         // best |F(eta)| found
  double threshold = 0.0;     // (A + xi)^{-A}
};

struct SlowlyDecreasingReport {
  std::vector<SlowlyDecreasingRow> rows;
  bool passes = false;
};

SlowlyDecreasingReport slowly_decreasing_probe(const spectral::MultiplierSymbol& symbol, double A,
                                               double xi_max, std::size_t samples = 1001);

struct BezoutPair {
  long k = 0;
  long l = 0;
};

// k p + l q = 1 with the smallest |k| (ties to positive k).
BezoutPair bezout(long p, long q);

struct OddTypeReport {
  long qmax = 0;
  int depth = 0;
  BigRational tail_bound;
  long checked = 0;
  std::vector<long> violations;
  double min_ratio = 0.0;  // min over q of dist_lower * q^3; > 1 means pass
  long argmin_q = 0;
  BigRational min_margin;  // dist_lower - q^{-3} at argmin_q

  bool passes() const { return violations.empty() && checked > 0; }
};

// For beta = sum 2^{-j!} checks |q beta - [q beta]| > q^{-3} on every odd
// q in (64, qmax] exactly. Depth is chosen so that qmax * tail < qmax^{-3} / 2
// unless given explicitly.
OddTypeReport odd_type_verifier(long qmax, std::optional<int> depth = std::nullopt);

struct DoubledWitness {
  int N = 0;
  int k = 0;  // construction level of the approximant
  BigInt p1, q1;
  BigInt doubled_p, doubled_q;  // 2 p1 / 2 q1, unreduced
  BigRational distance_bound;   // certified |x - p1/q1| upper bound
  BigRational target;           // (2 q1)^{-N}
  bool verified = false;
};

// For a Liouville construction x, finds p1/q1 with |x - p1/q1| < q1^{-2N} and
// checks that the even-denominator fraction 2p1/2q1 satisfies
// |x - 2p1/2q1| < (2q1)^{-N}.
DoubledWitness doubled_liouville_bound(const NumberClass& x, int N);

}  // namespace snaplab::dio
