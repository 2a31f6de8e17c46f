#include "snaplab/diophantine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "snaplab/error.hpp"

namespace snaplab::dio {

namespace {

bool is_liouville(const NumberClass& x) {
  return x.kind == NumberKind::Liouville || x.kind == NumberKind::OddTypeLiouville;
}

double log2_of(const BigRational& x, ScaledReal::Round r) {
  return ScaledReal::from_rational(x, r).log2_abs();
}

// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double den = n * sxx - sx * sx;
  return den == 0.0 ? 0.0 : (n * sxy - sx * sy) / den;
}

}  // namespace

ContinuedFraction continued_fraction(const BigRational& x, int max_terms) {
  if (max_terms < 1) raise(ErrorCode::InvalidArgument, "max_terms must be >= 1");
  ContinuedFraction cf;
  BigInt n = x.numerator();
  BigInt d = x.denominator();
  BigInt p_prev = 1, q_prev = 0;  // p_{-1}, q_{-1}
  BigInt p_prev2 = 0, q_prev2 = 1;
  while (static_cast<int>(cf.partial_quotients.size()) < max_terms) {
    BigInt a;
    mpz_fdiv_q(a.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    const BigInt p = a * p_prev + p_prev2;
    const BigInt q = a * q_prev + q_prev2;
    cf.partial_quotients.push_back(a);
    cf.convergents.emplace_back(p, q);
    p_prev2 = p_prev;
    q_prev2 = q_prev;
    p_prev = p;
    q_prev = q;
    const BigInt r = n - a * d;
    if (r == 0) break;
    n = d;
    d = r;
  }
  return cf;
}

ExponentProbe irrationality_exponent_probe(const NumberClass& x, int depth) {
  if (depth < 1) raise(ErrorCode::InvalidArgument, "depth must be >= 1");
  const NumberClass v =
      is_liouville(x) && x.rule.depth < kMaxLiouvilleDepth ? x.at_depth(kMaxLiouvilleDepth) : x;
  ExponentProbe probe;
  BigInt n = v.value.numerator();
  BigInt d = v.value.denominator();
  BigInt p_prev = 1, q_prev = 0, p_prev2 = 0, q_prev2 = 1;
  while (static_cast<int>(probe.entries.size()) < depth) {
    BigInt a;
    mpz_fdiv_q(a.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    const BigInt p = a * p_prev + p_prev2;
    const BigInt q = a * q_prev + q_prev2;
    p_prev2 = p_prev;
    q_prev2 = q_prev;
    p_prev = p;
    q_prev = q;
    const BigInt r = n - a * d;
    n = d;
    d = r;

    const BigRational c(p, q);
    const BigRational gap = (v.value - c).abs();
    if (gap.sign() == 0 && v.is_exact()) {
      probe.terminated = true;
      break;
    }
    if (gap <= v.error_bound) {
      probe.precision_limit = true;
      break;
    }
    if (q >= 2) {
      const double num = -log2_of(gap + v.error_bound, ScaledReal::Round::Up);
      const double den = log2_of(BigRational(q), ScaledReal::Round::Up);
      // Shave a relative ulp-scale margin so the double quotient stays a lower bound.
      probe.entries.push_back({c, num / den * (1.0 - 1e-12)});
    }
    if (r == 0) {
      // Expansion of the truncation ended; any further term is uncertified.
      probe.precision_limit = !v.is_exact();
      probe.terminated = v.is_exact();
      break;
    }
  }
  if (probe.entries.empty() && probe.precision_limit) {
    raise(ErrorCode::PrecisionExhausted, "error bound exceeds the first convergent gap");
  }
  return probe;
}

std::vector<SequencePoint> SmallDenominatorTable::lower_bounds() const {
  std::vector<SequencePoint> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back({r.l, r.value.lo.to_double()});
  return out;
}

SmallDenominatorTable small_denominator_sequence(const NumberClass& beta, long shift_num,
                                                 long shift_den, long L) {
  if (shift_den != 1 && shift_den != 2) raise(ErrorCode::InvalidArgument, "shift_den must be 1 or 2");
  if (L < 1 || L > 1'000'000) raise(ErrorCode::InvalidArgument, "L must lie in [1, 1e6]");
  SmallDenominatorTable t;
  t.shift_num = shift_num;
  t.shift_den = shift_den;
  const BigRational shift{BigInt(shift_num), BigInt(shift_den)};
  const long l0 = shift.sign() == 0 ? 1 : 0;
  BigRational arg = (BigRational(l0) + shift) * beta.value;
  BigRational radius = (BigRational(l0) + shift).abs() * beta.error_bound;
  t.rows.reserve(static_cast<std::size_t>(L - l0 + 1));
  for (long l = l0; l <= L; ++l) {
    const RealInterval v = sine_abs_enclosure(arg, radius);
    if (!beta.is_exact() && v.lo.is_zero() && !v.hi.is_zero()) {
      raise(ErrorCode::PrecisionExhausted,
            "cannot separate |sin| from zero at l = " + std::to_string(l));
    }
    t.rows.push_back({l, v});
    arg += beta.value;
    radius += beta.error_bound;
  }

  std::vector<double> xs, ys;
  bool zero_block = false;
  for (long start = std::max(l0, 1L); start <= L; start *= 2) {
    double block_min = std::numeric_limits<double>::infinity();
    for (const auto& r : t.rows) {
      if (r.l >= start && r.l < 2 * start && r.l <= L) {
        block_min = std::min(block_min, r.value.lo.to_double());
      }
    }
    if (block_min == 0.0) zero_block = true;
    if (block_min > 0.0 && std::isfinite(block_min)) {
      xs.push_back(std::log(static_cast<double>(start)));
      ys.push_back(std::log(block_min));
    }
  }
  if (zero_block) {
    t.decay_exponent = std::numeric_limits<double>::infinity();
  } else {
    t.decay_exponent = xs.size() >= 2 ? -fit_slope(xs, ys) : 0.0;
  }
  return t;
}

SlowDecayResult slow_decay_check(std::span<const SequencePoint> table, int M) {
  if (table.empty()) raise(ErrorCode::InvalidArgument, "empty sequence");
  SlowDecayResult r;
  r.C = std::numeric_limits<double>::infinity();
  bool any_zero = false;
  for (const auto& p : table) {
    if (!(p.value >= 0.0)) raise(ErrorCode::InvalidArgument, "sequence values must be >= 0");
    any_zero = any_zero || p.value == 0.0;
    const double c = p.value * std::pow(1.0 + static_cast<double>(p.l), M);
    if (c < r.C) {
      r.C = c;
      r.argmin = p.l;
    }
  }
  r.passes = r.C > 0.0 && !any_zero;
  return r;
}

JointBoundResult joint_sine_lower_bound_check(const NumberClass& alpha, int N, double x_max,
                                              std::size_t samples) {
  if (alpha.kind != NumberKind::IrrationalBounded) {
    raise(ErrorCode::InvalidArgument,
          "joint bound needs an irrational class with a measure bound, got " +
              std::string(to_string(alpha.kind)));
  }
  if (N < 0 || !(x_max > 0.0) || samples < 2) {
    raise(ErrorCode::InvalidArgument, "joint bound needs N >= 0, x_max > 0, samples >= 2");
  }
  const BigRational a = alpha.value.abs();
  const BigRational err = alpha.error_bound;
  if (a <= err) raise(ErrorCode::PrecisionExhausted, "alpha enclosure contains 0");
  const double ad = a.to_double();
  const double pi = std::numbers::pi;

  JointBoundResult r;
  r.C = std::numeric_limits<double>::infinity();
  const auto consider = [&](double x, double f) {
    const double g = f / x * std::pow(1.0 + x, N);
    ++r.points;
    if (g < r.C) {
      r.C = g;
      r.argmin_x = x;
    }
  };

  // The infimum near 0 is the limit 1 + |alpha| as x -> 0+.
  ++r.points;
  r.C = 1.0 + (a - err).to_double();
  for (std::size_t i = 1; i <= samples; ++i) {
    const double x = x_max * static_cast<double>(i) / static_cast<double>(samples);
    consider(x, std::abs(std::sin(x)) + std::abs(std::sin(ad * x)));
  }
  // At x = k pi the first sine vanishes and the second is |sin(pi k alpha)|.
  const long k1 = static_cast<long>(std::floor(x_max / pi));
  for (long k = 1; k <= k1; ++k) {
    const RealInterval s = sine_abs_enclosure(BigRational(k) * a, BigRational(k) * err);
    consider(static_cast<double>(k) * pi, s.lo.to_double());
  }
  // At x = k pi / alpha the second sine vanishes and the first is |sin(pi k / alpha)|.
  const BigRational inv = BigRational(1) / a;
  const BigRational inv_err = err / (a * (a - err));
  const long k2 = static_cast<long>(std::floor(x_max * ad / pi));
  for (long k = 1; k <= k2; ++k) {
    const RealInterval s = sine_abs_enclosure(BigRational(k) * inv, BigRational(k) * inv_err);
    consider(static_cast<double>(k) * pi / ad, s.lo.to_double());
  }
  r.passes = r.C > 0.0 && std::isfinite(r.C);
  return r;
}

SlowlyDecreasingReport slowly_decreasing_probe(const spectral::MultiplierSymbol& symbol, double A,
                                               double xi_max, std::size_t samples) {
  if (!(A > 0.0)) raise(ErrorCode::InvalidArgument, "A must be > 0");
  if (!(xi_max >= 0.0) || samples < 1) raise(ErrorCode::InvalidArgument, "bad xi range");
  constexpr int kWindowGrid = 257;
  const double pi = std::numbers::pi;
  SlowlyDecreasingReport rep;
  rep.passes = true;
  for (std::size_t i = 0; i < samples; ++i) {
    const double xi =
        samples == 1 ? 0.0 : xi_max * static_cast<double>(i) / static_cast<double>(samples - 1);
    const double radius = A * std::log(2.0 + xi);
    SlowlyDecreasingRow row;
    row.xi = xi;
    row.threshold = std::pow(A + xi, -A);
    double best = -1.0;
    double best_eta = xi;
    const auto consider = [&](double eta) {
      const double v = std::abs(symbol(std::abs(eta)));
      if (v > best) {
        best = v;
        best_eta = eta;
      }
    };
    consider(xi);
    for (int j = 0; j < kWindowGrid; ++j) {
      consider(xi - radius + 2.0 * radius * (j + 0.5) / kWindowGrid);
    }
    const double kmin = std::ceil((xi - radius) / pi - 0.5);
    for (double k = kmin; (k + 0.5) * pi < xi + radius; k += 1.0) {
      const double eta = (k + 0.5) * pi;
      if (std::abs(eta - xi) < radius) consider(eta);
    }
    row.value = best;
    if (best >= row.threshold) {
      row.eta = best_eta;
    } else {
      rep.passes = false;
    }
    rep.rows.push_back(row);
  }
  return rep;
}

BezoutPair bezout(long p, long q) {
  long old_r = p, r = q;
  long old_s = 1, s = 0;
  while (r != 0) {
    const long quo = old_r / r;
    old_r -= quo * r;
    std::swap(old_r, r);
    old_s -= quo * s;
    std::swap(old_s, s);
  }
  if (old_r != 1 && old_r != -1) {
    raise(ErrorCode::NotCoprime,
          "gcd(" + std::to_string(p) + ", " + std::to_string(q) + ") != 1");
  }
  long k = old_s * old_r;  // now k p = 1 (mod q)
  const long aq = q < 0 ? -q : q;
  if (aq == 0) return {p, 0};  // p = +-1
  k %= aq;
  if (k < 0) k += aq;
  if (aq - k < k) k -= aq;
  return {k, (1 - k * p) / q};
}

OddTypeReport odd_type_verifier(long qmax, std::optional<int> depth) {
  if (qmax < 1 || qmax > 100'000) raise(ErrorCode::InvalidArgument, "qmax must lie in [1, 1e5]");
  constexpr long kStart = 64;  // 2^{3!}
  const BigRational q_big(qmax);
  int J = 0;
  if (depth) {
    J = *depth;
    if (J < 1 || J > kMaxLiouvilleDepth) {
      raise(ErrorCode::PrecisionExhausted, "depth outside [1, " +
                                               std::to_string(kMaxLiouvilleDepth) + "]");
    }
  } else {
    const BigRational target = BigRational(1) / (BigRational(2) * pow(q_big, 3));
    for (int j = 3; j <= kMaxLiouvilleDepth; ++j) {
      if (q_big * liouville_tail_bound(2, j) < target) {
        J = j;
        break;
      }
    }
    if (J == 0) raise(ErrorCode::PrecisionExhausted, "no depth <= 7 certifies this qmax");
  }

  OddTypeReport rep;
  rep.qmax = qmax;
  rep.depth = J;
  rep.tail_bound = liouville_tail_bound(2, J);
  const LiouvilleRule rule{2, {1}, J};
  const BigRational beta = liouville_sum(rule, J);
  const BigInt num = beta.numerator();
  const BigInt den = beta.denominator();
  rep.min_ratio = std::numeric_limits<double>::infinity();
  BigRational min_ratio_exact;
  for (long q = kStart + 1; q <= qmax; q += 2) {
    BigInt rem;
    const BigInt qn = BigInt(q) * num;
    mpz_fdiv_r(rem.get_mpz_t(), qn.get_mpz_t(), den.get_mpz_t());
    const BigInt other = den - rem;
    const BigRational dist(rem < other ? rem : other, den);
    const BigRational dist_lower = dist - BigRational(q) * rep.tail_bound;
    const BigRational q3 = pow(BigRational(q), 3);
    const BigRational ratio = dist_lower * q3;
    ++rep.checked;
    if (ratio <= BigRational(1)) rep.violations.push_back(q);
    if (rep.checked == 1 || ratio < min_ratio_exact) {
      min_ratio_exact = ratio;
      rep.argmin_q = q;
      rep.min_margin = dist_lower - BigRational(1) / q3;
    }
  }
  if (rep.checked > 0) rep.min_ratio = min_ratio_exact.to_double();
  return rep;
}

DoubledWitness doubled_liouville_bound(const NumberClass& x, int N) {
  if (!is_liouville(x)) {
    raise(ErrorCode::InvalidArgument,
          "doubled bound needs a Liouville construction, got " + std::string(to_string(x.kind)));
  }
  if (N < 1) raise(ErrorCode::InvalidArgument, "N must be >= 1");
  const long b = x.rule.base;
  const BigRational s = BigRational(x.scale).abs();
  for (int k = 1; k <= kMaxLiouvilleDepth; ++k) {
    const BigInt q1 = pow_int(b, factorial(k));
    const BigRational dist = s * liouville_tail_bound(b, k);
    if (!(dist < pow(BigRational(q1), -2L * N))) continue;
    DoubledWitness w;
    w.N = N;
    w.k = k;
    w.q1 = q1;
    w.p1 = (BigRational(x.scale) * liouville_sum(x.rule, k) * BigRational(q1)).numerator();
    w.doubled_p = 2 * w.p1;
    w.doubled_q = 2 * w.q1;
    w.distance_bound = dist;
    w.target = pow(BigRational(w.doubled_q), -static_cast<long>(N));
    // The tail is strictly positive because the coefficient rule never ends.
    w.verified = dist < w.target;
    return w;
  }
  raise(ErrorCode::PrecisionExhausted,
        "no construction level <= " + std::to_string(kMaxLiouvilleDepth) + " reaches q^{-2N}");
}

}  // namespace snaplab::dio
