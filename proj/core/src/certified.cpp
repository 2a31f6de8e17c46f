#include "snaplab/certified.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "mpfr_handle.hpp"
#include "snaplab/error.hpp"

namespace snaplab::dio {

namespace {

constexpr mpfr_prec_t kPrec = 192;

mpfr_rnd_t to_mpfr(ScaledReal::Round r) {
  switch (r) {
    case ScaledReal::Round::Down: return MPFR_RNDD;
    case ScaledReal::Round::Up: return MPFR_RNDU;
    case ScaledReal::Round::Nearest: return MPFR_RNDN;
  }
  return MPFR_RNDN;
}

ScaledReal from_mpfr(const Mpfr& x, mpfr_rnd_t rnd) {
  if (mpfr_zero_p(x.get())) return {};
  long e = 0;
  const double m = mpfr_get_d_2exp(&e, x.get(), rnd);
  return ScaledReal(m, e);
}

// |sin(pi d)| for d in [0, 1/2], rounded in direction rnd.
ScaledReal sin_pi_reduced(const BigRational& d, mpfr_rnd_t rnd) {
  if (d.sign() == 0) return {};
  Mpfr pi(kPrec), dd(kPrec), t(kPrec), s(kPrec);
  mpfr_const_pi(pi.get(), rnd);
  mpfr_set_q(dd.get(), d.raw().get_mpq_t(), rnd);
  mpfr_mul(t.get(), pi.get(), dd.get(), rnd);
  if (rnd == MPFR_RNDU) {
    // sin is increasing only up to pi/2.
    Mpfr half_pi(kPrec);
    mpfr_const_pi(half_pi.get(), MPFR_RNDD);
    mpfr_div_2ui(half_pi.get(), half_pi.get(), 1, MPFR_RNDD);
    if (mpfr_cmp(t.get(), half_pi.get()) >= 0) return ScaledReal(0.5, 1);
  }
  mpfr_sin(s.get(), t.get(), rnd);
  return from_mpfr(s, rnd);
}

BigRational mpfr_to_rational(const Mpfr& x) {
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), x.get());
  return BigRational(q);
}

}  // namespace

ScaledReal::ScaledReal(double mantissa, long exponent) {
  if (mantissa == 0.0 || !std::isfinite(mantissa)) {
    if (!std::isfinite(mantissa)) raise(ErrorCode::InvalidArgument, "non-finite mantissa");
    return;
  }
  int e = 0;
  mantissa_ = std::frexp(mantissa, &e);
  exponent_ = exponent + e;
}

ScaledReal ScaledReal::from_double(double v) { return ScaledReal(v, 0); }

ScaledReal ScaledReal::from_rational(const BigRational& v, Round r) {
  if (v.sign() == 0) return {};
  Mpfr x(kPrec);
  mpfr_set_q(x.get(), v.raw().get_mpq_t(), to_mpfr(r));
  return from_mpfr(x, to_mpfr(r));
}

double ScaledReal::to_double() const {
  if (is_zero()) return 0.0;
  if (exponent_ > std::numeric_limits<int>::max()) return std::copysign(HUGE_VAL, mantissa_);
  if (exponent_ < std::numeric_limits<int>::min()) return std::copysign(0.0, mantissa_);
  return std::ldexp(mantissa_, static_cast<int>(exponent_));
}

double ScaledReal::log2_abs() const {
  if (is_zero()) return -HUGE_VAL;
  return std::log2(std::abs(mantissa_)) + static_cast<double>(exponent_);
}

double ScaledReal::log10_abs() const {
  if (is_zero()) return -HUGE_VAL;
  return log2_abs() * std::log10(2.0);
}

std::string ScaledReal::to_string(int significant) const {
  if (is_zero()) return "0";
  const double l = log10_abs();
  double e10 = std::floor(l);
  double m = std::pow(10.0, l - e10);
  // Rounding of the mantissa can carry into the next decade.
  const double scale = std::pow(10.0, significant - 1);
  if (std::round(m * scale) >= 10.0 * scale) {
    m /= 10.0;
    e10 += 1.0;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s%.*fe%+ld", sign() < 0 ? "-" : "", significant - 1, m,
                static_cast<long>(e10));
  return buf;
}

ScaledReal operator*(const ScaledReal& a, const ScaledReal& b) {
  return ScaledReal(a.mantissa_ * b.mantissa_, a.exponent_ + b.exponent_);
}

ScaledReal operator/(const ScaledReal& a, const ScaledReal& b) {
  if (b.is_zero()) raise(ErrorCode::InvalidArgument, "ScaledReal division by zero");
  return ScaledReal(a.mantissa_ / b.mantissa_, a.exponent_ - b.exponent_);
}

std::partial_ordering operator<=>(const ScaledReal& a, const ScaledReal& b) {
  if (a.sign() != b.sign()) return a.sign() <=> b.sign();
  if (a.is_zero()) return std::partial_ordering::equivalent;
  const auto mag = a.exponent_ != b.exponent_
                       ? (a.exponent_ <=> b.exponent_)
                       : (std::abs(a.mantissa_) <=> std::abs(b.mantissa_));
  if (a.sign() > 0) return mag;
  return 0 <=> mag;
}

double RealInterval::relative_width() const {
  if (hi.is_zero()) return 0.0;
  return 1.0 - (lo / hi).to_double();
}

BigRational distance_to_integer(const BigRational& x) {
  const BigInt f = x.floor();
  const BigRational frac = x - BigRational(f);
  const BigRational other = BigRational(1) - frac;
  return frac <= other ? frac : other;
}

BigInt nearest_integer(const BigRational& x) {
  const BigInt f = x.floor();
  const BigRational frac = x - BigRational(f);
  const BigRational half(BigInt(1), BigInt(2));
  if (frac < half) return f;
  if (frac > half) return f + 1;
  return (f % 2 == 0) ? f : BigInt(f + 1);
}

RealInterval exact_sine_abs(const BigRational& theta_over_pi) {
  const BigRational d = distance_to_integer(theta_over_pi);
  return {sin_pi_reduced(d, MPFR_RNDD), sin_pi_reduced(d, MPFR_RNDU)};
}

RealInterval sine_abs_enclosure(const BigRational& center, const BigRational& radius) {
  if (radius.sign() == 0) return exact_sine_abs(center);
  const BigRational d = distance_to_integer(center);
  const BigRational half(BigInt(1), BigInt(2));
  const BigRational lo_d = d - radius;
  BigRational hi_d = d + radius;
  if (hi_d > half) hi_d = half;
  RealInterval r;
  r.lo = lo_d.sign() > 0 ? sin_pi_reduced(lo_d, MPFR_RNDD) : ScaledReal{};
  r.hi = sin_pi_reduced(hi_d, MPFR_RNDU);
  return r;
}

BigRational pi_lower(int bits) {
  Mpfr pi(bits);
  mpfr_const_pi(pi.get(), MPFR_RNDD);
  return mpfr_to_rational(pi);
}

BigRational pi_upper(int bits) {
  Mpfr pi(bits);
  mpfr_const_pi(pi.get(), MPFR_RNDU);
  return mpfr_to_rational(pi);
}

}  // namespace snaplab::dio
