#include "snaplab/number_class.hpp"

#include <algorithm>
#include <charconv>

#include "mpfr_handle.hpp"
#include "snaplab/certified.hpp"
#include "snaplab/error.hpp"

namespace snaplab::dio {

namespace {

BigRational two_pow_neg(int bits) { return BigRational(BigInt(1), pow_int(2, bits)); }

BigRational mpfr_to_rational(const Mpfr& x) {
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), x.get());
  return BigRational(q);
}

long parse_long(std::string_view s, std::string_view what) {
  long v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end) {
    raise(ErrorCode::ParseError, "bad " + std::string(what) + ": '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<long> parse_coeffs(std::string_view s) {
  std::vector<long> out;
  for (auto part : split(s, ',')) out.push_back(parse_long(part, "coefficient"));
  return out;
}

std::string coeff_label(const std::vector<long>& coeffs) {
  std::string s;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(coeffs[i]);
  }
  return s;
}

void check_depth(int J) {
  if (J < 1) raise(ErrorCode::InvalidArgument, "truncation depth must be >= 1");
  if (J > kMaxLiouvilleDepth) {
    raise(ErrorCode::PrecisionExhausted,
          "truncation depth " + std::to_string(J) + " exceeds cap " +
              std::to_string(kMaxLiouvilleDepth));
  }
}

}  // namespace

std::string_view to_string(NumberKind kind) noexcept {
  switch (kind) {
    case NumberKind::Rational: return "Rational";
    case NumberKind::IrrationalBounded: return "IrrationalBounded";
    case NumberKind::Liouville: return "Liouville";
    case NumberKind::OddTypeLiouville: return "OddTypeLiouville";
  }
  return "?";
}

bool LiouvilleRule::all_ones() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](long c) { return c == 1; });
}

unsigned long factorial(int j) {
  unsigned long f = 1;
  for (int i = 2; i <= j; ++i) f *= static_cast<unsigned long>(i);
  return f;
}

BigRational liouville_sum(const LiouvilleRule& rule, int J) {
  check_depth(J);
  // Common denominator base^{J!}.
  const unsigned long top = factorial(J);
  BigInt num = 0;
  for (int j = 1; j <= J; ++j) {
    num += BigInt(rule.coefficient(j)) * pow_int(rule.base, top - factorial(j));
  }
  return BigRational(num, pow_int(rule.base, top));
}

BigRational liouville_tail_bound(long base, int J) {
  return BigRational(BigInt(1), pow_int(base, factorial(J + 1) - 1));
}

NumberClass NumberClass::at_depth(int J) const {
  if (kind != NumberKind::Liouville && kind != NumberKind::OddTypeLiouville) {
    raise(ErrorCode::InvalidArgument, "at_depth needs a Liouville construction");
  }
  NumberClass r = *this;
  r.rule.depth = J;
  r.value = BigRational(scale) * liouville_sum(rule, J);
  r.error_bound = BigRational(scale) * liouville_tail_bound(rule.base, J);
  return r;
}

NumberClass rational_class(const BigRational& value) {
  NumberClass c;
  c.kind = NumberKind::Rational;
  c.value = value;
  c.label = value.to_string();
  return c;
}

NumberClass irrational_bounded(const BigRational& approx, const BigRational& error, int measure,
                               std::string label) {
  if (error.sign() <= 0) raise(ErrorCode::InvalidArgument, "irrational class needs error > 0");
  if (measure < 2) raise(ErrorCode::InvalidArgument, "irrationality measure is at least 2");
  NumberClass c;
  c.kind = NumberKind::IrrationalBounded;
  c.value = approx;
  c.error_bound = error;
  c.measure = measure;
  c.label = std::move(label);
  return c;
}

NumberClass sqrt_class(long d, int bits) {
  if (d < 2) raise(ErrorCode::InvalidArgument, "sqrt class needs d >= 2");
  const BigInt scaled_d = BigInt(d) * pow_int(4, static_cast<unsigned long>(bits));
  BigInt root;
  mpz_sqrt(root.get_mpz_t(), scaled_d.get_mpz_t());
  if (root * root == scaled_d) raise(ErrorCode::InvalidArgument, "d is a perfect square");
  return irrational_bounded(BigRational(root, pow_int(2, bits)), two_pow_neg(bits), 2,
                            "sqrt(" + std::to_string(d) + ")");
}

NumberClass golden_class(int bits) {
  const NumberClass s5 = sqrt_class(5, bits);
  const BigRational half(BigInt(1), BigInt(2));
  return irrational_bounded(half * (BigRational(1) + s5.value), s5.error_bound, 2, "golden");
}

NumberClass pi_class(int measure, int bits) {
  const BigRational lo = pi_lower(bits);
  const BigRational hi = pi_upper(bits);
  return irrational_bounded(lo, hi - lo, measure, "pi");
}

NumberClass e_class(int measure, int bits) {
  Mpfr lo(bits), hi(bits);
  mpfr_set_ui(lo.get(), 1, MPFR_RNDD);
  mpfr_exp(lo.get(), lo.get(), MPFR_RNDD);
  mpfr_set_ui(hi.get(), 1, MPFR_RNDU);
  mpfr_exp(hi.get(), hi.get(), MPFR_RNDU);
  const BigRational l = mpfr_to_rational(lo);
  return irrational_bounded(l, mpfr_to_rational(hi) - l, measure, "e");
}

NumberClass liouville_truncation(long base, const std::vector<long>& coeffs, int J) {
  if (base < 2) raise(ErrorCode::InvalidArgument, "Liouville base must be >= 2");
  if (coeffs.empty()) raise(ErrorCode::InvalidCoefficient, "empty coefficient rule");
  for (long a : coeffs) {
    if (a < 1 || a > base - 1) {
      raise(ErrorCode::InvalidCoefficient,
            "coefficient " + std::to_string(a) + " outside {1.." + std::to_string(base - 1) + "}");
    }
  }
  NumberClass c;
  c.kind = base % 2 == 1 ? NumberKind::OddTypeLiouville : NumberKind::Liouville;
  c.rule = LiouvilleRule{base, coeffs, J};
  c.label = "liouville(" + std::to_string(base) + ";" + coeff_label(coeffs) + ")";
  return c.at_depth(J);
}

NumberClass odd_type_truncation(const std::vector<long>& coeffs, int J) {
  if (coeffs.empty()) raise(ErrorCode::InvalidCoefficient, "empty coefficient rule");
  bool nonzero = false;
  for (long a : coeffs) {
    if (a < 0 || a > 2) {
      raise(ErrorCode::InvalidCoefficient,
            "ternary coefficient " + std::to_string(a) + " outside {0,1,2}");
    }
    nonzero = nonzero || a != 0;
  }
  if (!nonzero) raise(ErrorCode::InvalidCoefficient, "all-zero ternary rule is rational");
  NumberClass c;
  c.kind = NumberKind::OddTypeLiouville;
  c.rule = LiouvilleRule{3, coeffs, J};
  c.label = "oddtype(" + coeff_label(coeffs) + ")";
  return c.at_depth(J);
}

NumberClass scaled(const NumberClass& x, long factor) {
  if (factor == 0) raise(ErrorCode::InvalidArgument, "scale factor must be nonzero");
  NumberClass r = x;
  r.scale *= factor;
  r.value *= BigRational(factor);
  r.error_bound *= BigRational(factor).abs();
  r.label = std::to_string(factor) + "*" + x.label;
  return r;
}

NumberClass parse_number_class(std::string_view text) {
  const auto star = text.find('*');
  if (star != std::string_view::npos) {
    return scaled(parse_number_class(text.substr(star + 1)),
                  parse_long(text.substr(0, star), "scale"));
  }
  const auto parts = split(text, ':');
  const auto head = parts[0];
  if (parts.size() == 1) {
    if (head == "golden") return golden_class();
    return rational_class(BigRational::parse(head));
  }
  if (head == "rational" && parts.size() == 2) return rational_class(BigRational::parse(parts[1]));
  if (head == "sqrt" && parts.size() == 2) return sqrt_class(parse_long(parts[1], "radicand"));
  if (head == "pi" && parts.size() == 2) {
    return pi_class(static_cast<int>(parse_long(parts[1], "measure")));
  }
  if (head == "e" && parts.size() == 2) {
    return e_class(static_cast<int>(parse_long(parts[1], "measure")));
  }
  if (head == "liouville" && (parts.size() == 3 || parts.size() == 4)) {
    const int J = parts.size() == 4 ? static_cast<int>(parse_long(parts[3], "depth")) : 5;
    return liouville_truncation(parse_long(parts[1], "base"), parse_coeffs(parts[2]), J);
  }
  if (head == "oddtype" && (parts.size() == 2 || parts.size() == 3)) {
    const int J = parts.size() == 3 ? static_cast<int>(parse_long(parts[2], "depth")) : 5;
    return odd_type_truncation(parse_coeffs(parts[1]), J);
  }
  raise(ErrorCode::ParseError, "unknown number class '" + std::string(text) + "'");
}

}  // namespace snaplab::dio
