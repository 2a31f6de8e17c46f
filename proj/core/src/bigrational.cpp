#include "snaplab/bigrational.hpp"

#include "snaplab/error.hpp"

namespace snaplab::dio {

BigRational::BigRational(const BigInt& num, const BigInt& den) {
  if (den == 0) raise(ErrorCode::InvalidArgument, "zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

BigRational::BigRational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

BigRational BigRational::parse(std::string_view text) {
  const std::string s(text);
  const auto slash = s.find('/');
  BigInt num;
  BigInt den = 1;
  const auto set = [&](BigInt& dst, const std::string& part) {
    if (part.empty() || dst.set_str(part, 10) != 0) {
      raise(ErrorCode::ParseError, "not a rational: '" + s + "'");
    }
  };
  if (slash == std::string::npos) {
    set(num, s);
  } else {
    set(num, s.substr(0, slash));
    set(den, s.substr(slash + 1));
  }
  return BigRational(num, den);
}

BigInt BigRational::floor() const {
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

BigRational BigRational::abs() const { return BigRational(mpq_class(::abs(q_))); }

std::string BigRational::to_string() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

BigRational& BigRational::operator+=(const BigRational& o) {
  q_ += o.q_;
  return *this;
}
BigRational& BigRational::operator-=(const BigRational& o) {
  q_ -= o.q_;
  return *this;
}
BigRational& BigRational::operator*=(const BigRational& o) {
  q_ *= o.q_;
  return *this;
}
BigRational& BigRational::operator/=(const BigRational& o) {
  if (o.q_ == 0) raise(ErrorCode::InvalidArgument, "division by zero");
  q_ /= o.q_;
  return *this;
}

BigInt pow_int(long base, unsigned long exp) {
  BigInt r;
  BigInt b = base;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), exp);
  return r;
}

BigRational pow(const BigRational& x, long exp) {
  if (exp < 0) return BigRational(1) / pow(x, -exp);
  BigInt n, d;
  mpz_pow_ui(n.get_mpz_t(), x.raw().get_num_mpz_t(), static_cast<unsigned long>(exp));
  mpz_pow_ui(d.get_mpz_t(), x.raw().get_den_mpz_t(), static_cast<unsigned long>(exp));
  return BigRational(n, d);
}

}  // namespace snaplab::dio
