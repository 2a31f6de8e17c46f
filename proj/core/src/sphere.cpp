#include "snaplab/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "snaplab/error.hpp"
#include "snaplab/propagators.hpp"

namespace snaplab::sphere {

namespace prop = propagators;
using dio::BigInt;
using dio::BigRational;

namespace {

constexpr double kConsistency = 1e-9;

void require_params(const SphereParams& p) {
  if (p.n < 2) raise(ErrorCode::InvalidArgument, "sphere dimension n must be >= 2");
}

void require_same(const SphereField& a, const SphereField& b) {
  if (!(a.params() == b.params())) {
    raise(ErrorCode::ParamsMismatch, "fields on S^" + std::to_string(a.params().n) + " and S^" +
                                         std::to_string(b.params().n));
  }
}

// l + (n-1)/2 as an exact fraction.
BigRational frequency(int n, long l) { return BigRational(BigInt(2 * l + n - 1), BigInt(2)); }

// sin(pi x) from an exact reduction of x mod 2.
double sin_pi(const BigRational& x) {
  BigInt half_floor;
  const BigInt f = x.floor();
  mpz_fdiv_q_2exp(half_floor.get_mpz_t(), f.get_mpz_t(), 1);
  BigRational r = x - BigRational(BigInt(2 * half_floor));
  bool negate = false;
  if (r >= BigRational(1)) {
    r -= BigRational(1);
    negate = true;
  }
  if (r.sign() == 0) return 0.0;
  const BigRational half(BigInt(1), BigInt(2));
  if (r > half) r = BigRational(1) - r;
  const double v = std::sin(std::numbers::pi * r.to_double());
  return negate ? -v : v;
}

double cos_pi(const BigRational& x) { return sin_pi(x + BigRational(BigInt(1), BigInt(2))); }

// phi_0..phi_L at c.
std::vector<double> gegenbauer_all(int n, long L, double c) {
  const double lam = 0.5 * (n - 1);
  std::vector<double> phi(static_cast<std::size_t>(L + 1));
  phi[0] = 1.0;
  if (L >= 1) phi[1] = c;
  for (long l = 1; l < L; ++l) {
    const double dl = static_cast<double>(l);
    phi[l + 1] = (2.0 * (dl + lam) * c * phi[l] - dl * phi[l - 1]) / (dl + 2.0 * lam);
  }
  return phi;
}

std::vector<std::pair<long, long>> index_union(const SphereField& a, const SphereField& b) {
  std::vector<std::pair<long, long>> idx;
  for (const auto& c : a.coeffs()) idx.emplace_back(c.l, c.m);
  for (const auto& c : b.coeffs()) idx.emplace_back(c.l, c.m);
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  return idx;
}

}  // namespace

SphereField::SphereField(SphereParams params, std::vector<SphereCoeff> coeffs)
    : params_(params) {
  require_params(params);
  std::map<std::pair<long, long>, Complex> merged;
  std::map<long, BigInt> dims;
  for (const auto& c : coeffs) {
    if (c.l < 0) raise(ErrorCode::InvalidArgument, "degree l must be >= 0");
    if (!std::isfinite(c.amp.real()) || !std::isfinite(c.amp.imag())) {
      raise(ErrorCode::InvalidArgument, "non-finite sphere coefficient");
    }
    auto it = dims.find(c.l);
    if (it == dims.end()) it = dims.emplace(c.l, dim_Hl(params.n, c.l)).first;
    if (c.m < 1 || BigInt(c.m) > it->second) {
      raise(ErrorCode::InvalidArgument, "index m = " + std::to_string(c.m) + " outside 1..d(" +
                                            std::to_string(c.l) + ") = " + it->second.get_str());
    }
    merged[{c.l, c.m}] += c.amp;
  }
  for (const auto& [key, amp] : merged) {
    if (amp != Complex{}) coeffs_.push_back({key.first, key.second, amp});
  }
}

bool SphereField::is_zonal() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const SphereCoeff& c) { return c.m == 1; });
}

long SphereField::max_degree() const noexcept {
  long d = -1;
  for (const auto& c : coeffs_) d = std::max(d, c.l);
  return d;
}

Complex SphereField::amplitude_at(long l, long m) const {
  const auto it = std::lower_bound(coeffs_.begin(), coeffs_.end(), std::pair{l, m},
                                   [](const SphereCoeff& c, const std::pair<long, long>& k) {
                                     return std::pair{c.l, c.m} < k;
                                   });
  if (it != coeffs_.end() && it->l == l && it->m == m) return it->amp;
  return {};
}

BigInt dim_Hl(int n, long l) {
  if (n < 2 || l < 0) raise(ErrorCode::InvalidArgument, "dim_Hl needs n >= 2, l >= 0");
  BigInt a, b = 0;
  mpz_bin_uiui(a.get_mpz_t(), static_cast<unsigned long>(n + l), static_cast<unsigned long>(n));
  if (n + l - 2 >= n) {
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n + l - 2), static_cast<unsigned long>(n));
  }
  return a - b;
}

double eigenvalue(int n, long l) {
  if (n < 2 || l < 0) raise(ErrorCode::InvalidArgument, "eigenvalue needs n >= 2, l >= 0");
  return -static_cast<double>(l) * static_cast<double>(l + n - 1);
}

double gegenbauer_phi(int n, long l, double c) {
  if (n < 2 || l < 0) raise(ErrorCode::InvalidArgument, "gegenbauer_phi needs n >= 2, l >= 0");
  if (!(std::abs(c) <= 1.0)) raise(ErrorCode::InvalidArgument, "gegenbauer_phi needs |c| <= 1");
  return gegenbauer_all(n, l, c)[static_cast<std::size_t>(l)];
}

double schur_S(double t, int n, long l) { return prop::eval_S(t, l + 0.5 * (n - 1)); }

double schur_Sprime(double t, int n, long l) { return prop::eval_Sprime(t, l + 0.5 * (n - 1)); }

double schur_Psi(long m, double alpha, int n, long l) {
  return prop::eval_Psi(m, alpha, l + 0.5 * (n - 1));
}

Angle Angle::pi_times(const BigRational& beta) {
  return {beta.to_double() * std::numbers::pi, beta};
}

std::string Angle::to_string() const {
  if (over_pi) return "(" + over_pi->to_string() + ")pi";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", radians);
  return buf;
}

double schur_S(const Angle& t, int n, long l) {
  if (!t.over_pi) return schur_S(t.radians, n, l);
  const BigRational w = frequency(n, l);
  return sin_pi(w * *t.over_pi) / w.to_double();
}

double schur_Sprime(const Angle& t, int n, long l) {
  if (!t.over_pi) return schur_Sprime(t.radians, n, l);
  return cos_pi(frequency(n, l) * *t.over_pi);
}

double max_abs_amp(const SphereField& f) {
  double m = 0.0;
  for (const auto& c : f.coeffs()) m = std::max(m, std::abs(c.amp));
  return m;
}

SphereField linear_combine(Complex a, const SphereField& f, Complex b, const SphereField& g) {
  require_same(f, g);
  std::vector<SphereCoeff> out;
  out.reserve(f.coeffs().size() + g.coeffs().size());
  for (const auto& c : f.coeffs()) out.push_back({c.l, c.m, a * c.amp});
  for (const auto& c : g.coeffs()) out.push_back({c.l, c.m, b * c.amp});
  return SphereField(f.params(), std::move(out));
}

SphereField sphere_evolve(const SphereField& f0, const SphereField& g, const Angle& t) {
  require_same(f0, g);
  const int n = f0.params().n;
  return linear_combine(1.0, apply_schur(f0, [&](long l) { return schur_Sprime(t, n, l); }), 1.0,
                        apply_schur(g, [&](long l) { return schur_S(t, n, l); }));
}

SphereField sphere_evolve(const SphereField& f0, const SphereField& g, double t) {
  return sphere_evolve(f0, g, Angle::from_radians(t));
}

Complex zonal_value(const SphereField& f, double c) {
  if (!f.is_zonal()) raise(ErrorCode::RequiresZonal, "point evaluation needs a zonal field");
  if (f.empty()) return {};
  const int n = f.params().n;
  const auto phi = gegenbauer_all(n, f.max_degree(), c);
  Complex sum{};
  for (const auto& co : f.coeffs()) {
    sum += co.amp * std::sqrt(dim_Hl(n, co.l).get_d()) * phi[static_cast<std::size_t>(co.l)];
  }
  return sum;
}

double huygens_antipodal_check(const SphereField& f0, const SphereField& g,
                               std::span<const double> t_grid, int c_samples) {
  require_same(f0, g);
  const int n = f0.params().n;
  if (n % 2 == 0) raise(ErrorCode::RequiresOddDimension, "antipodal identity needs n odd");
  if (!f0.is_zonal() || !g.is_zonal()) {
    raise(ErrorCode::RequiresZonal, "antipodal check evaluates zonal fields only");
  }
  if (c_samples < 2) raise(ErrorCode::InvalidArgument, "need at least two sample points");
  const double sign = ((n - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
  double worst = 0.0;
  for (double t : t_grid) {
    const SphereField u = sphere_evolve(f0, g, t);
    const SphereField v = sphere_evolve(f0, g, t + std::numbers::pi);
    for (int i = 0; i < c_samples; ++i) {
      const double c = -1.0 + 2.0 * i / (c_samples - 1);
      worst = std::max(worst, std::abs(zonal_value(v, -c) - sign * zonal_value(u, c)));
    }
  }
  return worst;
}

SphereField sphere_snapshot_m(const SphereField& u0, const SphereField& ualpha, double alpha,
                              long m) {
  require_same(u0, ualpha);
  if (!(alpha > 0.0)) raise(ErrorCode::InvalidTime, "snapshot recursion needs alpha > 0");
  const int n = u0.params().n;
  const double ma = static_cast<double>(m) * alpha;
  const SphereField w = linear_combine(
      1.0, ualpha, -1.0, apply_schur(u0, [&](long l) { return schur_Sprime(alpha, n, l); }));
  return linear_combine(1.0, apply_schur(u0, [&](long l) { return schur_Sprime(ma, n, l); }), 1.0,
                        apply_schur(w, [&](long l) { return schur_Psi(m, alpha, n, l); }));
}

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::UniqueAndSolvable: return "UniqueAndSolvable";
    case Verdict::UniqueNotAlwaysSolvable: return "UniqueNotAlwaysSolvable";
    case Verdict::NonUnique: return "NonUnique";
  }
  return "?";
}

Verdict classify_alpha(const dio::NumberClass& beta, int n) {
  if (n < 2) raise(ErrorCode::InvalidArgument, "sphere dimension n must be >= 2");
  using dio::NumberKind;
  const bool odd_n = n % 2 == 1;
  switch (beta.kind) {
    case NumberKind::Rational: {
      if (odd_n) return Verdict::NonUnique;
      const BigInt p = beta.value.numerator();
      return mpz_odd_p(p.get_mpz_t()) ? Verdict::UniqueAndSolvable : Verdict::NonUnique;
    }
    case NumberKind::IrrationalBounded:
      return Verdict::UniqueAndSolvable;
    case NumberKind::Liouville:
    case NumberKind::OddTypeLiouville:
      break;
  }
  if (odd_n) return Verdict::UniqueNotAlwaysSolvable;
  // n even: the question is whether beta / 2 is a Liouville number of odd type.
  if (beta.scale % 2 != 0) {
    raise(ErrorCode::Unclassifiable,
          "beta/2 = " + beta.label + "/2: no odd-type certificate either way");
  }
  const long half = beta.scale / 2;
  if (beta.kind == NumberKind::OddTypeLiouville) {
    // Integer multiples keep the odd denominators b^{k!}.
    return Verdict::UniqueNotAlwaysSolvable;
  }
  if ((half == 1 || half == -1) && beta.rule.base == 2 && beta.rule.all_ones()) {
    // sum 2^{-j!} stays at distance > q^{-3} from fractions with odd q > 64.
    return Verdict::UniqueAndSolvable;
  }
  raise(ErrorCode::Unclassifiable,
        "beta/2 for " + beta.label + " has no odd-type certificate either way");
}

SphereSolveReport sphere_two_snapshot_solve(const SphereField& f0, const SphereField& falpha,
                                            const Angle& alpha, long L) {
  require_same(f0, falpha);
  if (L < 0) raise(ErrorCode::InvalidArgument, "L must be >= 0");
  if (f0.max_degree() > L || falpha.max_degree() > L) {
    raise(ErrorCode::InvalidArgument, "data degree exceeds L = " + std::to_string(L));
  }
  const int n = f0.params().n;
  SphereSolveReport rep;

  if (alpha.over_pi) {
    // (2l + n - 1) beta / 2 is an integer iff D divides 2l + n - 1.
    const BigRational& beta = *alpha.over_pi;
    const BigInt two_q = 2 * beta.denominator();
    BigInt g;
    const BigInt p = beta.numerator();
    mpz_gcd(g.get_mpz_t(), two_q.get_mpz_t(), p.get_mpz_t());
    const BigInt D = two_q / g;
    if (D <= 2 * L + n - 1) {
      const long d = D.get_si();
      for (long v = ((n - 1 + d - 1) / d) * d; v <= 2 * L + n - 1; v += d) {
        if ((v - (n - 1)) % 2 == 0) rep.kernel_degrees.push_back((v - (n - 1)) / 2);
      }
    }
  } else {
    for (long l = 0; l <= L; ++l) {
      if (schur_S(alpha.radians, n, l) == 0.0) rep.kernel_degrees.push_back(l);
    }
  }

  const double scale = std::max({1.0, max_abs_amp(f0), max_abs_amp(falpha)});
  double obstruction = 0.0;
  std::vector<SphereCoeff> g_coeffs;
  for (const auto& [l, m] : index_union(f0, falpha)) {
    const double s = schur_S(alpha, n, l);
    const Complex num = falpha.amplitude_at(l, m) - f0.amplitude_at(l, m) * schur_Sprime(alpha, n, l);
    if (s == 0.0) {
      rep.free_coeffs.emplace_back(l, m);
      obstruction = std::max(obstruction, std::abs(num));
      continue;
    }
    rep.conditioning = std::max(rep.conditioning, 1.0 / std::abs(s));
    g_coeffs.push_back({l, m, num / s});
  }
  if (obstruction > kConsistency * scale) {
    rep.status = euclid::SolveStatus::Obstructed;
    rep.residual = obstruction;
    rep.note = "a vanishing Schur constant meets nonzero data";
    return rep;
  }
  SphereField g(f0.params(), std::move(g_coeffs));
  rep.residual = max_abs_amp(linear_combine(1.0, sphere_evolve(f0, g, alpha), -1.0, falpha));
  rep.status = rep.kernel_degrees.empty() ? euclid::SolveStatus::Unique
                                          : euclid::SolveStatus::NonUniqueKernel;
  rep.solution = std::move(g);
  return rep;
}

std::vector<dio::SequencePoint> schur_sequence(const Angle& alpha, int n, long L) {
  if (L < 1) raise(ErrorCode::InvalidArgument, "L must be >= 1");
  std::vector<dio::SequencePoint> out;
  out.reserve(static_cast<std::size_t>(L + 1));
  for (long l = 0; l <= L; ++l) {
    const double w = l + 0.5 * (n - 1);
    double v;
    if (alpha.over_pi) {
      v = dio::exact_sine_abs(frequency(n, l) * *alpha.over_pi).lo.to_double() / w;
    } else {
      v = std::abs(schur_S(alpha.radians, n, l));
    }
    out.push_back({l, v});
  }
  return out;
}

std::vector<dio::SequencePoint> schur_sequence(const dio::NumberClass& beta, int n, long L) {
  if (n < 2) raise(ErrorCode::InvalidArgument, "sphere dimension n must be >= 2");
  const auto table = dio::small_denominator_sequence(beta, n - 1, 2, L);
  std::vector<dio::SequencePoint> out = table.lower_bounds();
  for (auto& p : out) p.value /= p.l + 0.5 * (n - 1);
  return out;
}

dio::SlowDecayResult surjectivity_margin(const Angle& alpha, int n, long L, int M) {
  const auto seq = schur_sequence(alpha, n, L);
  return dio::slow_decay_check(seq, M);
}

dio::SlowDecayResult surjectivity_margin(const dio::NumberClass& beta, int n, long L, int M) {
  const auto seq = schur_sequence(beta, n, L);
  return dio::slow_decay_check(seq, M);
}

}  // namespace snaplab::sphere
