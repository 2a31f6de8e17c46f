#include "snaplab/euclid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>

#include "snaplab/diophantine.hpp"
#include "snaplab/error.hpp"
#include "snaplab/propagators.hpp"

namespace snaplab::euclid {

namespace prop = propagators;
using spectral::apply_multiplier;
using spectral::canonicalize;
using spectral::combine;
using spectral::max_abs_amp;

namespace {

constexpr double kKernelAmplitude = 1e-12;
constexpr double kConsistency = 1e-9;

void require_same_dim(std::initializer_list<const SpectralField*> fields) {
  const std::size_t d = (*fields.begin())->dim();
  for (const auto* f : fields) {
    if (f->dim() != d) {
      raise(ErrorCode::DimensionMismatch, "fields of dimension " + std::to_string(d) + " and " +
                                              std::to_string(f->dim()));
    }
  }
}

double data_scale(std::initializer_list<const SpectralField*> fields) {
  double s = 1.0;
  for (const auto* f : fields) s = std::max(s, max_abs_amp(*f));
  return s;
}

std::vector<Frequency> spectrum_of(std::initializer_list<const SpectralField*> fields) {
  std::vector<SpectralField> v;
  for (const auto* f : fields) v.push_back(*f);
  return spectral::union_spectrum(v);
}

SpectralField from_modes(std::size_t dim, std::vector<spectral::Mode> modes) {
  return canonicalize(SpectralField(dim, std::move(modes)));
}

double max_difference(const SpectralField& a, const SpectralField& b) {
  return max_abs_amp(combine(1.0, a, -1.0, b));
}

// Exact rational path at times 0, p tau, q tau. Returns a report; when
// `strict` is set an incompatible triple throws instead of reporting Obstructed.
SolveReport reconstruct_scaled(const SpectralField& f0_in, const SpectralField& fp_in,
                               const SpectralField& fq_in, long p, long q, double tau,
                               bool strict) {
  require_same_dim({&f0_in, &fp_in, &fq_in});
  const SpectralField f0 = canonicalize(f0_in);
  const SpectralField fp = canonicalize(fp_in);
  const SpectralField fq = canonicalize(fq_in);
  const double tp = static_cast<double>(p) * tau;
  const double tq = static_cast<double>(q) * tau;
  const double scale = data_scale({&f0, &fp, &fq});

  const SpectralField vp = combine(1.0, fp, -1.0, apply_multiplier(f0, prop::symbol_Sprime(tp)));
  const SpectralField vq = combine(1.0, fq, -1.0, apply_multiplier(f0, prop::symbol_Sprime(tq)));
  const double precondition =
      max_difference(apply_multiplier(vp, prop::symbol_Psi(q, tau)),
                     apply_multiplier(vq, prop::symbol_Psi(p, tau)));

  SolveReport rep;
  if (precondition > kConsistency * scale) {
    if (strict) {
      raise(ErrorCode::IncompatibleData,
            "rational compatibility residual " + std::to_string(precondition));
    }
    rep.status = SolveStatus::Obstructed;
    rep.residual = precondition;
    rep.note = "data violate the rational compatibility condition";
    return rep;
  }

  const auto [k, l] = dio::bezout(p, q);
  double obstruction = 0.0;
  std::vector<spectral::Mode> g_modes;
  for (const auto& xi : spectrum_of({&f0, &fp, &fq})) {
    const double lam = xi.radius();
    const Complex a = vp.amplitude_at(xi);
    const Complex b = vq.amplitude_at(xi);
    const double A = prop::eval_Psi(k, tp, lam);
    const double B = prop::eval_Psi(l, tq, lam);
    const Complex lhs = a * A * prop::eval_Sprime(static_cast<double>(l) * tq, lam) +
                        b * B * prop::eval_Sprime(static_cast<double>(k) * tp, lam);
    const double s = prop::eval_S(tau, lam);
    if (s == 0.0) {
      rep.kernel_modes.push_back(xi);
      obstruction = std::max(obstruction, std::abs(lhs));
      continue;
    }
    rep.conditioning = std::max(rep.conditioning, 1.0 / std::abs(s));
    g_modes.push_back({xi, lhs / s});
  }
  if (obstruction > kConsistency * scale) {
    rep.status = SolveStatus::Obstructed;
    rep.residual = obstruction;
    rep.note = "a kernel mode of S_1 carries nonzero data; its preimage is not band-limited";
    return rep;
  }
  const SpectralField g = from_modes(f0.dim(), std::move(g_modes));
  const CauchyData data{f0, g};
  rep.residual = std::max(max_difference(evolve(data, tp), fp), max_difference(evolve(data, tq), fq));
  rep.status = rep.kernel_modes.empty() ? SolveStatus::Unique : SolveStatus::NonUniqueKernel;
  if (!g.empty()) rep.conditioning = std::max(rep.conditioning, 1.0);
  rep.solution = g;
  return rep;
}

}  // namespace

std::string_view to_string(SolveStatus s) noexcept {
  switch (s) {
    case SolveStatus::Unique: return "Unique";
    case SolveStatus::NonUniqueKernel: return "NonUniqueKernel";
    case SolveStatus::Obstructed: return "Obstructed";
  }
  return "?";
}

SpectralField evolve(const CauchyData& data, double t) {
  require_same_dim({&data.position, &data.velocity});
  return combine(1.0, apply_multiplier(data.position, prop::symbol_Sprime(t)), 1.0,
                 apply_multiplier(data.velocity, prop::symbol_S(t)));
}

double wave_residual(const CauchyData& data, double t, double h) {
  if (!(h > 0.0)) raise(ErrorCode::InvalidArgument, "step h must be > 0");
  const SpectralField up = evolve(data, t + h);
  const SpectralField u = evolve(data, t);
  const SpectralField um = evolve(data, t - h);
  const spectral::MultiplierSymbol lap{[](double l) { return Complex{-l * l, 0.0}; }, {}, "laplacian"};
  const std::array<Complex, 4> c{1.0 / (h * h), -2.0 / (h * h), 1.0 / (h * h), -1.0};
  const std::array<SpectralField, 4> f{up, u, um, apply_multiplier(u, lap)};
  return max_abs_amp(spectral::linear_combine(c, f));
}

std::vector<Frequency> kernel_modes(const SpectralField& field, double t) {
  if (t == 0.0) raise(ErrorCode::InvalidTime, "kernel of C_{S_t} needs t != 0");
  std::vector<Frequency> out;
  const auto canon = canonicalize(field);
  for (const auto& m : canon.modes()) {
    const double lam = m.freq.radius();
    if (lam > 0.0 && prop::sine_vanishes(t * lam)) out.push_back(m.freq);
  }
  return out;
}

SpectralField integer_snapshot(const SpectralField& u0, const SpectralField& u1, long m) {
  require_same_dim({&u0, &u1});
  return combine(1.0, apply_multiplier(u1, prop::symbol_Psi(m, 1.0)), -1.0,
                 apply_multiplier(u0, prop::symbol_Psi(m - 1, 1.0)));
}

SpectralField general_integer_snapshot(const SpectralField& ua, const SpectralField& ub, double a,
                                       double b, long m) {
  if (!(a < b)) raise(ErrorCode::InvalidTime, "general snapshot needs a < b");
  require_same_dim({&ua, &ub});
  const double s = b - a;
  return combine(1.0, apply_multiplier(ub, prop::symbol_Psi(m, s)), -1.0,
                 apply_multiplier(ua, prop::symbol_Psi(m - 1, s)));
}

SolveReport two_snapshot_solve(const SpectralField& f0_in, const SpectralField& f1_in) {
  require_same_dim({&f0_in, &f1_in});
  const SpectralField f0 = canonicalize(f0_in);
  const SpectralField f1 = canonicalize(f1_in);
  const SpectralField rhs = combine(1.0, f1, -1.0, apply_multiplier(f0, prop::symbol_Sprime(1.0)));
  SolveReport rep;
  double obstruction = 0.0;
  std::vector<spectral::Mode> g_modes;
  for (const auto& xi : spectrum_of({&f0, &f1})) {
    const double lam = xi.radius();
    const Complex v = rhs.amplitude_at(xi);
    const double s = prop::eval_S(1.0, lam);
    if (s == 0.0) {
      rep.kernel_modes.push_back(xi);
      obstruction = std::max(obstruction, std::abs(v));
      continue;
    }
    rep.conditioning = std::max(rep.conditioning, 1.0 / std::abs(s));
    g_modes.push_back({xi, v / s});
  }
  if (obstruction > kKernelAmplitude) {
    rep.status = SolveStatus::Obstructed;
    rep.residual = obstruction;
    rep.note = "f1 - f0*S'_1 has weight on a kernel mode of S_1; no band-limited preimage";
    return rep;
  }
  const SpectralField g = from_modes(f0.dim(), std::move(g_modes));
  rep.residual = max_difference(evolve({f0, g}, 1.0), f1);
  rep.status = rep.kernel_modes.empty() ? SolveStatus::Unique : SolveStatus::NonUniqueKernel;
  rep.solution = g;
  return rep;
}

SpectralField compatibility_defect_general(const SpectralField& fa, const SpectralField& fb,
                                           const SpectralField& fc, double a, double b, double c) {
  require_same_dim({&fa, &fb, &fc});
  const std::array<Complex, 3> coeffs{1.0, 1.0, 1.0};
  const std::array<SpectralField, 3> terms{apply_multiplier(fa, prop::symbol_S(c - b)),
                                           apply_multiplier(fb, prop::symbol_S(a - c)),
                                           apply_multiplier(fc, prop::symbol_S(b - a))};
  return spectral::linear_combine(coeffs, terms);
}

double compatibility_residual_general(const SpectralField& fa, const SpectralField& fb,
                                      const SpectralField& fc, double a, double b, double c) {
  return max_abs_amp(compatibility_defect_general(fa, fb, fc, a, b, c));
}

SpectralField compatibility_defect(const SnapshotTriple& t) {
  return compatibility_defect_general(t.f0, t.f1, t.falpha, 0.0, 1.0, t.alpha);
}

SpectralField compatibility_defect_product_form(const SnapshotTriple& t) {
  require_same_dim({&t.f0, &t.f1, &t.falpha});
  const SpectralField v = combine(1.0, t.f1, -1.0, apply_multiplier(t.f0, prop::symbol_Sprime(1.0)));
  const SpectralField w =
      combine(1.0, t.falpha, -1.0, apply_multiplier(t.f0, prop::symbol_Sprime(t.alpha)));
  return combine(1.0, apply_multiplier(v, prop::symbol_S(t.alpha)), -1.0,
                 apply_multiplier(w, prop::symbol_S(1.0)));
}

double compatibility_residual(const SnapshotTriple& t) { return max_abs_amp(compatibility_defect(t)); }

SolveReport three_snapshot_solve(const SnapshotTriple& triple) {
  if (triple.alpha == 0.0 || triple.alpha == 1.0) {
    raise(ErrorCode::InvalidTime, "three snapshots need alpha outside {0, 1}");
  }
  require_same_dim({&triple.f0, &triple.f1, &triple.falpha});
  if (triple.exact_alpha) {
    const dio::BigRational& x = *triple.exact_alpha;
    if (x == dio::BigRational(0) || x == dio::BigRational(1)) {
      raise(ErrorCode::InvalidTime, "three snapshots need alpha outside {0, 1}");
    }
    if (x.sign() > 0 && x.numerator().fits_slong_p() && x.denominator().fits_slong_p()) {
      // Times 0, 1, p/q become 0, q tau, p tau with tau = 1/q.
      const long p = x.numerator().get_si();
      const long q = x.denominator().get_si();
      SolveReport rep = reconstruct_scaled(triple.f0, triple.falpha, triple.f1, p, q,
                                           1.0 / static_cast<double>(q), false);
      rep.note = (rep.note.empty() ? "" : rep.note + "; ") + "exact rational path, alpha = " +
                 x.to_string();
      return rep;
    }
  }

  const double alpha = triple.alpha;
  const SpectralField f0 = canonicalize(triple.f0);
  const SpectralField f1 = canonicalize(triple.f1);
  const SpectralField fa = canonicalize(triple.falpha);
  const double scale = data_scale({&f0, &f1, &fa});
  const SpectralField v = combine(1.0, f1, -1.0, apply_multiplier(f0, prop::symbol_Sprime(1.0)));
  const SpectralField w = combine(1.0, fa, -1.0, apply_multiplier(f0, prop::symbol_Sprime(alpha)));

  SolveReport rep;
  double inconsistency = 0.0;
  std::vector<spectral::Mode> g_modes;
  for (const auto& xi : spectrum_of({&f0, &f1, &fa})) {
    const double lam = xi.radius();
    const Complex vj = v.amplitude_at(xi);
    const Complex wj = w.amplitude_at(xi);
    const double s1 = prop::eval_S(1.0, lam);
    const double sa = prop::eval_S(alpha, lam);
    Complex g;
    double cond = 0.0;
    if (s1 != 0.0) {
      g = vj / s1;
      cond = 1.0 / std::abs(s1);
      const double tol = kConsistency * (1.0 + cond) * scale;
      inconsistency = std::max(inconsistency, std::abs(g * sa - wj) > tol ? std::abs(g * sa - wj) : 0.0);
    } else if (sa != 0.0) {
      g = wj / sa;
      cond = 1.0 / std::abs(sa);
      if (std::abs(vj) > kConsistency * scale) inconsistency = std::max(inconsistency, std::abs(vj));
    } else {
      rep.kernel_modes.push_back(xi);
      const double d = std::max(std::abs(vj), std::abs(wj));
      if (d > kConsistency * scale) inconsistency = std::max(inconsistency, d);
      continue;
    }
    rep.conditioning = std::max(rep.conditioning, cond);
    g_modes.push_back({xi, g});
  }
  if (inconsistency > 0.0) {
    rep.status = SolveStatus::Obstructed;
    rep.residual = inconsistency;
    rep.note = "the two velocity equations disagree on some mode";
    return rep;
  }
  const SpectralField g = from_modes(f0.dim(), std::move(g_modes));
  const CauchyData data{f0, g};
  rep.residual = std::max(max_difference(evolve(data, 1.0), f1), max_difference(evolve(data, alpha), fa));
  rep.status = rep.kernel_modes.empty() ? SolveStatus::Unique : SolveStatus::NonUniqueKernel;
  if (!g.empty()) rep.conditioning = std::max(rep.conditioning, 1.0);
  rep.solution = g;
  return rep;
}

SpectralField rational_compatibility_defect(const SpectralField& f0, const SpectralField& fp,
                                            const SpectralField& fq, long p, long q) {
  if (p <= 0 || q <= 0 || p == q) raise(ErrorCode::InvalidTimes, "need distinct positive p, q");
  if (std::gcd(p, q) != 1) raise(ErrorCode::InvalidTimes, "p and q must be coprime");
  require_same_dim({&f0, &fp, &fq});
  const double dp = static_cast<double>(p);
  const double dq = static_cast<double>(q);
  const SpectralField vp = combine(1.0, fp, -1.0, apply_multiplier(f0, prop::symbol_Sprime(dp)));
  const SpectralField vq = combine(1.0, fq, -1.0, apply_multiplier(f0, prop::symbol_Sprime(dq)));
  return combine(1.0, apply_multiplier(vp, prop::symbol_Psi(q, 1.0)), -1.0,
                 apply_multiplier(vq, prop::symbol_Psi(p, 1.0)));
}

double rational_compatibility_residual(const SpectralField& f0, const SpectralField& fp,
                                       const SpectralField& fq, long p, long q) {
  return max_abs_amp(rational_compatibility_defect(f0, fp, fq, p, q));
}

SolveReport rational_reconstruct(const SpectralField& f0, const SpectralField& fp,
                                 const SpectralField& fq, long p, long q) {
  if (p <= 0 || q <= 0 || p == q) raise(ErrorCode::InvalidTimes, "need distinct positive p, q");
  if (std::gcd(p, q) != 1) raise(ErrorCode::InvalidTimes, "p and q must be coprime");
  return reconstruct_scaled(f0, fp, fq, p, q, 1.0, true);
}

std::vector<LiouvilleRow> liouville_obstruction_demo(const dio::NumberClass& alpha, int k_max) {
  if (alpha.kind != dio::NumberKind::Liouville && alpha.kind != dio::NumberKind::OddTypeLiouville) {
    raise(ErrorCode::InvalidArgument, "the demo needs a Liouville construction");
  }
  if (k_max < 1) raise(ErrorCode::InvalidArgument, "k_max must be >= 1");
  if (k_max + 1 > dio::kMaxLiouvilleDepth) {
    raise(ErrorCode::PrecisionExhausted,
          "certifying row k needs truncation depth k + 1 <= " +
              std::to_string(dio::kMaxLiouvilleDepth));
  }
  const dio::NumberClass a = alpha.at_depth(k_max + 1);
  const dio::ScaledReal pi_lo =
      dio::ScaledReal::from_rational(dio::pi_lower(), dio::ScaledReal::Round::Down);
  std::vector<LiouvilleRow> rows;
  for (int k = 1; k <= k_max; ++k) {
    LiouvilleRow row;
    row.k = k;
    row.q = dio::pow_int(a.rule.base, dio::factorial(k));
    const dio::BigRational qr(row.q);
    row.sin_abs = dio::sine_abs_enclosure(qr * a.value, qr * a.error_bound);
    if (row.sin_abs.lo.is_zero() || row.sin_abs.relative_width() > 0.05) {
      raise(ErrorCode::PrecisionExhausted,
            "cannot certify |sin(pi q_k alpha)| at k = " + std::to_string(k));
    }
    const dio::ScaledReal qk1 =
        dio::ScaledReal::from_rational(dio::pow(qr, k - 1), dio::ScaledReal::Round::Up);
    row.amplitude = pi_lo / (row.sin_abs.hi * qk1);
    row.f_sup = dio::ScaledReal::from_rational(dio::pow(qr, -k), dio::ScaledReal::Round::Nearest);
    row.exceeds_one = row.amplitude > dio::ScaledReal(1.0, 0);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<LiouvilleRow> liouville_obstruction_demo(int k_max) {
  return liouville_obstruction_demo(dio::liouville_truncation(10, {1}, 2), k_max);
}

}  // namespace snaplab::euclid
