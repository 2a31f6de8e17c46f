#include "snaplab/propagators.hpp"

#include <algorithm>
#include <cmath>

#include "snaplab/error.hpp"

namespace snaplab::propagators {

double chebyshev_U(long m, double x) {
  if (m == -1) return 0.0;
  if (m < -1) return -chebyshev_U(-m - 2, x);
  double prev = 0.0;  // U_{-1}
  double cur = 1.0;   // U_0
  for (long j = 0; j < m; ++j) {
    const double next = 2.0 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double sin_of_product(double k, double theta) {
  const double p = k * theta;
  const double e = std::fma(k, theta, -p);
  return std::sin(p) + e * std::cos(p);
}

double cos_of_product(double k, double theta) {
  const double p = k * theta;
  const double e = std::fma(k, theta, -p);
  return std::cos(p) - e * std::sin(p);
}

bool sine_vanishes(double theta) {
  return std::abs(std::sin(theta)) <= kZeroSine * std::max(1.0, std::abs(theta));
}

double eval_S(double t, double lambda) {
  const double x = t * lambda;
  if (std::abs(x) < kSeriesThreshold) {
    const double x2 = x * x;
    return t * (1.0 - x2 / 6.0 + x2 * x2 / 120.0);
  }
  if (sine_vanishes(x)) return 0.0;
  return sin_of_product(t, lambda) / lambda;
}

double eval_Sprime(double t, double lambda) { return cos_of_product(t, lambda); }

double eval_Psi(long m, double s, double lambda) {
  if (s == 0.0) raise(ErrorCode::InvalidScale, "Psi symbol needs s != 0");
  // Both branches are functions of the same rounded angle theta.
  const double theta = s * lambda;
  const double den = std::sin(theta);
  if (std::abs(den) >= kPsiBranchThreshold) {
    return sin_of_product(static_cast<double>(m), theta) / den;
  }
  return chebyshev_U(m - 1, std::cos(theta));
}

MultiplierSymbol symbol_S(double t) {
  return {[t](double l) { return spectral::Complex{eval_S(t, l), 0.0}; },
          {{0.0, {t, 0.0}}},
          "S_" + std::to_string(t)};
}

MultiplierSymbol symbol_Sprime(double t) {
  return {[t](double l) { return spectral::Complex{eval_Sprime(t, l), 0.0}; },
          {},
          "S'_" + std::to_string(t)};
}

MultiplierSymbol symbol_Psi(long m, double s) {
  if (s == 0.0) raise(ErrorCode::InvalidScale, "Psi symbol needs s != 0");
  return {[m, s](double l) { return spectral::Complex{eval_Psi(m, s, l), 0.0}; },
          {{0.0, {static_cast<double>(m), 0.0}}},
          "Psi_" + std::to_string(m) + "," + std::to_string(s)};
}

MultiplierSymbol make_symbol(const PropagatorSpec& spec) {
  switch (spec.kind) {
    case PropagatorKind::Sine: return symbol_S(spec.t_or_s);
    case PropagatorKind::Cosine: return symbol_Sprime(spec.t_or_s);
    case PropagatorKind::Psi: return symbol_Psi(spec.m, spec.t_or_s);
  }
  raise(ErrorCode::InvalidArgument, "unknown propagator kind");
}

IdentityReport fundamental_identities_check(double alpha, std::span<const double> lambda_grid,
                                            long m_min, long m_max) {
  if (lambda_grid.empty()) raise(ErrorCode::InvalidArgument, "empty lambda grid");
  IdentityReport r;
  for (double l : lambda_grid) {
    if (!(l >= 0.0)) raise(ErrorCode::InvalidArgument, "lambda grid entries must be >= 0");
    const double c1 = eval_Sprime(1.0, l);
    for (long m = m_min; m <= m_max; ++m) {
      const double md = static_cast<double>(m);
      const double psi = eval_Psi(m + 2, 1.0, l) + eval_Psi(m, 1.0, l) -
                         2.0 * c1 * eval_Psi(m + 1, 1.0, l);
      const double sine =
          eval_S(md + 2.0, l) + eval_S(md, l) - 2.0 * c1 * eval_S(md + 1.0, l);
      r.psi_recursion = std::max(r.psi_recursion, std::abs(psi));
      r.sine_recursion = std::max(r.sine_recursion, std::abs(sine));
    }
    const double shift = eval_S(alpha, l) * c1 - eval_Sprime(alpha, l) * eval_S(1.0, l) -
                         eval_S(alpha - 1.0, l);
    r.shift_identity = std::max(r.shift_identity, std::abs(shift));
  }
  r.max_residual = std::max({r.psi_recursion, r.sine_recursion, r.shift_identity});
  r.passes = r.max_residual <= kIdentityTolerance;
  return r;
}

}  // namespace snaplab::propagators
