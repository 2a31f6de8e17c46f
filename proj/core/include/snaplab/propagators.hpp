#pragma once

#include <span>
#include <string>

#include "snaplab/spectral.hpp"

namespace snaplab::propagators {

using spectral::MultiplierSymbol;

// Below this |sin(s*lambda)| the Psi symbol switches from the sine ratio to
// the Chebyshev recurrence.
inline constexpr double kPsiBranchThreshold = 1e-6;
// Below this |t*lambda| the sine symbol uses its Taylor series.
inline constexpr double kSeriesThreshold = 1e-6;
// A sine value counts as an exact zero when |sin(theta)| <= kZeroSine * max(1, |theta|).
inline constexpr double kZeroSine = 1e-14;

enum class PropagatorKind { Sine, Cosine, Psi };

struct PropagatorSpec {
  PropagatorKind kind = PropagatorKind::Sine;
  double t_or_s = 0.0;
  long m = 0;  // Psi only
};

// U_m(x) by the three-term recurrence, with U_{-1} = 0 and U_{-m-2} = -U_m.
double chebyshev_U(long m, double x);

// sin(k * theta) where the product is taken exactly (fma error term).
double sin_of_product(double k, double theta);
double cos_of_product(double k, double theta);

// True when sin(theta) is an exact zero at working precision.
bool sine_vanishes(double theta);

// lambda -> sin(t lambda) / lambda, value t at lambda = 0.
MultiplierSymbol symbol_S(double t);
// lambda -> cos(t lambda).
MultiplierSymbol symbol_Sprime(double t);
// lambda -> sin(m s lambda) / sin(s lambda) = U_{m-1}(cos s lambda). Throws InvalidScale for s = 0.
MultiplierSymbol symbol_Psi(long m, double s);

double eval_S(double t, double lambda);
double eval_Sprime(double t, double lambda);
double eval_Psi(long m, double s, double lambda);

MultiplierSymbol make_symbol(const PropagatorSpec& spec);

struct IdentityReport {
  double psi_recursion = 0.0;      // Psi_{m+2} + Psi_m - 2 S'_1 Psi_{m+1}
  double sine_recursion = 0.0;     // S_{m+2} + S_m - 2 S'_1 S_{m+1}
  double shift_identity = 0.0;     // S_a S'_1 - S'_a S_1 - S_{a-1}
  double max_residual = 0.0;
  bool passes = false;
};

inline constexpr double kIdentityTolerance = 1e-10;

IdentityReport fundamental_identities_check(double alpha, std::span<const double> lambda_grid,
                                            long m_min = -10, long m_max = 10);

}  // namespace snaplab::propagators
