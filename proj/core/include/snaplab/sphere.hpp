#pragma once

/*
 * Shifted wave equation on S^n,
 *
 *   (Delta - ((n-1)/2)^2) u = d^2 u / dt^2,
 *
 * in spherical-harmonic coefficients. Degree-l harmonics evolve with
 * frequency l + (n-1)/2, and every rotation-invariant convolution acts on
 * H_l by its Schur constant. Point evaluation is available for zonal fields
 * only, via Y_{l1} = sqrt(d(l)) phi_l.
 */

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "snaplab/bigrational.hpp"
#include "snaplab/diophantine.hpp"
#include "snaplab/euclid.hpp"
#include "snaplab/number_class.hpp"

namespace snaplab::sphere {

using Complex = std::complex<double>;

struct SphereParams {
  int n = 2;

  double shift() const noexcept { return 0.5 * (n - 1); }
  bool shift_is_integer() const noexcept { return n % 2 == 1; }
  friend bool operator==(const SphereParams&, const SphereParams&) = default;
};

struct SphereCoeff {
  long l = 0;
  long m = 1;  // 1 <= m <= d(l); m = 1 is the zonal harmonic
  Complex amp;
};

class SphereField {
public:
  SphereField() = default;
  // Validates n >= 2, l >= 0 and 1 <= m <= d(l); merges duplicates, drops
  // zeros and sorts by (l, m).
  SphereField(SphereParams params, std::vector<SphereCoeff> coeffs);

  const SphereParams& params() const noexcept { return params_; }
  const std::vector<SphereCoeff>& coeffs() const noexcept { return coeffs_; }
  bool empty() const noexcept { return coeffs_.empty(); }
  bool is_zonal() const noexcept;
  long max_degree() const noexcept;
  Complex amplitude_at(long l, long m) const;

private:
  SphereParams params_;
  std::vector<SphereCoeff> coeffs_;
};

// d(l) = C(n+l, n) - C(n+l-2, n).
dio::BigInt dim_Hl(int n, long l);
double eigenvalue(int n, long l);

// phi_l(c) = P_l^{(n-1)/2}(c) / P_l^{(n-1)/2}(1).
double gegenbauer_phi(int n, long l, double c);

double schur_S(double t, int n, long l);
double schur_Sprime(double t, int n, long l);
double schur_Psi(long m, double alpha, int n, long l);

// A time on S^n given in radians, optionally as an exact multiple of pi.
struct Angle {
  double radians = 0.0;
  std::optional<dio::BigRational> over_pi;

  static Angle from_radians(double r) { return {r, std::nullopt}; }
  static Angle pi_times(const dio::BigRational& beta);
  std::string to_string() const;
};

// Schur constants at an angle; exact angles reduce (l + s) beta mod 2
// exactly, so exact zeros come out as 0.
double schur_S(const Angle& t, int n, long l);
double schur_Sprime(const Angle& t, int n, long l);

double max_abs_amp(const SphereField& f);
SphereField linear_combine(Complex a, const SphereField& f, Complex b, const SphereField& g);

template <class Fn>
SphereField apply_schur(const SphereField& f, Fn&& per_degree) {
  std::vector<SphereCoeff> out;
  out.reserve(f.coeffs().size());
  for (const auto& c : f.coeffs()) out.push_back({c.l, c.m, per_degree(c.l) * c.amp});
  return SphereField(f.params(), std::move(out));
}

SphereField sphere_evolve(const SphereField& f0, const SphereField& g, double t);
SphereField sphere_evolve(const SphereField& f0, const SphereField& g, const Angle& t);

// Sum_l a_l sqrt(d(l)) phi_l(c) for a zonal field, c = x . o.
Complex zonal_value(const SphereField& f, double c);

// max |u(-x, t + pi) - (-1)^{(n-1)/2} u(x, t)| over t_grid and c_samples
// points c in [-1, 1].
double huygens_antipodal_check(const SphereField& f0, const SphereField& g,
                               std::span<const double> t_grid, int c_samples = 20);

// u_{m alpha} = u_0 * S'_{m alpha} + (u_alpha - u_0 * S'_alpha) * Psi_{m, alpha}.
SphereField sphere_snapshot_m(const SphereField& u0, const SphereField& ualpha, double alpha,
                              long m);

enum class Verdict { UniqueAndSolvable, UniqueNotAlwaysSolvable, NonUnique };

std::string_view to_string(Verdict v) noexcept;

// beta = alpha / pi. Throws Unclassifiable when no stated theorem applies.
Verdict classify_alpha(const dio::NumberClass& beta, int n);

struct SphereSolveReport {
  std::optional<SphereField> solution;
  double residual = 0.0;
  double conditioning = 0.0;
  std::vector<std::pair<long, long>> free_coeffs;  // (l, m) in the data with zero Schur constant
  std::vector<long> kernel_degrees;                // every l <= L with zero Schur constant
  euclid::SolveStatus status = euclid::SolveStatus::Unique;
  std::string note;
};

SphereSolveReport sphere_two_snapshot_solve(const SphereField& f0, const SphereField& falpha,
                                            const Angle& alpha, long L = 256);

// Lower envelope l -> |S_alpha(l)| for 0 <= l <= L.
std::vector<dio::SequencePoint> schur_sequence(const Angle& alpha, int n, long L);
std::vector<dio::SequencePoint> schur_sequence(const dio::NumberClass& beta, int n, long L);

dio::SlowDecayResult surjectivity_margin(const Angle& alpha, int n, long L, int M);
dio::SlowDecayResult surjectivity_margin(const dio::NumberClass& beta, int n, long L, int M);

}  // namespace snaplab::sphere
