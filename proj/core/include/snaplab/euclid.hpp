#pragma once

/*
 * Snapshot problems for the wave equation on R^n.
 *
 * A wave with Cauchy data (f, g) is u_t = f * S'_t + g * S_t. On the mode
 * exp(i xi . x) with lambda = |xi| the operators act by cos(t lambda) and
 * sin(t lambda) / lambda, so every solver below works one mode at a time.
 * The kernel of C_{S_t} shows up as modes with sin(t lambda) = 0.
 */

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "snaplab/bigrational.hpp"
#include "snaplab/certified.hpp"
#include "snaplab/number_class.hpp"
#include "snaplab/spectral.hpp"

namespace snaplab::euclid {

using spectral::Complex;
using spectral::Frequency;
using spectral::SpectralField;

struct CauchyData {
  SpectralField position;
  SpectralField velocity;
};

struct SnapshotTriple {
  SpectralField f0;
  SpectralField f1;
  SpectralField falpha;
  double alpha = 0.0;
  // When present and positive, the solver takes the exact rational path.
  std::optional<dio::BigRational> exact_alpha;
};

enum class SolveStatus { Unique, NonUniqueKernel, Obstructed };

std::string_view to_string(SolveStatus s) noexcept;

struct SolveReport {
  std::optional<SpectralField> solution;
  double residual = 0.0;
  double conditioning = 0.0;  // largest per-mode amplification used
  std::vector<Frequency> kernel_modes;
  SolveStatus status = SolveStatus::Unique;
  std::string note;
};

SpectralField evolve(const CauchyData& data, double t);

// Max amplitude of the centred second difference in t minus the Laplacian
// (which multiplies each mode by -lambda^2).
double wave_residual(const CauchyData& data, double t, double h);

// Frequencies of the field with lambda > 0 and sin(t lambda) = 0.
std::vector<Frequency> kernel_modes(const SpectralField& field, double t);

// u_m = Psi_m * u_1 - Psi_{m-1} * u_0.
SpectralField integer_snapshot(const SpectralField& u0, const SpectralField& u1, long m);

// u_{a + m s} = u_b * Psi_{m,s} - u_a * Psi_{m-1,s} with s = b - a.
SpectralField general_integer_snapshot(const SpectralField& ua, const SpectralField& ub, double a,
                                       double b, long m);

// Solves g * S_1 = f1 - f0 * S'_1 inside the union spectrum of the data.
SolveReport two_snapshot_solve(const SpectralField& f0, const SpectralField& f1);

// f0 * S_{alpha-1} + f1 * S_{-alpha} + falpha * S_1.
SpectralField compatibility_defect(const SnapshotTriple& triple);
// (f1 - f0 * S'_1) * S_alpha - (falpha - f0 * S'_alpha) * S_1, the negative of
// compatibility_defect mode by mode.
SpectralField compatibility_defect_product_form(const SnapshotTriple& triple);
double compatibility_residual(const SnapshotTriple& triple);

// f_a * S_{c-b} + f_b * S_{a-c} + f_c * S_{b-a} for snapshots at times a, b, c.
SpectralField compatibility_defect_general(const SpectralField& fa, const SpectralField& fb,
                                           const SpectralField& fc, double a, double b, double c);
double compatibility_residual_general(const SpectralField& fa, const SpectralField& fb,
                                      const SpectralField& fc, double a, double b, double c);

SolveReport three_snapshot_solve(const SnapshotTriple& triple);

// (fp - f0 * S'_p) * Psi_q - (fq - f0 * S'_q) * Psi_p.
SpectralField rational_compatibility_defect(const SpectralField& f0, const SpectralField& fp,
                                            const SpectralField& fq, long p, long q);
double rational_compatibility_residual(const SpectralField& f0, const SpectralField& fp,
                                       const SpectralField& fq, long p, long q);

// Velocity for snapshots f0, fp, fq at times 0, p, q built from the Bezout
// pair k p + l q = 1. Throws IncompatibleData when the data violate the
// rational compatibility condition.
SolveReport rational_reconstruct(const SpectralField& f0, const SpectralField& fp,
                                 const SpectralField& fq, long p, long q);

struct LiouvilleRow {
  int k = 0;
  dio::BigInt q;
  dio::RealInterval sin_abs;       // |sin(pi q alpha)|
  dio::ScaledReal amplitude;       // certified lower bound of pi / (|sin| q^{k-1})
  dio::ScaledReal f_sup;           // q^{-k}
  bool exceeds_one = false;
};

// For a Liouville construction alpha with approximants p_k / q_k, q_k = b^{k!},
// the data f_k = exp(i pi q_k x_1) / q_k^k tend to 0 while the velocities
// solving g * S_alpha = f_k have amplitude pi / (|sin(pi q_k alpha)| q_k^{k-1}).
std::vector<LiouvilleRow> liouville_obstruction_demo(const dio::NumberClass& alpha, int k_max);
std::vector<LiouvilleRow> liouville_obstruction_demo(int k_max);

}  // namespace snaplab::euclid
