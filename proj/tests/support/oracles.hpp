#pragma once

// Reference formulas written directly from the closed forms, independent of
// the library's symbol and solver code.

#include <cmath>
#include <complex>
#include <map>
#include <vector>

#include "snaplab/spectral.hpp"

namespace oracle {

using Complex = std::complex<double>;
using Spectrum = std::map<std::vector<double>, Complex>;

inline double radius(const std::vector<double>& xi) {
  double s = 0.0;
  for (double x : xi) s += x * x;
  return std::sqrt(s);
}

inline double sinc_t(double t, double lam) { return lam == 0.0 ? t : std::sin(t * lam) / lam; }

// Amplitudes of u_t = f cos(t lambda) + g sin(t lambda) / lambda.
inline Spectrum wave(const snaplab::spectral::SpectralField& f, const snaplab::spectral::SpectralField& g,
                     double t) {
  Spectrum out;
  for (const auto& m : f.modes()) out[m.freq.xi] += m.amp * std::cos(t * radius(m.freq.xi));
  for (const auto& m : g.modes()) out[m.freq.xi] += m.amp * sinc_t(t, radius(m.freq.xi));
  return out;
}

inline Spectrum spectrum(const snaplab::spectral::SpectralField& f) {
  Spectrum out;
  for (const auto& m : f.modes()) out[m.freq.xi] += m.amp;
  return out;
}

inline double max_diff(const Spectrum& a, const Spectrum& b) {
  double worst = 0.0;
  for (const auto& [xi, v] : a) {
    const auto it = b.find(xi);
    worst = std::max(worst, std::abs(v - (it == b.end() ? Complex{} : it->second)));
  }
  for (const auto& [xi, v] : b) {
    if (!a.count(xi)) worst = std::max(worst, std::abs(v));
  }
  return worst;
}

inline double max_diff(const snaplab::spectral::SpectralField& f, const Spectrum& s) {
  return max_diff(spectrum(f), s);
}

// U_{m-1}(cos theta) from the closed form sin(m theta) / sin(theta), with the
// theta -> k pi limit m (+-1)^{k(m-1)} taken by hand.
inline double psi_closed(long m, double theta) {
  const double s = std::sin(theta);
  if (std::abs(s) > 1e-4) return std::sin(static_cast<double>(m) * theta) / s;
  const double k = std::round(theta / M_PI);
  const double sign = (static_cast<long>(k) % 2 != 0 && (m - 1) % 2 != 0) ? -1.0 : 1.0;
  return static_cast<double>(m) * sign;
}

}  // namespace oracle
