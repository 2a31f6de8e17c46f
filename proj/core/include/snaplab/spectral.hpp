#pragma once

/*
 * Band-limited functions on R^n as finite plane-wave sums
 *
 *   f(x) = sum_j c_j exp(i xi_j . x)
 *
 * Every radial convolution operator acts on the mode exp(i xi . x) by the
 * scalar sigma(|xi|), so all operators in this library are applied mode by
 * mode and identities can be checked per eigenmode.
 */

#include <complex>
#include <compare>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace snaplab::spectral {

using Complex = std::complex<double>;

struct Frequency {
  std::vector<double> xi;

  std::size_t dim() const noexcept { return xi.size(); }
  double radius() const noexcept;

  // Lexicographic; equality is exact coordinate equality.
  friend bool operator==(const Frequency&, const Frequency&) = default;
  friend std::partial_ordering operator<=>(const Frequency& a, const Frequency& b) {
    return a.xi <=> b.xi;
  }
};

struct Mode {
  Frequency freq;
  Complex amp;
};

class SpectralField {
public:
  SpectralField() = default;
  // Throws DimensionMismatch when a mode disagrees with dim, InvalidArgument
  // for dim == 0 or non-finite entries. Does not canonicalize.
  SpectralField(std::size_t dim, std::vector<Mode> modes);

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<Mode>& modes() const noexcept { return modes_; }
  bool empty() const noexcept { return modes_.empty(); }
  std::size_t size() const noexcept { return modes_.size(); }

  // Amplitude at an exact frequency (0 if absent). Requires canonical order.
  Complex amplitude_at(const Frequency& f) const;

  bool is_canonical() const noexcept;

private:
  std::size_t dim_ = 1;
  std::vector<Mode> modes_;
};

// A radial multiplier lambda -> sigma(lambda) on [0, inf). Removable
// singularities are listed with their continuation values and take precedence
// over eval at exactly those points.
struct Singularity {
  double lambda;
  Complex value;
};

struct MultiplierSymbol {
  std::function<Complex(double)> eval;
  std::vector<Singularity> singular_set;
  std::string label;

  // Throws SymbolUndefined when the value is not finite.
  Complex operator()(double lambda) const;
};

MultiplierSymbol constant_symbol(Complex value);
MultiplierSymbol operator*(const MultiplierSymbol& a, const MultiplierSymbol& b);
MultiplierSymbol operator+(const MultiplierSymbol& a, const MultiplierSymbol& b);
MultiplierSymbol scale(Complex c, const MultiplierSymbol& s);

SpectralField canonicalize(const SpectralField& field);

Complex evaluate(const SpectralField& field, std::span<const double> x);

SpectralField apply_multiplier(const SpectralField& field, const MultiplierSymbol& symbol);

SpectralField linear_combine(std::span<const Complex> coeffs,
                             std::span<const SpectralField> fields);

// Convenience for two-term combinations a*f + b*g.
SpectralField combine(Complex a, const SpectralField& f, Complex b, const SpectralField& g);

double max_abs_amp(const SpectralField& field);

// Sorted, de-duplicated frequencies appearing in any of the fields.
std::vector<Frequency> union_spectrum(std::span<const SpectralField> fields);

}  // namespace snaplab::spectral
