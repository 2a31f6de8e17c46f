#include "snaplab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "snaplab/error.hpp"

namespace snaplab::spectral {

namespace {

bool freq_less(const Frequency& a, const Frequency& b) {
  return std::lexicographical_compare(a.xi.begin(), a.xi.end(), b.xi.begin(), b.xi.end());
}

void check_same_dim(std::size_t expected, std::size_t got, const char* where) {
  if (expected != got) {
    raise(ErrorCode::DimensionMismatch,
          std::string(where) + ": dimension " + std::to_string(got) + " vs " +
              std::to_string(expected));
  }
}

}  // namespace

double Frequency::radius() const noexcept {
  double s = 0.0;
  for (double v : xi) s = std::hypot(s, v);
  return s;
}

SpectralField::SpectralField(std::size_t dim, std::vector<Mode> modes)
    : dim_(dim), modes_(std::move(modes)) {
  if (dim_ == 0) raise(ErrorCode::InvalidArgument, "field dimension must be >= 1");
  for (const auto& m : modes_) {
    check_same_dim(dim_, m.freq.dim(), "SpectralField");
    for (double v : m.freq.xi) {
      if (!std::isfinite(v)) raise(ErrorCode::InvalidArgument, "non-finite frequency");
    }
    if (!std::isfinite(m.amp.real()) || !std::isfinite(m.amp.imag())) {
      raise(ErrorCode::InvalidArgument, "non-finite amplitude");
    }
  }
}

Complex SpectralField::amplitude_at(const Frequency& f) const {
  auto it = std::lower_bound(modes_.begin(), modes_.end(), f,
                             [](const Mode& m, const Frequency& v) { return freq_less(m.freq, v); });
  if (it != modes_.end() && it->freq == f) return it->amp;
  return {0.0, 0.0};
}

bool SpectralField::is_canonical() const noexcept {
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    if (modes_[i].amp == Complex{}) return false;
    if (i > 0 && !freq_less(modes_[i - 1].freq, modes_[i].freq)) return false;
  }
  return true;
}

Complex MultiplierSymbol::operator()(double lambda) const {
  for (const auto& s : singular_set) {
    if (s.lambda == lambda) return s.value;
  }
  Complex v = eval(lambda);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    raise(ErrorCode::SymbolUndefined,
          label + " is not finite at lambda=" + std::to_string(lambda));
  }
  return v;
}

MultiplierSymbol constant_symbol(Complex value) {
  return {[value](double) { return value; }, {}, "const"};
}

MultiplierSymbol operator*(const MultiplierSymbol& a, const MultiplierSymbol& b) {
  return {[a, b](double l) { return a(l) * b(l); }, {}, "(" + a.label + ")*(" + b.label + ")"};
}

MultiplierSymbol operator+(const MultiplierSymbol& a, const MultiplierSymbol& b) {
  return {[a, b](double l) { return a(l) + b(l); }, {}, "(" + a.label + ")+(" + b.label + ")"};
}

MultiplierSymbol scale(Complex c, const MultiplierSymbol& s) {
  return {[c, s](double l) { return c * s(l); }, {}, "c*(" + s.label + ")"};
}

SpectralField canonicalize(const SpectralField& field) {
  std::vector<Mode> modes = field.modes();
  std::stable_sort(modes.begin(), modes.end(),
                   [](const Mode& a, const Mode& b) { return freq_less(a.freq, b.freq); });
  std::vector<Mode> out;
  out.reserve(modes.size());
  for (auto& m : modes) {
    if (!out.empty() && out.back().freq == m.freq) {
      out.back().amp += m.amp;
    } else {
      out.push_back(std::move(m));
    }
  }
  std::erase_if(out, [](const Mode& m) { return m.amp == Complex{}; });
  return SpectralField(field.dim(), std::move(out));
}

Complex evaluate(const SpectralField& field, std::span<const double> x) {
  check_same_dim(field.dim(), x.size(), "evaluate");
  Complex sum{};
  for (const auto& m : field.modes()) {
    double phase = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) phase += m.freq.xi[k] * x[k];
    sum += m.amp * Complex{std::cos(phase), std::sin(phase)};
  }
  return sum;
}

SpectralField apply_multiplier(const SpectralField& field, const MultiplierSymbol& symbol) {
  std::vector<Mode> out;
  out.reserve(field.size());
  for (const auto& m : field.modes()) {
    out.push_back({m.freq, symbol(m.freq.radius()) * m.amp});
  }
  return canonicalize(SpectralField(field.dim(), std::move(out)));
}

SpectralField linear_combine(std::span<const Complex> coeffs,
                             std::span<const SpectralField> fields) {
  if (coeffs.size() != fields.size()) {
    raise(ErrorCode::InvalidArgument, "linear_combine: coefficient count differs from field count");
  }
  if (fields.empty()) return SpectralField(1, {});
  const std::size_t dim = fields.front().dim();
  std::vector<Mode> out;
  for (std::size_t k = 0; k < fields.size(); ++k) {
    check_same_dim(dim, fields[k].dim(), "linear_combine");
    for (const auto& m : fields[k].modes()) out.push_back({m.freq, coeffs[k] * m.amp});
  }
  return canonicalize(SpectralField(dim, std::move(out)));
}

SpectralField combine(Complex a, const SpectralField& f, Complex b, const SpectralField& g) {
  const Complex c[] = {a, b};
  const SpectralField fs[] = {f, g};
  return linear_combine(c, fs);
}

double max_abs_amp(const SpectralField& field) {
  double m = 0.0;
  for (const auto& mode : field.modes()) m = std::max(m, std::abs(mode.amp));
  return m;
}

std::vector<Frequency> union_spectrum(std::span<const SpectralField> fields) {
  std::vector<Frequency> all;
  for (std::size_t k = 0; k < fields.size(); ++k) {
    if (k > 0) check_same_dim(fields[0].dim(), fields[k].dim(), "union_spectrum");
    for (const auto& m : fields[k].modes()) all.push_back(m.freq);
  }
  std::sort(all.begin(), all.end(), freq_less);
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

}  // namespace snaplab::spectral
