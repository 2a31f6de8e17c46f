#include <doctest.h>

#include <cmath>
#include <numbers>

#include "snaplab/error.hpp"
#include "snaplab/propagators.hpp"
#include "snaplab/spectral.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace snaplab;
using spectral::Complex;
using spectral::Mode;
using spectral::SpectralField;

namespace {

constexpr double kPi = std::numbers::pi;

SpectralField one_d(std::vector<Mode> modes) { return SpectralField(1, std::move(modes)); }

}  // namespace

TEST_SUITE("spectral") {
  TEST_CASE("canonicalize merges, drops zeros and sorts") {
    const auto merged = spectral::canonicalize(one_d({{{{kPi}}, 1.0}, {{{kPi}}, 2.0}}));
    REQUIRE(merged.size() == 1);
    CHECK(merged.modes()[0].amp == Complex(3.0));

    CHECK(spectral::canonicalize(SpectralField(2, {{{{1.0, 0.0}}, 0.0}})).empty());

    const auto sorted = spectral::canonicalize(one_d({{{{2.0}}, 1.0}, {{{1.0}}, 1.0}}));
    REQUIRE(sorted.size() == 2);
    CHECK(sorted.modes()[0].freq.xi[0] == 1.0);
    CHECK(sorted.modes()[1].freq.xi[0] == 2.0);
    CHECK(sorted.is_canonical());
  }

  TEST_CASE("canonicalize cancels opposite amplitudes") {
    CHECK(spectral::canonicalize(one_d({{{{1.5}}, {1, 2}}, {{{1.5}}, {-1, -2}}})).empty());
  }

  TEST_CASE("construction rejects inconsistent dimensions") {
    CHECK_THROWS_AS(SpectralField(2, {{{{1.0}}, 1.0}}), Error);
    try {
      SpectralField(2, {{{{1.0}}, 1.0}});
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DimensionMismatch);
    }
    CHECK_THROWS_AS(SpectralField(0, {}), Error);
    CHECK_THROWS_AS(SpectralField(1, {{{{NAN}}, 1.0}}), Error);
  }

  TEST_CASE("evaluate examples") {
    const double x5[] = {5.0};
    CHECK(spectral::evaluate(one_d({{{{0.0}}, 1.0}}), x5) == Complex(1.0));
    const double x1[] = {1.0};
    const auto v = spectral::evaluate(one_d({{{{kPi}}, 1.0}}), x1);
    CHECK(v.real() == doctest::Approx(-1.0));
    CHECK(std::abs(v.imag()) < 1e-15);
    const SpectralField f(2, {{{{kPi / 2, 0.0}}, 1.0}, {{{0.0, kPi / 2}}, 1.0}});
    const double x11[] = {1.0, 1.0};
    const auto w = spectral::evaluate(f, x11);
    CHECK(std::abs(w - Complex(0, 2)) < 1e-15);
    const double bad[] = {1.0, 2.0, 3.0};
    CHECK_THROWS_AS(spectral::evaluate(f, bad), Error);
  }

  TEST_CASE("apply_multiplier examples") {
    Rng rng(1);
    const auto f = testgen::field(rng, 2, 5);
    const auto same = spectral::apply_multiplier(f, spectral::constant_symbol(1.0));
    CHECK(oracle::max_diff(same, oracle::spectrum(f)) == 0.0);

    CHECK(spectral::apply_multiplier(one_d({{{{kPi}}, {2, 1}}}), propagators::symbol_S(1.0)).empty());

    const auto at0 = spectral::apply_multiplier(SpectralField(3, {{{{0, 0, 0}}, {1, -1}}}),
                                                propagators::symbol_S(2.5));
    REQUIRE(at0.size() == 1);
    CHECK(at0.modes()[0].amp == Complex(2.5, -2.5));
  }

  TEST_CASE("symbol reporting a non-finite value raises SymbolUndefined") {
    spectral::MultiplierSymbol bad{[](double l) { return Complex(1.0 / (l - 1.0)); }, {}, "bad"};
    try {
      spectral::apply_multiplier(one_d({{{{1.0}}, 1.0}}), bad);
      FAIL("expected SymbolUndefined");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::SymbolUndefined);
    }
    bad.singular_set.push_back({1.0, 7.0});
    const auto ok = spectral::apply_multiplier(one_d({{{{1.0}}, 1.0}}), bad);
    CHECK(ok.modes()[0].amp == Complex(7.0));
  }

  TEST_CASE("linear_combine and max_abs_amp examples") {
    Rng rng(2);
    const auto f = testgen::field(rng, 2, 6);
    const SpectralField fs[] = {f, f};
    const Complex c[] = {1.0, -1.0};
    CHECK(spectral::linear_combine(c, fs).empty());

    const auto one = one_d({{{{0.5}}, 1.0}});
    CHECK(spectral::combine(2.0, one, 0.0, one).modes()[0].amp == Complex(2.0));
    CHECK(spectral::combine(1.0, one, 1.0, one_d({{{{0.7}}, 1.0}})).size() == 2);

    CHECK(spectral::max_abs_amp(SpectralField(1, {})) == 0.0);
    CHECK(spectral::max_abs_amp(one_d({{{{1.0}}, {3, 4}}})) == 5.0);
    CHECK(spectral::max_abs_amp(one_d({{{{1.0}}, 1.0}, {{{2.0}}, -2.0}})) == 2.0);

    const SpectralField mixed[] = {one, SpectralField(2, {})};
    const Complex c2[] = {1.0, 1.0};
    CHECK_THROWS_AS(spectral::linear_combine(c2, mixed), Error);
  }

  TEST_CASE("diagonal action matches the direct sum at random points") {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
      const auto dim = static_cast<std::size_t>(rng.integer(1, 3));
      const auto f = testgen::field(rng, dim, 8);
      const double t = rng.uniform(-3, 3);
      const auto g = spectral::apply_multiplier(f, propagators::symbol_S(t));
      for (int k = 0; k < 100; ++k) {
        const auto x = testgen::frequency(rng, dim, 10.0);
        Complex direct = 0.0;
        double scale = 0.0;
        for (const auto& m : f.modes()) {
          double phase = 0.0;
          for (std::size_t i = 0; i < dim; ++i) phase += m.freq.xi[i] * x[i];
          const Complex term = oracle::sinc_t(t, oracle::radius(m.freq.xi)) * m.amp * std::polar(1.0, phase);
          direct += term;
          scale += std::abs(term);
        }
        CHECK(std::abs(spectral::evaluate(g, x) - direct) <= 1e-12 * std::max(1.0, scale));
      }
    }
  }

  TEST_CASE("multiplier composition equals the product symbol") {
    Rng rng(12);
    for (int trial = 0; trial < 50; ++trial) {
      const auto f = testgen::field(rng, 2, 10);
      const auto s1 = propagators::symbol_Sprime(rng.uniform(-2, 2));
      const auto s2 = propagators::symbol_Psi(rng.integer(-6, 6), rng.uniform(0.2, 2));
      const auto twice = spectral::apply_multiplier(spectral::apply_multiplier(f, s1), s2);
      const auto once = spectral::apply_multiplier(f, s1 * s2);
      REQUIRE(twice.size() == once.size());
      for (std::size_t i = 0; i < once.size(); ++i) {
        const auto a = twice.modes()[i].amp, b = once.modes()[i].amp;
        CHECK(std::abs(a - b) <= 1e-15 * std::abs(b) + 1e-300);
      }
    }
  }

  TEST_CASE("canonicalize is idempotent") {
    Rng rng(13);
    for (int trial = 0; trial < 50; ++trial) {
      const auto dim = static_cast<std::size_t>(rng.integer(1, 3));
      std::vector<Mode> modes;
      for (int j = 0; j < 12; ++j) {
        // Reuse a few frequencies so duplicates occur.
        modes.push_back({{std::vector<double>(dim, static_cast<double>(rng.integer(0, 4)))}, testgen::amplitude(rng)});
      }
      const auto once = spectral::canonicalize(SpectralField(dim, modes));
      const auto twice = spectral::canonicalize(once);
      CHECK(once.is_canonical());
      REQUIRE(once.size() == twice.size());
      for (std::size_t i = 0; i < once.size(); ++i) {
        CHECK(once.modes()[i].freq == twice.modes()[i].freq);
        CHECK(once.modes()[i].amp == twice.modes()[i].amp);
      }
    }
  }

  TEST_CASE("apply_multiplier is linear") {
    Rng rng(14);
    for (int trial = 0; trial < 50; ++trial) {
      const auto f = testgen::field(rng, 2, 6);
      const auto g = testgen::field(rng, 2, 6);
      const Complex a = testgen::amplitude(rng), b = testgen::amplitude(rng);
      const auto sym = propagators::symbol_Psi(rng.integer(-8, 8), rng.uniform(0.1, 3));
      const auto lhs = spectral::apply_multiplier(spectral::combine(a, f, b, g), sym);
      const auto rhs = spectral::combine(a, spectral::apply_multiplier(f, sym), b, spectral::apply_multiplier(g, sym));
      CHECK(oracle::max_diff(lhs, oracle::spectrum(rhs)) <= 1e-12);
    }
  }

  TEST_CASE("union spectrum") {
    const SpectralField fs[] = {one_d({{{{2.0}}, 1.0}}), one_d({{{{1.0}}, 1.0}, {{{2.0}}, 3.0}})};
    const auto u = spectral::union_spectrum(fs);
    REQUIRE(u.size() == 2);
    CHECK(u[0].xi[0] == 1.0);
  }
}
