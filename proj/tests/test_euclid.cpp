#include <doctest.h>

#include <cmath>
#include <numbers>

#include "snaplab/error.hpp"
#include "snaplab/euclid.hpp"
#include "snaplab/propagators.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace snaplab;
using namespace snaplab::euclid;
using spectral::Complex;
using spectral::Mode;

namespace {

constexpr double kPi = std::numbers::pi;

SpectralField mode1(double xi, Complex amp) { return SpectralField(1, {{{{xi}}, amp}}); }
SpectralField zero1() { return SpectralField(1, {}); }

double diff(const SpectralField& a, const SpectralField& b) {
  return oracle::max_diff(a, oracle::spectrum(b));
}

template <class Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_SUITE("euclid") {
  TEST_CASE("evolve examples") {
    Rng rng(31);
    const auto d = testgen::cauchy(rng, 2, 6);
    CHECK(diff(evolve(d, 0.0), d.position) == 0.0);

    const auto single = evolve({mode1(1.3, {2, 1}), zero1()}, 0.8);
    CHECK(std::abs(single.modes()[0].amp - Complex(2, 1) * std::cos(0.8 * 1.3)) < 1e-15);

    for (double t : {0.3, 1.0, 2.0, 2.5, 7.0}) {
      const auto u = evolve({zero1(), mode1(kPi, 1.0)}, t);
      const double expected = std::sin(kPi * t) / kPi;
      if (t == std::floor(t)) {
        CHECK(u.empty());
      } else {
        CHECK(u.modes()[0].amp.real() == doctest::Approx(expected).epsilon(1e-14));
      }
    }
    CHECK(code_of([] { evolve({zero1(), SpectralField(2, {})}, 1.0); }) == ErrorCode::DimensionMismatch);
  }

  TEST_CASE("evolve matches the closed-form oracle") {
    Rng rng(32);
    for (int trial = 0; trial < 50; ++trial) {
      const auto d = testgen::cauchy(rng);
      const double t = rng.uniform(-10, 10);
      CHECK(oracle::max_diff(evolve(d, t), oracle::wave(d.position, d.velocity, t)) <= 1e-13);
    }
  }

  TEST_CASE("wave_residual examples") {
    CHECK(wave_residual({mode1(0.0, 1.0), mode1(0.0, 0.5)}, 0.7, 1e-3) == 0.0);
    CHECK(wave_residual({mode1(1.0, 1.0), zero1()}, 0.4, 1e-3) <= 1e-6);
    Rng rng(33);
    const auto d = testgen::cauchy(rng, 2, 5, 2.0);
    const double r1 = wave_residual(d, 0.9, 1e-2), r2 = wave_residual(d, 0.9, 5e-3);
    const double slope = std::log(r1 / r2) / std::log(2.0);
    CHECK(slope == doctest::Approx(2.0).epsilon(0.05));
    CHECK(code_of([&] { wave_residual(d, 0.1, 0.0); }) == ErrorCode::InvalidArgument);
  }

  TEST_CASE("kernel_modes examples") {
    const SpectralField f(1, {{{{kPi}}, 1.0}, {{{2 * kPi}}, 1.0}, {{{kPi / 2}}, 1.0}});
    const auto k1 = kernel_modes(f, 1.0);
    REQUIRE(k1.size() == 2);
    CHECK(k1[0].xi[0] == kPi / 2 * 2);
    CHECK(kernel_modes(mode1(kPi / 2, 1.0), 1.0).empty());
    CHECK(kernel_modes(mode1(2 * kPi, 1.0), 0.5).size() == 1);
    CHECK(kernel_modes(mode1(0.0, 1.0), 1.0).empty());
    CHECK(code_of([&] { kernel_modes(f, 0.0); }) == ErrorCode::InvalidTime);
  }

  TEST_CASE("integer_snapshot examples") {
    Rng rng(34);
    const auto d = testgen::cauchy(rng, 2, 8);
    const auto u0 = evolve(d, 0.0), u1 = evolve(d, 1.0);
    CHECK(diff(integer_snapshot(u0, u1, 0), u0) <= 1e-15);
    CHECK(diff(integer_snapshot(u0, u1, 1), u1) <= 1e-15);
    const auto two = spectral::combine(
        2.0, spectral::apply_multiplier(u1, propagators::symbol_Sprime(1.0)), -1.0, u0);
    CHECK(diff(integer_snapshot(u0, u1, 2), two) <= 1e-14);
  }

  TEST_CASE("snapshot formulas reproduce the closed-form wave") {
    Rng rng(35);
    for (int trial = 0; trial < 40; ++trial) {
      const auto d = testgen::cauchy(rng);
      const auto u0 = evolve(d, 0.0), u1 = evolve(d, 1.0);
      for (long m = -20; m <= 20; ++m) {
        CHECK(oracle::max_diff(integer_snapshot(u0, u1, m),
                               oracle::wave(d.position, d.velocity, static_cast<double>(m))) <= 1e-10);
      }
    }
  }

  TEST_CASE("recursion invariance") {
    Rng rng(36);
    for (int trial = 0; trial < 40; ++trial) {
      const auto d = testgen::cauchy(rng);
      for (long m = -20; m <= 20; ++m) {
        const auto md = static_cast<double>(m);
        const auto lhs = spectral::combine(1.0, evolve(d, md + 2), 1.0, evolve(d, md));
        const auto rhs = spectral::apply_multiplier(evolve(d, md + 1), propagators::symbol_Sprime(1.0));
        CHECK(diff(lhs, spectral::combine(2.0, rhs, 0.0, rhs)) <= 1e-11);
      }
    }
  }

  TEST_CASE("general_integer_snapshot examples") {
    Rng rng(37);
    const auto d = testgen::cauchy(rng, 2, 8);
    const auto ua = evolve(d, 0.25), ub = evolve(d, 0.75);
    CHECK(diff(general_integer_snapshot(ua, ub, 0.25, 0.75, 0), ua) <= 1e-15);
    CHECK(diff(general_integer_snapshot(ua, ub, 0.25, 0.75, 1), ub) <= 1e-15);
    CHECK(oracle::max_diff(general_integer_snapshot(ua, ub, 0.25, 0.75, 3),
                           oracle::wave(d.position, d.velocity, 1.75)) <= 1e-10);
    const auto u0 = evolve(d, 0.0), u1 = evolve(d, 1.0);
    CHECK(diff(general_integer_snapshot(u0, u1, 0.0, 1.0, 5), integer_snapshot(u0, u1, 5)) <= 1e-13);
    CHECK(code_of([&] { general_integer_snapshot(ua, ub, 1.0, 1.0, 2); }) == ErrorCode::InvalidTime);
  }

  TEST_CASE("general_integer_snapshot property") {
    Rng rng(38);
    for (int trial = 0; trial < 40; ++trial) {
      const auto d = testgen::cauchy(rng);
      const double a = rng.uniform(-3, 3), b = a + rng.uniform(0.1, 2);
      const auto ua = evolve(d, a), ub = evolve(d, b);
      for (long m = -20; m <= 20; ++m) {
        const double t = a + static_cast<double>(m) * (b - a);
        CHECK(oracle::max_diff(general_integer_snapshot(ua, ub, a, b, m),
                               oracle::wave(d.position, d.velocity, t)) <= 1e-10);
      }
    }
  }

  TEST_CASE("two_snapshot_solve examples") {
    const auto r = two_snapshot_solve(zero1(), mode1(kPi / 2, 1.0));
    CHECK(r.status == SolveStatus::Unique);
    REQUIRE(r.solution);
    CHECK(r.solution->modes()[0].amp.real() == doctest::Approx(kPi / 2).epsilon(1e-15));

    const auto ob = two_snapshot_solve(zero1(), mode1(kPi, 1.0));
    CHECK(ob.status == SolveStatus::Obstructed);
    CHECK_FALSE(ob.solution);
    CHECK_FALSE(ob.note.empty());

    // Data with a pi-mode that the cosine term explains exactly: g is free there.
    const auto f0 = mode1(kPi, 1.0);
    const auto f1 = evolve({f0, zero1()}, 1.0);
    const auto nk = two_snapshot_solve(f0, f1);
    CHECK(nk.status == SolveStatus::NonUniqueKernel);
    REQUIRE(nk.kernel_modes.size() == 1);
    CHECK(nk.kernel_modes[0].xi[0] == kPi);
  }

  TEST_CASE("two_snapshot_solve round trip") {
    Rng rng(39);
    for (int trial = 0; trial < 50; ++trial) {
      const auto d = testgen::cauchy(rng);
      const auto r = two_snapshot_solve(d.position, evolve(d, 1.0));
      REQUIRE(r.solution);
      CHECK(r.status == SolveStatus::Unique);
      CHECK(r.conditioning >= 1.0);
      CHECK(oracle::max_diff(*r.solution, oracle::spectrum(d.velocity)) <= 1e-10 * r.conditioning);
    }
  }

  TEST_CASE("compatibility_residual examples") {
    Rng rng(40);
    const auto d = testgen::cauchy(rng, 2, 8);
    const double alpha = std::numbers::sqrt2;
    SnapshotTriple t{evolve(d, 0.0), evolve(d, 1.0), evolve(d, alpha), alpha, std::nullopt};
    CHECK(compatibility_residual(t) <= 1e-12);

    const double eps = 1e-3;
    SnapshotTriple k{zero1(), zero1(), mode1(kPi, eps), 0.5, std::nullopt};
    CHECK(compatibility_residual(k) == 0.0);
    CHECK(spectral::max_abs_amp(compatibility_defect_product_form(k)) == 0.0);
    SnapshotTriple h{zero1(), zero1(), mode1(kPi / 2, eps), 0.5, std::nullopt};
    CHECK(compatibility_residual(h) == doctest::Approx(2 * eps / kPi).epsilon(1e-14));

    SnapshotTriple z{zero1(), zero1(), zero1(), 0.5, std::nullopt};
    CHECK(compatibility_residual(z) == 0.0);
  }

  TEST_CASE("the two compatibility forms agree mode by mode") {
    Rng rng(41);
    for (int trial = 0; trial < 50; ++trial) {
      const auto dim = static_cast<std::size_t>(rng.integer(1, 3));
      SnapshotTriple t{testgen::field(rng, dim, 6), testgen::field(rng, dim, 6), testgen::field(rng, dim, 6),
                       rng.uniform(-3, 3), std::nullopt};
      const auto a = compatibility_defect(t);
      const auto b = compatibility_defect_product_form(t);
      CHECK(spectral::max_abs_amp(spectral::combine(1.0, a, 1.0, b)) <= 1e-11);
    }
  }

  TEST_CASE("general three-time compatibility") {
    Rng rng(42);
    for (int trial = 0; trial < 30; ++trial) {
      const auto d = testgen::cauchy(rng);
      const double a = rng.uniform(-2, 2), b = rng.uniform(-2, 2), c = rng.uniform(-2, 2);
      CHECK(compatibility_residual_general(evolve(d, a), evolve(d, b), evolve(d, c), a, b, c) <= 1e-12);
    }
  }

  TEST_CASE("three_snapshot_solve round trip at sqrt 2") {
    Rng rng(43);
    for (int trial = 0; trial < 30; ++trial) {
      const auto d = testgen::cauchy(rng);
      const double alpha = 0.7071067811865476 * 2;
      const auto r = three_snapshot_solve({evolve(d, 0.0), evolve(d, 1.0), evolve(d, alpha), alpha, std::nullopt});
      REQUIRE(r.solution);
      CHECK(r.status == SolveStatus::Unique);
      const double scale = std::max(1.0, spectral::max_abs_amp(d.velocity));
      CHECK(oracle::max_diff(*r.solution, oracle::spectrum(d.velocity)) <= 1e-9 * r.conditioning * scale);
    }
  }

  TEST_CASE("three_snapshot_solve shared zeros give a kernel direction") {
    const auto f0 = SpectralField(1, {{{{3 * kPi}}, 1.0}, {{{1.0}}, 0.5}});
    const auto g = SpectralField(1, {{{{1.0}}, 0.25}});
    const CauchyData d{f0, g};
    const auto r = three_snapshot_solve({evolve(d, 0.0), evolve(d, 1.0), evolve(d, 2.0 / 3.0), 2.0 / 3.0, std::nullopt});
    CHECK(r.status == SolveStatus::NonUniqueKernel);
    REQUIRE(r.kernel_modes.size() == 1);
    CHECK(r.kernel_modes[0].xi[0] == 3 * kPi);

    SnapshotTriple exact{evolve(d, 0.0), evolve(d, 1.0), evolve(d, 2.0 / 3.0), 2.0 / 3.0, dio::BigRational(2, 3)};
    const auto re = three_snapshot_solve(exact);
    CHECK(re.status == SolveStatus::NonUniqueKernel);
    REQUIRE(re.solution);
    CHECK(re.solution->amplitude_at({{1.0}}).real() == doctest::Approx(0.25).epsilon(1e-9));
  }

  TEST_CASE("three_snapshot_solve conditioning near a Liouville approximant") {
    // alpha = 0.110001 agrees with sum 10^{-j!} to 1e-24; q_2 = 100.
    const double alpha = 0.110001;
    const double q = 100.0;
    const CauchyData d{zero1(), mode1(q * kPi, 1.0)};
    const auto r = three_snapshot_solve({evolve(d, 0.0), evolve(d, 1.0), evolve(d, alpha), alpha, std::nullopt});
    CHECK(r.conditioning >= q / kPi);
  }

  TEST_CASE("three_snapshot_solve rejects alpha in {0, 1} and flags inconsistent data") {
    CHECK(code_of([] { three_snapshot_solve({zero1(), zero1(), zero1(), 1.0, std::nullopt}); }) == ErrorCode::InvalidTime);
    CHECK(code_of([] { three_snapshot_solve({zero1(), zero1(), zero1(), 0.0, std::nullopt}); }) == ErrorCode::InvalidTime);
    const auto r = three_snapshot_solve({zero1(), mode1(0.7, 1.0), mode1(0.7, 5.0), 0.4, std::nullopt});
    CHECK(r.status == SolveStatus::Obstructed);
    CHECK_FALSE(r.solution);
    CHECK(r.residual > 0.1);
  }

  TEST_CASE("rational compatibility examples") {
    Rng rng(44);
    const auto d = testgen::cauchy(rng, 2, 8);
    CHECK(rational_compatibility_residual(evolve(d, 0.0), evolve(d, 2.0), evolve(d, 3.0), 2, 3) <= 1e-11);
    const auto h = mode1(kPi, 1.0);
    CHECK(rational_compatibility_residual(zero1(), h, h, 2, 3) == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(rational_compatibility_residual(zero1(), zero1(), zero1(), 3, 5) == 0.0);
    CHECK(code_of([] { rational_compatibility_residual(zero1(), zero1(), zero1(), 2, 4); }) == ErrorCode::InvalidTimes);
    CHECK(code_of([] { rational_compatibility_residual(zero1(), zero1(), zero1(), 3, 3); }) == ErrorCode::InvalidTimes);
  }

  TEST_CASE("rational compatibility implies the S_1-convolved form") {
    Rng rng(45);
    const std::pair<long, long> pq[] = {{2, 3}, {3, 5}, {1, 2}};
    for (const auto& [p, q] : pq) {
      for (int trial = 0; trial < 20; ++trial) {
        const auto f0 = testgen::field(rng, 1, 5), fp = testgen::field(rng, 1, 5), fq = testgen::field(rng, 1, 5);
        const double r3 = rational_compatibility_residual(f0, fp, fq, p, q);
        // f0 S_{q-p} + fp S_{-q} + fq S_p, the three-time form at 0, p, q.
        const double r2 = compatibility_residual_general(f0, fp, fq, 0.0, static_cast<double>(p), static_cast<double>(q));
        double smax = 0.0;
        for (const auto* f : {&f0, &fp, &fq}) {
          for (const auto& m : f->modes()) smax = std::max(smax, std::abs(propagators::eval_S(1.0, m.freq.radius())));
        }
        CHECK(r2 <= r3 * smax * (1 + 1e-12) + 1e-12);
      }
    }
  }

  TEST_CASE("Psi'-form equivalence") {
    Rng rng(46);
    using namespace propagators;
    for (int k = 0; k < 2000; ++k) {
      const long p = rng.integer(1, 9), q = rng.integer(1, 9);
      const double l = rng.uniform(0, 20);
      const double lhs = (eval_Psi(p - 1, 1.0, l) + eval_Sprime(static_cast<double>(p), l)) * eval_Psi(q, 1.0, l);
      const double rhs = (eval_Psi(q - 1, 1.0, l) + eval_Sprime(static_cast<double>(q), l)) * eval_Psi(p, 1.0, l);
      CHECK(std::abs(lhs - rhs) <= 1e-10 * (1 + std::abs(lhs)));
    }
  }

  TEST_CASE("rational_reconstruct examples") {
    Rng rng(47);
    const CauchyData d{mode1(kPi / 5, testgen::amplitude(rng)), mode1(kPi / 5, testgen::amplitude(rng))};
    const auto r = rational_reconstruct(evolve(d, 0.0), evolve(d, 2.0), evolve(d, 3.0), 2, 3);
    REQUIRE(r.solution);
    CHECK(oracle::max_diff(evolve({d.position, *r.solution}, 2.0), oracle::wave(d.position, d.velocity, 2.0)) <= 1e-10);
    CHECK(oracle::max_diff(evolve({d.position, *r.solution}, 3.0), oracle::wave(d.position, d.velocity, 3.0)) <= 1e-10);

    const auto r12 = rational_reconstruct(evolve(d, 0.0), evolve(d, 1.0), evolve(d, 2.0), 1, 2);
    REQUIRE(r12.solution);
    CHECK(r12.residual <= 1e-10);

    const auto bad = spectral::combine(1.0, evolve(d, 2.0), 1.0, mode1(0.9, 1.0));
    CHECK(code_of([&] { rational_reconstruct(evolve(d, 0.0), bad, evolve(d, 3.0), 2, 3); }) == ErrorCode::IncompatibleData);
  }

  TEST_CASE("rational_reconstruct round trip with kernel modes") {
    Rng rng(48);
    for (int trial = 0; trial < 20; ++trial) {
      auto d = testgen::cauchy(rng, 1, 6);
      // Add a position mode on the kernel frequency 2 pi.
      d.position = spectral::combine(1.0, d.position, 1.0, mode1(2 * kPi, 0.5));
      const auto r = rational_reconstruct(evolve(d, 0.0), evolve(d, 3.0), evolve(d, 5.0), 3, 5);
      REQUIRE(r.solution);
      CHECK(r.status == SolveStatus::NonUniqueKernel);
      CHECK(r.residual <= 1e-9);
    }
  }

  TEST_CASE("liouville_obstruction_demo rows") {
    const auto rows = liouville_obstruction_demo(4);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].k == 1);
    CHECK(rows[0].q == 10);
    CHECK(std::isfinite(rows[0].amplitude.to_double()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      CHECK(rows[i].exceeds_one);
      // f_k sup norm q^{-k} decreases to 0.
      if (i > 0) CHECK(rows[i].f_sup < rows[i - 1].f_sup);
    }
    CHECK(code_of([] { liouville_obstruction_demo(7); }) == ErrorCode::PrecisionExhausted);
    CHECK(code_of([] { liouville_obstruction_demo(dio::sqrt_class(2), 3); }) == ErrorCode::InvalidArgument);
  }
}
