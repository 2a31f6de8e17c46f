// Experiment bundles behind `wave reproduce`. Each bundle is a compact rerun
// of one acceptance experiment with a fixed seed.

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <utility>

#include "cli.hpp"
#include "snaplab/diophantine.hpp"
#include "snaplab/error.hpp"
#include "snaplab/euclid.hpp"
#include "snaplab/propagators.hpp"
#include "snaplab/rng.hpp"
#include "snaplab/sphere.hpp"

namespace snaplab::cli {

namespace {

using spectral::Complex;
using spectral::SpectralField;

SpectralField random_field(Rng& rng, std::size_t dim, int modes, double radius) {
  std::vector<spectral::Mode> out;
  for (int j = 0; j < modes; ++j) {
    std::vector<double> xi(dim);
    for (auto& x : xi) x = rng.uniform(-radius, radius);
    out.push_back({{xi}, {rng.uniform(-1, 1), rng.uniform(-1, 1)}});
  }
  return spectral::canonicalize(SpectralField(dim, std::move(out)));
}

euclid::CauchyData random_data(Rng& rng) {
  const auto dim = static_cast<std::size_t>(rng.integer(1, 3));
  const int modes = static_cast<int>(rng.integer(1, 16));
  return {random_field(rng, dim, modes, 4.0), random_field(rng, dim, modes, 4.0)};
}

double diff(const SpectralField& a, const SpectralField& b) {
  return spectral::max_abs_amp(spectral::combine(1.0, a, -1.0, b));
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

SuiteResult recursion(std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0, worst_rec = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto data = random_data(rng);
    const auto u0 = euclid::evolve(data, 0.0);
    const auto u1 = euclid::evolve(data, 1.0);
    const double a = rng.uniform(-2, 2);
    const double b = a + rng.uniform(0.2, 2);
    const auto ua = euclid::evolve(data, a);
    const auto ub = euclid::evolve(data, b);
    for (long m = -20; m <= 20; ++m) {
      const auto md = static_cast<double>(m);
      worst = std::max(worst, diff(euclid::integer_snapshot(u0, u1, m), euclid::evolve(data, md)));
      worst = std::max(worst, diff(euclid::general_integer_snapshot(ua, ub, a, b, m),
                                   euclid::evolve(data, a + md * (b - a))));
    }
    const double t = rng.uniform(-5, 5);
    const auto lhs = spectral::combine(1.0, euclid::evolve(data, t + 1), 1.0, euclid::evolve(data, t - 1));
    const auto rhs = spectral::apply_multiplier(euclid::evolve(data, t),
                                                spectral::scale(2.0, propagators::symbol_Sprime(1.0)));
    worst_rec = std::max(worst_rec, diff(lhs, rhs));
  }
  return {"recursion", worst <= 1e-10 && worst_rec <= 1e-11,
          "snapshot error " + fmt(worst) + ", recurrence residual " + fmt(worst_rec)};
}

SuiteResult identities(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> grid(1000);
  for (auto& l : grid) l = rng.uniform(0, 50);
  double worst = 0.0;
  for (double alpha : {0.3, std::numbers::sqrt2, 2.5}) {
    worst = std::max(worst, propagators::fundamental_identities_check(alpha, grid).max_residual);
  }
  for (long m = -10; m <= 10; ++m) {
    for (double l : grid) {
      const double lhs = propagators::eval_Psi(m, 1.0, l) * propagators::eval_S(1.0, l);
      worst = std::max(worst, std::abs(lhs - propagators::eval_S(static_cast<double>(m), l)));
    }
  }
  return {"identities", worst <= propagators::kIdentityTolerance, "max residual " + fmt(worst)};
}

SuiteResult threesnap(std::uint64_t seed) {
  Rng rng(seed);
  bool ok = true;
  double worst_rel = 0.0, worst_compat = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto data = random_data(rng);
    const double alpha = trial % 2 == 0 ? std::numbers::sqrt2 : rng.uniform(1.1, 3.0);
    euclid::SnapshotTriple triple{euclid::evolve(data, 0.0), euclid::evolve(data, 1.0),
                                  euclid::evolve(data, alpha), alpha, std::nullopt};
    worst_compat = std::max(worst_compat, euclid::compatibility_residual(triple));
    const auto rep = euclid::three_snapshot_solve(triple);
    if (!rep.solution) {
      ok = false;
      continue;
    }
    const auto back = euclid::evolve({triple.f0, *rep.solution}, alpha);
    const double scale = std::max(1.0, spectral::max_abs_amp(triple.falpha));
    const double rel = diff(back, triple.falpha) / (scale * rep.conditioning);
    worst_rel = std::max(worst_rel, rel);
  }
  ok = ok && worst_rel <= 1e-9 && worst_compat <= 1e-12;
  return {"threesnap", ok,
          "relative round trip " + fmt(worst_rel) + ", compatibility " + fmt(worst_compat)};
}

SuiteResult liouville(std::uint64_t) {
  const auto rows = euclid::liouville_obstruction_demo(6);
  bool ok = rows.size() == 6;
  for (const auto& r : rows) ok = ok && r.exceeds_one;
  return {"liouville", ok, std::to_string(rows.size()) + " levels, amplitude at k=6 " +
                               (rows.empty() ? std::string("-") : rows.back().amplitude.to_string())};
}

SuiteResult rational(std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  int rejected = 0, attempts = 0;
  const std::pair<long, long> pairs[] = {{1, 2}, {2, 3}, {3, 5}, {5, 7}};
  for (const auto& [p, q] : pairs) {
    for (int trial = 0; trial < 50; ++trial) {
      const auto data = random_data(rng);
      const auto f0 = euclid::evolve(data, 0.0);
      const auto fp = euclid::evolve(data, static_cast<double>(p));
      const auto fq = euclid::evolve(data, static_cast<double>(q));
      worst = std::max(worst, euclid::rational_reconstruct(f0, fp, fq, p, q).residual);
      if (trial % 10 == 0) {
        ++attempts;
        const auto bump = random_field(rng, f0.dim(), 1, 4.0);
        try {
          euclid::rational_reconstruct(f0, spectral::combine(1.0, fp, 1.0, bump), fq, p, q);
        } catch (const Error& e) {
          if (e.code() == ErrorCode::IncompatibleData) ++rejected;
        }
      }
    }
  }
  return {"rational", worst <= 1e-9 && rejected == attempts,
          "max residual " + fmt(worst) + ", rejected " + std::to_string(rejected) + "/" +
              std::to_string(attempts)};
}

SuiteResult oddtype(std::uint64_t) {
  const auto rep = dio::odd_type_verifier(10000);
  return {"oddtype", rep.passes(),
          std::to_string(rep.checked) + " odd q checked, " + std::to_string(rep.violations.size()) +
              " violations, min q^3 dist " + fmt(rep.min_ratio)};
}

SuiteResult jointbound(std::uint64_t) {
  const auto res = dio::joint_sine_lower_bound_check(dio::sqrt_class(2), 3, 1e4, 200000);
  return {"jointbound", res.passes, "C = " + fmt(res.C) + " at x = " + fmt(res.argmin_x)};
}

sphere::SphereField random_zonal(Rng& rng, int n, long lmax) {
  std::vector<sphere::SphereCoeff> cs;
  for (long l = 0; l <= lmax; ++l) cs.push_back({l, 1, {rng.uniform(-1, 1), rng.uniform(-1, 1)}});
  return sphere::SphereField({n}, std::move(cs));
}

double sphere_diff(const sphere::SphereField& a, const sphere::SphereField& b) {
  return sphere::max_abs_amp(sphere::linear_combine(1.0, a, -1.0, b));
}

SuiteResult sphere_suite(std::uint64_t seed) {
  Rng rng(seed);
  std::ostringstream detail;
  bool ok = true;

  const auto f0 = random_zonal(rng, 3, 12);
  const auto g = random_zonal(rng, 3, 12);
  std::vector<double> ts(20);
  for (std::size_t i = 0; i < ts.size(); ++i) ts[i] = 2 * std::numbers::pi * static_cast<double>(i) / 20;
  const double huy = sphere::huygens_antipodal_check(f0, g, ts, 20);
  ok = ok && huy <= 1e-10;
  detail << "huygens " << fmt(huy);

  double per = 0.0;
  for (int n : {3, 2}) {
    const auto a = random_zonal(rng, n, 12);
    const auto b = random_zonal(rng, n, 12);
    const double period = n == 3 ? 2 * std::numbers::pi : 4 * std::numbers::pi;
    for (double t : ts) {
      per = std::max(per, sphere_diff(sphere::sphere_evolve(a, b, t + period), sphere::sphere_evolve(a, b, t)));
    }
  }
  ok = ok && per <= 1e-10;
  detail << ", periodicity " << fmt(per);

  using sphere::Verdict;
  struct Cell {
    int n;
    const char* beta;
    Verdict expected;
    int margin;  // +1 must pass, -1 must fail, 0 unconstrained
  };
  const Cell cells[] = {
      {3, "1/2", Verdict::NonUnique, -1},
      {2, "1/3", Verdict::UniqueAndSolvable, +1},
      {2, "2/5", Verdict::NonUnique, -1},
      {3, "golden", Verdict::UniqueAndSolvable, +1},
      {3, "liouville:10:1:5", Verdict::UniqueNotAlwaysSolvable, 0},
      {2, "2*oddtype:1:5", Verdict::UniqueNotAlwaysSolvable, 0},
  };
  int good = 0;
  for (const auto& c : cells) {
    const auto beta = dio::parse_number_class(c.beta);
    bool cell_ok = sphere::classify_alpha(beta, c.n) == c.expected;
    if (c.margin != 0) {
      const bool passes = sphere::surjectivity_margin(beta, c.n, 10000, 3).passes;
      cell_ok = cell_ok && passes == (c.margin > 0);
    }
    good += cell_ok ? 1 : 0;
  }
  ok = ok && good == 6;
  detail << ", classification " << good << "/6";
  return {"sphere", ok, detail.str()};
}

SuiteResult sdprobe(std::uint64_t) {
  const auto rep = dio::slowly_decreasing_probe(propagators::symbol_S(1.0), 4.0, 1e3);
  std::size_t found = 0;
  for (const auto& r : rep.rows) found += r.eta ? 1 : 0;
  return {"sdprobe", rep.passes,
          std::to_string(found) + "/" + std::to_string(rep.rows.size()) + " windows witnessed"};
}

using SuiteFn = std::function<SuiteResult(std::uint64_t)>;

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r = {
      {"recursion", recursion}, {"identities", identities}, {"threesnap", threesnap},
      {"liouville", liouville}, {"rational", rational},     {"oddtype", oddtype},
      {"jointbound", jointbound}, {"sphere", sphere_suite}, {"sdprobe", sdprobe},
  };
  return r;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& [name, fn] : registry()) out.push_back(name);
  out.emplace_back("all");
  return out;
}

std::vector<SuiteResult> reproduce(std::string_view suite, std::uint64_t seed) {
  std::vector<SuiteResult> out;
  for (const auto& [name, fn] : registry()) {
    if (suite == "all" || suite == name) out.push_back(fn(seed));
  }
  if (out.empty()) raise(ErrorCode::UnknownSuite, "unknown suite '" + std::string(suite) + "'");
  return out;
}

}  // namespace snaplab::cli
