#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include "snaplab/diophantine.hpp"
#include "snaplab/error.hpp"
#include "snaplab/euclid.hpp"
#include "snaplab/io.hpp"
#include "snaplab/propagators.hpp"
#include "snaplab/sphere.hpp"

namespace snaplab::cli {

namespace {

using nlohmann::json;
using spectral::SpectralField;

// Numbers that json cannot carry (inf, nan) become strings.
json num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (!v.is_string()) return v.dump();
  const auto s = v.get<std::string>();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
  std::vector<std::pair<std::string, json>> notes;  // extra '#' header lines / json keys
};

enum class Kind { Report, Table, Field };

struct Output {
  Kind kind = Kind::Report;
  json report;  // Report and Field
  Table table;  // Table, and the csv form of a Field
  int exit_code = 0;
};

struct Context {
  std::uint64_t seed = 0;
  std::string out_path;
  std::string format;
  std::string verb;
};

json meta(const Context& ctx) {
  return {{"verb", ctx.verb}, {"seed", ctx.seed}, {"version", std::string(kVersion)}};
}

std::string header(const Context& ctx) {
  return "# wave " + ctx.verb + " seed=" + std::to_string(ctx.seed) + " version=" +
         std::string(kVersion) + "\n";
}

std::string render_csv(const Context& ctx, const Table& t) {
  std::string s = header(ctx);
  for (const auto& [k, v] : t.notes) s += "# " + k + "=" + csv_cell(v) + "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) s += (i ? "," : "") + t.columns[i];
  s += "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + csv_cell(row[i]);
    s += "\n";
  }
  return s;
}

std::string render_json_table(const Context& ctx, const Table& t) {
  json j = {{"meta", meta(ctx)}, {"columns", t.columns}, {"rows", t.rows}};
  for (const auto& [k, v] : t.notes) j[k] = v;
  return j.dump(2) + "\n";
}

std::string render(const Context& ctx, const Output& o) {
  const bool csv = ctx.format == "csv" || (ctx.format.empty() && o.kind == Kind::Table);
  if (o.kind == Kind::Table || (o.kind == Kind::Field && csv)) {
    return csv ? render_csv(ctx, o.table) : render_json_table(ctx, o.table);
  }
  if (csv) {
    Table t{{"key", "value"}, {}, {}};
    for (const auto& [k, v] : o.report.items()) {
      t.rows.push_back({k, v.is_structured() ? json(v.dump()) : v});
    }
    return render_csv(ctx, t);
  }
  json j = o.report;
  j["meta"] = meta(ctx);
  return j.dump(2) + "\n";
}

void write_atomic(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) raise(ErrorCode::InvalidArgument, "cannot write " + tmp.string());
    f << text;
    f.flush();
    if (!f) raise(ErrorCode::InvalidArgument, "write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    raise(ErrorCode::InvalidArgument, "cannot move output into " + path);
  }
}

std::string read_text(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) raise(ErrorCode::InvalidArgument, "cannot read " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

SpectralField load_field(const std::string& path) { return io::field_from_json(read_text(path)); }
sphere::SphereField load_sphere(const std::string& path) {
  return io::sphere_field_from_json(read_text(path));
}

Output field_output(const SpectralField& f) {
  Output o;
  o.kind = Kind::Field;
  o.report = json::parse(io::to_json(f));
  for (std::size_t i = 1; i <= f.dim(); ++i) o.table.columns.push_back("xi_" + std::to_string(i));
  o.table.columns.push_back("re");
  o.table.columns.push_back("im");
  const auto canon = spectral::canonicalize(f);
  for (const auto& m : canon.modes()) {
    std::vector<json> row;
    for (double x : m.freq.xi) row.emplace_back(x);
    row.push_back(m.amp.real());
    row.push_back(m.amp.imag());
    o.table.rows.push_back(std::move(row));
  }
  return o;
}

Output field_output(const sphere::SphereField& f) {
  Output o;
  o.kind = Kind::Field;
  o.report = json::parse(io::to_json(f));
  o.table.columns = {"l", "m", "re", "im"};
  o.table.notes = {{"n", f.params().n}};
  for (const auto& c : f.coeffs()) o.table.rows.push_back({c.l, c.m, c.amp.real(), c.amp.imag()});
  return o;
}

Output report_output(json j) {
  Output o;
  o.report = std::move(j);
  return o;
}

Output table_output(Table t) {
  Output o;
  o.kind = Kind::Table;
  o.table = std::move(t);
  return o;
}

std::string rat(const dio::BigRational& r) {
  return r.denominator() == 1 ? r.numerator().get_str() + "/1" : r.to_string();
}

sphere::Angle angle_from(const std::optional<double>& radians, const std::optional<std::string>& pi) {
  if (pi) return sphere::Angle::pi_times(dio::BigRational::parse(*pi));
  return sphere::Angle::from_radians(*radians);
}

// One-of group for a time given either in radians or as a multiple of pi.
void add_angle(CLI::App* sub, const std::string& name, std::optional<double>& radians,
               std::optional<std::string>& pi) {
  auto* grp = sub->add_option_group(name);
  grp->add_option("--" + name, radians, name + " in radians");
  grp->add_option("--" + name + "-pi", pi, name + " = (P/Q) pi");
  grp->require_option(1);
}

propagators::PropagatorSpec spec_for(const std::string& kind, double t, long m) {
  propagators::PropagatorSpec s;
  s.t_or_s = t;
  s.m = m;
  if (kind == "sine" || kind == "sinc") s.kind = propagators::PropagatorKind::Sine;
  else if (kind == "cosine") s.kind = propagators::PropagatorKind::Cosine;
  else s.kind = propagators::PropagatorKind::Psi;
  return s;
}

// Flag values for every verb; only the parsed subcommand's fields are used.
struct Args {
  std::string field, velocity, u0, u1, f0, f1, falpha, fp, fq, g, ualpha;
  double t = 0.0;
  long m = 0;
  std::optional<double> a, b;
  double alpha = 0.0;
  std::optional<double> alpha_opt, t_opt;
  std::optional<std::string> alpha_exact, alpha_pi, t_pi, beta_class;
  long p = 0, q = 0;
  int k_max = 6;
  std::string number_class;
  std::string kind = "sine";
  std::vector<double> tabulate;
  std::string value;
  int terms = 64;
  long base = 10;
  int depth = 5;
  std::optional<int> depth_opt;
  std::vector<long> coeffs{1};
  std::string shift = "0/1";
  long count = 1000;
  long qmax = 10000;
  int N = 3;
  double xmax = 1e4;
  long samples = 200000;
  double A = 4.0;
  double ximax = 1e3;
  long sd_samples = 1001;
  std::string sd_symbol = "sinc";
  double sd_t = 1.0;
  int n = 3;
  long L = 256;
  int M = 3;
  int grid = 20;
  int c_samples = 20;
  std::string suite;
};

std::string grammar_text() {
  return R"(usage: wave [--seed N] [--out PATH] [--format json|csv] <verb> [flags]

Euclidean snapshots (field files: {"dim": n, "modes": [{"xi": [..], "amp": [re, im]}]})
  evolve          --field F [--velocity G] --t T
  snapshot        --u0 F --u1 G --m M [--a A --b B]
  two-solve       --f0 F --f1 G
  compat          --f0 F --f1 G --falpha H --alpha A
  three-solve     --f0 F --f1 G --falpha H (--alpha A | --alpha-exact P/Q)
  rational-solve  --f0 F --fp G --fq H --p P --q Q
  liouville-demo  [--kmax K] [--alpha CLASS]
  symbol          --kind sine|cosine|psi --t T [--m M] --tabulate LMIN LMAX STEPS

Diophantine tools (CLASS: P/Q | sqrt:D | golden | pi:MU | e:MU |
                   liouville:B:C1,..:J | oddtype:C1,..:J | K*CLASS)
  dio cfrac       --value P/Q [--terms N]
  dio liouville   --base B --depth J [--coeffs C1,C2,..]
  dio probe-mu    --x CLASS [--depth D]
  dio smallden    --beta CLASS [--shift S/D] --count L
  dio oddtype     [--qmax Q] [--depth J]
  dio jointbound  --alpha CLASS [--N n] [--xmax X] [--samples S]
  dio sdprobe     [--symbol sinc|cosine|psi] [--t T] [--m M] [--A a] [--ximax X] [--samples S]
  dio bezout      --p P --q Q
  dio doubled     --x CLASS --N n

Sphere S^n (field files: {"n": n, "coeffs": [{"l": l, "m": m, "amp": [re, im]}]})
  sphere evolve   --f0 F [--g G] (--t T | --t-pi P/Q)
  sphere huygens  --f0 F [--g G] [--grid K] [--samples C]
  sphere snapshot --u0 F --ualpha G --alpha A --m M
  sphere solve    --f0 F --falpha G (--alpha A | --alpha-pi P/Q) [--L L]
  sphere classify --beta-class CLASS --n N
  sphere margin   (--alpha A | --alpha-pi P/Q | --beta-class CLASS) --n N --L L --M M

  reproduce SUITE   SUITE in recursion identities threesnap liouville rational
                    oddtype jointbound sphere sdprobe all

--csv PATH is an alias of --out PATH. Exit codes: 0 ok, 1 domain error, 2 usage error.
)";
}

}  // namespace

std::string grammar() { return grammar_text(); }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx;
  Args a;
  std::function<Output()> action;

  CLI::App app{"Snapshot experiments for the wave equation", "wave"};
  app.require_subcommand(1);
  app.set_help_flag("-h,--help");
  app.add_option("--seed", ctx.seed, "seed for randomized runs")->capture_default_str();
  app.add_option("--out,--csv", ctx.out_path, "output path (stdout if absent)");
  app.add_option("--format", ctx.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto verb = [&](CLI::App* parent, const std::string& name, const std::string& desc) {
    auto* sub = parent->add_subcommand(name, desc);
    sub->fallthrough();
    return sub;
  };
  auto bind = [&](CLI::App* sub, std::string full, std::function<Output()> fn) {
    sub->callback([&ctx, &action, full = std::move(full), fn = std::move(fn)] {
      ctx.verb = full;
      action = fn;
    });
  };
  const auto range_m = CLI::Range(-1000000L, 1000000L);

  // Euclidean verbs
  {
    auto* s = verb(&app, "evolve", "u_t from Cauchy data");
    s->add_option("--field", a.field)->required();
    s->add_option("--velocity", a.velocity);
    s->add_option("--t", a.t)->required();
    bind(s, "evolve", [&] {
      const auto f = load_field(a.field);
      const auto g = a.velocity.empty() ? SpectralField(f.dim(), {}) : load_field(a.velocity);
      return field_output(euclid::evolve({f, g}, a.t));
    });
  }
  {
    auto* s = verb(&app, "snapshot", "integer-time snapshot from two snapshots");
    s->add_option("--u0", a.u0)->required();
    s->add_option("--u1", a.u1)->required();
    s->add_option("--m", a.m)->required()->check(range_m);
    auto* oa = s->add_option("--a", a.a);
    auto* ob = s->add_option("--b", a.b);
    oa->needs(ob);
    ob->needs(oa);
    bind(s, "snapshot", [&] {
      const auto u0 = load_field(a.u0);
      const auto u1 = load_field(a.u1);
      if (a.a) return field_output(euclid::general_integer_snapshot(u0, u1, *a.a, *a.b, a.m));
      return field_output(euclid::integer_snapshot(u0, u1, a.m));
    });
  }
  {
    auto* s = verb(&app, "two-solve", "velocity from snapshots at 0 and 1");
    s->add_option("--f0", a.f0)->required();
    s->add_option("--f1", a.f1)->required();
    bind(s, "two-solve", [&] {
      return report_output(json::parse(io::to_json(euclid::two_snapshot_solve(load_field(a.f0), load_field(a.f1)))));
    });
  }
  {
    auto* s = verb(&app, "compat", "three-snapshot compatibility defect");
    s->add_option("--f0", a.f0)->required();
    s->add_option("--f1", a.f1)->required();
    s->add_option("--falpha", a.falpha)->required();
    s->add_option("--alpha", a.alpha)->required();
    bind(s, "compat", [&] {
      const euclid::SnapshotTriple t{load_field(a.f0), load_field(a.f1), load_field(a.falpha), a.alpha,
                                     std::nullopt};
      return report_output({{"alpha", a.alpha},
                            {"residual", num(euclid::compatibility_residual(t))},
                            {"product_form_residual",
                             num(spectral::max_abs_amp(euclid::compatibility_defect_product_form(t)))}});
    });
  }
  {
    auto* s = verb(&app, "three-solve", "velocity from snapshots at 0, 1, alpha");
    s->add_option("--f0", a.f0)->required();
    s->add_option("--f1", a.f1)->required();
    s->add_option("--falpha", a.falpha)->required();
    auto* grp = s->add_option_group("alpha");
    grp->add_option("--alpha", a.alpha_opt);
    grp->add_option("--alpha-exact", a.alpha_exact);
    grp->require_option(1);
    bind(s, "three-solve", [&] {
      euclid::SnapshotTriple t{load_field(a.f0), load_field(a.f1), load_field(a.falpha), 0.0, std::nullopt};
      if (a.alpha_exact) {
        t.exact_alpha = dio::BigRational::parse(*a.alpha_exact);
        t.alpha = t.exact_alpha->to_double();
      } else {
        t.alpha = *a.alpha_opt;
      }
      return report_output(json::parse(io::to_json(euclid::three_snapshot_solve(t))));
    });
  }
  {
    auto* s = verb(&app, "rational-solve", "velocity from snapshots at 0, p, q");
    s->add_option("--f0", a.f0)->required();
    s->add_option("--fp", a.fp)->required();
    s->add_option("--fq", a.fq)->required();
    s->add_option("--p", a.p)->required();
    s->add_option("--q", a.q)->required();
    bind(s, "rational-solve", [&] {
      const auto f0 = load_field(a.f0);
      const auto fp = load_field(a.fp);
      const auto fq = load_field(a.fq);
      try {
        return report_output(json::parse(io::to_json(euclid::rational_reconstruct(f0, fp, fq, a.p, a.q))));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::IncompatibleData) throw;
        return report_output({{"status", "IncompatibleData"},
                              {"residual", num(euclid::rational_compatibility_residual(f0, fp, fq, a.p, a.q))},
                              {"solution", nullptr},
                              {"note", e.what()}});
      }
    });
  }
  {
    auto* s = verb(&app, "liouville-demo", "small-denominator blow-up along Liouville approximants");
    s->add_option("--kmax", a.k_max)->capture_default_str();
    s->add_option("--alpha", a.number_class, "Liouville CLASS (default liouville:10:1)");
    bind(s, "liouville-demo", [&] {
      const auto rows = a.number_class.empty()
                            ? euclid::liouville_obstruction_demo(a.k_max)
                            : euclid::liouville_obstruction_demo(dio::parse_number_class(a.number_class), a.k_max);
      Table t{{"k", "q_k", "sin_abs", "amplitude", "sin_abs_upper", "f_sup", "exceeds_one"}, {}, {}};
      for (const auto& r : rows) {
        t.rows.push_back({r.k, r.q.get_str(), r.sin_abs.lo.to_string(), r.amplitude.to_string(),
                          r.sin_abs.hi.to_string(), r.f_sup.to_string(), r.exceeds_one});
      }
      return table_output(std::move(t));
    });
  }
  {
    auto* s = verb(&app, "symbol", "tabulate a propagator symbol");
    s->add_option("--kind", a.kind)->check(CLI::IsMember({"sine", "cosine", "psi"}))->capture_default_str();
    s->add_option("--t", a.t)->required();
    s->add_option("--m", a.m)->check(range_m);
    s->add_option("--tabulate", a.tabulate, "LMIN LMAX STEPS")->expected(3)->required();
    bind(s, "symbol", [&] {
      const double lo = a.tabulate[0], hi = a.tabulate[1];
      const double steps_d = a.tabulate[2];
      if (!(steps_d >= 1) || steps_d != std::floor(steps_d) || steps_d > 1e7 || !(lo >= 0) || !(hi >= lo)) {
        throw CLI::ValidationError("--tabulate", "needs 0 <= LMIN <= LMAX and an integer STEPS >= 1");
      }
      const auto steps = static_cast<long>(steps_d);
      const auto sym = propagators::make_symbol(spec_for(a.kind, a.t, a.m));
      Table t{{"lambda", "value"}, {}, {{"symbol", sym.label}}};
      for (long i = 0; i <= steps; ++i) {
        const double l = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps);
        t.rows.push_back({l, num(sym(l).real())});
      }
      return table_output(std::move(t));
    });
  }

  // Diophantine verbs
  auto* dio_cmd = verb(&app, "dio", "Diophantine tools");
  dio_cmd->require_subcommand(1);
  {
    auto* s = verb(dio_cmd, "cfrac", "continued fraction of a rational");
    s->add_option("--value", a.value)->required();
    s->add_option("--terms", a.terms)->capture_default_str();
    bind(s, "dio cfrac", [&] {
      const auto cf = dio::continued_fraction(dio::BigRational::parse(a.value), a.terms);
      Table t{{"k", "a_k", "p_k", "q_k"}, {}, {}};
      for (std::size_t k = 0; k < cf.partial_quotients.size(); ++k) {
        t.rows.push_back({k, cf.partial_quotients[k].get_str(), cf.convergents[k].numerator().get_str(),
                          cf.convergents[k].denominator().get_str()});
      }
      return table_output(std::move(t));
    });
  }
  {
    auto* s = verb(dio_cmd, "liouville", "truncated Liouville construction");
    s->add_option("--base", a.base)->required();
    s->add_option("--depth", a.depth)->required();
    s->add_option("--coeffs", a.coeffs)->delimiter(',');
    bind(s, "dio liouville", [&] {
      const auto x = dio::liouville_truncation(a.base, a.coeffs, a.depth);
      return report_output({{"kind", std::string(dio::to_string(x.kind))},
                            {"base", a.base},
                            {"depth", a.depth},
                            {"value", rat(x.value)},
                            {"approx", x.approx()},
                            {"tail_bound", rat(x.error_bound)}});
    });
  }
  {
    auto* s = verb(dio_cmd, "probe-mu", "certified irrationality-exponent lower bounds");
    s->add_option("--x", a.number_class)->required();
    s->add_option("--depth", a.depth)->capture_default_str();
    bind(s, "dio probe-mu", [&] {
      const auto probe = dio::irrationality_exponent_probe(dio::parse_number_class(a.number_class), a.depth);
      Table t{{"k", "p_k", "q_k", "mu_lower"}, {},
              {{"terminated", probe.terminated}, {"precision_limit", probe.precision_limit}}};
      for (std::size_t k = 0; k < probe.entries.size(); ++k) {
        const auto& e = probe.entries[k];
        t.rows.push_back({k, e.convergent.numerator().get_str(), e.convergent.denominator().get_str(),
                          num(e.mu_lower)});
      }
      return table_output(std::move(t));
    });
  }
  {
    auto* s = verb(dio_cmd, "smallden", "|sin((l + shift) beta pi)| table");
    s->add_option("--beta", a.number_class)->required();
    s->add_option("--shift", a.shift)->capture_default_str();
    s->add_option("--count", a.count)->required();
    bind(s, "dio smallden", [&] {
      const auto sh = dio::BigRational::parse(a.shift);
      if (!sh.numerator().fits_slong_p() || !sh.denominator().fits_slong_p()) {
        raise(ErrorCode::InvalidArgument, "shift out of range");
      }
      const auto tab = dio::small_denominator_sequence(dio::parse_number_class(a.number_class),
                                                       sh.numerator().get_si(), sh.denominator().get_si(), a.count);
      Table t{{"l", "sin_lo", "sin_hi"}, {}, {{"decay_exponent", num(tab.decay_exponent)}}};
      for (const auto& r : tab.rows) t.rows.push_back({r.l, r.value.lo.to_string(), r.value.hi.to_string()});
      return table_output(std::move(t));
    });
  }
  {
    auto* s = verb(dio_cmd, "oddtype", "exact scan of |q beta - [q beta]| > q^-3 over odd q");
    s->add_option("--qmax", a.qmax)->capture_default_str();
    s->add_option("--depth", a.depth_opt);
    bind(s, "dio oddtype", [&] {
      const auto r = dio::odd_type_verifier(a.qmax, a.depth_opt);
      return report_output({{"qmax", r.qmax},
                            {"depth", r.depth},
                            {"tail_bound", rat(r.tail_bound)},
                            {"checked", r.checked},
                            {"violations", r.violations},
                            {"min_ratio", num(r.min_ratio)},
                            {"argmin_q", r.argmin_q},
                            {"min_margin", rat(r.min_margin)},
                            {"passes", r.passes()}});
    });
  }
  {
    auto* s = verb(dio_cmd, "jointbound", "lower bound for |sin x| + |sin alpha x|");
    s->add_option("--alpha", a.number_class)->required();
    s->add_option("--N", a.N)->capture_default_str();
    s->add_option("--xmax", a.xmax)->capture_default_str();
    s->add_option("--samples", a.samples)->capture_default_str()->check(CLI::Range(2L, 100000000L));
    bind(s, "dio jointbound", [&] {
      const auto r = dio::joint_sine_lower_bound_check(dio::parse_number_class(a.number_class), a.N, a.xmax,
                                                       static_cast<std::size_t>(a.samples));
      return report_output({{"N", a.N},
                            {"xmax", a.xmax},
                            {"C", num(r.C)},
                            {"argmin_x", num(r.argmin_x)},
                            {"points", r.points},
                            {"passes", r.passes}});
    });
  }
  {
    auto* s = verb(dio_cmd, "sdprobe", "slowly-decreasing probe of a symbol");
    s->add_option("--symbol", a.sd_symbol)->check(CLI::IsMember({"sinc", "cosine", "psi"}))->capture_default_str();
    s->add_option("--t", a.sd_t)->capture_default_str();
    s->add_option("--m", a.m)->check(range_m);
    s->add_option("--A", a.A)->capture_default_str();
    s->add_option("--ximax", a.ximax)->capture_default_str();
    s->add_option("--samples", a.sd_samples)->capture_default_str()->check(CLI::Range(2L, 1000000L));
    bind(s, "dio sdprobe", [&] {
      const auto sym = propagators::make_symbol(spec_for(a.sd_symbol, a.sd_t, a.m));
      const auto rep = dio::slowly_decreasing_probe(sym, a.A, a.ximax, static_cast<std::size_t>(a.sd_samples));
      Table t{{"xi", "eta", "value", "threshold"}, {}, {{"symbol", sym.label}, {"passes", rep.passes}}};
      for (const auto& r : rep.rows) {
        t.rows.push_back({r.xi, r.eta ? json(*r.eta) : json(nullptr), num(r.value), num(r.threshold)});
      }
      return table_output(std::move(t));
    });
  }
  {
    auto* s = verb(dio_cmd, "bezout", "k p + l q = 1");
    s->add_option("--p", a.p)->required();
    s->add_option("--q", a.q)->required();
    bind(s, "dio bezout", [&] {
      const auto bz = dio::bezout(a.p, a.q);
      return report_output({{"p", a.p}, {"q", a.q}, {"k", bz.k}, {"l", bz.l}});
    });
  }
  {
    auto* s = verb(dio_cmd, "doubled", "even-denominator approximant of a Liouville number");
    s->add_option("--x", a.number_class)->required();
    s->add_option("--N", a.N)->required();
    bind(s, "dio doubled", [&] {
      const auto w = dio::doubled_liouville_bound(dio::parse_number_class(a.number_class), a.N);
      return report_output({{"N", w.N},
                            {"k", w.k},
                            {"p1", w.p1.get_str()},
                            {"q1", w.q1.get_str()},
                            {"doubled", w.doubled_p.get_str() + "/" + w.doubled_q.get_str()},
                            {"distance_bound", rat(w.distance_bound)},
                            {"target", rat(w.target)},
                            {"verified", w.verified}});
    });
  }

  // Sphere verbs
  auto* sph = verb(&app, "sphere", "wave equation on S^n");
  sph->require_subcommand(1);
  {
    auto* s = verb(sph, "evolve", "u_t on S^n");
    s->add_option("--f0", a.f0)->required();
    s->add_option("--g", a.g);
    add_angle(s, "t", a.t_opt, a.t_pi);
    bind(s, "sphere evolve", [&] {
      const auto f0 = load_sphere(a.f0);
      const auto g = a.g.empty() ? sphere::SphereField(f0.params(), {}) : load_sphere(a.g);
      return field_output(sphere::sphere_evolve(f0, g, angle_from(a.t_opt, a.t_pi)));
    });
  }
  {
    auto* s = verb(sph, "huygens", "antipodal identity residual (n odd, zonal data)");
    s->add_option("--f0", a.f0)->required();
    s->add_option("--g", a.g);
    s->add_option("--grid", a.grid)->capture_default_str()->check(CLI::Range(1, 100000));
    s->add_option("--samples", a.c_samples)->capture_default_str()->check(CLI::Range(2, 100000));
    bind(s, "sphere huygens", [&] {
      const auto f0 = load_sphere(a.f0);
      const auto g = a.g.empty() ? sphere::SphereField(f0.params(), {}) : load_sphere(a.g);
      std::vector<double> ts(static_cast<std::size_t>(a.grid));
      for (std::size_t i = 0; i < ts.size(); ++i) {
        ts[i] = 2 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(ts.size());
      }
      return report_output({{"n", f0.params().n},
                            {"residual", num(sphere::huygens_antipodal_check(f0, g, ts, a.c_samples))}});
    });
  }
  {
    auto* s = verb(sph, "snapshot", "u_{m alpha} from snapshots at 0 and alpha");
    s->add_option("--u0", a.u0)->required();
    s->add_option("--ualpha", a.ualpha)->required();
    s->add_option("--alpha", a.alpha)->required();
    s->add_option("--m", a.m)->required()->check(range_m);
    bind(s, "sphere snapshot", [&] {
      return field_output(sphere::sphere_snapshot_m(load_sphere(a.u0), load_sphere(a.ualpha), a.alpha, a.m));
    });
  }
  {
    auto* s = verb(sph, "solve", "velocity from snapshots at 0 and alpha");
    s->add_option("--f0", a.f0)->required();
    s->add_option("--falpha", a.falpha)->required();
    add_angle(s, "alpha", a.alpha_opt, a.alpha_pi);
    s->add_option("--L", a.L)->capture_default_str();
    bind(s, "sphere solve", [&] {
      const auto rep = sphere::sphere_two_snapshot_solve(load_sphere(a.f0), load_sphere(a.falpha),
                                                         angle_from(a.alpha_opt, a.alpha_pi), a.L);
      return report_output(json::parse(io::to_json(rep)));
    });
  }
  {
    auto* s = verb(sph, "classify", "uniqueness/solvability verdict for alpha = beta pi");
    s->add_option("--beta-class", a.number_class)->required();
    s->add_option("--n", a.n)->required();
    bind(s, "sphere classify", [&] {
      const auto v = sphere::classify_alpha(dio::parse_number_class(a.number_class), a.n);
      return report_output({{"beta", a.number_class}, {"n", a.n}, {"verdict", std::string(sphere::to_string(v))}});
    });
  }
  {
    auto* s = verb(sph, "margin", "slow-decay check of the Schur constants of S_alpha");
    auto* grp = s->add_option_group("alpha");
    grp->add_option("--alpha", a.alpha_opt);
    grp->add_option("--alpha-pi", a.alpha_pi);
    grp->add_option("--beta-class", a.beta_class);
    grp->require_option(1);
    s->add_option("--n", a.n)->required();
    s->add_option("--L", a.L)->required();
    s->add_option("--M", a.M)->required();
    bind(s, "sphere margin", [&] {
      const auto r = a.beta_class
                         ? sphere::surjectivity_margin(dio::parse_number_class(*a.beta_class), a.n, a.L, a.M)
                         : sphere::surjectivity_margin(angle_from(a.alpha_opt, a.alpha_pi), a.n, a.L, a.M);
      return report_output(
          {{"n", a.n}, {"L", a.L}, {"M", a.M}, {"C", num(r.C)}, {"argmin", r.argmin}, {"passes", r.passes}});
    });
  }

  {
    auto* s = verb(&app, "reproduce", "run an acceptance experiment bundle");
    s->add_option("suite", a.suite)->required();
    bind(s, "reproduce", [&] {
      const auto results = reproduce(a.suite, ctx.seed);
      Table t{{"suite", "status", "detail"}, {}, {}};
      bool all = true;
      for (const auto& r : results) {
        t.rows.push_back({r.name, r.passed ? "pass" : "fail", r.detail});
        all = all && r.passed;
      }
      auto o = table_output(std::move(t));
      o.exit_code = all ? 0 : 1;
      return o;
    });
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "wave: " << e.what() << "\n\n" << grammar_text();
    return 2;
  }

  try {
    const Output o = action();
    const std::string text = render(ctx, o);
    if (ctx.out_path.empty()) {
      out << text;
    } else {
      write_atomic(ctx.out_path, text);
    }
    return o.exit_code;
  } catch (const CLI::ParseError& e) {
    err << "wave: " << e.what() << "\n\n" << grammar_text();
    return 2;
  } catch (const Error& e) {
    err << "wave: " << e.what() << "\n";
    if (e.code() == ErrorCode::UnknownSuite) {
      err << "\n" << grammar_text();
      return 2;
    }
    return 1;
  } catch (const std::exception& e) {
    err << "wave: " << e.what() << "\n";
    return 1;
  }
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace snaplab::cli
