#include "qcurve/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <functional>
#include <optional>
#include <sstream>

#include "qcurve/accept.hpp"
#include "qcurve/cache.hpp"
#include "qcurve/catalan.hpp"
#include "qcurve/errors.hpp"
#include "qcurve/freenergy.hpp"
#include "qcurve/hurwitz.hpp"
#include "qcurve/opercheck.hpp"
#include "qcurve/version.hpp"
#include "qcurve/wkb.hpp"

namespace qcurve::cli {

using nlohmann::json;

namespace {

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    if (j.empty()) rows.emplace_back(prefix, "{}");
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), rows);
  } else if (j.is_array()) {
    if (j.empty()) rows.emplace_back(prefix, "[]");
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
  } else if (j.is_string()) {
    rows.emplace_back(prefix, j.get<std::string>());
  } else {
    rows.emplace_back(prefix, j.dump());
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

json laurent_json(const LaurentPoly& p) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back(json::array({e, c.str()}));
  return json{{"variables", p.vars()}, {"terms", terms}};
}

struct Context {
  std::ostream& out;
  std::ostream& err;
  Format format = Format::Json;
  std::uint64_t seed = 42;
  std::optional<std::string> cache_flag;

  std::optional<std::filesystem::path> cache_dir() const { return resolve_cache_dir(cache_flag); }

  void warn(const std::vector<std::string>& warnings) const {
    for (const auto& w : warnings) err << "warning: " << w << '\n';
  }

  json base(const std::string& command) const {
    return json{{"command", command}, {"version", kVersion}, {"seed", seed}};
  }

  void emit(const json& report) const { out << render(report, format); }
};

// Loads the persistent tables around a computation when a cache directory is configured.
void with_catalan_cache(const Context& ctx, const std::function<void()>& body) {
  auto dir = ctx.cache_dir();
  if (dir) ctx.warn(load_catalan_cache(*dir, default_catalan_table()).warnings);
  body();
  if (dir) save_catalan_cache(*dir, default_catalan_table());
}

void with_hurwitz_cache(const Context& ctx, const std::function<void()>& body) {
  auto dir = ctx.cache_dir();
  if (dir) ctx.warn(load_hurwitz_cache(*dir, default_hurwitz_table()).warnings);
  body();
  if (dir) save_hurwitz_cache(*dir, default_hurwitz_table());
}

}  // namespace

std::string render(const json& report, Format format) {
  if (format == Format::Json) return report.dump(2) + "\n";
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(report, "", rows);
  std::ostringstream os;
  if (format == Format::Csv) {
    os << "key,value\n";
    for (const auto& [k, v] : rows) os << csv_field(k) << ',' << csv_field(v) << '\n';
  } else {
    for (const auto& [k, v] : rows) os << k << ": " << v << '\n';
  }
  return os.str();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact enumerative invariants, quantum-curve and oper identity checks", "qcurve"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "json";
  std::string cache_dir;
  std::uint64_t seed = 42;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "plain"}));
  app.add_option("--cache-dir", cache_dir, "Directory for persistent memo tables (else $QCURVE_CACHE_DIR)");
  app.add_option("--seed", seed, "Root seed for randomized checks");
  app.set_version_flag("--version", std::string("qcurve ") + kVersion);

  int g = 0, n = 0, r = 1, order = 2, trials = 20, rank = 8, q_degree = 4;
  std::vector<int> mu, dvec;
  bool oracle = false;
  std::string f11_scale = "1";

  auto* cat = app.add_subcommand("catalan", "Generalized Catalan number C_{g,n}(mu)");
  cat->add_option("--g", g, "Genus")->required();
  cat->add_option("--n", n, "Number of vertices")->required();
  cat->add_option("--mu", mu, "Vertex degrees, comma separated")->required()->delimiter(',');
  cat->add_flag("--oracle", oracle, "Also count by exhaustive gluing");

  auto* fe = app.add_subcommand("free-energy", "Free energy F_{g,n} as a Laurent polynomial");
  fe->add_option("--g", g, "Genus")->required();
  fe->add_option("--n", n, "Number of variables")->required();

  auto* in = app.add_subcommand("intersect", "Psi-class intersection numbers from the top part of F_{g,n}");
  in->add_option("--g", g, "Genus")->required();
  in->add_option("--n", n, "Number of points")->required();
  in->add_option("--d", dvec, "Query one d-vector, comma separated")->delimiter(',');

  auto* hu = app.add_subcommand("hurwitz", "Orbifold Hurwitz number H^r_{g,n}(mu)");
  hu->add_option("--r", r, "Orbifold parameter")->required();
  hu->add_option("--g", g, "Genus")->required();
  hu->add_option("--mu", mu, "Profile over infinity, comma separated")->required()->delimiter(',');
  hu->add_flag("--oracle", oracle, "Also count by monodromy");

  auto* wk = app.add_subcommand("wkb-verify", "Riccati residual of the quantum curve, order by order in hbar");
  wk->add_option("--order", order, "Highest hbar order")->check(CLI::Range(0, 6));
  wk->add_option("--f11-scale", f11_scale, "Multiply F_{1,1} (fault injection)");

  auto* op = app.add_subcommand("verify-oper", "Randomized oper identity suite");
  op->add_option("--trials", trials, "Random chart trials")->check(CLI::Range(0, 1000));
  op->add_option("--rank", rank, "Largest rank for the Kostant triple")->check(CLI::Range(2, 32));
  op->add_option("--q-degree", q_degree, "Largest degree of random q")->check(CLI::Range(0, 12));

  auto* ac = app.add_subcommand("accept", "Run the full acceptance suite");

  auto* ca = app.add_subcommand("cache", "Inspect or clear the persistent cache");
  ca->require_subcommand(1);
  auto* ca_inspect = ca->add_subcommand("inspect", "Show cache files");
  auto* ca_clear = ca->add_subcommand("clear", "Delete cache files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Context ctx{out, err, Format::Json, 42, std::nullopt};
  ctx.format = format == "csv" ? Format::Csv : (format == "plain" ? Format::Plain : Format::Json);
  ctx.seed = seed;
  if (!cache_dir.empty()) ctx.cache_flag = cache_dir;

  const auto start = std::chrono::steady_clock::now();
  std::string command = app.get_subcommands().front()->get_name();
  int status = kExitOk;
  try {
    if (cat->parsed()) {
      if (n != static_cast<int>(mu.size())) throw UsageError("--n must equal the number of --mu entries");
      CatalanKey key{g, mu};
      json report = ctx.base(command);
      with_catalan_cache(ctx, [&] { report["value"] = catalan_number(key).get_str(); });
      report["g"] = g;
      report["n"] = n;
      report["mu"] = mu;
      if (oracle) {
        const std::string o = catalan_oracle(key).get_str();
        report["oracle"] = o;
        report["oracle_match"] = (o == report["value"].get<std::string>());
        if (!report["oracle_match"].get<bool>()) status = kExitFailed;
      }
      ctx.emit(report);
    } else if (fe->parsed()) {
      json report = ctx.base(command);
      with_catalan_cache(ctx, [&] {
        const FreeEnergy f = free_energy(g, n);
        const std::vector<Rational> ones(static_cast<std::size_t>(n), Rational(1));
        const Rational at_one = f.laurent.evaluate(ones);
        const Rational expected = (n % 2 == 0 ? Rational(1) : Rational(-1)) * euler_characteristic(g, n);
        const int degree = free_energy_degree(g, n);
        const bool symmetric = f.laurent.inverted() == f.laurent;
        const bool bounded = f.laurent.max_abs_exponent() <= degree;
        report["g"] = g;
        report["n"] = n;
        report["laurent"] = laurent_json(f.laurent);
        report["checks"] = json{{"inversion_symmetric", symmetric}, {"F(1,...,1)", at_one.str()},
                                {"(-1)^n chi", expected.str()}, {"euler_match", at_one == expected},
                                {"degree_bound", degree}, {"within_degree_bound", bounded}};
        if (!symmetric || !bounded || at_one != expected) status = kExitFailed;
      });
      ctx.emit(report);
    } else if (in->parsed()) {
      json report = ctx.base(command);
      with_catalan_cache(ctx, [&] {
        const IntersectionTable table = intersection_from_top(g, n);
        if (!dvec.empty()) report["query"] = json{{"d", dvec}, {"value", table.value(dvec).str()}};
        const DvvReport dvv = dvv_compare(table);
        json entries = json::array();
        for (const auto& e : dvv.entries)
          entries.push_back(json{{"d", e.d}, {"value", e.extracted.str()}, {"dvv", e.expected.str()}, {"match", e.ok()}});
        report["g"] = g;
        report["n"] = n;
        report["entries"] = entries;
        report["dvv_ok"] = dvv.ok;
        if (!dvv.ok) status = kExitFailed;
      });
      ctx.emit(report);
    } else if (hu->parsed()) {
      HurwitzKey key{r, g, mu};
      json report = ctx.base(command);
      with_hurwitz_cache(ctx, [&] { report["value"] = hurwitz_number(key).str(); });
      report["r"] = r;
      report["g"] = g;
      report["mu"] = mu;
      report["d"] = key.d();
      if (auto b = key.b()) report["b"] = *b;
      if (oracle) {
        const std::string o = hurwitz_oracle(key).str();
        report["oracle"] = o;
        report["oracle_match"] = (o == report["value"].get<std::string>());
        if (!report["oracle_match"].get<bool>()) status = kExitFailed;
      }
      ctx.emit(report);
    } else if (wk->parsed()) {
      WkbOptions options;
      options.f11_scale = Rational::parse(f11_scale);
      json report = ctx.base(command);
      with_catalan_cache(ctx, [&] {
        const WkbReport rep = wkb_verify(order, options);
        json orders = json::array();
        for (const auto& o : rep.orders)
          orders.push_back(json{{"order", o.order}, {"zero", o.zero}, {"numerator_degree", o.num_degree},
                                {"denominator_degree", o.den_degree}});
        report["orders"] = orders;
        report["ok"] = rep.ok;
        if (!rep.ok) status = kExitFailed;
      });
      ctx.emit(report);
    } else if (op->parsed()) {
      OperSuiteOptions options;
      options.trials = trials;
      options.seed = seed;
      options.max_rank = rank;
      options.max_q_degree = q_degree;
      const OperSuiteReport rep = run_oper_suite(options);
      json report = ctx.base(command);
      json tallies = json::object();
      for (const auto& [name, t] : rep.tallies) tallies[name] = json{{"passed", t.first}, {"total", t.second}};
      report["tallies"] = tallies;
      report["failures"] = rep.failures;
      report["ok"] = rep.ok;
      report["trials"] = trials;
      if (!rep.ok) status = kExitFailed;
      ctx.emit(report);
    } else if (ac->parsed()) {
      const AcceptanceReport rep = run_acceptance(seed);
      if (!rep.all_pass()) status = kExitFailed;
      ctx.emit(rep.to_json());
    } else if (ca->parsed()) {
      auto dir = ctx.cache_dir();
      if (!dir) throw UsageError("no cache directory: pass --cache-dir or set QCURVE_CACHE_DIR");
      json report = ctx.base("cache");
      report["directory"] = dir->string();
      if (ca_inspect->parsed()) {
        command = "cache inspect";
        json files = json::array();
        for (const auto& f : inspect_cache(*dir)) {
          json row{{"kind", f.kind}, {"present", f.present}, {"entries", f.entries},
                   {"quarantined_lines", f.quarantined_lines}};
          if (f.version) row["version"] = *f.version;
          files.push_back(row);
        }
        report["files"] = files;
      } else if (ca_clear->parsed()) {
        command = "cache clear";
        report["removed"] = clear_cache(*dir);
      }
      report["command"] = command;
      ctx.emit(report);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    status = kExitUsage;
  } catch (const PreconditionError& e) {
    err << "usage error: " << e.what() << '\n';
    status = kExitUsage;
  } catch (const ResourceLimitError& e) {
    err << "usage error: " << e.what() << '\n';
    status = kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    status = kExitFailed;
  }

  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  err << json{{"run", json{{"command", command}, {"version", kVersion}, {"seed", seed},
                           {"elapsed_ms", static_cast<long long>(ms + 0.5)}, {"exit", status}}}}.dump()
      << '\n';
  return status;
}

}  // namespace qcurve::cli
