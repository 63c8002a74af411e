#include "horolab/cli/commands.hpp"

#include "horolab/cli/output.hpp"
#include "horolab/ensembles/ensembles.hpp"
#include "horolab/ergodic/toral.hpp"
#include "horolab/group/group.hpp"
#include "horolab/nf/factor.hpp"
#include "horolab/nf/ideal.hpp"
#include "horolab/nf/units.hpp"
#include "horolab/util/errors.hpp"
#include "horolab/util/rng.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>

namespace horolab::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

bool wants(const RunConfig& c, std::string_view ensemble) {
  return std::find(c.ensembles.begin(), c.ensembles.end(), ensemble) != c.ensembles.end();
}

std::string path_in(const std::string& dir, const std::string& name) { return (fs::path(dir) / name).string(); }

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

CommandResult cmd_field_info(const RunConfig& c, const std::string& out_dir, const std::string&, std::ostream& log) {
  const auto F = make_field(c.field);
  json j;
  j["field"] = F.name();
  j["degree"] = F.degree();
  if (F.degree() == 2) {
    j["D"] = F.D();
    j["discriminant"] = F.discriminant();
    j["omega_minimal_polynomial"] = fmt::format("w^2 = {} w + {}", F.omega_trace(), F.omega_norm_term());
    j["fundamental_unit"] = F.format(F.fundamental_unit());
    j["fundamental_unit_norm"] = F.norm(F.fundamental_unit()).str();
    j["eps_tp"] = F.format(F.totally_positive_unit());
    j["eps_tp_embeddings"] = F.embed(F.totally_positive_unit());
    j["log_eps_tp"] = F.log_unit();
    j["balanced_spread_bound"] = F.log_unit();
  } else {
    j["discriminant"] = 1;
  }
  log << j.dump(2) << '\n';
  std::ofstream(path_in(out_dir, "field.json")) << j.dump(2) << '\n';
  CommandResult r;
  r.files.push_back({"field.json", 1, "json"});
  r.summary = j;
  return r;
}

CommandResult cmd_totient_scan(const RunConfig& c, const std::string& out_dir, const std::string& run_id,
                               std::ostream& log) {
  const auto F = make_field(c.field);
  if (c.norm_bound < 16) throw ConfigError(fmt::format("norm_bound = {}: the ratio table needs a bound of at least 16", c.norm_bound));
  const auto rows = nf::totient_ratio_scan(F, c.norm_bound);
  CsvSink sink(path_in(out_dir, "totient.csv"), run_id);
  std::vector<double> ratios;
  const nf::TotientRow* best = nullptr;
  for (const auto& row : rows) {
    sink.write({F.name(), F.format(row.y), row.norm.str(), row.phi.str(), "", "totient", "ratio", row.ratio});
    // (log log N)^d < 1 below N = 16, where the ratio says nothing about phi.
    if (row.norm < 16) continue;
    ratios.push_back(row.ratio);
    if (!best || row.ratio > best->ratio) best = &row;
  }
  CommandResult r;
  r.files.push_back({"totient.csv", sink.rows(), std::string(kCsvHeader)});
  if (best) {
    const double med = median_of(ratios);
    r.summary = {{"count", rows.size()},
                 {"stats_domain", "N >= 16"},
                 {"max_ratio", best->ratio},
                 {"argmax_y", F.format(best->y)},
                 {"argmax_norm", best->norm.str()},
                 {"argmax_distinct_primes", best->distinct_primes},
                 {"median_ratio", med},
                 {"max_over_median", best->ratio / med}};
    log << fmt::format("{} values, over N >= 16 sup ratio {:.6f} at y = {} (N = {}), median {:.6f}\n", rows.size(), best->ratio,
                       F.format(best->y), best->norm.str(), med);
  }
  return r;
}

CommandResult cmd_equidist(const RunConfig& c, const std::string& out_dir, const std::string& run_id,
                           std::ostream& log) {
  const auto F = make_field(c.field);
  const auto ys = select_y(F, c);
  std::vector<lattice::Observable> obs;
  for (const auto& o : c.observables) obs.push_back(lattice::Observable::parse(o));

  CsvSink values(path_in(out_dir, "values.csv"), run_id);
  CsvSink summary(path_in(out_dir, "summary.csv"), run_id);
  json cells = json::array();
  std::uint64_t counter = 0;
  for (const auto& y : ys) {
    for (double alpha : c.alphas) {
      const std::uint64_t cell_seed = util::derive_seed(c.seed, counter++);
      const auto prim = ensembles::primitive_parameters(F, y, alpha);
      const bool need_partition = wants(c, "rational") || wants(c, "non_primitive");
      ensembles::ParameterSet rat, non;
      if (need_partition) {
        rat = ensembles::rational_parameters(F, y, alpha);
        non = ensembles::non_primitive_parameters(F, y, alpha);
      }
      const bool dk = F.degree() == 2 && !c.Ks.empty();
      ensembles::ParameterSet horo;
      const bool have_horo = wants(c, "horosphere") || dk;
      if (have_horo) {
        const std::size_t M = c.horosphere_size ? c.horosphere_size : ensembles::reference_size(prim.size());
        horo = ensembles::horosphere_sample(F, y, alpha, M, cell_seed);
      }

      const std::string field = F.name(), ys_ = F.format(y), N = nf::abs(F.norm(y)).str();
      const std::string phi = std::to_string(prim.size()), al = format_double(alpha);
      json cell = {{"y", ys_}, {"N_y", N}, {"phi_y", prim.size()}, {"alpha", alpha}, {"seed", cell_seed}};
      if (have_horo) cell["horosphere_size"] = horo.size();
      for (const auto& o : obs) {
        const std::string name = o.name();
        std::map<std::string, std::vector<double>> v;
        v["primitive"] = ensembles::evaluate_all(o, prim, F);
        if (need_partition) {
          v["rational"] = ensembles::evaluate_all(o, rat, F);
          v["non_primitive"] = ensembles::evaluate_all(o, non, F);
        }
        if (have_horo) v["horosphere"] = ensembles::evaluate_all(o, horo, F);
        auto stat = [&](const std::string& what, double x) {
          summary.write({field, ys_, N, phi, al, what, name, x});
          cell["observables"][name][what] = x;
        };
        for (const auto& e : c.ensembles) {
          if (c.emit_values) {
            for (double x : v[e]) values.write({field, ys_, N, phi, al, e, name, x});
          }
          stat("mean_" + e, ensembles::mean(v[e]));
        }
        if (have_horo) {
          const ensembles::EmpiricalDistribution H(name, v["horosphere"]);
          for (const char* e : {"primitive", "rational", "non_primitive"}) {
            if (!wants(c, e) || v[e].empty()) continue;
            stat(fmt::format("ks_{}_vs_horosphere", e), ks_distance(ensembles::EmpiricalDistribution(name, v[e]), H));
          }
        }
        if (need_partition) {
          stat("convex_residual", ensembles::convex_combination_check(v["rational"], v["primitive"], v["non_primitive"]).residual);
        }
        if (dk) {
          const auto& h = v["horosphere"];
          const auto rep = ensembles::discrepancy_DK(F, prim, v["primitive"], c.Ks, ensembles::mean(h),
                                                     ensembles::standard_error(h));
          stat("dk_E_ref", rep.E_ref);
          stat("dk_E_ref_stderr", rep.E_ref_stderr);
          for (std::size_t i = 0; i < rep.Ks.size(); ++i) {
            stat(fmt::format("dk_l2_K{}", rep.Ks[i]), rep.l2_mean[i]);
            stat(fmt::format("dk_median_K{}", rep.Ks[i]), rep.median_abs[i]);
          }
        }
        const auto& co = cell["observables"][name];
        log << fmt::format("y = {} (N = {}, phi = {}), alpha = {}, {}:", ys_, N, phi, al, name);
        for (const auto& [k, x] : co.items()) {
          if (k.rfind("ks_", 0) == 0 || k == "convex_residual") log << fmt::format(" {} = {:.4g}", k, x.get<double>());
        }
        log << '\n';
      }
      cells.push_back(std::move(cell));
    }
  }
  CommandResult r;
  if (c.emit_values) r.files.push_back({"values.csv", values.rows(), std::string(kCsvHeader)});
  r.files.push_back({"summary.csv", summary.rows(), std::string(kCsvHeader)});
  r.summary = {{"cells", cells}};
  if (!c.emit_values) {
    std::error_code ec;
    fs::remove(values.path(), ec);
  }
  return r;
}

CommandResult cmd_vonneumann(const RunConfig& c, const std::string& out_dir, const std::string& run_id,
                             std::ostream& log) {
  std::unique_ptr<ergodic::ToralAutomorphism> T;
  try {
    T = std::make_unique<ergodic::ToralAutomorphism>(c.vn_T[0], c.vn_T[1], c.vn_T[2], c.vn_T[3]);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(fmt::format("config key 'vonneumann.T': {}", e.what()));
  }
  ergodic::TrigPolynomial f;
  for (const auto& t : c.vn_f) {
    f = f + ergodic::TrigPolynomial::cosine(static_cast<std::int64_t>(t[0]), static_cast<std::int64_t>(t[1])).scaled(t[2]);
  }
  const auto rep = ergodic::verify_vonneumann(*T, f, c.vn_Ks, c.varsigma);
  const std::string path = path_in(out_dir, "vonneumann.csv");
  std::ofstream out(path);
  out << "run_id,K,exact_norm,envelope,ratio\n";
  for (const auto& row : rep.rows) {
    out << fmt::format("{},{},{},{},{}\n", run_id, row.K, format_double(row.exact_norm), format_double(row.envelope),
                       format_double(row.ratio));
    log << fmt::format("K = {:>6}  exact = {:.6e}  envelope = {:.6e}  ratio = {:.6f}\n", row.K, row.exact_norm,
                       row.envelope, row.ratio);
  }
  log << fmt::format("fitted C = {:.6f}, max ratio / C = {:.6f} ({})\n", rep.fitted_C, rep.max_violation,
                     rep.max_violation <= 1.0 ? "bound holds" : "bound violated");
  CommandResult r;
  r.files.push_back({"vonneumann.csv", rep.rows.size(), "run_id,K,exact_norm,envelope,ratio"});
  r.summary = {{"varsigma", rep.varsigma},  {"S", rep.S},
               {"fitted_C", rep.fitted_C},  {"max_violation", rep.max_violation},
               {"bound_holds", rep.max_violation <= 1.0}};
  return r;
}

CommandResult cmd_duality_check(const RunConfig& c, const std::string& out_dir, const std::string& run_id,
                                std::ostream& log) {
  const auto F = make_field(c.field);
  if (c.norm_bound < 2) throw ConfigError("norm_bound must be at least 2");
  CsvSink sink(path_in(out_dir, "duality.csv"), run_id);
  std::size_t total = 0, failures = 0;
  double worst = 0;
  const auto ys = nf::balanced_totally_positive(F, c.norm_bound);
  for (const auto& y : ys) {
    const nf::IdealHNF I = nf::ideal_of(F, y);
    const std::string phi = nf::totient(F, I).str();
    std::size_t n = 0, bad = 0;
    double max_res = 0;
    for (const auto& j : nf::residue_representatives(F, I)) {
      if (!nf::coprime(F, j, I)) continue;
      const auto d = group::duality_gamma(F, j, y);
      const bool ok = d.exact_identity && group::determinant(F, d.gamma) == nf::RingElement(1) && d.residual <= 1e-9;
      ++n;
      bad += ok ? 0 : 1;
      max_res = std::max(max_res, d.residual);
    }
    const std::string ys_ = F.format(y), N = nf::abs(F.norm(y)).str();
    sink.write({F.name(), ys_, N, phi, "", "duality", "checked", static_cast<double>(n)});
    sink.write({F.name(), ys_, N, phi, "", "duality", "failures", static_cast<double>(bad)});
    sink.write({F.name(), ys_, N, phi, "", "duality", "max_residual", max_res});
    total += n;
    failures += bad;
    worst = std::max(worst, max_res);
  }
  log << fmt::format("{}: {} values of y, {} pairs (j, y), {} failures, max residual {:.3e}\n", F.name(), ys.size(),
                     total, failures, worst);
  CommandResult r;
  r.files.push_back({"duality.csv", sink.rows(), std::string(kCsvHeader)});
  r.summary = {{"y_count", ys.size()}, {"pairs", total}, {"failures", failures}, {"max_residual", worst}};
  return r;
}

json run_command(const std::string& subcommand, const RunConfig& c, const std::string& out_dir, std::ostream& log) {
  validate(c);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw ConfigError(fmt::format("cannot create output directory '{}': {}", out_dir, ec.message()));
  const json canonical = to_json(c);
  const std::string id = make_run_id(subcommand, canonical, c.seed);
  const std::string started = utc_now();
  CommandResult res;
  if (subcommand == "field") {
    res = cmd_field_info(c, out_dir, id, log);
  } else if (subcommand == "totient") {
    res = cmd_totient_scan(c, out_dir, id, log);
  } else if (subcommand == "equidist") {
    res = cmd_equidist(c, out_dir, id, log);
  } else if (subcommand == "vonneumann") {
    res = cmd_vonneumann(c, out_dir, id, log);
  } else if (subcommand == "duality-check") {
    res = cmd_duality_check(c, out_dir, id, log);
  } else {
    throw ConfigError(fmt::format("unknown subcommand '{}'", subcommand));
  }
  json m;
  m["run_id"] = id;
  m["subcommand"] = subcommand;
  m["version"] = HOROLAB_VERSION;
  m["csv_schema"] = {{"version", kCsvSchemaVersion}, {"header", kCsvHeader}};
  m["config"] = canonical;
  m["seed"] = c.seed;
  m["seed_scheme"] = "cell i (y-major, then alpha) uses splitmix64(seed ^ splitmix64(i))";
  m["started_at"] = started;
  m["finished_at"] = utc_now();
  m["files"] = json::array();
  for (const auto& f : res.files) m["files"].push_back({{"name", f.name}, {"rows", f.rows}, {"schema", f.schema}});
  m["summary"] = res.summary;
  std::ofstream(path_in(out_dir, "manifest.json")) << m.dump(2) << '\n';
  return m;
}

}  // namespace horolab::cli
