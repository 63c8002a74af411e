// horolab: experiment runner for rational points on expanding horospheres.
//
//   horolab field --D 5
//   horolab totient --D 2 --bound 100000 --out runs/totient
//   horolab equidist --config equidist.json --seed 7 --out runs/eq
//   horolab vonneumann --K 16,64,256 --varsigma 0.9
//   horolab duality-check --D 5 --bound 200
//
// Exit codes: 0 success, 2 configuration or usage error, 3 guard violation,
// 1 anything else.

#include "horolab/cli/commands.hpp"
#include "horolab/util/errors.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <iostream>
#include <optional>

namespace {

struct Overrides {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out = "horolab_out";
  std::optional<std::string> field;
  std::optional<std::int64_t> bound;
  std::vector<std::int64_t> vn_K;
  std::optional<double> varsigma;
};

CLI::App* add_command(CLI::App& app, const std::string& name, const std::string& help, Overrides& o) {
  CLI::App* sub = app.add_subcommand(name, help);
  sub->add_option("--config", o.config_path, "JSON run configuration");
  sub->add_option("--seed", o.seed, "master seed (overrides the config)");
  sub->add_option("--out", o.out, "output directory")->capture_default_str();
  return sub;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"horolab " HOROLAB_VERSION ": rational points on expanding horospheres"};
  app.require_subcommand(1);
  app.set_version_flag("--version", HOROLAB_VERSION);
  Overrides o;

  auto* field = add_command(app, "field", "print the field data: discriminant, units", o);
  field->add_option("--D", o.field, "squarefree D > 1, or 'rational'");

  auto* totient = add_command(app, "totient", "table of N / (phi (log log N)^d) over balanced y", o);
  totient->add_option("--D", o.field, "squarefree D > 1, or 'rational'");
  totient->add_option("--bound", o.bound, "norm bound (at least 16)");

  add_command(app, "equidist", "ensembles, KS table, convex residuals and D_K", o);

  auto* vn = add_command(app, "vonneumann", "exact von Neumann averages for a toral automorphism", o);
  vn->add_option("--K", o.vn_K, "averaging lengths")->delimiter(',');
  vn->add_option("--varsigma", o.varsigma, "exponent in (0, 1)");

  auto* dual = add_command(app, "duality-check", "exact duality matrices for all y, j up to a norm bound", o);
  dual->add_option("--D", o.field, "squarefree D > 1, or 'rational'");
  dual->add_option("--bound", o.bound, "norm bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  const std::string sub = app.get_subcommands().front()->get_name();
  try {
    horolab::cli::RunConfig c;
    if (!o.config_path.empty()) c = horolab::cli::load_config(o.config_path);
    if (o.seed) c.seed = *o.seed;
    if (o.field) c.field = *o.field;
    if (o.bound) c.norm_bound = *o.bound;
    if (sub == "vonneumann" && vn->get_option("--K")->count()) c.vn_Ks = o.vn_K;
    if (o.varsigma) c.varsigma = *o.varsigma;
    const auto manifest = horolab::cli::run_command(sub, c, o.out, std::cout);
    std::cerr << fmt::format("run {} written to {}\n", manifest["run_id"].get<std::string>(), o.out);
    return 0;
  } catch (const horolab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const horolab::GuardViolation& e) {
    std::cerr << "guard violation: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
