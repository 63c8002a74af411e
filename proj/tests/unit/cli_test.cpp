#include "horolab/cli/commands.hpp"
#include "horolab/cli/output.hpp"
#include "horolab/util/errors.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

using namespace horolab;
using namespace horolab::cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("horolab_cli_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const fs::path& p) {
  std::vector<std::string> out;
  std::ifstream in(p);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

int euler_phi(int n) {
  int c = 0;
  for (int k = 1; k <= n; ++k) c += std::gcd(k, n) == 1;
  return c;
}

std::ostringstream sink_log;

}  // namespace

TEST(Config, DefaultsAndOverrides) {
  const RunConfig c = parse_config(json::parse(R"({"field": "rational", "y": [7, "11"], "alpha": 0.25, "seed": 9})"));
  EXPECT_EQ(c.field, "rational");
  EXPECT_EQ(c.y, (std::vector<std::string>{"7", "11"}));
  EXPECT_EQ(c.alphas, std::vector<double>{0.25});
  EXPECT_EQ(c.seed, 9u);
  EXPECT_NO_THROW(validate(c));
  const RunConfig d = parse_config(json::object());
  EXPECT_EQ(d.field, "5");
  EXPECT_NO_THROW(validate(d));
}

TEST(Config, CanonicalRoundTrip) {
  const RunConfig c = parse_config(json::parse(R"({"field": 2, "y": {"inert_primes_up_to_norm": 900}, "K": [1, 2]})"));
  const RunConfig back = parse_config(to_json(c));
  EXPECT_EQ(to_json(back), to_json(c));
  EXPECT_EQ(back.inert_norm_bound, 900);
}

TEST(Config, Errors) {
  for (const char* bad : {R"({"colour": 1})", R"({"field": 4})", R"({"field": [5]})", R"({"alpha": "half"})",
                          R"({"observables": ["alpha2"]})", R"({"observables": ["cusp_2"]})",
                          R"({"ensembles": ["everything"]})", R"({"K": [0]})", R"({"vonneumann": {"K": []}})",
                          R"({"vonneumann": {"varsigma": 1.0}})", R"({"vonneumann": {"f": [[0.5, 0, 1]]}})",
                          R"({"vonneumann": {"T": [1, 1, 0]}})", R"({"y": 3})"}) {
    EXPECT_THROW(validate(parse_config(json::parse(bad))), ConfigError) << bad;
  }
  EXPECT_THROW(load_config("/nonexistent/horolab.json"), ConfigError);
  EXPECT_NO_THROW(validate(parse_config(json::parse(R"({"field": "rational", "observables": ["cusp_2", "im"]})"))));
}

TEST(Config, InertPrimeSelection) {
  RunConfig c;
  c.inert_norm_bound = 1000;
  std::vector<std::string> got;
  const auto F = make_field("5");
  for (const auto& y : select_y(F, c)) got.push_back(F.format(y));
  // Inert in Q(sqrt 5): p = +-2 mod 5.
  EXPECT_EQ(got, (std::vector<std::string>{"2+0*w", "3+0*w", "7+0*w", "13+0*w", "17+0*w", "23+0*w"}));
  const auto Q = make_field("rational");
  c.inert_norm_bound = 20;
  EXPECT_EQ(select_y(Q, c).size(), 8u);
}

TEST(Output, Sha256KnownVector) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST(Output, RunIdDependsOnConfigAndSeed) {
  const json a = to_json(RunConfig{});
  RunConfig other;
  other.alphas = {0.3};
  EXPECT_EQ(make_run_id("equidist", a, 1), make_run_id("equidist", a, 1));
  EXPECT_NE(make_run_id("equidist", a, 1), make_run_id("equidist", a, 2));
  EXPECT_NE(make_run_id("equidist", a, 1), make_run_id("totient", a, 1));
  EXPECT_NE(make_run_id("equidist", a, 1), make_run_id("equidist", to_json(other), 1));
  EXPECT_EQ(make_run_id("x", a, 1).size(), 16u);
}

TEST(Output, CsvRowRoundTrip) {
  const fs::path dir = scratch("csv");
  fs::create_directories(dir);
  {
    CsvSink s((dir / "t.csv").string(), "abc123");
    s.write({"Q(sqrt 5)", "4+1*w", "19", "18", "0.5", "primitive", "gauss_1", 0.1});
    s.write({"Q", "7", "7", "6", "", "totient", "ratio", 1e-300});
    s.write({"Q", "7", "7", "6", "0.75", "horosphere", "alpha1", 2.0 / 3.0});
  }
  const auto L = lines(dir / "t.csv");
  ASSERT_EQ(L.size(), 4u);
  EXPECT_EQ(L[0], kCsvHeader);
  std::string id;
  const CsvRow r = parse_csv_row(L[1], &id);
  EXPECT_EQ(id, "abc123");
  EXPECT_EQ(r.y, "4+1*w");
  EXPECT_EQ(r.value, 0.1);
  EXPECT_EQ(parse_csv_row(L[2]).alpha, "");
  EXPECT_EQ(parse_csv_row(L[2]).value, 1e-300);
  EXPECT_EQ(parse_csv_row(L[3]).value, 2.0 / 3.0);
  EXPECT_THROW(parse_csv_row("a,b,c"), std::invalid_argument);
}

TEST(Commands, FieldInfo) {
  RunConfig c;
  c.field = "5";
  auto m = run_command("field", c, scratch("field5").string(), sink_log);
  EXPECT_EQ(m["summary"]["eps_tp"], "1+1*w");  // (3 + sqrt 5) / 2
  c.field = "2";
  m = run_command("field", c, scratch("field2").string(), sink_log);
  EXPECT_EQ(m["summary"]["eps_tp"], "3+2*w");
  EXPECT_EQ(m["version"], HOROLAB_VERSION);
  c.field = "4";
  EXPECT_THROW(run_command("field", c, scratch("field4").string(), sink_log), ConfigError);
}

TEST(Commands, TotientRationalMatchesEuler) {
  RunConfig c;
  c.field = "rational";
  c.norm_bound = 100;
  const fs::path dir = scratch("totq");
  run_command("totient", c, dir.string(), sink_log);
  const auto L = lines(dir / "totient.csv");
  ASSERT_EQ(L.size(), 100u);  // header + n = 2..100
  for (std::size_t i = 1; i < L.size(); ++i) {
    const CsvRow r = parse_csv_row(L[i]);
    const int n = std::stoi(r.N_y);
    EXPECT_EQ(n, static_cast<int>(i) + 1);
    EXPECT_EQ(std::stoi(r.phi_y), euler_phi(n));
    const double ll = std::log(std::log(static_cast<double>(n)));
    EXPECT_NEAR(r.value, n / (euler_phi(n) * ll), 1e-12 * std::abs(r.value));
  }
  c.norm_bound = 15;
  EXPECT_THROW(run_command("totient", c, dir.string(), sink_log), ConfigError);
}

TEST(Commands, EquidistPrimeIdeal) {
  RunConfig c;
  c.y = {"3"};
  c.observables = {"alpha1_sup", "gauss_1"};
  c.horosphere_size = 2000;
  const fs::path dir = scratch("eq");
  const json m = run_command("equidist", c, dir.string(), sink_log);
  const json& cell = m["summary"]["cells"][0];
  EXPECT_EQ(cell["phi_y"], 8);
  EXPECT_EQ(cell["N_y"], "9");
  EXPECT_LT(cell["observables"]["gauss_1"]["convex_residual"].get<double>(), 1e-12);
  std::size_t prim = 0;
  for (const auto& l : lines(dir / "values.csv")) {
    if (l.find(",primitive,alpha1_sup,") != std::string::npos) ++prim;
  }
  EXPECT_EQ(prim, 8u);
  EXPECT_EQ(m["files"].size(), 2u);
}

TEST(Commands, EquidistGuard) {
  RunConfig c;
  c.y = {"0+1*w"};  // w = (1 + sqrt 5)/2 has a negative conjugate
  EXPECT_THROW(run_command("equidist", c, scratch("guard").string(), sink_log), GuardViolation);
  c.y = {"3"};
  c.alphas = {0.9};
  EXPECT_THROW(run_command("equidist", c, scratch("guard").string(), sink_log), GuardViolation);
}

TEST(Commands, EquidistDeterministic) {
  RunConfig c;
  c.y = {"7", "4+1*w"};
  c.alphas = {0.5, 0.3};
  c.observables = {"gauss_1"};
  c.seed = 77;
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  run_command("equidist", c, a.string(), sink_log);
  run_command("equidist", c, b.string(), sink_log);
  for (const char* f : {"values.csv", "summary.csv"}) {
    const std::string x = slurp(a / f);
    EXPECT_FALSE(x.empty());
    EXPECT_EQ(x, slurp(b / f)) << f;
  }
  c.seed = 78;
  const fs::path d = scratch("det_d");
  run_command("equidist", c, d.string(), sink_log);
  EXPECT_NE(slurp(a / "summary.csv"), slurp(d / "summary.csv"));
}

TEST(Commands, VonNeumann) {
  RunConfig c;
  const fs::path dir = scratch("vn");
  const json m = run_command("vonneumann", c, dir.string(), sink_log);
  EXPECT_TRUE(m["summary"]["bound_holds"].get<bool>());
  const auto L = lines(dir / "vonneumann.csv");
  ASSERT_EQ(L.size(), 10u);
  EXPECT_EQ(L[0], "run_id,K,exact_norm,envelope,ratio");
  c.vn_Ks.clear();
  EXPECT_THROW(run_command("vonneumann", c, dir.string(), sink_log), ConfigError);
  c.vn_Ks = {4};
  c.varsigma = 1.5;
  EXPECT_THROW(run_command("vonneumann", c, dir.string(), sink_log), ConfigError);
  c.varsigma = 0.5;
  c.vn_T = {1, 1, 0, 1};
  EXPECT_THROW(run_command("vonneumann", c, dir.string(), sink_log), ConfigError);
}

TEST(Commands, DualityCheck) {
  RunConfig c;
  c.field = "2";
  c.norm_bound = 40;
  const json m = run_command("duality-check", c, scratch("dual").string(), sink_log);
  EXPECT_EQ(m["summary"]["failures"], 0);
  EXPECT_GT(m["summary"]["pairs"].get<std::size_t>(), 100u);
}

TEST(Binary, ExitCodes) {
  const std::string bin = HOROLAB_CLI_PATH;
  const fs::path out = scratch("bin");
  auto run = [&](const std::string& args) {
    const int st = std::system((bin + " " + args + " --out " + out.string() + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(st);
  };
  EXPECT_EQ(run("field --D 5"), 0);
  EXPECT_EQ(run("field --D 4"), 2);
  EXPECT_EQ(run("vonneumann --varsigma 1"), 2);
  EXPECT_EQ(run("totient --D 5 --bound 10"), 2);
  EXPECT_EQ(run("nosuchcommand"), 2);
  const fs::path cfg = out.string() + "_bad.json";
  std::ofstream(cfg) << R"({"field": 5, "y": ["2+0*w"], "alpha": [0.8]})";
  EXPECT_EQ(run("equidist --config " + cfg.string()), 3);
  std::ofstream(cfg) << R"({"field": 5, "y": "nope"})";
  EXPECT_EQ(run("equidist --config " + cfg.string()), 2);
  EXPECT_TRUE(fs::exists(out / "manifest.json"));
}
