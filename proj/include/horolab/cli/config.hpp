#pragma once

#include "horolab/nf/field.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace horolab::cli {

/// One run of any subcommand. Every field has a default, so an empty JSON
/// object is a valid config; unknown keys are rejected.
///
/// {
///   "field": 5 | "rational",
///   "y": ["3", "4+w"] | {"inert_primes_up_to_norm": 10000},
///   "alpha": [0.5],
///   "observables": ["alpha1_sup", "gauss_1"],
///   "ensembles": ["rational", "primitive", "non_primitive", "horosphere"],
///   "horosphere_size": 0,            // 0: max(10^4, 10 phi(y))
///   "K": [1, 4, 16, 64],             // D_K averaging lengths
///   "emit_values": true,             // per-point rows in values.csv
///   "norm_bound": 1000,              // totient, duality-check
///   "vonneumann": {"T": [2,1,1,1], "f": [[1,0,1.0]], "K": [16, ...], "varsigma": 0.9},
///   "seed": 1
/// }
///
/// Each "f" entry [m, n, c] contributes c cos(2 pi (m x + n y)).
struct RunConfig {
  std::string field = "5";
  std::vector<std::string> y{"3"};
  std::int64_t inert_norm_bound = 0;  // nonzero: scan inert primes instead of `y`
  std::vector<double> alphas{0.5};
  std::vector<std::string> observables{"alpha1_sup"};
  std::vector<std::string> ensembles{"rational", "primitive", "non_primitive", "horosphere"};
  std::size_t horosphere_size = 0;
  std::vector<int> Ks{1, 4, 16, 64};
  bool emit_values = true;
  std::int64_t norm_bound = 1000;

  std::vector<std::int64_t> vn_T{2, 1, 1, 1};
  std::vector<std::vector<double>> vn_f{{1, 0, 1.0}};
  std::vector<std::int64_t> vn_Ks{16, 32, 64, 128, 256, 512, 1024, 2048, 4096};
  double varsigma = 0.9;

  std::uint64_t seed = 1;
};

/// Throws ConfigError with the offending key in the message.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

/// Canonical form echoed into manifests and hashed into the run id.
nlohmann::json to_json(const RunConfig& c);

/// Throws ConfigError for values that parse but make no sense, such as an
/// empty K list or varsigma outside (0, 1).
void validate(const RunConfig& c);

/// Throws ConfigError for a malformed or non-squarefree field.
nf::FieldContext make_field(const std::string& field);

/// Explicit y values, or the rational primes inert in F with N(p) <= bound
/// (every prime p <= bound over Q).
std::vector<nf::RingElement> select_y(const nf::FieldContext& F, const RunConfig& c);

}  // namespace horolab::cli
