#pragma once

#include "horolab/cli/config.hpp"

#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace horolab::cli {

struct OutputFile {
  std::string name;
  std::size_t rows = 0;
  std::string schema;
};

/// What a subcommand produced. The driver turns this into manifest.json.
struct CommandResult {
  std::vector<OutputFile> files;
  nlohmann::json summary = nlohmann::json::object();
};

/// Field data (units, discriminant) as JSON; also printed to `log`.
CommandResult cmd_field_info(const RunConfig& c, const std::string& out_dir, const std::string& run_id,
                             std::ostream& log);
/// Ratio table N / (phi (log log N)^d) over balanced totally positive y.
CommandResult cmd_totient_scan(const RunConfig& c, const std::string& out_dir, const std::string& run_id,
                               std::ostream& log);
/// Ensembles, observables, KS table, convex-combination residuals and the D_K report.
CommandResult cmd_equidist(const RunConfig& c, const std::string& out_dir, const std::string& run_id,
                           std::ostream& log);
CommandResult cmd_vonneumann(const RunConfig& c, const std::string& out_dir, const std::string& run_id,
                             std::ostream& log);
/// The exact duality matrix for every balanced y with N(y) <= norm_bound and every unit residue.
CommandResult cmd_duality_check(const RunConfig& c, const std::string& out_dir, const std::string& run_id,
                                std::ostream& log);

/// Validates, creates `out_dir`, runs `subcommand` and writes manifest.json.
/// Errors propagate as ConfigError / GuardViolation / std exceptions.
nlohmann::json run_command(const std::string& subcommand, const RunConfig& c, const std::string& out_dir,
                           std::ostream& log);

}  // namespace horolab::cli
