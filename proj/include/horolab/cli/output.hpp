#pragma once

#include <json.hpp>

#include <cstddef>
#include <fstream>
#include <mutex>
#include <string>
#include <string_view>

namespace horolab::cli {

inline constexpr std::string_view kCsvHeader = "run_id,field,y,N_y,phi_y,alpha,ensemble,observable,value";
inline constexpr int kCsvSchemaVersion = 1;

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);

/// First 16 hex digits of SHA-256 over the subcommand, canonical config and seed.
std::string make_run_id(std::string_view subcommand, const nlohmann::json& canonical_config, std::uint64_t seed);

/// Shortest decimal that round-trips; identical across runs and platforms
/// with IEEE doubles.
std::string format_double(double x);

/// One CSV row of the fixed schema. Empty strings leave a column blank.
struct CsvRow {
  std::string field, y, N_y, phi_y, alpha, ensemble, observable;
  double value = 0.0;
};

/// Serialized writer for the fixed-schema CSV files of one run.
class CsvSink {
 public:
  CsvSink(const std::string& path, std::string run_id);
  void write(const CsvRow& r);
  std::size_t rows() const { return rows_; }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::string run_id_;
  std::ofstream out_;
  std::mutex mu_;
  std::size_t rows_ = 0;
};

/// Splits one data line of the fixed schema; throws std::invalid_argument on
/// a wrong column count.
CsvRow parse_csv_row(const std::string& line, std::string* run_id = nullptr);

/// ISO 8601 UTC timestamp of now, second resolution.
std::string utc_now();

}  // namespace horolab::cli
