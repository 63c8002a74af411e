#include "horolab/cli/output.hpp"

#include <fmt/chrono.h>
#include <fmt/format.h>
#include <openssl/evp.h>

#include <chrono>
#include <ctime>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace horolab::cli {

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256: EVP_Digest failed");
  }
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

std::string make_run_id(std::string_view subcommand, const nlohmann::json& canonical_config, std::uint64_t seed) {
  const std::string payload = fmt::format("{}\n{}\n{}", subcommand, canonical_config.dump(), seed);
  return sha256_hex(payload).substr(0, 16);
}

std::string format_double(double x) { return fmt::format("{}", x); }

CsvSink::CsvSink(const std::string& path, std::string run_id) : path_(path), run_id_(std::move(run_id)), out_(path) {
  if (!out_) throw std::runtime_error(fmt::format("cannot write '{}'", path));
  out_ << kCsvHeader << '\n';
}

void CsvSink::write(const CsvRow& r) {
  const std::string line = fmt::format("{},{},{},{},{},{},{},{},{}\n", run_id_, r.field, r.y, r.N_y, r.phi_y, r.alpha,
                                       r.ensemble, r.observable, format_double(r.value));
  std::lock_guard<std::mutex> lock(mu_);
  out_ << line;
  ++rows_;
}

CsvRow parse_csv_row(const std::string& line, std::string* run_id) {
  std::vector<std::string> cols;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cols.push_back(cell);
  if (!line.empty() && line.back() == ',') cols.emplace_back();
  if (cols.size() != 9) throw std::invalid_argument(fmt::format("csv row has {} columns, expected 9", cols.size()));
  if (run_id) *run_id = cols[0];
  CsvRow r{cols[1], cols[2], cols[3], cols[4], cols[5], cols[6], cols[7], 0.0};
  std::size_t used = 0;
  r.value = std::stod(cols[8], &used);
  if (used != cols[8].size()) throw std::invalid_argument(fmt::format("csv value '{}' is not a number", cols[8]));
  return r;
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", tm);
}

}  // namespace horolab::cli
