#include "horolab/cli/config.hpp"

#include "horolab/lattice/lattice.hpp"
#include "horolab/nf/factor.hpp"
#include "horolab/util/errors.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace horolab::cli {

using nlohmann::json;

namespace {

const std::set<std::string> kKeys{"field", "y",          "alpha",      "observables", "ensembles", "horosphere_size",
                                  "K",     "emit_values", "norm_bound", "vonneumann",  "seed"};
const std::set<std::string> kVnKeys{"T", "f", "K", "varsigma"};
const std::set<std::string> kEnsembles{"rational", "primitive", "non_primitive", "horosphere"};

template <class T>
T get(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("config key '{}': {}", key, e.what()));
  }
}

void reject_unknown(const json& j, const std::set<std::string>& allowed, std::string_view where) {
  for (const auto& [k, v] : j.items()) {
    if (!allowed.count(k)) throw ConfigError(fmt::format("unknown config key '{}{}'", where, k));
  }
}

}  // namespace

RunConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(j, kKeys, "");
  RunConfig c;
  if (j.contains("field")) {
    const json& f = j.at("field");
    if (f.is_number_integer()) {
      c.field = std::to_string(f.get<std::int64_t>());
    } else if (f.is_string()) {
      c.field = f.get<std::string>();
    } else {
      throw ConfigError("config key 'field': expected an integer D or \"rational\"");
    }
  }
  if (j.contains("y")) {
    const json& y = j.at("y");
    if (y.is_array()) {
      c.y.clear();
      for (const auto& e : y) {
        if (e.is_string()) {
          c.y.push_back(e.get<std::string>());
        } else if (e.is_number_integer()) {
          c.y.push_back(std::to_string(e.get<std::int64_t>()));
        } else {
          throw ConfigError("config key 'y': entries must be strings like \"4+w\" or integers");
        }
      }
    } else if (y.is_object()) {
      reject_unknown(y, {"inert_primes_up_to_norm"}, "y.");
      c.inert_norm_bound = get<std::int64_t>(y, "inert_primes_up_to_norm");
      c.y.clear();
    } else {
      throw ConfigError("config key 'y': expected a list or {\"inert_primes_up_to_norm\": N}");
    }
  }
  if (j.contains("alpha")) {
    c.alphas = j.at("alpha").is_number() ? std::vector<double>{j.at("alpha").get<double>()}
                                         : get<std::vector<double>>(j, "alpha");
  }
  if (j.contains("observables")) c.observables = get<std::vector<std::string>>(j, "observables");
  if (j.contains("ensembles")) c.ensembles = get<std::vector<std::string>>(j, "ensembles");
  if (j.contains("horosphere_size")) c.horosphere_size = get<std::size_t>(j, "horosphere_size");
  if (j.contains("K")) c.Ks = get<std::vector<int>>(j, "K");
  if (j.contains("emit_values")) c.emit_values = get<bool>(j, "emit_values");
  if (j.contains("norm_bound")) c.norm_bound = get<std::int64_t>(j, "norm_bound");
  if (j.contains("seed")) c.seed = get<std::uint64_t>(j, "seed");
  if (j.contains("vonneumann")) {
    const json& v = j.at("vonneumann");
    if (!v.is_object()) throw ConfigError("config key 'vonneumann' must be an object");
    reject_unknown(v, kVnKeys, "vonneumann.");
    if (v.contains("T")) c.vn_T = get<std::vector<std::int64_t>>(v, "T");
    if (v.contains("f")) c.vn_f = get<std::vector<std::vector<double>>>(v, "f");
    if (v.contains("K")) c.vn_Ks = get<std::vector<std::int64_t>>(v, "K");
    if (v.contains("varsigma")) c.varsigma = get<double>(v, "varsigma");
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config file '{}'", path));
  std::stringstream ss;
  ss << in.rdbuf();
  json j;
  try {
    j = json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw ConfigError(fmt::format("config file '{}' is not valid JSON: {}", path, e.what()));
  }
  return parse_config(j);
}

json to_json(const RunConfig& c) {
  json j;
  j["field"] = c.field;
  if (c.inert_norm_bound > 0) {
    j["y"] = {{"inert_primes_up_to_norm", c.inert_norm_bound}};
  } else {
    j["y"] = c.y;
  }
  j["alpha"] = c.alphas;
  j["observables"] = c.observables;
  j["ensembles"] = c.ensembles;
  j["horosphere_size"] = c.horosphere_size;
  j["K"] = c.Ks;
  j["emit_values"] = c.emit_values;
  j["norm_bound"] = c.norm_bound;
  j["vonneumann"] = {{"T", c.vn_T}, {"f", c.vn_f}, {"K", c.vn_Ks}, {"varsigma", c.varsigma}};
  j["seed"] = c.seed;
  return j;
}

void validate(const RunConfig& c) {
  const auto F = make_field(c.field);
  if (c.alphas.empty()) throw ConfigError("config key 'alpha': empty list");
  if (c.observables.empty()) throw ConfigError("config key 'observables': empty list");
  for (const auto& o : c.observables) {
    lattice::Observable obs;
    try {
      obs = lattice::Observable::parse(o);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(fmt::format("config key 'observables': {}", e.what()));
    }
    const bool rational_only = obs.kind == lattice::ObservableKind::cusp || obs.kind == lattice::ObservableKind::im;
    if (rational_only && F.degree() != 1) {
      throw ConfigError(fmt::format("config key 'observables': {} is defined over Q only", o));
    }
  }
  for (const auto& e : c.ensembles) {
    if (!kEnsembles.count(e)) throw ConfigError(fmt::format("config key 'ensembles': unknown ensemble '{}'", e));
  }
  for (int K : c.Ks) {
    if (K < 1) throw ConfigError(fmt::format("config key 'K': {} is not a positive averaging length", K));
  }
  if (c.inert_norm_bound < 0) throw ConfigError("config key 'y.inert_primes_up_to_norm' must be positive");
  if (c.vn_T.size() != 4) throw ConfigError("config key 'vonneumann.T' needs four entries a, b, c, d");
  for (const auto& t : c.vn_f) {
    if (t.size() != 3 || t[0] != std::floor(t[0]) || t[1] != std::floor(t[1])) {
      throw ConfigError("config key 'vonneumann.f': entries are [m, n, coefficient] with integer m, n");
    }
  }
  if (c.vn_Ks.empty()) throw ConfigError("config key 'vonneumann.K': empty K list");
  for (auto K : c.vn_Ks) {
    if (K < 1) throw ConfigError(fmt::format("config key 'vonneumann.K': {} is not positive", K));
  }
  if (!(c.varsigma > 0 && c.varsigma < 1)) {
    throw ConfigError(fmt::format("config key 'vonneumann.varsigma': {} is outside (0, 1)", c.varsigma));
  }
}

nf::FieldContext make_field(const std::string& field) {
  if (field == "rational" || field == "Q" || field == "1") return nf::FieldContext::rational();
  std::int64_t D = 0;
  std::size_t used = 0;
  try {
    D = std::stoll(field, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != field.size()) {
    throw ConfigError(fmt::format("field '{}': expected a squarefree integer D > 1 or \"rational\"", field));
  }
  try {
    return nf::FieldContext::quadratic(D);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

std::vector<nf::RingElement> select_y(const nf::FieldContext& F, const RunConfig& c) {
  std::vector<nf::RingElement> out;
  if (c.inert_norm_bound == 0) {
    for (const auto& s : c.y) {
      try {
        out.push_back(F.parse(s));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(fmt::format("config key 'y': {}", e.what()));
      }
    }
    if (out.empty()) throw ConfigError("config key 'y': no values selected");
    return out;
  }
  for (std::int64_t p = 2; (F.degree() == 1 ? p : p * p) <= c.inert_norm_bound; ++p) {
    const auto fac = nf::factor_integer(static_cast<std::uint64_t>(p));
    if (fac.size() != 1 || fac[0].second != 1) continue;
    if (F.degree() == 2 && nf::primes_above(F, static_cast<std::uint64_t>(p)).front().type != nf::SplitType::inert) {
      continue;
    }
    out.emplace_back(p);
  }
  if (out.empty()) throw ConfigError(fmt::format("no inert primes with norm <= {}", c.inert_norm_bound));
  return out;
}

}  // namespace horolab::cli
