#include "horolab/nf/units.hpp"

#include "horolab/nf/factor.hpp"
#include "horolab/nf/ideal.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace horolab::nf {

double log_spread(const FieldContext& F, const RingElement& y) {
  if (F.degree() == 1) return 0.0;
  return std::abs(std::log(F.embed(y, 0)) - std::log(F.embed(y, 1)));
}

namespace {

// +1 when sigma_1(y)/sigma_2(y) > eps, -1 when it is <= 1/eps, 0 inside the window.
int window_position(const FieldContext& F, const RingElement& y) {
  const RingElement& eps = F.totally_positive_unit();
  const RingElement ybar = F.conj(y);
  if (F.sign_at(F.sub(y, F.mul(eps, ybar)), 0) > 0) return 1;
  if (F.sign_at(F.sub(y, F.mul(F.conj(eps), ybar)), 0) <= 0) return -1;
  return 0;
}

}  // namespace

bool is_balanced(const FieldContext& F, const RingElement& y) {
  if (F.degree() == 1) return true;
  return window_position(F, y) == 0;
}

UnitPower balance_unit(const FieldContext& F, const RingElement& y) {
  if (!F.totally_positive(y)) {
    throw std::invalid_argument(fmt::format("balance_unit: {} is not totally positive", F.format(y)));
  }
  if (F.degree() == 1) return {};
  const double r = std::log(F.embed(y, 0)) - std::log(F.embed(y, 1));
  long long k = std::llround(-r / (2.0 * F.log_unit()));
  for (int guard = 0; guard < 64; ++guard) {
    const int pos = window_position(F, F.mul(F.unit_power(k), y));
    if (pos == 0) return {k, F.unit_power(k)};
    k -= pos;
  }
  throw std::logic_error("balance_unit: failed to converge");
}

RingElement balanced(const FieldContext& F, const RingElement& y) {
  return F.mul(balance_unit(F, y).value, y);
}

std::vector<RingElement> balanced_totally_positive(const FieldContext& F, std::int64_t norm_bound,
                                                   std::int64_t norm_min) {
  std::vector<RingElement> out;
  if (F.degree() == 1) {
    for (std::int64_t n = std::max<std::int64_t>(norm_min, 1); n <= norm_bound; ++n) out.emplace_back(n);
    return out;
  }
  const double w1 = F.omega_at(0);
  const double w2 = F.omega_at(1);
  const double smax = std::sqrt(static_cast<double>(norm_bound)) * std::exp(F.log_unit() / 2.0) + 1.0;
  const auto bmax = static_cast<long long>(std::ceil(smax / (w1 - w2))) + 1;
  const BigInt B(norm_bound), Bmin(norm_min);
  for (long long b = -bmax; b <= bmax; ++b) {
    const double bd = static_cast<double>(b);
    const double lo = std::max(-bd * w1, -bd * w2);
    const double hi = std::min(smax - bd * w1, smax - bd * w2);
    if (hi < lo) continue;
    for (auto a = static_cast<long long>(std::floor(lo)) - 1; a <= static_cast<long long>(std::ceil(hi)) + 1; ++a) {
      RingElement y(a, b);
      if (!F.totally_positive(y)) continue;
      const BigInt n = F.norm(y);
      if (n > B || n < Bmin) continue;
      if (!is_balanced(F, y)) continue;
      out.push_back(std::move(y));
    }
  }
  std::sort(out.begin(), out.end(), [&](const RingElement& x, const RingElement& y) {
    const BigInt nx = F.norm(x), ny = F.norm(y);
    if (nx != ny) return nx < ny;
    return x < y;
  });
  return out;
}

double totient_ratio(const FieldContext& F, const BigInt& norm, const BigInt& phi) {
  const double n = to_double(norm);
  const double ll = std::log(std::log(n));
  return n / (to_double(phi) * std::pow(ll, F.degree()));
}

std::vector<TotientRow> totient_ratio_scan(const FieldContext& F, std::int64_t norm_bound) {
  if (norm_bound < 16) throw std::invalid_argument("totient_ratio_scan: norm bound must be at least 16");
  std::vector<TotientRow> rows;
  for (auto& y : balanced_totally_positive(F, norm_bound, 2)) {
    const auto factors = factor_ideal(F, ideal_of(F, y));
    TotientRow row;
    row.norm = abs(F.norm(y));
    row.phi = totient(factors);
    row.ratio = totient_ratio(F, row.norm, row.phi);
    row.distinct_primes = static_cast<int>(factors.size());
    row.y = std::move(y);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace horolab::nf
