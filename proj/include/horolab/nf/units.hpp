#pragma once

#include "horolab/nf/field.hpp"

#include <cstdint>
#include <vector>

namespace horolab::nf {

/// eps_tp^k together with its exact value.
struct UnitPower {
  long long k = 0;
  RingElement value{1};
};

/// |log sigma_1(y) - log sigma_2(y)| for totally positive y (0 over Q).
double log_spread(const FieldContext& F, const RingElement& y);

/// True iff sigma_1(y)/sigma_2(y) lies in the window (eps^-1, eps], eps = sigma_1(eps_tp).
/// Decided exactly. Every associate class under eps_tp has one such member.
bool is_balanced(const FieldContext& F, const RingElement& y);

/// The power eps_tp^k bringing y into balanced form; eps_tp^k * y then has
/// log spread at most log sigma_1(eps_tp). Throws unless y is totally positive.
UnitPower balance_unit(const FieldContext& F, const RingElement& y);

RingElement balanced(const FieldContext& F, const RingElement& y);

/// Totally positive balanced y with 2 <= N(y) <= norm_bound (every positive
/// integer over Q), sorted by norm, then by coordinates.
std::vector<RingElement> balanced_totally_positive(const FieldContext& F, std::int64_t norm_bound,
                                                   std::int64_t norm_min = 2);

struct TotientRow {
  RingElement y;
  BigInt norm;
  BigInt phi;
  double ratio = 0.0;  // N / (phi (log log N)^d)
  int distinct_primes = 0;
};

/// Throws std::invalid_argument for norm_bound < 16.
std::vector<TotientRow> totient_ratio_scan(const FieldContext& F, std::int64_t norm_bound);

double totient_ratio(const FieldContext& F, const BigInt& norm, const BigInt& phi);

}  // namespace horolab::nf
