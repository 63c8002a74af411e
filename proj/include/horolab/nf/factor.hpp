#pragma once

#include "horolab/nf/ideal.hpp"

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

namespace horolab::nf {

enum class SplitType { split, inert, ramified };

std::string_view to_string(SplitType t);

struct PrimeIdealFactor {
  std::uint64_t p = 0;
  int residue_degree = 1;
  SplitType type = SplitType::split;
  int exponent = 0;
  BigInt norm = 0;  // p^residue_degree
  IdealHNF ideal;
};

/// Kronecker symbol (a / n), computed through reciprocity.
int kronecker(std::int64_t a, std::uint64_t n);

/// Trial-division factorization of n >= 1 into (prime, exponent) pairs.
std::vector<std::pair<std::uint64_t, int>> factor_integer(std::uint64_t n);

/// Square root of a modulo an odd prime p (a must be a quadratic residue).
std::uint64_t sqrt_mod(std::uint64_t a, std::uint64_t p);

/// The prime ideals lying over the rational prime p, sorted by HNF.
std::vector<PrimeIdealFactor> primes_above(const FieldContext& F, std::uint64_t p);

/// Prime ideal factorization; empty for the unit ideal.
std::vector<PrimeIdealFactor> factor_ideal(const FieldContext& F, const IdealHNF& I);

/// Product of P^nu over the factors.
IdealHNF recompose(const FieldContext& F, const std::vector<PrimeIdealFactor>& factors);

/// |(o/I)^x| = prod (N(P) - 1) N(P)^(nu - 1).
BigInt totient(const FieldContext& F, const IdealHNF& I);
BigInt totient(const std::vector<PrimeIdealFactor>& factors);

}  // namespace horolab::nf
