#include "horolab/nf/factor.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace horolab::nf {

namespace {

__extension__ typedef unsigned __int128 u128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1u) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1u;
  }
  return r;
}

std::uint64_t mod_nonneg(std::int64_t a, std::uint64_t m) {
  const auto mm = static_cast<std::int64_t>(m);
  std::int64_t r = a % mm;
  if (r < 0) r += mm;
  return static_cast<std::uint64_t>(r);
}

int jacobi(std::uint64_t a, std::uint64_t n) {
  a %= n;
  int result = 1;
  while (a != 0) {
    while ((a & 1u) == 0) {
      a >>= 1u;
      const std::uint64_t r = n & 7u;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if ((a & 3u) == 3 && (n & 3u) == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

bool factor_less(const PrimeIdealFactor& x, const PrimeIdealFactor& y) {
  if (x.p != y.p) return x.p < y.p;
  if (x.ideal.a != y.ideal.a) return x.ideal.a < y.ideal.a;
  if (x.ideal.b != y.ideal.b) return x.ideal.b < y.ideal.b;
  return x.ideal.c < y.ideal.c;
}

}  // namespace

std::string_view to_string(SplitType t) {
  switch (t) {
    case SplitType::split: return "split";
    case SplitType::inert: return "inert";
    case SplitType::ramified: return "ramified";
  }
  return "?";
}

int kronecker(std::int64_t a, std::uint64_t n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  while ((n & 1u) == 0) {
    if (a % 2 == 0) return 0;
    const std::uint64_t r = mod_nonneg(a, 8);
    if (r == 3 || r == 5) result = -result;
    n >>= 1u;
  }
  if (n == 1) return result;
  return result * jacobi(mod_nonneg(a, n), n);
}

std::vector<std::pair<std::uint64_t, int>> factor_integer(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, int>> out;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::uint64_t sqrt_mod(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (a == 0) return 0;
  if (powmod(a, (p - 1) / 2, p) != 1) throw std::invalid_argument("sqrt_mod: not a quadratic residue");
  // Tonelli-Shanks
  std::uint64_t q = p - 1;
  int s = 0;
  while ((q & 1u) == 0) {
    q >>= 1u;
    ++s;
  }
  std::uint64_t z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  std::uint64_t m = static_cast<std::uint64_t>(s);
  std::uint64_t c = powmod(z, q, p);
  std::uint64_t t = powmod(a, q, p);
  std::uint64_t r = powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    std::uint64_t i = 0;
    std::uint64_t tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, p);
      ++i;
    }
    std::uint64_t b = c;
    for (std::uint64_t k = 0; k + 1 < m - i; ++k) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return r;
}

std::vector<PrimeIdealFactor> primes_above(const FieldContext& F, std::uint64_t p) {
  std::vector<PrimeIdealFactor> out;
  const BigInt P(p);
  if (F.degree() == 1) {
    out.push_back({p, 1, SplitType::split, 0, P, IdealHNF{P, 0, 1}});
    return out;
  }
  const int k = kronecker(F.discriminant(), p);
  if (k == -1) {
    out.push_back({p, 2, SplitType::inert, 0, P * P, IdealHNF{P, 0, P}});
    return out;
  }
  // Roots of the minimal polynomial x^2 - t x - n0 modulo p.
  std::vector<std::uint64_t> roots;
  const std::int64_t t = F.omega_trace();
  const std::int64_t n0 = F.omega_norm_term();
  if (p == 2) {
    for (std::uint64_t r = 0; r < 2; ++r) {
      const std::int64_t v = static_cast<std::int64_t>(r * r) - t * static_cast<std::int64_t>(r) - n0;
      if (mod_nonneg(v, 2) == 0) roots.push_back(r);
    }
  } else {
    const std::uint64_t s = sqrt_mod(mod_nonneg(F.discriminant(), p), p);
    const std::uint64_t inv2 = (p + 1) / 2;
    const std::uint64_t tt = mod_nonneg(t, p);
    roots.push_back(mulmod((tt + s) % p, inv2, p));
    const std::uint64_t r2 = mulmod((tt + p - s) % p, inv2, p);
    if (r2 != roots.front()) roots.push_back(r2);
  }
  const SplitType type = k == 0 ? SplitType::ramified : SplitType::split;
  for (std::uint64_t r : roots) {
    const RingElement gens[] = {RingElement(P, 0), RingElement(-BigInt(r), 1)};
    IdealHNF prime = ideal_generated(F, gens);
    if (prime.norm() != P) throw std::logic_error(fmt::format("primes_above: bad prime ideal over {}", p));
    out.push_back({p, 1, type, 0, P, prime});
  }
  if ((type == SplitType::ramified) != (out.size() == 1)) {
    throw std::logic_error(fmt::format("primes_above: splitting of {} inconsistent", p));
  }
  std::sort(out.begin(), out.end(), factor_less);
  return out;
}

std::vector<PrimeIdealFactor> factor_ideal(const FieldContext& F, const IdealHNF& I) {
  std::vector<PrimeIdealFactor> out;
  if (I.is_unit()) return out;
  const BigInt n = I.norm();
  if (n > BigInt(std::numeric_limits<std::int64_t>::max())) {
    throw std::invalid_argument("factor_ideal: norm too large for trial division");
  }
  IdealHNF rest = I;
  for (auto [p, e] : factor_integer(n.convert_to<std::uint64_t>())) {
    for (auto P : primes_above(F, p)) {
      IdealHNF q;
      while (divide_exact(F, rest, P.ideal, &q)) {
        rest = q;
        ++P.exponent;
      }
      if (P.exponent > 0) out.push_back(P);
    }
  }
  if (!rest.is_unit()) throw std::logic_error("factor_ideal: cofactor is not the unit ideal");
  return out;
}

IdealHNF recompose(const FieldContext& F, const std::vector<PrimeIdealFactor>& factors) {
  IdealHNF acc;
  for (const auto& P : factors) {
    for (int i = 0; i < P.exponent; ++i) acc = ideal_product(F, acc, P.ideal);
  }
  return acc;
}

BigInt totient(const std::vector<PrimeIdealFactor>& factors) {
  BigInt phi = 1;
  for (const auto& P : factors) {
    phi *= P.norm - 1;
    for (int i = 1; i < P.exponent; ++i) phi *= P.norm;
  }
  return phi;
}

BigInt totient(const FieldContext& F, const IdealHNF& I) { return totient(factor_ideal(F, I)); }

}  // namespace horolab::nf
