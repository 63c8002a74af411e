#include "horolab/nf/ideal.hpp"

#include <fmt/format.h>

#include <optional>

namespace horolab::nf {

namespace {

// Lattice vector in coordinates over {1, w}, optionally carrying the integer
// combination of the input generators that produced it.
struct Tracked {
  BigInt X;
  BigInt Z;
  std::vector<BigInt> coef;
};

Tracked combine(const BigInt& s, const Tracked& u, const BigInt& t, const Tracked& v) {
  Tracked r{s * u.X + t * v.X, s * u.Z + t * v.Z, {}};
  r.coef.resize(u.coef.size());
  for (std::size_t i = 0; i < u.coef.size(); ++i) r.coef[i] = s * u.coef[i] + t * v.coef[i];
  return r;
}

Tracked negate(const Tracked& u) { return combine(-1, u, 0, u); }

struct Reduced {
  IdealHNF hnf;
  Tracked first;   // (a, 0)
  Tracked second;  // (b, c)
};

Reduced reduce_lattice(int degree, std::span<const RingElement> gens, bool track) {
  std::vector<Tracked> vecs;
  vecs.reserve(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    Tracked v{gens[i].a, degree == 2 ? gens[i].b : BigInt(0), {}};
    if (track) {
      v.coef.assign(gens.size(), 0);
      v.coef[i] = 1;
    }
    vecs.push_back(std::move(v));
  }

  std::optional<Tracked> pivot;
  std::optional<Tracked> acc;
  auto absorb_flat = [&](Tracked v) {
    if (!acc) {
      acc = std::move(v);
      return;
    }
    auto [g, s, t] = ext_gcd(acc->X, v.X);
    acc = combine(s, *acc, t, v);
  };

  for (auto& v : vecs) {
    if (v.Z == 0) {
      absorb_flat(std::move(v));
    } else if (!pivot) {
      pivot = std::move(v);
    } else {
      auto [g, s, t] = ext_gcd(pivot->Z, v.Z);
      Tracked next = combine(s, *pivot, t, v);
      Tracked flat = combine(v.Z / g, *pivot, BigInt(-(pivot->Z / g)), v);
      pivot = std::move(next);
      absorb_flat(std::move(flat));
    }
  }

  Reduced out;
  if (degree == 1) {
    if (!acc || acc->X == 0) throw std::invalid_argument("ideal: generators span the zero ideal");
    if (acc->X < 0) acc = negate(*acc);
    out.hnf = IdealHNF{acc->X, 0, 1};
    out.first = *acc;
    return out;
  }
  if (!pivot || !acc || acc->X == 0) {
    throw std::invalid_argument("ideal: generators do not span a full-rank lattice");
  }
  if (pivot->Z < 0) pivot = negate(*pivot);
  if (acc->X < 0) acc = negate(*acc);
  const BigInt q = floor_div(pivot->X, acc->X);
  Tracked second = combine(1, *pivot, BigInt(-q), *acc);
  out.hnf = IdealHNF{acc->X, second.X, second.Z};
  out.first = *acc;
  out.second = std::move(second);
  return out;
}

}  // namespace

IdealHNF z_span(const FieldContext& F, std::span<const RingElement> gens) {
  return reduce_lattice(F.degree(), gens, false).hnf;
}

IdealHNF ideal_generated(const FieldContext& F, std::span<const RingElement> gens) {
  if (F.degree() == 1) return z_span(F, gens);
  std::vector<RingElement> all;
  all.reserve(2 * gens.size());
  const RingElement w(0, 1);
  for (const auto& g : gens) {
    all.push_back(g);
    all.push_back(F.mul(g, w));
  }
  return z_span(F, all);
}

IdealHNF ideal_of(const FieldContext& F, const RingElement& y) {
  if (y.is_zero()) throw std::invalid_argument("ideal_of: zero element");
  const RingElement g[] = {y};
  return ideal_generated(F, g);
}

std::vector<RingElement> basis(const FieldContext& F, const IdealHNF& I) {
  if (F.degree() == 1) return {RingElement(I.a, 0)};
  return {RingElement(I.a, 0), RingElement(I.b, I.c)};
}

IdealHNF ideal_sum(const FieldContext& F, const IdealHNF& I, const IdealHNF& J) {
  std::vector<RingElement> gens = basis(F, I);
  for (auto& e : basis(F, J)) gens.push_back(std::move(e));
  return z_span(F, gens);
}

IdealHNF ideal_product(const FieldContext& F, const IdealHNF& I, const IdealHNF& J) {
  std::vector<RingElement> gens;
  for (const auto& x : basis(F, I)) {
    for (const auto& y : basis(F, J)) gens.push_back(F.mul(x, y));
  }
  return z_span(F, gens);
}

IdealHNF ideal_conjugate(const FieldContext& F, const IdealHNF& I) {
  if (F.degree() == 1) return I;
  std::vector<RingElement> gens;
  for (const auto& x : basis(F, I)) gens.push_back(F.conj(x));
  return z_span(F, gens);
}

bool contains(const FieldContext& F, const IdealHNF& I, const RingElement& x) {
  if (F.degree() == 1) return x.b == 0 && x.a % I.a == 0;
  if (x.b % I.c != 0) return false;
  const BigInt q = x.b / I.c;
  return (x.a - q * I.b) % I.a == 0;
}

bool contains(const FieldContext& F, const IdealHNF& I, const IdealHNF& J) {
  for (const auto& x : basis(F, J)) {
    if (!contains(F, I, x)) return false;
  }
  return true;
}

RingElement reduce(const FieldContext& F, const IdealHNF& I, const RingElement& x) {
  if (F.degree() == 1) return RingElement(mod_floor(x.a, I.a), 0);
  const BigInt q = floor_div(x.b, I.c);
  const BigInt z = x.b - q * I.c;
  const BigInt X = x.a - q * I.b;
  return RingElement(mod_floor(X, I.a), z);
}

std::size_t residue_index(const FieldContext& F, const IdealHNF& I, const RingElement& r) {
  if (F.degree() == 1) return r.a.convert_to<std::size_t>();
  return (r.b * I.a + r.a).convert_to<std::size_t>();
}

bool divide_exact(const FieldContext& F, const IdealHNF& I, const IdealHNF& P, IdealHNF* quotient) {
  if (!contains(F, P, I)) return false;
  if (F.degree() == 1) {
    if (quotient) *quotient = IdealHNF{I.a / P.a, 0, 1};
    return true;
  }
  const IdealHNF prod = ideal_product(F, I, ideal_conjugate(F, P));
  const BigInt n = P.norm();
  if (prod.a % n != 0 || prod.b % n != 0 || prod.c % n != 0) {
    throw std::logic_error("divide_exact: I * conj(P) not divisible by N(P)");
  }
  if (quotient) *quotient = IdealHNF{prod.a / n, prod.b / n, prod.c / n};
  return true;
}

std::vector<RingElement> residue_representatives(const FieldContext& F, const IdealHNF& I) {
  std::vector<RingElement> out;
  out.reserve(I.norm().convert_to<std::size_t>());
  for (BigInt z = 0; z < I.c; ++z) {
    for (BigInt x = 0; x < I.a; ++x) out.emplace_back(x, F.degree() == 2 ? z : BigInt(0));
  }
  return out;
}

std::vector<RingElement> residue_representatives(const FieldContext& F, const RingElement& y) {
  return residue_representatives(F, ideal_of(F, y));
}

bool coprime(const FieldContext& F, const RingElement& j, const IdealHNF& I) {
  std::vector<RingElement> gens = basis(F, I);
  gens.push_back(j);
  if (F.degree() == 2) gens.push_back(F.mul(j, RingElement(0, 1)));
  return z_span(F, gens).is_unit();
}

RingElement inverse_mod(const FieldContext& F, const RingElement& j, const RingElement& y) {
  const IdealHNF I = ideal_of(F, y);
  std::vector<RingElement> gens{j};
  if (F.degree() == 2) gens.push_back(F.mul(j, RingElement(0, 1)));
  for (auto& e : basis(F, I)) gens.push_back(std::move(e));
  const Reduced r = reduce_lattice(F.degree(), gens, true);
  if (!r.hnf.is_unit()) {
    throw NotInvertible(fmt::format("inverse_mod: {} is not invertible modulo {}", F.format(j), F.format(y)));
  }
  // r.first is the vector (1, 0); its coefficients on j and j*w give the inverse.
  RingElement x(r.first.coef[0], F.degree() == 2 ? r.first.coef[1] : BigInt(0));
  x = reduce(F, I, x);
  if (!contains(F, I, F.sub(F.mul(j, x), RingElement(1)))) {
    throw std::logic_error("inverse_mod: verification failed");
  }
  return x;
}

std::string to_json(const IdealHNF& I) {
  return fmt::format("[[{},{}],[0,{}]]", I.a.str(), I.b.str(), I.c.str());
}

}  // namespace horolab::nf
