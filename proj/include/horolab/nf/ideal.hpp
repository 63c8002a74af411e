#pragma once

#include "horolab/nf/field.hpp"

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace horolab::nf {

/// Integral ideal as the Z-lattice with basis {a, b + c*w}, written as the
/// upper-triangular matrix [[a, b], [0, c]] whose columns are the basis in
/// coordinates over {1, w}. Canonical form: a, c > 0 and 0 <= b < a.
/// Over Q the ideal aZ is stored as [[a, 0], [0, 1]].
struct IdealHNF {
  BigInt a = 1;
  BigInt b = 0;
  BigInt c = 1;

  BigInt norm() const { return a * c; }
  bool is_unit() const { return a == 1 && c == 1; }
  friend bool operator==(const IdealHNF&, const IdealHNF&) = default;
};

class NotInvertible : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// HNF of the Z-span of the given elements; throws if they do not span a
/// full-rank lattice.
IdealHNF z_span(const FieldContext& F, std::span<const RingElement> gens);

/// HNF of the ideal generated (as an o-module) by the given elements.
IdealHNF ideal_generated(const FieldContext& F, std::span<const RingElement> gens);

IdealHNF ideal_of(const FieldContext& F, const RingElement& y);
IdealHNF ideal_sum(const FieldContext& F, const IdealHNF& I, const IdealHNF& J);
IdealHNF ideal_product(const FieldContext& F, const IdealHNF& I, const IdealHNF& J);
IdealHNF ideal_conjugate(const FieldContext& F, const IdealHNF& I);

/// The two Z-basis elements of I.
std::vector<RingElement> basis(const FieldContext& F, const IdealHNF& I);

bool contains(const FieldContext& F, const IdealHNF& I, const RingElement& x);
bool contains(const FieldContext& F, const IdealHNF& I, const IdealHNF& J);

/// Representative of x mod I inside the box {x + z*w : 0 <= x < a, 0 <= z < c}.
RingElement reduce(const FieldContext& F, const IdealHNF& I, const RingElement& x);

/// Position of a reduced residue in residue_representatives order.
std::size_t residue_index(const FieldContext& F, const IdealHNF& I, const RingElement& reduced);

/// I / P when P divides I.
bool divide_exact(const FieldContext& F, const IdealHNF& I, const IdealHNF& P, IdealHNF* quotient);

/// |N(y)| residues of o / y o from the HNF box, z-coordinate outermost.
std::vector<RingElement> residue_representatives(const FieldContext& F, const RingElement& y);
std::vector<RingElement> residue_representatives(const FieldContext& F, const IdealHNF& I);

/// Inverse of j modulo y o, reduced to the box. Throws NotInvertible when
/// (j) + (y) is a proper ideal.
RingElement inverse_mod(const FieldContext& F, const RingElement& j, const RingElement& y);

bool coprime(const FieldContext& F, const RingElement& j, const IdealHNF& I);

/// JSON text "[[a,b],[0,c]]".
std::string to_json(const IdealHNF& I);

}  // namespace horolab::nf
