#pragma once

#include "horolab/group/group.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace horolab::lattice {

using group::GroupElement;
using group::Mat2;
using nf::FieldContext;

/// Full-rank lattice in R^n given by the rows of a square basis matrix.
class ZLattice {
 public:
  ZLattice(int dim, std::vector<double> rows);

  int dim() const { return dim_; }
  double at(int i, int j) const { return rows_[static_cast<std::size_t>(i * dim_ + j)]; }
  double& at(int i, int j) { return rows_[static_cast<std::size_t>(i * dim_ + j)]; }
  const std::vector<double>& rows() const { return rows_; }

  /// Determinant by partial-pivot elimination.
  double det() const;
  ZLattice scaled(double c) const;

 private:
  int dim_;
  std::vector<double> rows_;
};

/// Rows sigma(x) g for x in {e1, e1 w, e2, e2 w} (over Q: {e1, e2}), laid out
/// place by place: coordinates (2i, 2i+1) belong to place i. The lattice
/// depends only on the coset of g modulo SL2(o) on the left; |det| = disc for
/// real quadratic fields and 1 over Q.
ZLattice olattice(const GroupElement& g, const FieldContext& F);

enum class Norm {
  euclidean,  // length in R^{2d}
  sup_place,  // max over places of the Euclidean length of the place block
};

/// LLL reduction with parameter delta; `transform` (row-major, integer)
/// receives U with reduced = U * original.
ZLattice lll_reduce(const ZLattice& L, double delta = 0.99, std::vector<std::int64_t>* transform = nullptr);

struct ShortestVector {
  double length = 0.0;
  std::vector<std::int64_t> coeffs;  // in the basis passed in
  std::vector<double> vector;
};

/// Shortest nonzero lattice vector for the chosen norm: LLL followed by
/// Fincke-Pohst enumeration. Among vectors of equal length (relative 1e-12)
/// the lexicographically greatest coefficient vector wins. Throws
/// std::domain_error for |det| < 1e-12.
ShortestVector shortest_vector(const ZLattice& L, Norm norm = Norm::euclidean);

/// d = 1 base point in the standard fundamental domain plus fiber angle.
struct ReducedPoint {
  double x = 0.0;
  double y = 1.0;
  double theta = 0.0;
};

/// Reduces g i into |x| <= 1/2, |z| >= 1 by translations and inversions;
/// theta = atan2(c, d) of the reduced matrix. Throws std::domain_error
/// unless det g = 1 within 1e-9.
ReducedPoint reduce_sl2z(const Mat2& g);

enum class ObservableKind {
  alpha1,      // Euclidean shortest vector length
  alpha1_sup,  // sup-place shortest vector length
  gauss,       // exp(-alpha1^2 / r^2)
  cusp,        // over Q: indicator of Im(reduced point) > T
  im,          // over Q: Im of the reduced point
};

struct Observable {
  ObservableKind kind = ObservableKind::alpha1;
  double param = 0.0;  // r for gauss, T for cusp

  /// Canonical names: alpha1, alpha1_sup, gauss_<r>, cusp_<T>, im.
  std::string name() const;
  /// Throws std::invalid_argument for unknown names.
  static Observable parse(const std::string& name);
};

double evaluate(const Observable& obs, const GroupElement& g, const FieldContext& F);

}  // namespace horolab::lattice
