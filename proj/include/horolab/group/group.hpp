#pragma once

#include "horolab/nf/field.hpp"

#include <span>
#include <string>
#include <vector>

namespace horolab::group {

using nf::FieldContext;
using nf::RingElement;

/// Real 2x2 matrix [[a, b], [c, d]].
struct Mat2 {
  double a = 1, b = 0, c = 0, d = 1;

  double det() const { return a * d - b * c; }
  double max_abs() const;
  Mat2 inverse() const { return {d, -b, -c, a}; }  // valid for det = 1
  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
};

/// A point of SL2(R)^d, one unimodular 2x2 block per real place.
///
/// Construction and products check det = 1 per block, relative to the square
/// of the largest entry, at tolerance 1e-9.
class GroupElement {
 public:
  static constexpr double kDetTolerance = 1e-9;

  static GroupElement identity(int degree);
  explicit GroupElement(std::vector<Mat2> blocks);

  int degree() const { return static_cast<int>(blocks_.size()); }
  const Mat2& place(int i) const { return blocks_[static_cast<std::size_t>(i)]; }
  const std::vector<Mat2>& blocks() const { return blocks_; }

  GroupElement inverse() const;
  friend GroupElement operator*(const GroupElement& x, const GroupElement& y);

  /// Largest relative |det - 1| over the blocks.
  double det_error() const;
  /// Largest entrywise difference, divided by the largest entry of either side.
  double normalized_distance(const GroupElement& other) const;

  /// Row-major 2x2 blocks: [[a,b,c,d], ...].
  std::string to_json() const;

 private:
  std::vector<Mat2> blocks_;
};

/// u(t) = [[1, t], [0, 1]] per place.
GroupElement u(std::span<const double> t);
/// v(s) = [[1, 0], [s, 1]] per place.
GroupElement v(std::span<const double> s);
/// a(y) = diag(1/y, y) per place; throws std::invalid_argument on a zero entry.
GroupElement a(std::span<const double> y);

/// a((sigma y)^alpha): place i is diag(sigma_i(y)^-alpha, sigma_i(y)^alpha).
GroupElement a_alpha(const FieldContext& F, const RingElement& y, double alpha);

/// 2x2 matrix with entries in the ring of integers.
struct ExactMatrix {
  RingElement a{1}, b{0}, c{0}, d{1};
  friend bool operator==(const ExactMatrix&, const ExactMatrix&) = default;
};

ExactMatrix multiply(const FieldContext& F, const ExactMatrix& x, const ExactMatrix& y);
RingElement determinant(const FieldContext& F, const ExactMatrix& M);
/// Embeds every entry at every place.
GroupElement realize(const FieldContext& F, const ExactMatrix& M);
/// {"a":"..","b":"..","c":"..","d":".."} with entries in "a+b*w" form.
std::string to_json(const FieldContext& F, const ExactMatrix& M);

/// gamma = [[y, -j], [jx, (1 - j jx) / y]] with gamma u(j/y) a(y) = v(jx/y).
struct DualityResult {
  ExactMatrix gamma;
  RingElement j_inverse;
  /// gamma [[1, j y], [0, y^2]] == [[y, 0], [jx, y]], the identity scaled by y, decided exactly.
  bool exact_identity = false;
  /// Normalized float residual of gamma u(sigma j / sigma y) a(sigma y) - v(sigma jx / sigma y).
  double residual = 0.0;
};

/// Throws nf::NotInvertible when (j) + (y) != o, std::invalid_argument for
/// y = 0 and std::logic_error if any exact check fails.
DualityResult duality_gamma(const FieldContext& F, const RingElement& j, const RingElement& y);

/// Embedded diag(eps_tp^{-k}, eps_tp^k), the unit diagonal in SL2(o).
ExactMatrix unit_diagonal(const FieldContext& F, long long k);

/// a_alpha(eps_tp^k) = gamma * g with gamma = unit_diagonal(m), m = round(alpha k),
/// and g = a(sigma(eps_tp)^f) for the fractional part f in [-1/2, 1/2].
struct UnitDecomposition {
  long long m = 0;
  double f = 0.0;
  ExactMatrix gamma;
  GroupElement g = GroupElement::identity(1);
};

UnitDecomposition unit_decompose(const FieldContext& F, long long k, double alpha);

/// Coefficients in the basis {H_1, H_d} of the diagonal Lie algebra: H_1 has
/// place-i entry diag(-log sigma_i(eps_tp), log sigma_i(eps_tp)), H_d is
/// diag(-1, 1) at every place. Over Q only the H_d coefficient exists.
struct CartanVector {
  std::vector<double> coeffs;
};

GroupElement cartan_exp(const FieldContext& F, const CartanVector& h);
/// Coordinates of the diagonal element with place-i entry diag(e^-x_i, e^x_i).
CartanVector cartan_coordinates(const FieldContext& F, std::span<const double> x);

/// eps_tp^{-2k} j reduced modulo y o. Realizing the result equals realizing j
/// and then multiplying on the right by a(eps_tp)^{-k}, up to the left action of SL2(o).
RingElement unit_action_on_parameter(const FieldContext& F, const RingElement& j, const RingElement& y,
                                     long long k);

}  // namespace horolab::group
