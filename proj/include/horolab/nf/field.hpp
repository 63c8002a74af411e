#pragma once

#include "horolab/nf/bigint.hpp"

#include <compare>
#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace horolab::nf {

/// Element a + b*w of the ring of integers, in the integral basis {1, w}.
/// Over Q the second coordinate is always zero.
struct RingElement {
  BigInt a = 0;
  BigInt b = 0;

  RingElement() = default;
  RingElement(BigInt a_, BigInt b_ = 0) : a(std::move(a_)), b(std::move(b_)) {}
  template <std::integral I>
  RingElement(I a_) : a(a_), b(0) {}

  bool is_zero() const { return a == 0 && b == 0; }

  friend bool operator==(const RingElement&, const RingElement&) = default;
  friend std::strong_ordering operator<=>(const RingElement& x, const RingElement& y) {
    if (x.a != y.a) return x.a < y.a ? std::strong_ordering::less : std::strong_ordering::greater;
    if (x.b != y.b) return x.b < y.b ? std::strong_ordering::less : std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
};

/// Q(sqrt D) with its maximal order Z[w], or Q itself (degree 1).
///
/// The generator satisfies w^2 = t*w + n0 with (t, n0) = (1, (D-1)/4) when
/// D = 1 mod 4 and (0, D) otherwise. Place 1 sends sqrt(D) to the positive
/// root, place 2 to the negative one.
class FieldContext {
 public:
  static FieldContext rational();
  /// Throws std::invalid_argument unless D > 1 is squarefree.
  static FieldContext quadratic(std::int64_t D);

  int degree() const { return degree_; }
  std::int64_t D() const { return D_; }
  std::int64_t discriminant() const { return disc_; }
  std::int64_t omega_trace() const { return t_; }
  std::int64_t omega_norm_term() const { return n0_; }
  bool has_unit_rank() const { return degree_ == 2; }

  double omega_at(int place) const { return place == 0 ? omega1_ : omega2_; }

  RingElement add(const RingElement& x, const RingElement& y) const;
  RingElement sub(const RingElement& x, const RingElement& y) const;
  RingElement neg(const RingElement& x) const;
  RingElement mul(const RingElement& x, const RingElement& y) const;
  RingElement scale(const RingElement& x, const BigInt& s) const;
  RingElement conj(const RingElement& x) const;
  RingElement pow(const RingElement& x, unsigned e) const;

  BigInt norm(const RingElement& x) const;
  BigInt trace(const RingElement& x) const;

  /// x / y if the quotient lies in the ring, otherwise false.
  bool divides(const RingElement& y, const RingElement& x, RingElement* quotient = nullptr) const;

  /// sigma_place(x) in double precision; the smaller embedding is recovered
  /// from the norm to avoid cancellation.
  double embed(const RingElement& x, int place) const;
  std::vector<double> embed(const RingElement& x) const;

  /// Exact sign (-1, 0, +1) of sigma_place(x).
  int sign_at(const RingElement& x, int place) const;
  bool totally_positive(const RingElement& x) const;

  /// Smallest unit > 1 (exact); 1 over Q.
  const RingElement& fundamental_unit() const { return eps0_; }
  /// Generator of the totally positive units mod torsion; 1 over Q.
  const RingElement& totally_positive_unit() const { return eps_tp_; }
  /// Exact eps_tp^k for any integer k (negative powers via conjugation).
  RingElement unit_power(long long k) const;
  /// log sigma_1(eps_tp), 0 over Q.
  double log_unit() const { return log_unit_; }

  std::string format(const RingElement& x) const;
  RingElement parse(std::string_view text) const;
  std::string name() const;

 private:
  FieldContext() = default;

  int degree_ = 1;
  std::int64_t D_ = 0;
  std::int64_t disc_ = 1;
  std::int64_t t_ = 0;
  std::int64_t n0_ = 0;
  double omega1_ = 0.0;
  double omega2_ = 0.0;
  RingElement eps0_{1};
  RingElement eps_tp_{1};
  double log_unit_ = 0.0;
};

/// Exact sign of p + q*sqrt(D) for non-square D > 0.
int sign_of_surd(const BigInt& p, const BigInt& q, std::int64_t D);

bool is_squarefree(std::int64_t n);

/// Fundamental unit of Z[w] through the continued fraction of w; the
/// w-coefficient is capped at `cap`.
RingElement fundamental_unit_cf(const FieldContext& F, const BigInt& cap);

}  // namespace horolab::nf
