#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <utility>
#include <vector>

namespace horolab::ergodic {

using Frequency = std::pair<std::int64_t, std::int64_t>;
using Complex = std::complex<double>;

/// x -> T x on R^2 / Z^2 for an integer matrix T = [[a, b], [c, d]] with
/// det = +-1 and |trace| > 2.
class ToralAutomorphism {
 public:
  /// Throws std::invalid_argument unless unimodular and hyperbolic.
  ToralAutomorphism(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);
  static ToralAutomorphism cat_map() { return {2, 1, 1, 1}; }

  std::array<std::int64_t, 4> matrix() const { return m_; }
  std::int64_t det() const { return m_[0] * m_[3] - m_[1] * m_[2]; }
  std::int64_t trace() const { return m_[0] + m_[3]; }
  ToralAutomorphism inverse() const;

  /// Frequency action: e_m o T = e_{T^t m}. Throws std::overflow_error when
  /// the result leaves int64.
  Frequency act(const Frequency& m) const;
  /// Component of m along the expanding eigenvector of T^t (unit length).
  double unstable_component(const Frequency& m) const;
  double expansion() const;  // largest |eigenvalue|

 private:
  std::array<std::int64_t, 4> m_;
};

/// Finite sum of characters e_m(x) = exp(2 pi i m.x).
class TrigPolynomial {
 public:
  TrigPolynomial() = default;
  explicit TrigPolynomial(std::map<Frequency, Complex> coeffs);
  TrigPolynomial(std::initializer_list<std::pair<const Frequency, Complex>> terms)
      : TrigPolynomial(std::map<Frequency, Complex>(terms)) {}

  static TrigPolynomial constant(double c);
  /// cos(2 pi (m x + n y)).
  static TrigPolynomial cosine(std::int64_t m, std::int64_t n);

  const std::map<Frequency, Complex>& coeffs() const { return coeffs_; }
  Complex coeff(const Frequency& m) const;
  double mean() const { return coeff({0, 0}).real(); }
  /// c_{-m} = conj(c_m), within `tol`.
  bool is_real(double tol = 1e-15) const;
  /// l1 norm of the coefficients, an upper bound for the sup and L2 norms.
  double l1_norm() const;
  double l2_norm_sq() const;

  TrigPolynomial operator+(const TrigPolynomial& o) const;
  TrigPolynomial scaled(double s) const;

 private:
  std::map<Frequency, Complex> coeffs_;
};

/// f o T^k (k may be negative). Coefficients are carried over unchanged.
TrigPolynomial compose(const ToralAutomorphism& T, const TrigPolynomial& f, std::int64_t k);

/// <f o T^k, g> - E_f conj(E_g), computed from matching frequencies.
Complex correlation(const ToralAutomorphism& T, const TrigPolynomial& f, const TrigPolynomial& g, std::int64_t k);

/// C(k) = <f0 o T^k, f0> for f0 = f - E_f and 0 <= k < count. Frequencies are
/// iterated only until their unstable component exceeds that of every frequency
/// of f; from then on they cannot meet the support again and contribute 0.
std::vector<Complex> autocorrelations(const ToralAutomorphism& T, const TrigPolynomial& f, std::size_t count);

/// ||A_K f - E_f||_2^2 with A_K f = (1/K) sum_{n<K} f o T^n, from the
/// autocorrelations: (1/K^2) [K C(0) + 2 sum_{k=1}^{K-1} (K - k) Re C(k)].
double average_norm(const ToralAutomorphism& T, const TrigPolynomial& f, std::int64_t K);

struct VonNeumannRow {
  std::int64_t K = 0;
  double exact_norm = 0;  // ||A_K f - E_f||^2
  double envelope = 0;    // (K^-s + psi(K^(1-s))) S(f)^2
  double ratio = 0;       // exact_norm / envelope
};

struct VonNeumannReport {
  double varsigma = 0;
  double S = 0;            // l1 norm of f, the stand-in for the Sobolev norm
  double fitted_C = 0;     // ratio at Ks[0]
  double max_violation = 0;  // max over K of ratio / fitted_C; <= 1 means the bound holds
  std::vector<VonNeumannRow> rows;
};

/// psi(x) = sup_{j >= ceil(x)} |C(j)| / S^2, the monotone envelope of the
/// exact correlation decay (symmetric in x).
double correlation_envelope(const std::vector<Complex>& C, double S, double x);

/// Throws std::invalid_argument for empty Ks, non-positive K or varsigma outside (0, 1).
VonNeumannReport verify_vonneumann(const ToralAutomorphism& T, const TrigPolynomial& f, const std::vector<std::int64_t>& Ks,
                                   double varsigma);

}  // namespace horolab::ergodic
