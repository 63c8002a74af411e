#include "horolab/ergodic/toral.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace horolab::ergodic {

ToralAutomorphism::ToralAutomorphism(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) : m_{a, b, c, d} {
  const std::int64_t det = a * d - b * c;
  if (det != 1 && det != -1) throw std::invalid_argument(fmt::format("toral automorphism: det = {}, need +-1", det));
  if (std::abs(a + d) <= 2) {
    throw std::invalid_argument(fmt::format("toral automorphism: |trace| = {} is not hyperbolic", std::abs(a + d)));
  }
}

ToralAutomorphism ToralAutomorphism::inverse() const {
  const std::int64_t det = this->det();
  return {det * m_[3], -det * m_[1], -det * m_[2], det * m_[0]};
}

Frequency ToralAutomorphism::act(const Frequency& m) const {
  // T^t m = (a m1 + c m2, b m1 + d m2)
  std::int64_t p1, p2, q1, q2, x, y;
  if (__builtin_mul_overflow(m_[0], m.first, &p1) || __builtin_mul_overflow(m_[2], m.second, &p2) ||
      __builtin_mul_overflow(m_[1], m.first, &q1) || __builtin_mul_overflow(m_[3], m.second, &q2) ||
      __builtin_add_overflow(p1, p2, &x) || __builtin_add_overflow(q1, q2, &y)) {
    throw std::overflow_error("toral automorphism: frequency overflow");
  }
  return {x, y};
}

double ToralAutomorphism::expansion() const {
  const double t = static_cast<double>(trace());
  const double disc = std::sqrt(t * t - 4.0 * static_cast<double>(det()));
  return std::max(std::abs((t + disc) / 2), std::abs((t - disc) / 2));
}

double ToralAutomorphism::unstable_component(const Frequency& m) const {
  // w with T w = lambda w satisfies w.(T^t m) = lambda (w.m).
  const double t = static_cast<double>(trace());
  const double disc = std::sqrt(t * t - 4.0 * static_cast<double>(det()));
  const double lam = std::abs((t + disc) / 2) >= std::abs((t - disc) / 2) ? (t + disc) / 2 : (t - disc) / 2;
  double w1, w2;
  if (m_[1] != 0) {
    w1 = static_cast<double>(m_[1]);
    w2 = lam - static_cast<double>(m_[0]);
  } else {
    w1 = lam - static_cast<double>(m_[3]);
    w2 = static_cast<double>(m_[2]);
  }
  const double n = std::hypot(w1, w2);
  return (w1 * static_cast<double>(m.first) + w2 * static_cast<double>(m.second)) / n;
}

TrigPolynomial::TrigPolynomial(std::map<Frequency, Complex> coeffs) {
  for (auto& [m, c] : coeffs) {
    if (c != Complex(0, 0)) coeffs_.emplace(m, c);
  }
}

TrigPolynomial TrigPolynomial::constant(double c) { return TrigPolynomial{{{0, 0}, Complex(c, 0)}}; }

TrigPolynomial TrigPolynomial::cosine(std::int64_t m, std::int64_t n) {
  if (m == 0 && n == 0) return constant(1.0);
  return TrigPolynomial{{{m, n}, Complex(0.5, 0)}, {{-m, -n}, Complex(0.5, 0)}};
}

Complex TrigPolynomial::coeff(const Frequency& m) const {
  const auto it = coeffs_.find(m);
  return it == coeffs_.end() ? Complex(0, 0) : it->second;
}

bool TrigPolynomial::is_real(double tol) const {
  for (const auto& [m, c] : coeffs_) {
    if (std::abs(coeff({-m.first, -m.second}) - std::conj(c)) > tol) return false;
  }
  return true;
}

double TrigPolynomial::l1_norm() const {
  double s = 0;
  for (const auto& [m, c] : coeffs_) s += std::abs(c);
  return s;
}

double TrigPolynomial::l2_norm_sq() const {
  double s = 0;
  for (const auto& [m, c] : coeffs_) s += std::norm(c);
  return s;
}

TrigPolynomial TrigPolynomial::operator+(const TrigPolynomial& o) const {
  std::map<Frequency, Complex> c = coeffs_;
  for (const auto& [m, x] : o.coeffs_) c[m] += x;
  return TrigPolynomial(std::move(c));
}

TrigPolynomial TrigPolynomial::scaled(double s) const {
  std::map<Frequency, Complex> c = coeffs_;
  for (auto& [m, x] : c) x *= s;
  return TrigPolynomial(std::move(c));
}

TrigPolynomial compose(const ToralAutomorphism& T, const TrigPolynomial& f, std::int64_t k) {
  const ToralAutomorphism step = k >= 0 ? T : T.inverse();
  const std::int64_t n = k >= 0 ? k : -k;
  std::map<Frequency, Complex> out;
  for (const auto& [m, c] : f.coeffs()) {
    Frequency x = m;
    for (std::int64_t i = 0; i < n; ++i) x = step.act(x);
    out.emplace(x, c);
  }
  return TrigPolynomial(std::move(out));
}

Complex correlation(const ToralAutomorphism& T, const TrigPolynomial& f, const TrigPolynomial& g, std::int64_t k) {
  const TrigPolynomial fk = compose(T, f, k);
  Complex s(0, 0);
  for (const auto& [m, c] : fk.coeffs()) s += c * std::conj(g.coeff(m));
  return s - Complex(f.mean(), 0) * std::conj(Complex(g.mean(), 0));
}

namespace {

struct Autocorrelation {
  std::vector<Complex> C;
  std::size_t silent_from = 0;  // C(j) = 0 for every j >= silent_from
};

Autocorrelation autocorrelate(const ToralAutomorphism& T, const TrigPolynomial& f, std::size_t count) {
  std::map<Frequency, Complex> support;
  for (const auto& [m, c] : f.coeffs()) {
    if (m != Frequency{0, 0}) support.emplace(m, c);
  }
  double bound = 0;
  for (const auto& [m, c] : support) bound = std::max(bound, std::abs(T.unstable_component(m)));
  bound *= 1 + 1e-9;

  Autocorrelation out;
  out.C.assign(count, Complex(0, 0));
  for (const auto& [m, c] : support) {
    Frequency x = m;
    for (std::size_t k = 0;; ++k) {
      if (k > 0 && std::abs(T.unstable_component(x)) > bound) {
        out.silent_from = std::max(out.silent_from, k);
        break;
      }
      if (k < count) {
        const auto it = support.find(x);
        if (it != support.end()) out.C[k] += c * std::conj(it->second);
      } else {
        // Past the requested range but not yet escaped: keep iterating only to
        // certify where the sequence goes silent.
        if (support.count(x)) out.silent_from = std::max(out.silent_from, k + 1);
      }
      x = T.act(x);
    }
  }
  return out;
}

}  // namespace

std::vector<Complex> autocorrelations(const ToralAutomorphism& T, const TrigPolynomial& f, std::size_t count) {
  return autocorrelate(T, f, count).C;
}

double average_norm(const ToralAutomorphism& T, const TrigPolynomial& f, std::int64_t K) {
  if (K < 1) throw std::invalid_argument("average_norm: K must be at least 1");
  const auto C = autocorrelations(T, f, static_cast<std::size_t>(K));
  double s = static_cast<double>(K) * C[0].real();
  for (std::int64_t k = 1; k < K; ++k) s += 2.0 * static_cast<double>(K - k) * C[static_cast<std::size_t>(k)].real();
  const double KK = static_cast<double>(K);
  return s / (KK * KK);
}

double correlation_envelope(const std::vector<Complex>& C, double S, double x) {
  if (S <= 0) return 0.0;
  const double ax = std::abs(x);
  const auto start = static_cast<std::size_t>(std::ceil(ax));
  double m = 0;
  for (std::size_t j = start; j < C.size(); ++j) m = std::max(m, std::abs(C[j]));
  return m / (S * S);
}

VonNeumannReport verify_vonneumann(const ToralAutomorphism& T, const TrigPolynomial& f, const std::vector<std::int64_t>& Ks,
                                   double varsigma) {
  if (Ks.empty()) throw std::invalid_argument("verify_vonneumann: empty K list");
  if (!(varsigma > 0 && varsigma < 1)) throw std::invalid_argument("verify_vonneumann: varsigma must lie in (0, 1)");
  std::int64_t maxK = 0;
  for (auto K : Ks) {
    if (K < 1) throw std::invalid_argument("verify_vonneumann: K must be positive");
    maxK = std::max(maxK, K);
  }
  Autocorrelation ac = autocorrelate(T, f, static_cast<std::size_t>(maxK));
  if (ac.silent_from > ac.C.size()) ac = autocorrelate(T, f, ac.silent_from);
  const std::vector<Complex>& C = ac.C;

  VonNeumannReport rep;
  rep.varsigma = varsigma;
  rep.S = f.l1_norm();
  const double S2 = rep.S * rep.S;
  for (auto K : Ks) {
    VonNeumannRow row;
    row.K = K;
    const double KK = static_cast<double>(K);
    double s = KK * C[0].real();
    for (std::int64_t k = 1; k < K; ++k) s += 2.0 * static_cast<double>(K - k) * C[static_cast<std::size_t>(k)].real();
    row.exact_norm = s / (KK * KK);
    row.envelope = (std::pow(KK, -varsigma) + correlation_envelope(C, rep.S, std::pow(KK, 1 - varsigma))) * S2;
    row.ratio = row.envelope > 0 ? row.exact_norm / row.envelope : 0.0;
    rep.rows.push_back(row);
  }
  rep.fitted_C = rep.rows.front().ratio;
  rep.max_violation = 0;
  for (const auto& r : rep.rows) {
    if (rep.fitted_C > 0) rep.max_violation = std::max(rep.max_violation, r.ratio / rep.fitted_C);
  }
  return rep;
}

}  // namespace horolab::ergodic
