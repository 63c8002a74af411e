#include "horolab/nf/field.hpp"

#include <fmt/format.h>

#include <cmath>
#include <regex>
#include <stdexcept>

namespace horolab::nf {

namespace {

constexpr long long kUnitCoefficientCap = 1'000'000;

}  // namespace

bool is_squarefree(std::int64_t n) {
  if (n < 0) n = -n;
  if (n == 0) return false;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
  }
  return true;
}

int sign_of_surd(const BigInt& p, const BigInt& q, std::int64_t D) {
  const int sp = p.sign();
  const int sq = q.sign();
  if (sq == 0) return sp;
  if (sp == 0) return sq;
  if (sp == sq) return sp;
  // Opposite signs: compare p^2 against q^2 D (never equal, D is not a square).
  const BigInt lhs = p * p;
  const BigInt rhs = q * q * D;
  if (sp > 0) return lhs > rhs ? 1 : -1;
  return rhs > lhs ? 1 : -1;
}

FieldContext FieldContext::rational() { return FieldContext(); }

FieldContext FieldContext::quadratic(std::int64_t D) {
  if (D <= 1) throw std::invalid_argument(fmt::format("field: D must exceed 1, got {}", D));
  if (!is_squarefree(D)) throw std::invalid_argument(fmt::format("field: D = {} is not squarefree", D));
  FieldContext F;
  F.degree_ = 2;
  F.D_ = D;
  const double s = std::sqrt(static_cast<double>(D));
  if (D % 4 == 1) {
    F.disc_ = D;
    F.t_ = 1;
    F.n0_ = (D - 1) / 4;
    F.omega1_ = (1.0 + s) / 2.0;
    F.omega2_ = (1.0 - s) / 2.0;
  } else {
    F.disc_ = 4 * D;
    F.t_ = 0;
    F.n0_ = D;
    F.omega1_ = s;
    F.omega2_ = -s;
  }
  F.eps0_ = fundamental_unit_cf(F, BigInt(kUnitCoefficientCap));
  F.eps_tp_ = F.norm(F.eps0_) == 1 ? F.eps0_ : F.mul(F.eps0_, F.eps0_);
  F.log_unit_ = std::log(F.embed(F.eps_tp_, 0));
  return F;
}

RingElement fundamental_unit_cf(const FieldContext& F, const BigInt& cap) {
  // w = (P0 + sqrt(D)) / Q0 with Q0 | D - P0^2.
  const std::int64_t D = F.D();
  BigInt P = F.omega_trace() == 1 ? 1 : 0;
  BigInt Q = F.omega_trace() == 1 ? 2 : 1;
  const BigInt Q0 = Q;
  const BigInt root = isqrt(BigInt(D));
  BigInt p_prev = 1, p_prev2 = 0, q_prev = 0, q_prev2 = 1;
  for (;;) {
    const BigInt a = floor_div(P + root, Q);
    const BigInt p = a * p_prev + p_prev2;
    const BigInt q = a * q_prev + q_prev2;
    p_prev2 = p_prev;
    p_prev = p;
    q_prev2 = q_prev;
    q_prev = q;
    P = a * Q - P;
    Q = (BigInt(D) - P * P) / Q;
    if (q > cap) {
      throw std::runtime_error(fmt::format(
          "field: fundamental unit of Q(sqrt {}) exceeds the coefficient cap {}", D, cap.str()));
    }
    if (Q == Q0) {
      // p - q*w' with w' = t - w.
      RingElement eps(p - q * F.omega_trace(), q);
      if (abs(F.norm(eps)) != 1) {
        throw std::logic_error("field: continued fraction produced a non-unit");
      }
      return eps;
    }
  }
}

RingElement FieldContext::add(const RingElement& x, const RingElement& y) const {
  return {x.a + y.a, x.b + y.b};
}

RingElement FieldContext::sub(const RingElement& x, const RingElement& y) const {
  return {x.a - y.a, x.b - y.b};
}

RingElement FieldContext::neg(const RingElement& x) const { return {-x.a, -x.b}; }

RingElement FieldContext::mul(const RingElement& x, const RingElement& y) const {
  if (degree_ == 1) return {x.a * y.a, 0};
  const BigInt bb = x.b * y.b;
  return {x.a * y.a + bb * n0_, x.a * y.b + x.b * y.a + bb * t_};
}

RingElement FieldContext::scale(const RingElement& x, const BigInt& s) const {
  return {x.a * s, x.b * s};
}

RingElement FieldContext::conj(const RingElement& x) const {
  if (degree_ == 1) return x;
  // w -> t - w
  return {x.a + x.b * t_, -x.b};
}

RingElement FieldContext::pow(const RingElement& x, unsigned e) const {
  RingElement result(1);
  RingElement base = x;
  while (e) {
    if (e & 1u) result = mul(result, base);
    e >>= 1u;
    if (e) base = mul(base, base);
  }
  return result;
}

BigInt FieldContext::norm(const RingElement& x) const {
  if (degree_ == 1) return x.a;
  return x.a * x.a + x.a * x.b * t_ - x.b * x.b * n0_;
}

BigInt FieldContext::trace(const RingElement& x) const {
  if (degree_ == 1) return x.a;
  return 2 * x.a + x.b * t_;
}

bool FieldContext::divides(const RingElement& y, const RingElement& x, RingElement* quotient) const {
  if (y.is_zero()) throw std::invalid_argument("divides: division by zero");
  if (degree_ == 1) {
    if (x.a % y.a != 0) return false;
    if (quotient) *quotient = RingElement(x.a / y.a, 0);
    return true;
  }
  const BigInt n = norm(y);
  const RingElement num = mul(x, conj(y));
  if (num.a % n != 0 || num.b % n != 0) return false;
  if (quotient) *quotient = RingElement(num.a / n, num.b / n);
  return true;
}

double FieldContext::embed(const RingElement& x, int place) const {
  if (degree_ == 1) return to_double(x.a);
  const double a = to_double(x.a);
  const double b = to_double(x.b);
  const double s1 = a + b * omega1_;
  const double s2 = a + b * omega2_;
  const double mine = place == 0 ? s1 : s2;
  const double other = place == 0 ? s2 : s1;
  if (std::abs(mine) < std::abs(other) && other != 0.0) {
    return to_double(norm(x)) / other;
  }
  return mine;
}

std::vector<double> FieldContext::embed(const RingElement& x) const {
  std::vector<double> out(static_cast<std::size_t>(degree_));
  for (int i = 0; i < degree_; ++i) out[static_cast<std::size_t>(i)] = embed(x, i);
  return out;
}

int FieldContext::sign_at(const RingElement& x, int place) const {
  if (degree_ == 1) return x.a.sign();
  const BigInt q = place == 0 ? x.b : BigInt(-x.b);
  if (t_ == 1) return sign_of_surd(2 * x.a + x.b, q, D_);
  return sign_of_surd(x.a, q, D_);
}

bool FieldContext::totally_positive(const RingElement& x) const {
  for (int i = 0; i < degree_; ++i) {
    if (sign_at(x, i) <= 0) return false;
  }
  return true;
}

RingElement FieldContext::unit_power(long long k) const {
  if (degree_ == 1) return RingElement(1);
  if (k >= 0) return pow(eps_tp_, static_cast<unsigned>(k));
  return pow(conj(eps_tp_), static_cast<unsigned>(-k));
}

std::string FieldContext::format(const RingElement& x) const {
  if (degree_ == 1) return x.a.str();
  if (x.b < 0) return fmt::format("{}-{}*w", x.a.str(), BigInt(-x.b).str());
  return fmt::format("{}+{}*w", x.a.str(), x.b.str());
}

RingElement FieldContext::parse(std::string_view text) const {
  static const std::regex kFull(R"(^\s*(-?\d+)\s*([+-])\s*(\d+)\s*\*\s*w\s*$)");
  static const std::regex kPlain(R"(^\s*(-?\d+)\s*$)");
  const std::string s(text);
  std::smatch m;
  if (std::regex_match(s, m, kPlain)) return RingElement(BigInt(m[1].str()), 0);
  if (degree_ == 2 && std::regex_match(s, m, kFull)) {
    BigInt b(m[3].str());
    if (m[2].str() == "-") b = -b;
    return RingElement(BigInt(m[1].str()), b);
  }
  throw std::invalid_argument(fmt::format("cannot parse ring element '{}'", s));
}

std::string FieldContext::name() const {
  if (degree_ == 1) return "rational";
  return fmt::format("Q(sqrt {})", D_);
}

}  // namespace horolab::nf
