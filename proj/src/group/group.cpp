#include "horolab/group/group.hpp"

#include "horolab/nf/ideal.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace horolab::group {

double Mat2::max_abs() const { return std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)}); }

namespace {

double block_det_error(const Mat2& m) {
  const double s = std::max(1.0, m.max_abs());
  return std::abs(m.det() - 1.0) / (s * s);
}

void require_unimodular(const std::vector<Mat2>& blocks) {
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const double err = block_det_error(blocks[i]);
    if (!(err <= GroupElement::kDetTolerance)) {
      throw std::domain_error(fmt::format("group element: block {} has det {} (relative error {:.3e})", i,
                                          blocks[i].det(), err));
    }
  }
}

}  // namespace

GroupElement GroupElement::identity(int degree) { return GroupElement(std::vector<Mat2>(static_cast<std::size_t>(degree))); }

GroupElement::GroupElement(std::vector<Mat2> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw std::invalid_argument("group element: no places");
  require_unimodular(blocks_);
}

GroupElement GroupElement::inverse() const {
  std::vector<Mat2> out;
  out.reserve(blocks_.size());
  for (const auto& m : blocks_) out.push_back(m.inverse());
  return GroupElement(std::move(out));
}

GroupElement operator*(const GroupElement& x, const GroupElement& y) {
  if (x.degree() != y.degree()) throw std::invalid_argument("group element: degree mismatch in product");
  std::vector<Mat2> out(x.blocks_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = x.blocks_[i] * y.blocks_[i];
  return GroupElement(std::move(out));
}

double GroupElement::det_error() const {
  double e = 0;
  for (const auto& m : blocks_) e = std::max(e, block_det_error(m));
  return e;
}

double GroupElement::normalized_distance(const GroupElement& other) const {
  if (degree() != other.degree()) throw std::invalid_argument("group element: degree mismatch");
  double diff = 0, scale = 1.0;
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const Mat2& p = blocks_[i];
    const Mat2& q = other.blocks_[i];
    diff = std::max({diff, std::abs(p.a - q.a), std::abs(p.b - q.b), std::abs(p.c - q.c), std::abs(p.d - q.d)});
    scale = std::max({scale, p.max_abs(), q.max_abs()});
  }
  return diff / scale;
}

std::string GroupElement::to_json() const {
  std::string s = "[";
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const Mat2& m = blocks_[i];
    s += fmt::format("{}[{:.17g},{:.17g},{:.17g},{:.17g}]", i ? "," : "", m.a, m.b, m.c, m.d);
  }
  return s + "]";
}

GroupElement u(std::span<const double> t) {
  std::vector<Mat2> out;
  for (double x : t) out.push_back({1, x, 0, 1});
  return GroupElement(std::move(out));
}

GroupElement v(std::span<const double> s) {
  std::vector<Mat2> out;
  for (double x : s) out.push_back({1, 0, x, 1});
  return GroupElement(std::move(out));
}

GroupElement a(std::span<const double> y) {
  std::vector<Mat2> out;
  for (double x : y) {
    if (x == 0.0) throw std::invalid_argument("a(y): zero diagonal entry");
    out.push_back({1.0 / x, 0, 0, x});
  }
  return GroupElement(std::move(out));
}

GroupElement a_alpha(const FieldContext& F, const RingElement& y, double alpha) {
  std::vector<double> d(static_cast<std::size_t>(F.degree()));
  for (int i = 0; i < F.degree(); ++i) {
    if (F.sign_at(y, i) <= 0) {
      throw std::invalid_argument(fmt::format("a_alpha: {} is not positive at place {}", F.format(y), i + 1));
    }
    d[static_cast<std::size_t>(i)] = std::pow(F.embed(y, i), alpha);
  }
  return a(d);
}

ExactMatrix multiply(const FieldContext& F, const ExactMatrix& x, const ExactMatrix& y) {
  return {F.add(F.mul(x.a, y.a), F.mul(x.b, y.c)), F.add(F.mul(x.a, y.b), F.mul(x.b, y.d)),
          F.add(F.mul(x.c, y.a), F.mul(x.d, y.c)), F.add(F.mul(x.c, y.b), F.mul(x.d, y.d))};
}

RingElement determinant(const FieldContext& F, const ExactMatrix& M) {
  return F.sub(F.mul(M.a, M.d), F.mul(M.b, M.c));
}

GroupElement realize(const FieldContext& F, const ExactMatrix& M) {
  std::vector<Mat2> out;
  for (int i = 0; i < F.degree(); ++i) {
    out.push_back({F.embed(M.a, i), F.embed(M.b, i), F.embed(M.c, i), F.embed(M.d, i)});
  }
  return GroupElement(std::move(out));
}

std::string to_json(const FieldContext& F, const ExactMatrix& M) {
  return fmt::format(R"({{"a":"{}","b":"{}","c":"{}","d":"{}"}})", F.format(M.a), F.format(M.b), F.format(M.c),
                     F.format(M.d));
}

DualityResult duality_gamma(const FieldContext& F, const RingElement& j, const RingElement& y) {
  if (y.is_zero()) throw std::invalid_argument("duality_gamma: y = 0");
  DualityResult r;
  r.j_inverse = nf::inverse_mod(F, j, y);
  const RingElement& jx = r.j_inverse;
  RingElement corner;
  if (!F.divides(y, F.sub(RingElement(1), F.mul(j, jx)), &corner)) {
    throw std::logic_error("duality_gamma: (1 - j jx) / y is not integral");
  }
  r.gamma = {y, F.neg(j), jx, corner};
  if (determinant(F, r.gamma) != RingElement(1)) throw std::logic_error("duality_gamma: det != 1");

  const ExactMatrix lhs = multiply(F, r.gamma, ExactMatrix{RingElement(1), F.mul(j, y), RingElement(0), F.mul(y, y)});
  r.exact_identity = lhs == ExactMatrix{y, RingElement(0), jx, y};
  if (!r.exact_identity) throw std::logic_error("duality_gamma: scaled identity fails");

  std::vector<double> t, s, ys;
  for (int i = 0; i < F.degree(); ++i) {
    const double sy = F.embed(y, i);
    t.push_back(F.embed(j, i) / sy);
    s.push_back(F.embed(jx, i) / sy);
    ys.push_back(sy);
  }
  const GroupElement left = realize(F, r.gamma) * u(t) * a(ys);
  r.residual = left.normalized_distance(v(s));
  return r;
}

ExactMatrix unit_diagonal(const FieldContext& F, long long k) {
  return {F.unit_power(-k), RingElement(0), RingElement(0), F.unit_power(k)};
}

UnitDecomposition unit_decompose(const FieldContext& F, long long k, double alpha) {
  UnitDecomposition out;
  const double ak = alpha * static_cast<double>(k);
  out.m = std::llround(ak);
  out.f = ak - static_cast<double>(out.m);
  out.gamma = unit_diagonal(F, out.m);
  std::vector<double> d;
  for (int i = 0; i < F.degree(); ++i) d.push_back(std::pow(F.embed(F.totally_positive_unit(), i), out.f));
  out.g = a(d);
  return out;
}

GroupElement cartan_exp(const FieldContext& F, const CartanVector& h) {
  const std::size_t need = static_cast<std::size_t>(F.degree());
  if (h.coeffs.size() != need) throw std::invalid_argument("cartan_exp: wrong number of coefficients");
  std::vector<double> d;
  for (int i = 0; i < F.degree(); ++i) {
    double x = h.coeffs.back();
    if (F.degree() == 2) x += h.coeffs[0] * std::log(F.embed(F.totally_positive_unit(), i));
    d.push_back(std::exp(x));
  }
  return a(d);
}

CartanVector cartan_coordinates(const FieldContext& F, std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(F.degree())) {
    throw std::invalid_argument("cartan_coordinates: wrong number of places");
  }
  if (F.degree() == 1) return {{x[0]}};
  // sigma_2(eps_tp) = 1 / sigma_1(eps_tp), so place logs are +L and -L.
  const double L = F.log_unit();
  return {{(x[0] - x[1]) / (2 * L), (x[0] + x[1]) / 2}};
}

RingElement unit_action_on_parameter(const FieldContext& F, const RingElement& j, const RingElement& y,
                                     long long k) {
  const nf::IdealHNF I = nf::ideal_of(F, y);
  return nf::reduce(F, I, F.mul(F.unit_power(-2 * k), j));
}

}  // namespace horolab::group
