#include "horolab/lattice/lattice.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <regex>
#include <stdexcept>

namespace horolab::lattice {

ZLattice::ZLattice(int dim, std::vector<double> rows) : dim_(dim), rows_(std::move(rows)) {
  if (dim_ <= 0 || rows_.size() != static_cast<std::size_t>(dim_ * dim_)) {
    throw std::invalid_argument("ZLattice: basis must be square");
  }
}

double ZLattice::det() const {
  std::vector<double> m = rows_;
  const int n = dim_;
  double det = 1.0;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(m[r * n + col]) > std::abs(m[piv * n + col])) piv = r;
    }
    if (m[piv * n + col] == 0.0) return 0.0;
    if (piv != col) {
      for (int c = 0; c < n; ++c) std::swap(m[piv * n + c], m[col * n + c]);
      det = -det;
    }
    const double p = m[col * n + col];
    det *= p;
    for (int r = col + 1; r < n; ++r) {
      const double f = m[r * n + col] / p;
      for (int c = col; c < n; ++c) m[r * n + c] -= f * m[col * n + c];
    }
  }
  return det;
}

ZLattice ZLattice::scaled(double c) const {
  std::vector<double> r = rows_;
  for (double& x : r) x *= c;
  return ZLattice(dim_, std::move(r));
}

ZLattice olattice(const GroupElement& g, const FieldContext& F) {
  const int d = F.degree();
  if (g.degree() != d) throw std::invalid_argument("olattice: group element degree differs from field degree");
  const int n = 2 * d;
  std::vector<double> rows(static_cast<std::size_t>(n * n), 0.0);
  // Basis of o as a Z-module, evaluated at each place.
  std::vector<std::vector<double>> zb(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    zb[i].push_back(1.0);
    if (d == 2) zb[i].push_back(F.omega_at(i));
  }
  int r = 0;
  for (int e = 0; e < 2; ++e) {
    for (int b = 0; b < d; ++b, ++r) {
      for (int i = 0; i < d; ++i) {
        const Mat2& m = g.place(i);
        const double s = zb[i][b];
        // (s e_1 or s e_2) as a row vector times the block.
        const double x = e == 0 ? s * m.a : s * m.c;
        const double y = e == 0 ? s * m.b : s * m.d;
        rows[static_cast<std::size_t>(r * n + 2 * i)] = x;
        rows[static_cast<std::size_t>(r * n + 2 * i + 1)] = y;
      }
    }
  }
  return ZLattice(n, std::move(rows));
}

namespace {

struct GramSchmidt {
  std::vector<double> mu;     // n x n, lower triangle
  std::vector<double> bstar;  // squared norms
};

double dot(const ZLattice& L, int i, const std::vector<double>& v, int j) {
  const int n = L.dim();
  double s = 0;
  for (int c = 0; c < n; ++c) s += L.at(i, c) * v[static_cast<std::size_t>(j * n + c)];
  return s;
}

GramSchmidt gram_schmidt(const ZLattice& L) {
  const int n = L.dim();
  GramSchmidt gs;
  gs.mu.assign(static_cast<std::size_t>(n * n), 0.0);
  gs.bstar.assign(static_cast<std::size_t>(n), 0.0);
  std::vector<double> star(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < n; ++c) star[static_cast<std::size_t>(i * n + c)] = L.at(i, c);
    for (int j = 0; j < i; ++j) {
      const double m = dot(L, i, star, j) / gs.bstar[static_cast<std::size_t>(j)];
      gs.mu[static_cast<std::size_t>(i * n + j)] = m;
      for (int c = 0; c < n; ++c) {
        star[static_cast<std::size_t>(i * n + c)] -= m * star[static_cast<std::size_t>(j * n + c)];
      }
    }
    double s = 0;
    for (int c = 0; c < n; ++c) s += star[static_cast<std::size_t>(i * n + c)] * star[static_cast<std::size_t>(i * n + c)];
    gs.bstar[static_cast<std::size_t>(i)] = s;
  }
  return gs;
}

double vec_norm(const std::vector<double>& v, Norm norm) {
  if (norm == Norm::euclidean) {
    double s = 0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
  }
  double m = 0;
  for (std::size_t i = 0; i + 1 < v.size(); i += 2) m = std::max(m, std::hypot(v[i], v[i + 1]));
  return m;
}

std::vector<double> row(const ZLattice& L, int i) {
  std::vector<double> v(static_cast<std::size_t>(L.dim()));
  for (int c = 0; c < L.dim(); ++c) v[static_cast<std::size_t>(c)] = L.at(i, c);
  return v;
}

}  // namespace

ZLattice lll_reduce(const ZLattice& L, double delta, std::vector<std::int64_t>* transform) {
  const int n = L.dim();
  ZLattice B = L;
  std::vector<std::int64_t> U(static_cast<std::size_t>(n * n), 0);
  for (int i = 0; i < n; ++i) U[static_cast<std::size_t>(i * n + i)] = 1;
  auto sub_row = [&](int k, int j, double q) {
    for (int c = 0; c < n; ++c) B.at(k, c) -= q * B.at(j, c);
    const auto qi = static_cast<std::int64_t>(q);
    for (int c = 0; c < n; ++c) U[static_cast<std::size_t>(k * n + c)] -= qi * U[static_cast<std::size_t>(j * n + c)];
  };
  auto swap_rows = [&](int k, int j) {
    for (int c = 0; c < n; ++c) {
      std::swap(B.at(k, c), B.at(j, c));
      std::swap(U[static_cast<std::size_t>(k * n + c)], U[static_cast<std::size_t>(j * n + c)]);
    }
  };

  int k = 1;
  for (int iter = 0; k < n; ++iter) {
    if (iter > 100000) throw std::runtime_error("lll_reduce: no convergence");
    GramSchmidt gs = gram_schmidt(B);
    for (int j = k - 1; j >= 0; --j) {
      const double q = std::round(gs.mu[static_cast<std::size_t>(k * n + j)]);
      if (q == 0.0) continue;
      if (std::abs(q) > 4e18) throw std::runtime_error("lll_reduce: coefficient overflow");
      sub_row(k, j, q);
      for (int i = 0; i < j; ++i) gs.mu[static_cast<std::size_t>(k * n + i)] -= q * gs.mu[static_cast<std::size_t>(j * n + i)];
      gs.mu[static_cast<std::size_t>(k * n + j)] -= q;
    }
    const double m = gs.mu[static_cast<std::size_t>(k * n + k - 1)];
    // bstar[k] is unchanged by size reduction.
    if (gs.bstar[static_cast<std::size_t>(k)] >= (delta - m * m) * gs.bstar[static_cast<std::size_t>(k - 1)]) {
      ++k;
    } else {
      swap_rows(k, k - 1);
      k = std::max(k - 1, 1);
    }
  }
  if (transform) *transform = std::move(U);
  return B;
}

ShortestVector shortest_vector(const ZLattice& L, Norm norm) {
  const int n = L.dim();
  if (!(std::abs(L.det()) >= 1e-12)) throw std::domain_error("shortest_vector: degenerate basis");
  std::vector<std::int64_t> U;
  const ZLattice R = lll_reduce(L, 0.99, &U);
  const GramSchmidt gs = gram_schmidt(R);

  double bound = vec_norm(row(R, 0), norm);
  for (int i = 1; i < n; ++i) bound = std::min(bound, vec_norm(row(R, i), norm));
  // A sup-place minimizer has Euclidean length at most sqrt(d) times its sup length.
  const double euclid_radius =
      (norm == Norm::euclidean ? bound : bound * std::sqrt(static_cast<double>(n / 2))) * (1 + 1e-9);
  const double r2 = euclid_radius * euclid_radius;

  ShortestVector best;
  best.length = HUGE_VAL;
  std::vector<std::int64_t> x(static_cast<std::size_t>(n), 0);
  std::vector<double> v(static_cast<std::size_t>(n));
  std::vector<std::int64_t> orig(static_cast<std::size_t>(n));

  auto consider = [&]() {
    bool zero = true;
    for (auto xi : x) zero = zero && xi == 0;
    if (zero) return;
    std::fill(v.begin(), v.end(), 0.0);
    std::fill(orig.begin(), orig.end(), 0);
    for (int i = 0; i < n; ++i) {
      const auto xi = x[static_cast<std::size_t>(i)];
      if (xi == 0) continue;
      for (int c = 0; c < n; ++c) {
        v[static_cast<std::size_t>(c)] += static_cast<double>(xi) * R.at(i, c);
        orig[static_cast<std::size_t>(c)] += xi * U[static_cast<std::size_t>(i * n + c)];
      }
    }
    const double len = vec_norm(v, norm);
    const double tol = 1e-12 * std::max(len, best.length == HUGE_VAL ? len : best.length);
    if (len < best.length - tol || (std::abs(len - best.length) <= tol && orig > best.coeffs)) {
      best.length = len;
      best.coeffs = orig;
      best.vector = v;
    }
  };

  auto recurse = [&](auto&& self, int i, double partial) -> void {
    if (i < 0) {
      consider();
      return;
    }
    double c = 0;
    for (int j = i + 1; j < n; ++j) c -= static_cast<double>(x[static_cast<std::size_t>(j)]) * gs.mu[static_cast<std::size_t>(j * n + i)];
    const double rem = r2 - partial;
    if (rem < 0) return;
    const double w = std::sqrt(rem / gs.bstar[static_cast<std::size_t>(i)]);
    const auto lo = static_cast<std::int64_t>(std::ceil(c - w));
    const auto hi = static_cast<std::int64_t>(std::floor(c + w));
    for (std::int64_t xi = lo; xi <= hi; ++xi) {
      x[static_cast<std::size_t>(i)] = xi;
      const double dlt = static_cast<double>(xi) - c;
      self(self, i - 1, partial + dlt * dlt * gs.bstar[static_cast<std::size_t>(i)]);
    }
    x[static_cast<std::size_t>(i)] = 0;
  };
  recurse(recurse, n - 1, 0.0);
  if (best.coeffs.empty()) throw std::logic_error("shortest_vector: enumeration found nothing");
  return best;
}

ReducedPoint reduce_sl2z(const Mat2& g0) {
  if (!(std::abs(g0.det() - 1.0) <= 1e-9)) {
    throw std::domain_error(fmt::format("reduce_sl2z: det = {} is not 1", g0.det()));
  }
  Mat2 g = g0;
  auto point = [&](double& x, double& y) {
    // (a i + b) / (c i + d)
    const double den = g.c * g.c + g.d * g.d;
    x = (g.a * g.c + g.b * g.d) / den;
    y = 1.0 / den;
  };
  double x = 0, y = 0;
  for (int iter = 0; iter < 100000; ++iter) {
    point(x, y);
    const double n = std::round(x);
    if (n != 0.0) {
      g = Mat2{g.a - n * g.c, g.b - n * g.d, g.c, g.d};
      point(x, y);
    }
    if (x * x + y * y >= 1.0 - 1e-12) {
      return {x, y, std::atan2(g.c, g.d)};
    }
    g = Mat2{-g.c, -g.d, g.a, g.b};
  }
  throw std::runtime_error("reduce_sl2z: no convergence");
}

std::string Observable::name() const {
  switch (kind) {
    case ObservableKind::alpha1: return "alpha1";
    case ObservableKind::alpha1_sup: return "alpha1_sup";
    case ObservableKind::gauss: return fmt::format("gauss_{:g}", param);
    case ObservableKind::cusp: return fmt::format("cusp_{:g}", param);
    case ObservableKind::im: return "im";
  }
  return "?";
}

Observable Observable::parse(const std::string& name) {
  if (name == "alpha1") return {ObservableKind::alpha1, 0};
  if (name == "alpha1_sup") return {ObservableKind::alpha1_sup, 0};
  if (name == "im") return {ObservableKind::im, 0};
  static const std::regex kParam(R"(^(gauss|cusp)_([0-9]*\.?[0-9]+)$)");
  std::smatch m;
  if (std::regex_match(name, m, kParam)) {
    const double p = std::stod(m[2].str());
    if (p > 0) return {m[1].str() == "gauss" ? ObservableKind::gauss : ObservableKind::cusp, p};
  }
  throw std::invalid_argument(fmt::format("unknown observable '{}'", name));
}

double evaluate(const Observable& obs, const GroupElement& g, const FieldContext& F) {
  switch (obs.kind) {
    case ObservableKind::alpha1: return shortest_vector(olattice(g, F), Norm::euclidean).length;
    case ObservableKind::alpha1_sup: return shortest_vector(olattice(g, F), Norm::sup_place).length;
    case ObservableKind::gauss: {
      const double l = shortest_vector(olattice(g, F), Norm::euclidean).length;
      return std::exp(-(l * l) / (obs.param * obs.param));
    }
    case ObservableKind::cusp:
    case ObservableKind::im: {
      if (F.degree() != 1) throw std::invalid_argument(fmt::format("observable {} needs the rational field", obs.name()));
      const ReducedPoint p = reduce_sl2z(g.place(0));
      return obs.kind == ObservableKind::im ? p.y : (p.y > obs.param ? 1.0 : 0.0);
    }
  }
  throw std::logic_error("evaluate: unknown observable");
}

}  // namespace horolab::lattice
