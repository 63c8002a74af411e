#include "horolab/ensembles/ensembles.hpp"

#include "horolab/nf/factor.hpp"
#include "horolab/nf/ideal.hpp"
#include "horolab/util/errors.hpp"
#include "horolab/util/parallel.hpp"
#include "horolab/util/rng.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <span>
#include <stdexcept>

namespace horolab::ensembles {

std::string_view to_string(EnsembleKind k) {
  switch (k) {
    case EnsembleKind::rational: return "rational";
    case EnsembleKind::primitive: return "primitive";
    case EnsembleKind::non_primitive: return "non_primitive";
    case EnsembleKind::horosphere: return "horosphere";
  }
  return "?";
}

void check_guard(const FieldContext& F, const RingElement& y, double alpha) {
  if (y.is_zero() || !F.totally_positive(y)) {
    throw GuardViolation(fmt::format("y = {} is not totally positive", F.format(y)));
  }
  const nf::BigInt n = nf::abs(F.norm(y));
  if (n > 100000000) {
    throw GuardViolation(fmt::format("N(y) = {} exceeds the double-precision limit 1e8", n.str()));
  }
  if (!(alpha > 0.0 && alpha <= 0.75)) {
    throw GuardViolation(fmt::format("alpha = {} outside (0, 3/4]", alpha));
  }
}

namespace {

// Residues of y split by membership in the primes dividing y.
ParameterSet rational_kind(const FieldContext& F, const RingElement& y, double alpha, EnsembleKind kind) {
  check_guard(F, y, alpha);
  ParameterSet ps;
  ps.kind = kind;
  ps.y = y;
  ps.alpha = alpha;
  const nf::IdealHNF I = nf::ideal_of(F, y);
  auto all = nf::residue_representatives(F, I);
  if (kind == EnsembleKind::rational) {
    ps.residues = std::move(all);
    return ps;
  }
  const auto primes = nf::factor_ideal(F, I);
  for (auto& j : all) {
    bool unit = true;
    for (const auto& P : primes) unit = unit && !nf::contains(F, P.ideal, j);
    // The unit ideal has the single residue 0, which counts as invertible.
    if (unit == (kind == EnsembleKind::primitive)) ps.residues.push_back(std::move(j));
  }
  return ps;
}

}  // namespace

ParameterSet rational_parameters(const FieldContext& F, const RingElement& y, double alpha) {
  return rational_kind(F, y, alpha, EnsembleKind::rational);
}

ParameterSet primitive_parameters(const FieldContext& F, const RingElement& y, double alpha) {
  return rational_kind(F, y, alpha, EnsembleKind::primitive);
}

ParameterSet non_primitive_parameters(const FieldContext& F, const RingElement& y, double alpha) {
  return rational_kind(F, y, alpha, EnsembleKind::non_primitive);
}

ParameterSet horosphere_sample(const FieldContext& F, const RingElement& y, double alpha, std::size_t M,
                               std::uint64_t seed) {
  check_guard(F, y, alpha);
  if (M < 1) throw std::invalid_argument("horosphere_sample: M must be positive");
  ParameterSet ps;
  ps.kind = EnsembleKind::horosphere;
  ps.y = y;
  ps.alpha = alpha;
  ps.seed = seed;
  std::mt19937_64 rng(seed);
  ps.points.reserve(M);
  for (std::size_t i = 0; i < M; ++i) {
    const double uu = util::uniform01(rng);
    std::vector<double> t;
    if (F.degree() == 1) {
      t.push_back(uu);
    } else {
      const double vv = util::uniform01(rng);
      for (int p = 0; p < 2; ++p) t.push_back(uu + vv * F.omega_at(p));
    }
    ps.points.push_back(std::move(t));
  }
  return ps;
}

ReferenceMean horosphere_reference_mean(const FieldContext& F, const RingElement& y, double alpha,
                                        const Observable& obs, std::size_t M, std::uint64_t seed) {
  check_guard(F, y, alpha);
  if (M < 2) throw std::invalid_argument("horosphere_reference_mean: M must be at least 2");
  constexpr std::size_t kBatch = 1 << 16;
  std::mt19937_64 rng(seed);
  const GroupElement a = group::a_alpha(F, y, alpha);
  const int d = F.degree();
  std::vector<double> t(kBatch * static_cast<std::size_t>(d)), vals(kBatch);
  double s = 0, s2 = 0;
  for (std::size_t done = 0; done < M;) {
    const std::size_t n = std::min(kBatch, M - done);
    for (std::size_t i = 0; i < n; ++i) {
      const double uu = util::uniform01(rng);
      if (d == 1) {
        t[i] = uu;
      } else {
        const double vv = util::uniform01(rng);
        t[2 * i] = uu + vv * F.omega_at(0);
        t[2 * i + 1] = uu + vv * F.omega_at(1);
      }
    }
    util::parallel_for(n, [&](std::size_t i) {
      const std::span<const double> ti(t.data() + i * static_cast<std::size_t>(d), static_cast<std::size_t>(d));
      vals[i] = lattice::evaluate(obs, group::u(ti) * a, F);
    });
    for (std::size_t i = 0; i < n; ++i) {
      s += vals[i];
      s2 += vals[i] * vals[i];
    }
    done += n;
  }
  ReferenceMean r;
  r.M = M;
  r.mean = s / static_cast<double>(M);
  const double var = std::max(0.0, (s2 - static_cast<double>(M) * r.mean * r.mean) / static_cast<double>(M - 1));
  r.stderr_ = std::sqrt(var / static_cast<double>(M));
  return r;
}

GroupElement realize(const FieldContext& F, const RingElement& j, const RingElement& y, double alpha) {
  std::vector<double> t;
  for (int i = 0; i < F.degree(); ++i) t.push_back(F.embed(j, i) / F.embed(y, i));
  return group::u(t) * group::a_alpha(F, y, alpha);
}

GroupElement realize(const FieldContext& F, const ParameterSet& ps, std::size_t i) {
  if (ps.kind == EnsembleKind::horosphere) return group::u(ps.points[i]) * group::a_alpha(F, ps.y, ps.alpha);
  return realize(F, ps.residues[i], ps.y, ps.alpha);
}

std::vector<double> evaluate_all(const Observable& obs, const ParameterSet& ps, const FieldContext& F) {
  std::vector<double> out(ps.size());
  const GroupElement a = group::a_alpha(F, ps.y, ps.alpha);
  std::vector<double> sy;
  for (int p = 0; p < F.degree(); ++p) sy.push_back(F.embed(ps.y, p));
  util::parallel_for(ps.size(), [&](std::size_t i) {
    std::vector<double> t;
    if (ps.kind == EnsembleKind::horosphere) {
      t = ps.points[i];
    } else {
      for (int p = 0; p < F.degree(); ++p) t.push_back(F.embed(ps.residues[i], p) / sy[static_cast<std::size_t>(p)]);
    }
    out[i] = lattice::evaluate(obs, group::u(t) * a, F);
  });
  return out;
}

EmpiricalDistribution::EmpiricalDistribution(std::string observable, std::vector<double> values)
    : observable_(std::move(observable)), values_(std::move(values)) {
  std::sort(values_.begin(), values_.end());
}

double EmpiricalDistribution::cdf(double x) const {
  if (values_.empty()) return 0.0;
  const auto it = std::upper_bound(values_.begin(), values_.end(), x);
  return static_cast<double>(it - values_.begin()) / static_cast<double>(values_.size());
}

double EmpiricalDistribution::mean() const { return ensembles::mean(values_); }

double ks_distance(const EmpiricalDistribution& A, const EmpiricalDistribution& B) {
  if (A.observable() != B.observable()) {
    throw std::invalid_argument(fmt::format("ks_distance: observables differ ({} vs {})", A.observable(), B.observable()));
  }
  if (A.count() == 0 || B.count() == 0) throw std::invalid_argument("ks_distance: empty sample");
  const auto& a = A.values();
  const auto& b = B.values();
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0;
  // Step through distinct values; both CDFs jump at ties together.
  while (i < a.size() || j < b.size()) {
    double x;
    if (j == b.size() || (i < a.size() && a[i] <= b[j])) {
      x = a[i];
    } else {
      x = b[j];
    }
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double standard_error(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
}

ConvexCombination convex_combination_check(const std::vector<double>& rational, const std::vector<double>& primitive,
                                           const std::vector<double>& non_primitive) {
  ConvexCombination c;
  c.n_rational = rational.size();
  c.n_primitive = primitive.size();
  c.n_non_primitive = non_primitive.size();
  if (c.n_primitive + c.n_non_primitive != c.n_rational) {
    throw std::logic_error("convex_combination_check: partition sizes do not add up");
  }
  c.mean_rational = mean(rational);
  c.mean_primitive = mean(primitive);
  c.mean_non_primitive = mean(non_primitive);
  const double N = static_cast<double>(c.n_rational);
  const double rhs = (static_cast<double>(c.n_primitive) / N) * c.mean_primitive +
                     (static_cast<double>(c.n_non_primitive) / N) * c.mean_non_primitive;
  c.residual = std::abs(c.mean_rational - rhs) / std::max(1.0, std::abs(c.mean_rational));
  return c;
}

ConvexCombination convex_combination_check(const FieldContext& F, const RingElement& y, double alpha,
                                           const Observable& obs) {
  const auto r = evaluate_all(obs, rational_parameters(F, y, alpha), F);
  const auto p = evaluate_all(obs, primitive_parameters(F, y, alpha), F);
  const auto n = evaluate_all(obs, non_primitive_parameters(F, y, alpha), F);
  return convex_combination_check(r, p, n);
}

std::vector<std::size_t> unit_permutation(const FieldContext& F, const ParameterSet& primitive) {
  if (primitive.kind != EnsembleKind::primitive) throw std::invalid_argument("unit_permutation: needs primitive parameters");
  const nf::IdealHNF I = nf::ideal_of(F, primitive.y);
  const std::size_t N = I.norm().convert_to<std::size_t>();
  constexpr std::size_t kMissing = static_cast<std::size_t>(-1);
  std::vector<std::size_t> slot(N, kMissing);
  for (std::size_t i = 0; i < primitive.residues.size(); ++i) slot[nf::residue_index(F, I, primitive.residues[i])] = i;
  const RingElement step = F.unit_power(-2);
  std::vector<std::size_t> perm(primitive.residues.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    const RingElement image = nf::reduce(F, I, F.mul(step, primitive.residues[i]));
    const std::size_t s = slot[nf::residue_index(F, I, image)];
    if (s == kMissing) throw std::logic_error("unit_permutation: image is not a primitive residue");
    perm[i] = s;
  }
  return perm;
}

std::vector<double> discrepancy_values(const std::vector<std::size_t>& perm, const std::vector<double>& values,
                                       int K, double E_ref) {
  if (K < 1) throw std::invalid_argument("discrepancy: K must be at least 1");
  if (perm.size() != values.size()) throw std::invalid_argument("discrepancy: size mismatch");
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    double s = 0;
    std::size_t at = i;
    for (int k = 0; k < K; ++k) {
      s += values[at];
      at = perm[at];
    }
    out[i] = s / K - E_ref;
  }
  return out;
}

DiscrepancyReport discrepancy_DK(const FieldContext& F, const ParameterSet& primitive,
                                 const std::vector<double>& values, const std::vector<int>& Ks, double E_ref,
                                 double E_ref_stderr) {
  if (F.degree() == 1) throw std::invalid_argument("discrepancy_DK: no unit of infinite order over Q");
  const auto perm = unit_permutation(F, primitive);
  DiscrepancyReport rep;
  rep.E_ref = E_ref;
  rep.E_ref_stderr = E_ref_stderr;
  for (int K : Ks) {
    auto d = discrepancy_values(perm, values, K, E_ref);
    double s = 0;
    for (double x : d) s += x * x;
    rep.Ks.push_back(K);
    rep.l2_mean.push_back(std::sqrt(s / static_cast<double>(d.size())));
    for (double& x : d) x = std::abs(x);
    std::sort(d.begin(), d.end());
    const std::size_t n = d.size();
    rep.median_abs.push_back(n % 2 ? d[n / 2] : 0.5 * (d[n / 2 - 1] + d[n / 2]));
  }
  return rep;
}

std::size_t reference_size(std::size_t phi) { return std::max<std::size_t>(10000, 10 * phi); }

}  // namespace horolab::ensembles
