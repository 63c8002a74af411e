#pragma once

#include "horolab/lattice/lattice.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace horolab::ensembles {

using group::GroupElement;
using lattice::Observable;
using nf::FieldContext;
using nf::RingElement;

enum class EnsembleKind { rational, primitive, non_primitive, horosphere };

std::string_view to_string(EnsembleKind k);

/// Points u(t) a_alpha(y): residues j (t = sigma j / sigma y) for the three
/// rational kinds, explicit real vectors t for horosphere samples.
struct ParameterSet {
  EnsembleKind kind = EnsembleKind::rational;
  RingElement y{1};
  double alpha = 0.5;
  std::vector<RingElement> residues;
  std::vector<std::vector<double>> points;
  std::uint64_t seed = 0;

  std::size_t size() const { return kind == EnsembleKind::horosphere ? points.size() : residues.size(); }
};

/// Throws GuardViolation unless y is totally positive with |N(y)| <= 1e8 and
/// 0 < alpha <= 3/4.
void check_guard(const FieldContext& F, const RingElement& y, double alpha);

ParameterSet rational_parameters(const FieldContext& F, const RingElement& y, double alpha);
ParameterSet primitive_parameters(const FieldContext& F, const RingElement& y, double alpha);
ParameterSet non_primitive_parameters(const FieldContext& F, const RingElement& y, double alpha);

/// M points t = u sigma(1) + v sigma(w), (u, v) uniform in [0,1)^2 (over Q
/// just t = u), drawn from mt19937_64(seed).
ParameterSet horosphere_sample(const FieldContext& F, const RingElement& y, double alpha, std::size_t M,
                               std::uint64_t seed);

struct ReferenceMean {
  std::size_t M = 0;
  double mean = 0;
  double stderr_ = 0;
};

/// Mean and standard error of `obs` over horosphere_sample(F, y, alpha, M, seed)
/// without holding the points: the same draws are evaluated in batches.
ReferenceMean horosphere_reference_mean(const FieldContext& F, const RingElement& y, double alpha,
                                        const Observable& obs, std::size_t M, std::uint64_t seed);

/// u(sigma j / sigma y) a_alpha(y).
GroupElement realize(const FieldContext& F, const RingElement& j, const RingElement& y, double alpha);
GroupElement realize(const FieldContext& F, const ParameterSet& ps, std::size_t i);

/// Observable at every point, in parameter order.
std::vector<double> evaluate_all(const Observable& obs, const ParameterSet& ps, const FieldContext& F);

class EmpiricalDistribution {
 public:
  EmpiricalDistribution(std::string observable, std::vector<double> values);

  const std::string& observable() const { return observable_; }
  const std::vector<double>& values() const { return values_; }  // ascending
  std::size_t count() const { return values_.size(); }
  /// Right-continuous: fraction of values <= x.
  double cdf(double x) const;
  double mean() const;

 private:
  std::string observable_;
  std::vector<double> values_;
};

/// Two-sample Kolmogorov-Smirnov statistic. Throws std::invalid_argument for
/// different observables or an empty sample.
double ks_distance(const EmpiricalDistribution& A, const EmpiricalDistribution& B);

struct ConvexCombination {
  std::size_t n_rational = 0, n_primitive = 0, n_non_primitive = 0;
  double mean_rational = 0, mean_primitive = 0, mean_non_primitive = 0;
  /// |mean_rational - (phi/N) mean_primitive - ((N-phi)/N) mean_non_primitive| / max(1, |mean_rational|)
  double residual = 0;
};

/// Evaluates the three rational ensembles independently and compares means.
ConvexCombination convex_combination_check(const FieldContext& F, const RingElement& y, double alpha,
                                           const Observable& obs);
/// Same identity from values already computed for each ensemble.
ConvexCombination convex_combination_check(const std::vector<double>& rational, const std::vector<double>& primitive,
                                           const std::vector<double>& non_primitive);

/// Position of unit_action_on_parameter(residues[i], y, 1) within `residues`
/// (the primitive parameters of y).
std::vector<std::size_t> unit_permutation(const FieldContext& F, const ParameterSet& primitive);

struct DiscrepancyReport {
  std::vector<int> Ks;
  std::vector<double> l2_mean;     // sqrt(mean_x D_K f(x)^2)
  std::vector<double> median_abs;  // median_x |D_K f(x)|
  double E_ref = 0;
  double E_ref_stderr = 0;
};

/// D_K f(x) = (1/K) sum_{k<K} f(x a(eps_tp)^-k) - E_ref over the primitive
/// points x, following the exact residue orbit j -> eps_tp^-2 j. `values` are
/// f at the primitive parameters. Throws std::invalid_argument for K < 1 or over Q.
DiscrepancyReport discrepancy_DK(const FieldContext& F, const ParameterSet& primitive,
                                 const std::vector<double>& values, const std::vector<int>& Ks, double E_ref,
                                 double E_ref_stderr = 0.0);

/// Pointwise D_K f for a single K.
std::vector<double> discrepancy_values(const std::vector<std::size_t>& perm, const std::vector<double>& values,
                                       int K, double E_ref);

/// Reference mean sample size max(10^4, 10 phi).
std::size_t reference_size(std::size_t phi);

double mean(const std::vector<double>& v);
/// Standard error of the mean.
double standard_error(const std::vector<double>& v);

}  // namespace horolab::ensembles
