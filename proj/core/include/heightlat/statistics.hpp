#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "heightlat/height_function.hpp"
#include "heightlat/oracle.hpp"
#include "heightlat/rational.hpp"
#include "heightlat/sampler.hpp"

namespace heightlat {

/// Sampled law of an integer statistic.
class EmpiricalDistribution {
 public:
  void add(Height value, std::uint64_t count = 1);
  void merge(const EmpiricalDistribution& other);

  const std::map<Height, std::uint64_t>& counts() const noexcept { return counts_; }
  std::uint64_t size() const noexcept { return n_; }
  bool empty() const noexcept { return n_ == 0; }

  /// Seeds of the samples, so a run can be reproduced.
  std::vector<std::uint64_t>& seeds() noexcept { return seeds_; }
  const std::vector<std::uint64_t>& seeds() const noexcept { return seeds_; }

  double probability(Height value) const;
  Rational exact_probability(Height value) const;
  /// P(X <= t).
  double cdf(Height t) const;
  double mean() const;
  /// Unbiased sample variance.
  double variance() const;
  /// Large-sample standard error of variance().
  double variance_se() const;

  EmpiricalDistribution absolute() const;

 private:
  std::map<Height, std::uint64_t> counts_;
  std::uint64_t n_ = 0;
  std::vector<std::uint64_t> seeds_;
};

/// φ(x) = max(0, max over terms of weight · 1{x_s >= t_s for every (s, t_s)}),
/// evaluated on |x|. Nondecreasing in every coordinate by construction.
struct MonotoneTerm {
  std::int64_t weight = 1;
  std::vector<std::pair<SiteIndex, Height>> thresholds;
};

class MonotoneFunction {
 public:
  MonotoneFunction() = default;
  explicit MonotoneFunction(std::vector<MonotoneTerm> terms) : terms_(std::move(terms)) {}

  /// A single term weight · 1{|x_s| >= t}.
  static MonotoneFunction indicator(SiteIndex s, Height t, std::int64_t weight = 1);
  /// |x_s| itself, as a sum-free max of indicators up to `cap`.
  static MonotoneFunction absolute_value(SiteIndex s, Height cap);

  std::int64_t operator()(std::span<const Height> x) const;
  const std::vector<MonotoneTerm>& terms() const noexcept { return terms_; }

 private:
  std::vector<MonotoneTerm> terms_;
};

struct MonotonePairOptions {
  int max_terms = 3;
  int max_sites_per_term = 3;
  Height max_threshold = 4;
  std::int64_t max_weight = 5;
};

/// `count` random (φ, ψ) pairs with thresholds on interior sites.
std::vector<std::pair<MonotoneFunction, MonotoneFunction>> random_monotone_pairs(
    const LatticeDomain& domain, std::size_t count, std::uint64_t seed,
    const MonotonePairOptions& options = {});

struct CovarianceResult {
  Rational exact;    // exact mode only
  double value = 0;  // covariance as a double in both modes
  double se = 0;     // empirical mode only
  bool ok = false;   // exact >= 0, or value >= −3·se
};

/// Exact Cov(φ(|f|), ψ(|f|)) under the uniform measure with zero boundary.
/// Throws BoundaryNotEven if ∂◦Λ has an odd vertex and PreconditionViolation
/// if τ is not identically zero.
std::vector<CovarianceResult> fkg_check_abs_exact(
    const BoundaryCondition& tau,
    std::span<const std::pair<MonotoneFunction, MonotoneFunction>> pairs,
    const EnumerationLimits& limits = {});

std::vector<CovarianceResult> fkg_check_abs_empirical(
    std::span<const HeightFunction> samples,
    std::span<const std::pair<MonotoneFunction, MonotoneFunction>> pairs);

struct DominationViolation {
  Vertex vertex;
  Height threshold;
  double inner_cdf;
  double outer_cdf;
};

struct DominationReport {
  std::size_t comparisons = 0;
  std::vector<DominationViolation> violations;
  /// Largest P_outer(|f| <= t) − P_inner(|f| <= t) seen (minus the band in
  /// empirical mode).
  double worst_excess = 0;
  bool ok() const noexcept { return violations.empty(); }
};

/// Checks P(|g₂(v)| <= t) <= P(|g₁(v)| <= t) for every v ∈ Λ₁+ and t, with
/// g_i uniform on Λ_i under zero boundary. Throws NotNested unless Λ₁ ⊆ Λ₂
/// and BoundaryNotEven unless both boundaries are even.
DominationReport domination_check_abs_exact(const DomainPtr& inner, const DomainPtr& outer,
                                            const EnumerationLimits& limits = {});

/// Sampled version: a violation needs the CDF excess to exceed the sum of
/// the two DKW half-widths at level alpha.
DominationReport domination_check_abs_empirical(std::span<const HeightFunction> inner,
                                                std::span<const HeightFunction> outer,
                                                double alpha = 1e-3);

/// DKW half-width sqrt(ln(2/α) / (2n)).
double dkw_half_width(std::uint64_t n, double alpha);

struct LogConcavityReport {
  bool ok = true;
  /// Smallest P(m)² / (P(m+2k) P(m−2k)) over pairs with a positive
  /// denominator; +inf when there is none.
  double worst_ratio = 0;
  Height worst_m = 0;
  int worst_k = 0;
};

/// P(m)² >= P(m+2k) P(m−2k) for all m, k over the parity class of the
/// support, in exact integer arithmetic. Throws ParityMixedSupport.
LogConcavityReport log_concavity_check(const ExactDistribution& dist);

/// Same inequality with a z·SE allowance (delta method, multinomial
/// covariance).
LogConcavityReport log_concavity_check(const EmpiricalDistribution& dist, double z = 3.0);

struct DelocalizationQuantities {
  Rational theta;  // P(f(0) = 0)
  int m_hat = 0;   // min{n even >= 2 : P(n) < θ/2} / 2
  bool bound_holds = false;  // m̂ < 2/θ
  /// (M, P(|f| > M)) for M = 0, 1, ..., max |value|.
  std::vector<std::pair<Height, double>> tail;
};

/// Throws PreconditionViolation if P(0) = 0.
DelocalizationQuantities delocalization_quantities(const ExactDistribution& dist);
DelocalizationQuantities delocalization_quantities(const EmpiricalDistribution& dist);

/// Fraction of interior sites carrying each height.
std::map<Height, double> value_frequencies(const HeightFunction& h);

struct LinearFit {
  double slope = 0;
  double intercept = 0;
  double r2 = 0;
  double slope_se = 0;
};

/// Ordinary least squares y = intercept + slope · x. Needs two distinct x.
LinearFit ols_fit(std::span<const double> x, std::span<const double> y);

struct ChiSquareResult {
  double statistic = 0;
  int dof = 0;
  double p_value = 1;
};

/// Pearson goodness of fit of observed counts against cell probabilities.
ChiSquareResult chi_square_gof(std::span<const std::uint64_t> observed,
                               std::span<const double> expected);

struct VariancePoint {
  int L = 0;
  double variance = 0;
  double se = 0;
  std::uint64_t n = 0;
  bool exact = false;
  std::uint64_t seed_group = 0;
  EmpiricalDistribution distribution;  // sampled points only
  std::int64_t max_horizon = 0;
  double mean_horizon = 0;
  double seconds = 0;
};

struct VarianceCurve {
  std::size_t dimension = 2;
  std::vector<VariancePoint> points;  // exact anchor first, then Ls in order
  LinearFit fit;                      // Var against ln L over the sampled points
};

struct VarianceGrowthOptions {
  std::size_t samples = 2000;
  std::uint64_t seed = 1;
  std::size_t threads = 0;
  bool exact_anchor = true;  // prepend the exact L = 1 point
  CftpOptions cftp;
  /// Start each L at suggested_initial_horizon instead of cftp.initial_horizon.
  bool suggested_horizons = true;
  std::function<void(const VariancePoint&)> on_point;
};

/// Var(f_L(0)) under zero boundary for each L, from independent CFTP samples.
/// Throws PreconditionViolation unless the Ls are odd and strictly increasing.
VarianceCurve variance_growth(std::span<const int> Ls, std::size_t dimension,
                              const VarianceGrowthOptions& options);

/// Consecutive sampled variances increase and their one-SE bands are disjoint.
bool strictly_increasing_beyond_se(const VarianceCurve& curve);

}  // namespace heightlat
