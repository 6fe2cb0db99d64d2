#include "heightlat/statistics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>

#include <boost/math/distributions/chi_squared.hpp>

namespace heightlat {

// ---------------------------------------------------------------------------
// EmpiricalDistribution

void EmpiricalDistribution::add(Height value, std::uint64_t count) {
  if (count == 0) return;
  counts_[value] += count;
  n_ += count;
}

void EmpiricalDistribution::merge(const EmpiricalDistribution& other) {
  for (const auto& [v, c] : other.counts_) add(v, c);
  seeds_.insert(seeds_.end(), other.seeds_.begin(), other.seeds_.end());
}

double EmpiricalDistribution::probability(Height value) const {
  if (n_ == 0) return 0.0;
  auto it = counts_.find(value);
  return it == counts_.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(n_);
}

Rational EmpiricalDistribution::exact_probability(Height value) const {
  if (n_ == 0) return Rational(0);
  auto it = counts_.find(value);
  if (it == counts_.end()) return Rational(0);
  return Rational(BigInt(it->second), BigInt(n_));
}

double EmpiricalDistribution::cdf(Height t) const {
  if (n_ == 0) return 0.0;
  std::uint64_t below = 0;
  for (const auto& [v, c] : counts_) {
    if (v > t) break;
    below += c;
  }
  return static_cast<double>(below) / static_cast<double>(n_);
}

double EmpiricalDistribution::mean() const {
  if (n_ == 0) return 0.0;
  double s = 0;
  for (const auto& [v, c] : counts_) s += static_cast<double>(v) * static_cast<double>(c);
  return s / static_cast<double>(n_);
}

double EmpiricalDistribution::variance() const {
  if (n_ < 2) return 0.0;
  const double mu = mean();
  double s = 0;
  for (const auto& [v, c] : counts_) {
    const double d = v - mu;
    s += d * d * static_cast<double>(c);
  }
  return s / static_cast<double>(n_ - 1);
}

double EmpiricalDistribution::variance_se() const {
  if (n_ < 2) return 0.0;
  const double mu = mean();
  const double n = static_cast<double>(n_);
  double m2 = 0, m4 = 0;
  for (const auto& [v, c] : counts_) {
    const double d2 = (v - mu) * (v - mu);
    m2 += d2 * static_cast<double>(c);
    m4 += d2 * d2 * static_cast<double>(c);
  }
  m2 /= n;
  m4 /= n;
  return std::sqrt(std::max(0.0, m4 - m2 * m2) / n);
}

EmpiricalDistribution EmpiricalDistribution::absolute() const {
  EmpiricalDistribution out;
  for (const auto& [v, c] : counts_) out.add(v < 0 ? -v : v, c);
  out.seeds_ = seeds_;
  return out;
}

// ---------------------------------------------------------------------------
// Monotone test functions

MonotoneFunction MonotoneFunction::indicator(SiteIndex s, Height t, std::int64_t weight) {
  return MonotoneFunction({MonotoneTerm{weight, {{s, t}}}});
}

MonotoneFunction MonotoneFunction::absolute_value(SiteIndex s, Height cap) {
  std::vector<MonotoneTerm> terms;
  for (Height t = 1; t <= cap; ++t) terms.push_back(MonotoneTerm{t, {{s, t}}});
  return MonotoneFunction(std::move(terms));
}

std::int64_t MonotoneFunction::operator()(std::span<const Height> x) const {
  std::int64_t best = 0;
  for (const MonotoneTerm& term : terms_) {
    if (term.weight <= best) continue;
    bool fires = true;
    for (const auto& [s, t] : term.thresholds) {
      const Height a = x[s] < 0 ? -x[s] : x[s];
      if (a < t) {
        fires = false;
        break;
      }
    }
    if (fires) best = term.weight;
  }
  return best;
}

std::vector<std::pair<MonotoneFunction, MonotoneFunction>> random_monotone_pairs(
    const LatticeDomain& domain, std::size_t count, std::uint64_t seed,
    const MonotonePairOptions& options) {
  if (domain.num_interior() == 0) throw PreconditionViolation("domain has no interior sites");
  std::mt19937_64 gen(seed);
  auto uniform_int = [&](std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(gen);
  };
  auto make = [&] {
    std::vector<MonotoneTerm> terms(static_cast<std::size_t>(uniform_int(1, options.max_terms)));
    for (auto& term : terms) {
      term.weight = uniform_int(1, options.max_weight);
      const auto sites = uniform_int(1, options.max_sites_per_term);
      for (std::int64_t i = 0; i < sites; ++i) {
        const auto s = static_cast<SiteIndex>(
            uniform_int(0, static_cast<std::int64_t>(domain.num_interior()) - 1));
        term.thresholds.emplace_back(s, static_cast<Height>(uniform_int(1, options.max_threshold)));
      }
    }
    return MonotoneFunction(std::move(terms));
  };
  std::vector<std::pair<MonotoneFunction, MonotoneFunction>> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    MonotoneFunction phi = make();
    MonotoneFunction psi = make();
    out.emplace_back(std::move(phi), std::move(psi));
  }
  return out;
}

// ---------------------------------------------------------------------------
// FKG

namespace {

void require_zero_even(const BoundaryCondition& tau) {
  if (!tau.domain().boundary_is_even()) {
    throw BoundaryNotEven("the outer boundary contains odd vertices");
  }
  for (Height x : tau.values()) {
    if (x != 0) throw PreconditionViolation("boundary condition is not identically zero");
  }
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace

std::vector<CovarianceResult> fkg_check_abs_exact(
    const BoundaryCondition& tau,
    std::span<const std::pair<MonotoneFunction, MonotoneFunction>> pairs,
    const EnumerationLimits& limits) {
  require_zero_even(tau);
  const std::size_t m = pairs.size();
  std::vector<std::int64_t> sum_phi(m, 0), sum_psi(m, 0), sum_prod(m, 0);
  const BigInt n = enumerate_all(
      tau,
      [&](std::span<const Height> x) {
        for (std::size_t i = 0; i < m; ++i) {
          const std::int64_t a = pairs[i].first(x);
          const std::int64_t b = pairs[i].second(x);
          sum_phi[i] += a;
          sum_psi[i] += b;
          sum_prod[i] += a * b;
        }
      },
      limits);

  std::vector<CovarianceResult> out(m);
  for (std::size_t i = 0; i < m; ++i) {
    const BigInt num = n * BigInt(sum_prod[i]) - BigInt(sum_phi[i]) * BigInt(sum_psi[i]);
    out[i].exact = Rational(num, n * n);
    out[i].value = to_double(out[i].exact);
    out[i].ok = num >= 0;
  }
  return out;
}

std::vector<CovarianceResult> fkg_check_abs_empirical(
    std::span<const HeightFunction> samples,
    std::span<const std::pair<MonotoneFunction, MonotoneFunction>> pairs) {
  if (samples.size() < 2) throw PreconditionViolation("need at least two samples");
  const double n = static_cast<double>(samples.size());
  std::vector<CovarianceResult> out(pairs.size());
  std::vector<double> a(samples.size()), b(samples.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    double ma = 0, mb = 0;
    for (std::size_t k = 0; k < samples.size(); ++k) {
      a[k] = static_cast<double>(pairs[i].first(samples[k].values()));
      b[k] = static_cast<double>(pairs[i].second(samples[k].values()));
      ma += a[k];
      mb += b[k];
    }
    ma /= n;
    mb /= n;
    double cov = 0;
    for (std::size_t k = 0; k < samples.size(); ++k) cov += (a[k] - ma) * (b[k] - mb);
    cov /= n;
    double var_term = 0;
    for (std::size_t k = 0; k < samples.size(); ++k) {
      const double t = (a[k] - ma) * (b[k] - mb) - cov;
      var_term += t * t;
    }
    out[i].value = cov;
    out[i].se = std::sqrt(var_term / (n * n));
    out[i].ok = cov >= -3.0 * out[i].se;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Domination

double dkw_half_width(std::uint64_t n, double alpha) {
  if (n == 0) return 1.0;
  return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(n)));
}

namespace {

void check_nested(const LatticeDomain& inner, const LatticeDomain& outer) {
  if (inner.dimension() != outer.dimension()) throw NotNested("domains differ in dimension");
  for (const Vertex& v : inner.interior()) {
    auto s = outer.find(v);
    if (!s || !outer.is_interior(*s)) {
      throw NotNested(v.to_string() + " is interior to the inner domain but not the outer one");
    }
  }
  if (!inner.boundary_is_even() || !outer.boundary_is_even()) {
    throw BoundaryNotEven("domination check needs even outer boundaries");
  }
}

}  // namespace

DominationReport domination_check_abs_exact(const DomainPtr& inner, const DomainPtr& outer,
                                            const EnumerationLimits& limits) {
  check_nested(*inner, *outer);
  const auto law_in = site_marginals(BoundaryCondition::zero(inner), limits);
  const auto law_out = site_marginals(BoundaryCondition::zero(outer), limits);

  DominationReport report;
  report.worst_excess = -1.0;
  for (SiteIndex s = 0; s < inner->num_sites(); ++s) {
    const Vertex& v = inner->vertex(s);
    const ExactDistribution a = law_in[s].absolute();
    const ExactDistribution b = law_out[outer->index_of(v)].absolute();
    const Height top = std::max(a.counts().rbegin()->first, b.counts().rbegin()->first);
    Rational fa = 0, fb = 0;
    for (Height t = 0; t <= top; ++t) {
      fa += a.probability(t);
      fb += b.probability(t);
      ++report.comparisons;
      const double excess = to_double(fb - fa);
      report.worst_excess = std::max(report.worst_excess, excess);
      if (fb > fa) report.violations.push_back({v, t, to_double(fa), to_double(fb)});
    }
  }
  return report;
}

DominationReport domination_check_abs_empirical(std::span<const HeightFunction> inner,
                                                std::span<const HeightFunction> outer,
                                                double alpha) {
  if (inner.empty() || outer.empty()) throw PreconditionViolation("no samples");
  const DomainPtr& din = inner.front().domain_ptr();
  const DomainPtr& dout = outer.front().domain_ptr();
  check_nested(*din, *dout);
  const double band = dkw_half_width(inner.size(), alpha) + dkw_half_width(outer.size(), alpha);

  DominationReport report;
  report.worst_excess = -std::numeric_limits<double>::infinity();
  for (SiteIndex s = 0; s < din->num_sites(); ++s) {
    const Vertex& v = din->vertex(s);
    const SiteIndex so = dout->index_of(v);
    EmpiricalDistribution a, b;
    for (const auto& h : inner) a.add(h[s] < 0 ? -h[s] : h[s]);
    for (const auto& h : outer) b.add(h[so] < 0 ? -h[so] : h[so]);
    const Height top = std::max(a.counts().rbegin()->first, b.counts().rbegin()->first);
    for (Height t = 0; t <= top; ++t) {
      const double fa = a.cdf(t);
      const double fb = b.cdf(t);
      ++report.comparisons;
      report.worst_excess = std::max(report.worst_excess, fb - fa - band);
      if (fb - fa > band) report.violations.push_back({v, t, fa, fb});
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Log-concavity

namespace {

template <typename Map>
void check_single_parity(const Map& counts) {
  if (counts.empty()) return;
  const int p = counts.begin()->first & 1;
  for (const auto& kv : counts) {
    if ((kv.first & 1) != p) throw ParityMixedSupport("support mixes even and odd values");
  }
}

}  // namespace

LogConcavityReport log_concavity_check(const ExactDistribution& dist) {
  check_single_parity(dist.counts());
  LogConcavityReport report;
  report.worst_ratio = std::numeric_limits<double>::infinity();
  if (dist.empty()) return report;
  const Height lo = dist.counts().begin()->first;
  const Height hi = dist.counts().rbegin()->first;
  auto count = [&](Height v) -> BigInt {
    auto it = dist.counts().find(v);
    return it == dist.counts().end() ? BigInt(0) : it->second;
  };
  for (Height m = lo; m <= hi; m += 2) {
    const BigInt cm = count(m);
    for (int k = 1; m - 2 * k >= lo && m + 2 * k <= hi; ++k) {
      const BigInt prod = count(m + 2 * k) * count(m - 2 * k);
      if (prod == 0) continue;
      const double ratio = to_double(Rational(cm * cm, prod));
      if (ratio < report.worst_ratio) {
        report.worst_ratio = ratio;
        report.worst_m = m;
        report.worst_k = k;
      }
      if (cm * cm < prod) report.ok = false;
    }
  }
  return report;
}

LogConcavityReport log_concavity_check(const EmpiricalDistribution& dist, double z) {
  check_single_parity(dist.counts());
  LogConcavityReport report;
  report.worst_ratio = std::numeric_limits<double>::infinity();
  if (dist.empty()) return report;
  const double n = static_cast<double>(dist.size());
  const Height lo = dist.counts().begin()->first;
  const Height hi = dist.counts().rbegin()->first;
  for (Height m = lo; m <= hi; m += 2) {
    const double pm = dist.probability(m);
    for (int k = 1; m - 2 * k >= lo && m + 2 * k <= hi; ++k) {
      const double pp = dist.probability(m + 2 * k);
      const double pn = dist.probability(m - 2 * k);
      if (pp * pn == 0) continue;
      const double ratio = pm * pm / (pp * pn);
      if (ratio < report.worst_ratio) {
        report.worst_ratio = ratio;
        report.worst_m = m;
        report.worst_k = k;
      }
      // g = pm² − pp·pn; multinomial delta-method variance.
      const double gm = 2 * pm, gp = -pn, gn = -pp;
      const double mean_g = gm * pm + gp * pp + gn * pn;
      const double second = gm * gm * pm + gp * gp * pp + gn * gn * pn;
      const double se = std::sqrt(std::max(0.0, second - mean_g * mean_g) / n);
      if (pm * pm - pp * pn < -z * se) report.ok = false;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// θ and m̂

namespace {

DelocalizationQuantities delocalization_from(const std::map<Height, Rational>& p) {
  auto prob = [&](Height v) {
    auto it = p.find(v);
    return it == p.end() ? Rational(0) : it->second;
  };
  DelocalizationQuantities q;
  q.theta = prob(0);
  if (q.theta == 0) throw PreconditionViolation("P(f(0) = 0) is zero");
  for (Height n = 2;; n += 2) {
    if (prob(n) < q.theta / 2) {
      q.m_hat = n / 2;
      break;
    }
  }
  q.bound_holds = Rational(q.m_hat) * q.theta < 2;

  Height top = 0;
  for (const auto& kv : p) top = std::max(top, kv.first < 0 ? -kv.first : kv.first);
  for (Height M = 0; M <= top; ++M) {
    Rational tail = 0;
    for (const auto& [v, pv] : p) {
      if ((v < 0 ? -v : v) > M) tail += pv;
    }
    q.tail.emplace_back(M, to_double(tail));
  }
  return q;
}

}  // namespace

DelocalizationQuantities delocalization_quantities(const ExactDistribution& dist) {
  std::map<Height, Rational> p;
  for (const auto& [v, pv] : dist.support()) p[v] = pv;
  return delocalization_from(p);
}

DelocalizationQuantities delocalization_quantities(const EmpiricalDistribution& dist) {
  std::map<Height, Rational> p;
  for (const auto& kv : dist.counts()) p[kv.first] = dist.exact_probability(kv.first);
  return delocalization_from(p);
}

std::map<Height, double> value_frequencies(const HeightFunction& h) {
  std::map<Height, std::uint64_t> counts;
  const std::size_t n = h.domain().num_interior();
  for (SiteIndex s = 0; s < n; ++s) ++counts[h[s]];
  std::map<Height, double> out;
  for (const auto& [v, c] : counts) out[v] = static_cast<double>(c) / static_cast<double>(n);
  return out;
}

// ---------------------------------------------------------------------------
// Fits and tests

LinearFit ols_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw PreconditionViolation("ols_fit needs two or more paired observations");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0) throw PreconditionViolation("ols_fit needs two distinct x values");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double sse = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - fit.intercept - fit.slope * x[i];
    sse += r * r;
  }
  fit.r2 = syy > 0 ? 1.0 - sse / syy : 1.0;
  fit.slope_se = x.size() > 2 ? std::sqrt(sse / (n - 2) / sxx) : 0.0;
  return fit;
}

ChiSquareResult chi_square_gof(std::span<const std::uint64_t> observed,
                               std::span<const double> expected) {
  if (observed.size() != expected.size() || observed.empty()) {
    throw PreconditionViolation("chi_square_gof: mismatched cell counts");
  }
  double n = 0;
  for (auto o : observed) n += static_cast<double>(o);
  ChiSquareResult r;
  int cells = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double e = expected[i] * n;
    if (e <= 0) {
      if (observed[i] != 0) {
        r.statistic = std::numeric_limits<double>::infinity();
        r.p_value = 0;
        r.dof = static_cast<int>(observed.size()) - 1;
        return r;
      }
      continue;
    }
    const double d = static_cast<double>(observed[i]) - e;
    r.statistic += d * d / e;
    ++cells;
  }
  r.dof = cells - 1;
  if (r.dof < 1) return r;
  boost::math::chi_squared dist(r.dof);
  r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
  return r;
}

// ---------------------------------------------------------------------------
// Variance growth

VarianceCurve variance_growth(std::span<const int> Ls, std::size_t dimension,
                              const VarianceGrowthOptions& options) {
  if (Ls.empty()) throw PreconditionViolation("variance_growth needs at least one L");
  for (std::size_t i = 0; i < Ls.size(); ++i) {
    if (Ls[i] < 1 || Ls[i] % 2 == 0) throw PreconditionViolation("every L must be odd");
    if (i > 0 && Ls[i] <= Ls[i - 1]) throw PreconditionViolation("Ls must be increasing");
  }
  if (options.samples < 1) throw PreconditionViolation("samples must be at least 1");

  VarianceCurve curve;
  curve.dimension = dimension;
  if (options.exact_anchor) {
    const auto dom = ball_domain(dimension, 1);
    const ExactDistribution law =
        marginal_at(BoundaryCondition::zero(dom), Vertex::origin(dimension));
    VariancePoint p;
    p.L = 1;
    p.variance = law.variance().convert_to<double>();
    p.exact = true;
    if (options.on_point) options.on_point(p);
    curve.points.push_back(std::move(p));
  }

  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < Ls.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    const auto dom = ball_domain(dimension, Ls[i]);
    const SiteIndex origin = dom->index_of(Vertex::origin(dimension));
    VariancePoint p;
    p.L = Ls[i];
    p.seed_group = derive_seed(options.seed, i);
    const auto seeds = seed_sequence(p.seed_group, options.samples);
    CftpOptions cftp = options.cftp;
    if (options.suggested_horizons) {
      cftp.initial_horizon = suggested_initial_horizon(dimension, Ls[i]);
    }
    const auto results = sample_batch(BoundaryCondition::zero(dom), seeds, options.threads, cftp);
    double horizon_sum = 0;
    for (const auto& r : results) {
      p.distribution.add(r.sample[origin]);
      p.max_horizon = std::max(p.max_horizon, r.horizon);
      horizon_sum += static_cast<double>(r.horizon);
    }
    p.distribution.seeds() = seeds;
    p.n = p.distribution.size();
    p.variance = p.distribution.variance();
    p.se = p.distribution.variance_se();
    p.mean_horizon = horizon_sum / static_cast<double>(results.size());
    p.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    xs.push_back(std::log(static_cast<double>(p.L)));
    ys.push_back(p.variance);
    if (options.on_point) options.on_point(p);
    curve.points.push_back(std::move(p));
  }
  if (xs.size() >= 2) curve.fit = ols_fit(xs, ys);
  return curve;
}

bool strictly_increasing_beyond_se(const VarianceCurve& curve) {
  const VariancePoint* prev = nullptr;
  for (const auto& p : curve.points) {
    if (p.exact) continue;
    if (prev && !(p.variance - p.se > prev->variance + prev->se)) return false;
    prev = &p;
  }
  return true;
}

}  // namespace heightlat
