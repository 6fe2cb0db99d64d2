#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "heightlat/height_function.hpp"
#include "heightlat/rational.hpp"

namespace heightlat {

/// Law of an integer-valued statistic with exact (big integer) counts.
class ExactDistribution {
 public:
  void add(Height value, const BigInt& count = 1);

  const std::map<Height, BigInt>& counts() const noexcept { return counts_; }
  const BigInt& total_count() const noexcept { return total_; }
  bool empty() const noexcept { return counts_.empty(); }

  Rational probability(Height value) const;
  std::vector<std::pair<Height, Rational>> support() const;

  Rational mean() const;
  Rational second_moment() const;
  Rational variance() const;

  /// Law of |X|.
  ExactDistribution absolute() const;

  bool operator==(const ExactDistribution&) const = default;

 private:
  std::map<Height, BigInt> counts_;
  BigInt total_ = 0;
};

struct EnumerationLimits {
  /// Maximum number of complete configurations visited.
  std::uint64_t max_leaves = 100'000'000;
  /// Maximum number of search nodes; 0 means 64 × max_leaves.
  std::uint64_t max_nodes = 0;
};

using ConfigurationVisitor = std::function<void(std::span<const Height>)>;

/// Depth-first enumeration of every homomorphism extension of τ, in a fixed
/// order (interior sites in domain order, smaller values first). The visitor
/// receives the full Λ+ value array. Returns the number of configurations.
/// Throws InfeasibleBoundary or DomainTooLarge.
BigInt enumerate_all(const BoundaryCondition& tau, const ConfigurationVisitor& visit,
                     const EnumerationLimits& limits = {});

std::vector<HeightFunction> collect_all(const BoundaryCondition& tau,
                                        const EnumerationLimits& limits = {});

BigInt count_extensions(const BoundaryCondition& tau, const EnumerationLimits& limits = {});

/// Exact law of f(v) under the uniform measure on extensions of τ.
ExactDistribution marginal_at(const BoundaryCondition& tau, const Vertex& v,
                              const EnumerationLimits& limits = {});

/// Exact laws at every site of Λ+ from a single enumeration pass.
std::vector<ExactDistribution> site_marginals(const BoundaryCondition& tau,
                                              const EnumerationLimits& limits = {});

/// Heat-bath target at an interior site: uniform on {m : |m − h(w)| = 1 ∀ w ~ v}.
ExactDistribution conditional_site_law(const HeightFunction& h, SiteIndex v);

using PairVisitor = std::function<void(std::span<const Height>, std::span<const Height>)>;

/// The Cartesian product of the two enumerations (f outer, g inner).
BigInt enumerate_pairs(const BoundaryCondition& tau_f, const BoundaryCondition& tau_g,
                       const PairVisitor& visit, const EnumerationLimits& limits = {});

/// Exact law of the state after one heat-bath sweep started from h, keyed by
/// the full value vector.
std::map<std::vector<Height>, Rational> sweep_transition_law(const HeightFunction& h);

}  // namespace heightlat
