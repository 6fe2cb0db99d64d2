#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "heightlat/height_function.hpp"

namespace heightlat {

/// Two height functions on the same Λ+.
class HomPair {
 public:
  /// Throws PreconditionViolation when the domains differ.
  HomPair(HeightFunction f, HeightFunction g);

  const HeightFunction& f() const noexcept { return f_; }
  const HeightFunction& g() const noexcept { return g_; }
  const LatticeDomain& domain() const noexcept { return f_.domain(); }

  bool operator==(const HomPair&) const = default;

 private:
  HeightFunction f_;
  HeightFunction g_;
};

enum class ClusterPredicate {
  kGreater,         // f > g
  kLess,            // f < g
  kDifferent,       // f != g
  kShiftedAtLeast,  // f >= g + 2k
};

struct Cluster {
  std::vector<SiteIndex> sites;  // ascending; sites.front() identifies the cluster
  bool anchored = false;         // contains a vertex of ∂◦Λ

  SiteIndex id() const { return sites.front(); }
};

struct ClusterLabeling {
  ClusterPredicate predicate = ClusterPredicate::kGreater;
  int shift = 0;
  /// Index into `clusters` for every site of Λ+, or -1 where the predicate fails.
  std::vector<std::int32_t> label;
  /// Ordered by id.
  std::vector<Cluster> clusters;
};

/// Connected components (nearest-neighbor adjacency inside Λ+) of the set
/// where the predicate holds. `k` is used by kShiftedAtLeast only.
ClusterLabeling components(const HomPair& pair, ClusterPredicate predicate, int k = 0);

/// Exchanges f and g on the anchored components of {f > g}.
HomPair swap_anchored(const HomPair& pair);

/// ε: cluster id → bit. Missing ids read as 0.
using ClusterBits = std::map<SiteIndex, bool>;

/// Exchanges f and g on every non-anchored component C of {f != g} with ε(C) = 1.
HomPair swap_finite(const HomPair& pair, const ClusterBits& eps);

/// On every non-anchored component C of {f != g} sets both coordinates to f
/// (ε(C) = 0) or to g (ε(C) = 1).
HomPair equalize(const HomPair& pair, const ClusterBits& eps);

/// Every assignment of bits to the non-anchored components of {f != g}, in
/// binary counting order over the ids.
std::vector<ClusterBits> all_cluster_bits(const HomPair& pair);

/// Image of the log-concavity injection H_{m+2k} × H_{m−2k} → H_m × H_m.
struct InjectionImage {
  HeightFunction h;
  HeightFunction h_prime;
  std::vector<SiteIndex> region;  // Λ′, ascending
};

/// Λ′ is the component of v in {h⁺ > h⁻ + 2k}; h = h⁺ − 2k on Λ′ and h⁻ off
/// it, h′ = h⁻ + 2k on Λ′ and h⁺ off it. Throws PreconditionViolation unless
/// h⁺(v) = m + 2k, h⁻(v) = m − 2k, k >= 1 and both share domain and boundary.
InjectionImage lc_inject(const HeightFunction& plus, const HeightFunction& minus, SiteIndex v,
                         Height m, int k);

/// Inverse of lc_inject: Λ′ is the component of v in {h > h′ − 2k}.
std::pair<HeightFunction, HeightFunction> lc_recover(const HeightFunction& h,
                                                     const HeightFunction& h_prime,
                                                     SiteIndex v, int k);

}  // namespace heightlat
