#include "heightlat/pair_transforms.hpp"

#include <algorithm>
#include <functional>

namespace heightlat {

namespace {

HeightFunction checked(const DomainPtr& dom, std::vector<Height> values, const char* op) {
  ValidationReport report = check_height_values(*dom, values);
  if (!report.ok()) {
    throw InvalidSwap(std::string(op) + " produced an invalid height function: " +
                      report.describe(*dom));
  }
  return HeightFunction::trusted(dom, std::move(values));
}

std::vector<SiteIndex> component_of(const LatticeDomain& dom, SiteIndex start,
                                    const std::function<bool(SiteIndex)>& in_set) {
  std::vector<char> seen(dom.num_sites(), 0);
  std::vector<SiteIndex> out{start};
  seen[start] = 1;
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (SiteIndex w : dom.neighbors_of(out[head])) {
      if (!seen[w] && in_set(w)) {
        seen[w] = 1;
        out.push_back(w);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

HomPair::HomPair(HeightFunction f, HeightFunction g) : f_(std::move(f)), g_(std::move(g)) {
  if (f_.domain_ptr() != g_.domain_ptr()) {
    throw PreconditionViolation("HomPair requires both functions on the same domain");
  }
}

ClusterLabeling components(const HomPair& pair, ClusterPredicate predicate, int k) {
  const auto& dom = pair.domain();
  const auto f = pair.f().values();
  const auto g = pair.g().values();
  auto holds = [&](SiteIndex s) {
    switch (predicate) {
      case ClusterPredicate::kGreater: return f[s] > g[s];
      case ClusterPredicate::kLess: return f[s] < g[s];
      case ClusterPredicate::kDifferent: return f[s] != g[s];
      case ClusterPredicate::kShiftedAtLeast:
        return static_cast<std::int64_t>(f[s]) >= static_cast<std::int64_t>(g[s]) + 2LL * k;
    }
    return false;
  };

  ClusterLabeling out;
  out.predicate = predicate;
  out.shift = k;
  out.label.assign(dom.num_sites(), -1);
  std::vector<SiteIndex> stack;
  for (SiteIndex s = 0; s < dom.num_sites(); ++s) {
    if (out.label[s] >= 0 || !holds(s)) continue;
    const auto id = static_cast<std::int32_t>(out.clusters.size());
    Cluster c;
    out.label[s] = id;
    stack.assign(1, s);
    while (!stack.empty()) {
      SiteIndex u = stack.back();
      stack.pop_back();
      c.sites.push_back(u);
      if (!dom.is_interior(u)) c.anchored = true;
      for (SiteIndex w : dom.neighbors_of(u)) {
        if (out.label[w] < 0 && holds(w)) {
          out.label[w] = id;
          stack.push_back(w);
        }
      }
    }
    std::sort(c.sites.begin(), c.sites.end());
    out.clusters.push_back(std::move(c));
  }
  return out;
}

HomPair swap_anchored(const HomPair& pair) {
  const ClusterLabeling lab = components(pair, ClusterPredicate::kGreater);
  std::vector<Height> f(pair.f().values().begin(), pair.f().values().end());
  std::vector<Height> g(pair.g().values().begin(), pair.g().values().end());
  for (const Cluster& c : lab.clusters) {
    if (!c.anchored) continue;
    for (SiteIndex s : c.sites) std::swap(f[s], g[s]);
  }
  const auto& dom = pair.f().domain_ptr();
  return HomPair(checked(dom, std::move(f), "swap_anchored"),
                 checked(dom, std::move(g), "swap_anchored"));
}

HomPair swap_finite(const HomPair& pair, const ClusterBits& eps) {
  const ClusterLabeling lab = components(pair, ClusterPredicate::kDifferent);
  std::vector<Height> f(pair.f().values().begin(), pair.f().values().end());
  std::vector<Height> g(pair.g().values().begin(), pair.g().values().end());
  for (const Cluster& c : lab.clusters) {
    if (c.anchored) continue;
    auto it = eps.find(c.id());
    if (it == eps.end() || !it->second) continue;
    for (SiteIndex s : c.sites) std::swap(f[s], g[s]);
  }
  const auto& dom = pair.f().domain_ptr();
  return HomPair(checked(dom, std::move(f), "swap_finite"),
                 checked(dom, std::move(g), "swap_finite"));
}

HomPair equalize(const HomPair& pair, const ClusterBits& eps) {
  const ClusterLabeling lab = components(pair, ClusterPredicate::kDifferent);
  std::vector<Height> f(pair.f().values().begin(), pair.f().values().end());
  std::vector<Height> g(pair.g().values().begin(), pair.g().values().end());
  for (const Cluster& c : lab.clusters) {
    if (c.anchored) continue;
    auto it = eps.find(c.id());
    const bool to_g = it != eps.end() && it->second;
    for (SiteIndex s : c.sites) {
      if (to_g) {
        f[s] = g[s];
      } else {
        g[s] = f[s];
      }
    }
  }
  const auto& dom = pair.f().domain_ptr();
  return HomPair(checked(dom, std::move(f), "equalize"), checked(dom, std::move(g), "equalize"));
}

std::vector<ClusterBits> all_cluster_bits(const HomPair& pair) {
  const ClusterLabeling lab = components(pair, ClusterPredicate::kDifferent);
  std::vector<SiteIndex> ids;
  for (const Cluster& c : lab.clusters) {
    if (!c.anchored) ids.push_back(c.id());
  }
  if (ids.size() > 20) {
    throw DomainTooLarge("too many finite clusters to enumerate every assignment", 20);
  }
  std::vector<ClusterBits> out;
  for (std::uint32_t mask = 0; mask < (1u << ids.size()); ++mask) {
    ClusterBits bits;
    for (std::size_t i = 0; i < ids.size(); ++i) bits[ids[i]] = (mask >> i) & 1u;
    out.push_back(std::move(bits));
  }
  return out;
}

InjectionImage lc_inject(const HeightFunction& plus, const HeightFunction& minus, SiteIndex v,
                         Height m, int k) {
  if (plus.domain_ptr() != minus.domain_ptr()) {
    throw PreconditionViolation("lc_inject: functions live on different domains");
  }
  const auto& dom = plus.domain();
  if (k < 1) throw PreconditionViolation("lc_inject: k must be at least 1");
  if (v >= dom.num_sites()) throw PreconditionViolation("lc_inject: site out of range");
  if (plus[v] != m + 2 * k || minus[v] != m - 2 * k) {
    throw PreconditionViolation("lc_inject: expected h+(v) = m + 2k and h-(v) = m - 2k");
  }
  if (!(BoundaryCondition::of(plus) == BoundaryCondition::of(minus))) {
    throw PreconditionViolation("lc_inject: boundary values differ");
  }

  InjectionImage out;
  out.region = component_of(dom, v, [&](SiteIndex s) { return plus[s] > minus[s] + 2 * k; });
  std::vector<Height> h(minus.values().begin(), minus.values().end());
  std::vector<Height> hp(plus.values().begin(), plus.values().end());
  for (SiteIndex s : out.region) {
    h[s] = plus[s] - 2 * k;
    hp[s] = minus[s] + 2 * k;
  }
  out.h = checked(plus.domain_ptr(), std::move(h), "lc_inject");
  out.h_prime = checked(plus.domain_ptr(), std::move(hp), "lc_inject");
  return out;
}

std::pair<HeightFunction, HeightFunction> lc_recover(const HeightFunction& h,
                                                     const HeightFunction& h_prime,
                                                     SiteIndex v, int k) {
  if (h.domain_ptr() != h_prime.domain_ptr()) {
    throw PreconditionViolation("lc_recover: functions live on different domains");
  }
  if (k < 1) throw PreconditionViolation("lc_recover: k must be at least 1");
  const auto& dom = h.domain();
  const auto region =
      component_of(dom, v, [&](SiteIndex s) { return h[s] > h_prime[s] - 2 * k; });
  std::vector<Height> plus(h_prime.values().begin(), h_prime.values().end());
  std::vector<Height> minus(h.values().begin(), h.values().end());
  for (SiteIndex s : region) {
    plus[s] = h[s] + 2 * k;
    minus[s] = h_prime[s] - 2 * k;
  }
  return {checked(h.domain_ptr(), std::move(plus), "lc_recover"),
          checked(h.domain_ptr(), std::move(minus), "lc_recover")};
}

}  // namespace heightlat
