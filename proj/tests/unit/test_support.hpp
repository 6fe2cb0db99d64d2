#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's enumerator or envelope code.

#include <cstdint>
#include <cstdlib>
#include <map>
#include <vector>

#include <heightlat/heightlat.hpp>

namespace testsupport {

using heightlat::Height;
using heightlat::LatticeDomain;
using heightlat::SiteIndex;
using heightlat::Vertex;

inline std::uint64_t binomial(unsigned n, unsigned k) {
  std::uint64_t r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline bool adjacent(const Vertex& a, const Vertex& b) { return heightlat::l1_distance(a, b) == 1; }

/// Every homomorphism extension of the boundary values, found by naive
/// backtracking over the window [−R, R] with pairwise adjacency checks.
inline std::vector<std::vector<Height>> brute_force_extensions(const LatticeDomain& dom,
                                                               const std::vector<Height>& tau) {
  const std::size_t n = dom.num_interior();
  Height radius = 0;
  for (Height t : tau) radius = std::max<Height>(radius, std::abs(t));
  radius += static_cast<Height>(n) + 1;

  std::vector<Height> values(dom.num_sites(), 0);
  for (std::size_t b = 0; b < tau.size(); ++b) values[n + b] = tau[b];
  std::vector<std::vector<Height>> out;

  auto fits = [&](std::size_t i, Height x) {
    const Vertex& v = dom.vertex(static_cast<SiteIndex>(i));
    if (((x % 2) + 2) % 2 != static_cast<int>(v.l1_norm() % 2)) return false;
    for (std::size_t j = 0; j < dom.num_sites(); ++j) {
      const bool assigned = j < i || j >= n;
      if (!assigned || !adjacent(v, dom.vertex(static_cast<SiteIndex>(j)))) continue;
      if (std::abs(values[j] - x) != 1) return false;
    }
    return true;
  };
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      out.push_back(values);
      return;
    }
    for (Height x = -radius; x <= radius; ++x) {
      if (!fits(i, x)) continue;
      values[i] = x;
      self(self, i + 1);
    }
  };
  // Boundary-boundary edges also have to be consistent.
  for (std::size_t a = n; a < dom.num_sites(); ++a) {
    for (std::size_t b = a + 1; b < dom.num_sites(); ++b) {
      if (adjacent(dom.vertex(static_cast<SiteIndex>(a)), dom.vertex(static_cast<SiteIndex>(b))) &&
          std::abs(values[a] - values[b]) != 1) {
        return out;
      }
    }
  }
  rec(rec, 0);
  return out;
}

inline std::vector<std::vector<Height>> brute_force_zero(const LatticeDomain& dom) {
  return brute_force_extensions(dom, std::vector<Height>(dom.num_boundary(), 0));
}

/// Builds values on Λ+ from a vertex → height table (missing entries are 0).
inline std::vector<Height> values_from(const LatticeDomain& dom,
                                       const std::map<Vertex, Height>& table) {
  std::vector<Height> out(dom.num_sites(), 0);
  for (const auto& [v, h] : table) out[dom.index_of(v)] = h;
  return out;
}

}  // namespace testsupport
