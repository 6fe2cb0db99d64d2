#include "heightlat/conversions.hpp"

namespace heightlat {

namespace {

void require_planar(const LatticeDomain& domain, const char* op) {
  if (domain.dimension() != 2) {
    throw DimensionError(std::string(op) + " requires dimension 2, got " +
                         std::to_string(domain.dimension()));
  }
}

// Arrow crossing the primal edge u -> u + e_axis, u the lexicographically
// smaller endpoint (site indices put the interior first, so not always e.a).
Direction arrow_for(const LatticeDomain& dom, const HeightFunction& h, const Edge& e) {
  const bool forward = dom.vertex(e.a) < dom.vertex(e.b);
  const SiteIndex lo = forward ? e.a : e.b;
  const SiteIndex hi = forward ? e.b : e.a;
  if (dom.vertex(hi)[0] != dom.vertex(lo)[0]) {
    // Primal edge along x; dual arrow vertical, larger height on its left.
    return h[lo] > h[hi] ? Direction::kNorth : Direction::kSouth;
  }
  return h[hi] > h[lo] ? Direction::kEast : Direction::kWest;
}

VertexType classify(Direction w, Direction e, Direction s, Direction n) {
  using D = Direction;
  if (w == D::kEast && e == D::kEast && s == D::kNorth && n == D::kNorth) return VertexType::kA1;
  if (w == D::kWest && e == D::kWest && s == D::kSouth && n == D::kSouth) return VertexType::kA2;
  if (w == D::kEast && e == D::kEast && s == D::kSouth && n == D::kSouth) return VertexType::kB1;
  if (w == D::kWest && e == D::kWest && s == D::kNorth && n == D::kNorth) return VertexType::kB2;
  if (w == D::kEast && e == D::kWest && s == D::kSouth && n == D::kNorth) return VertexType::kC1;
  if (w == D::kWest && e == D::kEast && s == D::kNorth && n == D::kSouth) return VertexType::kC2;
  return VertexType::kIllegal;
}

}  // namespace

std::vector<std::uint8_t> to_three_coloring(const HeightFunction& h) {
  std::vector<std::uint8_t> colors(h.values().size());
  for (std::size_t s = 0; s < colors.size(); ++s) {
    colors[s] = static_cast<std::uint8_t>(((h.values()[s] % 3) + 3) % 3);
  }
  return colors;
}

bool is_proper_coloring(const LatticeDomain& domain, const std::vector<std::uint8_t>& colors) {
  for (const Edge& e : domain.edges()) {
    if (colors[e.a] == colors[e.b]) return false;
  }
  return true;
}

SixVertexConfig to_six_vertex(const HeightFunction& h) {
  const auto& dom = h.domain();
  require_planar(dom, "to_six_vertex");
  SixVertexConfig out;
  out.arrows.reserve(dom.edges().size());
  for (const Edge& e : dom.edges()) out.arrows.push_back({e, arrow_for(dom, h, e)});

  auto arrow_between = [&](const Vertex& u, const Vertex& v) {
    Edge e{dom.index_of(u), dom.index_of(v)};
    return arrow_for(dom, h, e);
  };

  for (const Vertex& c : dom.sites()) {
    Vertex right = c.shifted(0, 1);
    Vertex up = c.shifted(1, 1);
    Vertex diag = right.shifted(1, 1);
    if (!dom.contains(right) || !dom.contains(up) || !dom.contains(diag)) continue;
    Direction w = arrow_between(c, up);
    Direction e = arrow_between(right, diag);
    Direction s = arrow_between(c, right);
    Direction n = arrow_between(up, diag);
    int in = (w == Direction::kEast) + (e == Direction::kWest) + (s == Direction::kNorth) +
             (n == Direction::kSouth);
    VertexType type = classify(w, e, s, n);
    out.vertices.push_back({c, type, in});
    if (type == VertexType::kIllegal || in != 2) {
      ++out.ice_rule_violations;
    } else {
      ++out.type_counts[static_cast<std::size_t>(type)];
    }
  }
  return out;
}

std::size_t diagonal_disagreements(const HeightFunction& h) {
  const auto& dom = h.domain();
  require_planar(dom, "diagonal_disagreements");
  std::size_t count = 0;
  for (std::size_t s = 0; s < dom.num_sites(); ++s) {
    const Vertex& v = dom.vertex(static_cast<SiteIndex>(s));
    // Each unordered diagonal pair is seen once from its lower-x endpoint.
    for (int dy : {-1, 1}) {
      Vertex w = v.shifted(0, 1).shifted(1, dy);
      if (auto j = dom.find(w); j && h[*j] != h.values()[s]) ++count;
    }
  }
  return count;
}

}  // namespace heightlat
