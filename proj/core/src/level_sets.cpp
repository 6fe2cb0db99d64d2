#include "heightlat/level_sets.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace heightlat {

namespace {

using Point = std::array<int, 2>;

DualSegment segment_for(const LatticeDomain& dom, const Edge& e) {
  const Vertex& u = std::min(dom.vertex(e.a), dom.vertex(e.b));
  const Vertex& v = std::max(dom.vertex(e.a), dom.vertex(e.b));
  int x = u[0], y = u[1];
  if (v[0] != u[0]) {
    return {e, {2 * x + 1, 2 * y - 1}, {2 * x + 1, 2 * y + 1}};
  }
  return {e, {2 * x - 1, 2 * y + 1}, {2 * x + 1, 2 * y + 1}};
}

const Point& other_end(const DualSegment& s, const Point& p) { return s.p0 == p ? s.p1 : s.p0; }

}  // namespace

LevelSet level_set_edges(const HeightFunction& h, Height a) {
  const auto& dom = h.domain();
  if (dom.dimension() != 2) {
    throw DimensionError("level_set_edges requires dimension 2, got " +
                         std::to_string(dom.dimension()));
  }
  std::vector<DualSegment> segs;
  for (const Edge& e : dom.edges()) {
    Height lo = std::min(h[e.a], h[e.b]);
    Height hi = std::max(h[e.a], h[e.b]);
    if (lo == a - 1 && hi == a) segs.push_back(segment_for(dom, e));
  }

  std::map<Point, std::vector<std::size_t>> incident;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    incident[segs[i].p0].push_back(i);
    incident[segs[i].p1].push_back(i);
  }

  // Which segment continues `seg` through dual vertex `p`, if any.
  auto partner = [&](std::size_t seg, const Point& p) -> std::optional<std::size_t> {
    const auto& here = incident.at(p);
    if (here.size() == 2) return here[0] == seg ? here[1] : here[0];
    if (here.size() != 4) return std::nullopt;
    // Saddle: pair the two sides adjacent to each corner holding the value a.
    const int cx = (p[0] - 1) / 2;  // plaquette lower-left corner
    const int cy = (p[1] - 1) / 2;
    const DualSegment& s = segs[seg];
    for (int dx : {0, 1}) {
      for (int dy : {0, 1}) {
        Vertex corner{cx + dx, cy + dy};
        if (h.at(corner) != a) continue;
        auto touches = [&](const DualSegment& t) {
          const Vertex& u = dom.vertex(t.crossed.a);
          const Vertex& v = dom.vertex(t.crossed.b);
          return u == corner || v == corner;
        };
        if (!touches(s)) continue;
        for (std::size_t other : here) {
          if (other != seg && touches(segs[other])) return other;
        }
      }
    }
    return std::nullopt;
  };

  LevelSet out;
  out.level = a;
  std::vector<bool> used(segs.size(), false);

  auto trace = [&](std::size_t start, Point entry) {
    Contour c;
    std::size_t cur = start;
    Point at = entry;
    while (true) {
      used[cur] = true;
      c.segments.push_back(segs[cur]);
      Point exit = other_end(segs[cur], at);
      auto next = partner(cur, exit);
      if (!next) break;
      if (*next == start) {
        c.closed = true;
        break;
      }
      if (used[*next]) break;
      cur = *next;
      at = exit;
    }
    return c;
  };

  // Open paths first, starting from dual vertices of degree one.
  for (std::size_t i = 0; i < segs.size(); ++i) {
    if (used[i]) continue;
    for (const Point& end : {segs[i].p0, segs[i].p1}) {
      if (!used[i] && incident.at(end).size() == 1) out.contours.push_back(trace(i, end));
    }
  }
  for (std::size_t i = 0; i < segs.size(); ++i) {
    if (!used[i]) out.contours.push_back(trace(i, segs[i].p0));
  }

  for (std::size_t i = 0; i < out.contours.size(); ++i) {
    const auto& first = out.contours[i].segments.front();
    double x = (first.p0[0] + first.p1[0]) / 4.0 + 0.0101;
    double y = (first.p0[1] + first.p1[1]) / 4.0 + 0.0137;
    for (std::size_t j = 0; j < out.contours.size(); ++j) {
      if (j == i || !out.contours[j].closed) continue;
      if (contour_encloses(out.contours[j], x, y)) {
        out.contours[i].outermost = false;
        break;
      }
    }
  }
  return out;
}

bool contour_encloses(const Contour& loop, double x, double y) {
  if (!loop.closed) return false;
  bool inside = false;
  for (const auto& s : loop.segments) {
    if (s.p0[0] != s.p1[0]) continue;  // horizontal pieces never cross a +x ray
    double sx = s.p0[0] / 2.0;
    double y0 = std::min(s.p0[1], s.p1[1]) / 2.0;
    double y1 = std::max(s.p0[1], s.p1[1]) / 2.0;
    if (sx > x && y0 < y && y < y1) inside = !inside;
  }
  return inside;
}

}  // namespace heightlat
