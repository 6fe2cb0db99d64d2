#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "heightlat/height_function.hpp"

namespace heightlat {

/// c(v) = h(v) mod 3, least nonnegative residue, per site of Λ+.
std::vector<std::uint8_t> to_three_coloring(const HeightFunction& h);

/// True iff adjacent sites of Λ+ always receive distinct colors.
bool is_proper_coloring(const LatticeDomain& domain, const std::vector<std::uint8_t>& colors);

// --- six-vertex (square ice) ---------------------------------------------
//
// Each primal edge {u, v} of Λ+ is crossed by one dual edge; the dual arrow
// is oriented so that the endpoint with the larger height lies on its left.
// Dual vertices sit at plaquette centres (x + 1/2, y + 1/2).

enum class Direction : std::uint8_t { kEast, kWest, kNorth, kSouth };

struct DualArrow {
  Edge edge;
  Direction direction;
};

/// The six local arrow types around a dual vertex, in the usual naming:
/// a1 (E,E,N,N), a2 (W,W,S,S), b1 (E,E,S,S), b2 (W,W,N,N), c1 (E,W,S,N),
/// c2 (W,E,N,S), listing the arrows on the west, east, south, north edges.
enum class VertexType : std::uint8_t { kA1, kA2, kB1, kB2, kC1, kC2, kIllegal };

struct DualVertex {
  Vertex corner;  // lower-left primal corner of the plaquette
  VertexType type;
  int in_degree;
};

struct SixVertexConfig {
  std::vector<DualArrow> arrows;          // one per edge of Λ+, same order as edges()
  std::vector<DualVertex> vertices;       // plaquettes with all four corners in Λ+
  std::array<std::size_t, 6> type_counts{};
  std::size_t ice_rule_violations = 0;
};

/// Throws DimensionError unless d = 2.
SixVertexConfig to_six_vertex(const HeightFunction& h);

/// Unordered diagonally adjacent pairs of Λ+ with unequal heights (d = 2).
std::size_t diagonal_disagreements(const HeightFunction& h);

}  // namespace heightlat
