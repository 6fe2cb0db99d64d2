#pragma once

#include <array>
#include <vector>

#include "heightlat/height_function.hpp"

namespace heightlat {

/// A dual-lattice segment in doubled coordinates: the real endpoints are
/// (x0/2, y0/2) and (x1/2, y1/2), so plaquette centres have odd coordinates.
struct DualSegment {
  Edge crossed;  // the primal edge of Λ+ this segment crosses
  std::array<int, 2> p0;
  std::array<int, 2> p1;
};

/// A connected piece of a level line: either a cycle or a path whose two
/// ends sit on dual vertices outside the fully-covered plaquettes of Λ+.
struct Contour {
  std::vector<DualSegment> segments;  // in traversal order
  bool closed = false;
  /// No closed contour of the same level encloses this one (even-odd rule).
  bool outermost = true;
};

struct LevelSet {
  Height level = 0;
  std::vector<Contour> contours;
};

/// Dual edges crossing primal edges whose endpoint heights are {a − 1, a},
/// grouped into contours. At saddle plaquettes the two strands are joined
/// around the corners carrying the higher value.
LevelSet level_set_edges(const HeightFunction& h, Height a);

/// Ray-casting test of a point against a closed contour.
bool contour_encloses(const Contour& loop, double x, double y);

}  // namespace heightlat
