#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "heightlat/vertex.hpp"

namespace heightlat {

/// A {0,1} configuration on the box [lo, hi] of Z^d. Components of {ω = 1}
/// that reach a face of the box stand in for infinite clusters.
class BinaryWindow {
 public:
  BinaryWindow(Vertex lo, Vertex hi);

  /// ω(v) = pred(v) on every vertex of the box.
  static BinaryWindow from_predicate(Vertex lo, Vertex hi,
                                     const std::function<bool(const Vertex&)>& pred);

  std::size_t dimension() const noexcept { return lo_.dimension(); }
  const Vertex& lo() const noexcept { return lo_; }
  const Vertex& hi() const noexcept { return hi_; }
  std::size_t size() const noexcept { return bits_.size(); }

  bool contains(const Vertex& v) const noexcept;
  bool on_face(const Vertex& v) const noexcept;
  bool get(const Vertex& v) const;
  void set(const Vertex& v, bool value);

  std::size_t index(const Vertex& v) const;
  Vertex vertex(std::size_t index) const;

 private:
  Vertex lo_, hi_;
  std::vector<std::int64_t> strides_;
  std::vector<std::uint8_t> bits_;
};

/// The comb: ω(v) = 1 iff the first coordinate of v is even or the second is zero.
BinaryWindow comb_window(int half_width);

struct TrifurcationOptions {
  /// Largest radius accepted for the exhaustive search over D.
  int max_radius = 3;
};

/// True iff some face-reaching cluster 𝒞 meets v + Λ(M) and some connected
/// D ⊆ 𝒞 ∩ (v + Λ(M)) leaves at least three face-reaching components in 𝒞 ∖ D.
/// Throws WindowTooSmall unless v + Λ(M) sits inside the box with margin 1,
/// and PreconditionViolation when M exceeds options.max_radius.
bool is_trifurcation_ball(const BinaryWindow& omega, const Vertex& v, int radius,
                          const TrifurcationOptions& options = {});

/// Same test with D replaced by all of 𝒞 ∩ (v + Λ(M)).
bool is_trifurcation_ball_alternative(const BinaryWindow& omega, const Vertex& v, int radius);

}  // namespace heightlat
