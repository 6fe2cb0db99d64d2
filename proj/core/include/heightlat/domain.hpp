#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "heightlat/vertex.hpp"

namespace heightlat {

/// Position of a vertex of Λ+ inside a LatticeDomain. Interior vertices come
/// first (in lexicographic order), followed by the outer boundary (also
/// lexicographic).
using SiteIndex = std::uint32_t;

/// An unordered nearest-neighbor pair of Λ+, stored with a < b.
struct Edge {
  SiteIndex a;
  SiteIndex b;
  bool operator==(const Edge&) const = default;
};

/// Randomness address of an interior site: its parity class and its rank
/// among the interior sites of that class in domain order.
struct SiteKey {
  Parity klass;
  std::uint32_t rank;
};

struct DomainDescriptor {
  enum class Kind { kBall, kExplicit };
  Kind kind = Kind::kBall;
  std::size_t dimension = 0;
  int radius = 0;                 // kBall only
  std::vector<Vertex> interior;   // kExplicit only
};

class LatticeDomain;
using DomainPtr = std::shared_ptr<const LatticeDomain>;

/// A finite Λ ⊂ Z^d together with ∂◦Λ and Λ+ = Λ ∪ ∂◦Λ. Immutable.
class LatticeDomain {
  struct Token {};

 public:
  /// Λ(L) = {v : ‖v‖₁ ≤ L}.
  static DomainPtr ball(std::size_t dimension, int radius);
  /// Arbitrary finite interior; duplicates are ignored.
  static DomainPtr from_interior(std::size_t dimension, std::vector<Vertex> interior);
  static DomainPtr from_descriptor(const DomainDescriptor& desc);

  LatticeDomain(Token, std::size_t dimension, std::vector<Vertex> interior,
                DomainDescriptor descriptor);

  std::size_t dimension() const noexcept { return dim_; }
  const DomainDescriptor& descriptor() const noexcept { return descriptor_; }

  std::size_t num_interior() const noexcept { return num_interior_; }
  std::size_t num_boundary() const noexcept { return sites_.size() - num_interior_; }
  std::size_t num_sites() const noexcept { return sites_.size(); }

  std::span<const Vertex> sites() const noexcept { return sites_; }
  std::span<const Vertex> interior() const noexcept {
    return std::span<const Vertex>(sites_).first(num_interior_);
  }
  std::span<const Vertex> boundary() const noexcept {
    return std::span<const Vertex>(sites_).subspan(num_interior_);
  }
  const Vertex& vertex(SiteIndex i) const { return sites_[i]; }

  bool is_interior(SiteIndex i) const noexcept { return i < num_interior_; }
  std::optional<SiteIndex> find(const Vertex& v) const;
  SiteIndex index_of(const Vertex& v) const;  // throws if v ∉ Λ+
  bool contains(const Vertex& v) const { return find(v).has_value(); }

  /// Neighbors of site i that lie in Λ+, in the order of heightlat::neighbors.
  /// For interior sites this is always all 2d neighbors.
  std::span<const SiteIndex> neighbors_of(SiteIndex i) const noexcept {
    return std::span<const SiteIndex>(adjacency_).subspan(
        adjacency_offsets_[i], adjacency_offsets_[i + 1] - adjacency_offsets_[i]);
  }

  /// Every adjacent pair inside Λ+.
  std::span<const Edge> edges() const noexcept { return edges_; }

  /// Heat-bath scan order: even interior sites in domain order, then odd ones.
  std::span<const SiteIndex> sweep_order() const noexcept { return sweep_order_; }
  SiteKey site_key(SiteIndex interior_site) const { return keys_[interior_site]; }
  std::size_t class_size(Parity p) const noexcept {
    return class_size_[static_cast<std::size_t>(p)];
  }

  /// Componentwise bounding box of Λ+.
  const Vertex& box_lo() const noexcept { return lo_; }
  const Vertex& box_hi() const noexcept { return hi_; }
  bool uses_dense_index() const noexcept { return !dense_index_.empty(); }

  /// True iff every vertex of ∂◦Λ lies on the even sublattice.
  bool boundary_is_even() const noexcept;

  /// Same sites in the same order.
  bool operator==(const LatticeDomain& other) const {
    return dim_ == other.dim_ && num_interior_ == other.num_interior_ && sites_ == other.sites_;
  }

 private:
  std::size_t dim_;
  DomainDescriptor descriptor_;
  std::size_t num_interior_ = 0;
  std::vector<Vertex> sites_;
  Vertex lo_, hi_;
  std::vector<std::int64_t> strides_;
  std::vector<std::int32_t> dense_index_;
  std::unordered_map<Vertex, SiteIndex, VertexHash> sparse_index_;
  std::vector<std::size_t> adjacency_offsets_;
  std::vector<SiteIndex> adjacency_;
  std::vector<Edge> edges_;
  std::vector<SiteIndex> sweep_order_;
  std::vector<SiteKey> keys_;
  std::size_t class_size_[2] = {0, 0};
};

/// Λ(L) in dimension d.
DomainPtr ball_domain(std::size_t dimension, int radius);

/// The external vertex boundary of a finite set, sorted lexicographically.
std::vector<Vertex> outer_boundary_of(std::span<const Vertex> set, std::size_t dimension);

}  // namespace heightlat
