#include "heightlat/domain.hpp"

#include <algorithm>
#include <unordered_set>

#include "heightlat/error.hpp"

namespace heightlat {

namespace {

void check_dimension(std::size_t d) {
  if (d < 1 || d > Vertex::kMaxDimension) {
    throw DimensionError("dimension must be in [1, " +
                         std::to_string(Vertex::kMaxDimension) + "], got " +
                         std::to_string(d));
  }
}

}  // namespace

DomainPtr LatticeDomain::ball(std::size_t dimension, int radius) {
  check_dimension(dimension);
  if (radius < 0) throw Error("ball radius must be nonnegative");
  std::vector<Vertex> interior;
  Vertex v = Vertex::origin(dimension);
  for (std::size_t i = 0; i < dimension; ++i) v[i] = -radius;
  // Odometer over the box [-L, L]^d.
  for (bool done = false; !done;) {
    if (v.l1_norm() <= radius) interior.push_back(v);
    done = true;
    for (std::size_t axis = dimension; axis-- > 0;) {
      if (v[axis] < radius) {
        ++v[axis];
        done = false;
        break;
      }
      v[axis] = -radius;
    }
  }
  DomainDescriptor desc;
  desc.kind = DomainDescriptor::Kind::kBall;
  desc.dimension = dimension;
  desc.radius = radius;
  return std::make_shared<const LatticeDomain>(Token{}, dimension, std::move(interior),
                                               std::move(desc));
}

DomainPtr LatticeDomain::from_interior(std::size_t dimension, std::vector<Vertex> interior) {
  check_dimension(dimension);
  for (const auto& v : interior) {
    if (v.dimension() != dimension) {
      throw DimensionError("vertex " + v.to_string() + " does not have dimension " +
                           std::to_string(dimension));
    }
  }
  std::sort(interior.begin(), interior.end());
  interior.erase(std::unique(interior.begin(), interior.end()), interior.end());
  DomainDescriptor desc;
  desc.kind = DomainDescriptor::Kind::kExplicit;
  desc.dimension = dimension;
  desc.interior = interior;
  return std::make_shared<const LatticeDomain>(Token{}, dimension, std::move(interior),
                                               std::move(desc));
}

DomainPtr LatticeDomain::from_descriptor(const DomainDescriptor& desc) {
  if (desc.kind == DomainDescriptor::Kind::kBall) return ball(desc.dimension, desc.radius);
  return from_interior(desc.dimension, desc.interior);
}

LatticeDomain::LatticeDomain(Token, std::size_t dimension, std::vector<Vertex> interior,
                             DomainDescriptor descriptor)
    : dim_(dimension), descriptor_(std::move(descriptor)) {
  std::sort(interior.begin(), interior.end());
  interior.erase(std::unique(interior.begin(), interior.end()), interior.end());
  num_interior_ = interior.size();
  std::vector<Vertex> boundary = outer_boundary_of(interior, dimension);
  sites_ = std::move(interior);
  sites_.insert(sites_.end(), boundary.begin(), boundary.end());

  lo_ = hi_ = Vertex::origin(dimension);
  if (!sites_.empty()) {
    lo_ = hi_ = sites_.front();
    for (const auto& v : sites_) {
      for (std::size_t i = 0; i < dim_; ++i) {
        lo_[i] = std::min(lo_[i], v[i]);
        hi_[i] = std::max(hi_[i], v[i]);
      }
    }
  }

  // Dense index over the bounding box when it is at least a quarter full.
  double volume = 1.0;
  for (std::size_t i = 0; i < dim_; ++i) volume *= static_cast<double>(hi_[i] - lo_[i] + 1);
  if (!sites_.empty() && static_cast<double>(sites_.size()) * 4.0 > volume &&
      volume < 2.0e9) {
    strides_.assign(dim_, 1);
    for (std::size_t i = dim_ - 1; i > 0; --i) {
      strides_[i - 1] = strides_[i] * (hi_[i] - lo_[i] + 1);
    }
    dense_index_.assign(static_cast<std::size_t>(volume), -1);
    for (std::size_t s = 0; s < sites_.size(); ++s) {
      std::int64_t off = 0;
      for (std::size_t i = 0; i < dim_; ++i) off += (sites_[s][i] - lo_[i]) * strides_[i];
      dense_index_[static_cast<std::size_t>(off)] = static_cast<std::int32_t>(s);
    }
  } else {
    sparse_index_.reserve(sites_.size());
    for (std::size_t s = 0; s < sites_.size(); ++s) {
      sparse_index_.emplace(sites_[s], static_cast<SiteIndex>(s));
    }
  }

  adjacency_offsets_.reserve(sites_.size() + 1);
  adjacency_offsets_.push_back(0);
  for (std::size_t s = 0; s < sites_.size(); ++s) {
    for (const auto& w : neighbors(sites_[s])) {
      if (auto j = find(w)) {
        adjacency_.push_back(*j);
        if (*j > s) edges_.push_back(Edge{static_cast<SiteIndex>(s), *j});
      }
    }
    adjacency_offsets_.push_back(adjacency_.size());
  }

  keys_.resize(num_interior_);
  sweep_order_.reserve(num_interior_);
  for (Parity p : {Parity::kEven, Parity::kOdd}) {
    std::uint32_t rank = 0;
    for (std::size_t s = 0; s < num_interior_; ++s) {
      if (sites_[s].parity() != p) continue;
      keys_[s] = SiteKey{p, rank++};
      sweep_order_.push_back(static_cast<SiteIndex>(s));
    }
    class_size_[static_cast<std::size_t>(p)] = rank;
  }
}

std::optional<SiteIndex> LatticeDomain::find(const Vertex& v) const {
  if (v.dimension() != dim_) return std::nullopt;
  if (!dense_index_.empty()) {
    std::int64_t off = 0;
    for (std::size_t i = 0; i < dim_; ++i) {
      if (v[i] < lo_[i] || v[i] > hi_[i]) return std::nullopt;
      off += (v[i] - lo_[i]) * strides_[i];
    }
    std::int32_t s = dense_index_[static_cast<std::size_t>(off)];
    if (s < 0) return std::nullopt;
    return static_cast<SiteIndex>(s);
  }
  auto it = sparse_index_.find(v);
  if (it == sparse_index_.end()) return std::nullopt;
  return it->second;
}

SiteIndex LatticeDomain::index_of(const Vertex& v) const {
  auto s = find(v);
  if (!s) throw Error("vertex " + v.to_string() + " is not in the extended domain");
  return *s;
}

bool LatticeDomain::boundary_is_even() const noexcept {
  return std::all_of(boundary().begin(), boundary().end(),
                     [](const Vertex& v) { return v.parity() == Parity::kEven; });
}

DomainPtr ball_domain(std::size_t dimension, int radius) {
  return LatticeDomain::ball(dimension, radius);
}

std::vector<Vertex> outer_boundary_of(std::span<const Vertex> set, std::size_t dimension) {
  std::unordered_set<Vertex, VertexHash> inside(set.begin(), set.end());
  std::unordered_set<Vertex, VertexHash> out;
  for (const auto& v : set) {
    if (v.dimension() != dimension) {
      throw DimensionError("vertex " + v.to_string() + " does not have dimension " +
                           std::to_string(dimension));
    }
    for (const auto& w : neighbors(v)) {
      if (!inside.contains(w)) out.insert(w);
    }
  }
  std::vector<Vertex> result(out.begin(), out.end());
  std::sort(result.begin(), result.end());
  return result;
}

}  // namespace heightlat
