#include "heightlat/vertex.hpp"

#include <cstdlib>
#include <ostream>
#include <sstream>

#include "heightlat/error.hpp"

namespace heightlat {

Vertex::Vertex(std::initializer_list<int> coords)
    : Vertex(std::span<const int>(coords.begin(), coords.size())) {}

Vertex::Vertex(std::span<const int> coords) {
  if (coords.empty() || coords.size() > kMaxDimension) {
    throw DimensionError("vertex dimension must be in [1, " +
                         std::to_string(kMaxDimension) + "], got " +
                         std::to_string(coords.size()));
  }
  dim_ = static_cast<std::uint8_t>(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) coords_[i] = coords[i];
}

Vertex Vertex::origin(std::size_t dimension) {
  std::array<int, kMaxDimension> zeros{};
  return Vertex(std::span<const int>(zeros.data(), dimension));
}

std::int64_t Vertex::l1_norm() const noexcept {
  std::int64_t n = 0;
  for (std::size_t i = 0; i < dim_; ++i) n += std::llabs(coords_[i]);
  return n;
}

Parity Vertex::parity() const noexcept {
  return (l1_norm() & 1) ? Parity::kOdd : Parity::kEven;
}

Vertex Vertex::shifted(std::size_t axis, int delta) const {
  Vertex out = *this;
  out.coords_[axis] += delta;
  return out;
}

Vertex Vertex::operator+(const Vertex& other) const {
  Vertex out = *this;
  for (std::size_t i = 0; i < dim_; ++i) out.coords_[i] += other.coords_[i];
  return out;
}

Vertex Vertex::operator-(const Vertex& other) const {
  Vertex out = *this;
  for (std::size_t i = 0; i < dim_; ++i) out.coords_[i] -= other.coords_[i];
  return out;
}

std::string Vertex::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::int64_t l1_distance(const Vertex& a, const Vertex& b) noexcept {
  std::int64_t n = 0;
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    n += std::llabs(static_cast<long long>(a[i]) - b[i]);
  }
  return n;
}

std::vector<Vertex> neighbors(const Vertex& v) {
  std::vector<Vertex> out;
  out.reserve(2 * v.dimension());
  for (std::size_t axis = 0; axis < v.dimension(); ++axis) {
    out.push_back(v.shifted(axis, -1));
    out.push_back(v.shifted(axis, +1));
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Vertex& v) {
  os << '(';
  for (std::size_t i = 0; i < v.dimension(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  return os << ')';
}

std::size_t VertexHash::operator()(const Vertex& v) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ v.dimension();
  for (int c : v.coords()) {
    h ^= static_cast<std::uint32_t>(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

}  // namespace heightlat
