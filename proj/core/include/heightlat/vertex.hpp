#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace heightlat {

enum class Parity : std::uint8_t { kEven = 0, kOdd = 1 };

/// A point of Z^d. Coordinates beyond dimension() are always zero, so the
/// defaulted comparison is lexicographic on (dimension, coordinates).
class Vertex {
 public:
  static constexpr std::size_t kMaxDimension = 8;

  Vertex() = default;
  Vertex(std::initializer_list<int> coords);
  explicit Vertex(std::span<const int> coords);

  /// The origin of Z^d.
  static Vertex origin(std::size_t dimension);

  std::size_t dimension() const noexcept { return dim_; }
  int operator[](std::size_t i) const noexcept { return coords_[i]; }
  int& operator[](std::size_t i) noexcept { return coords_[i]; }
  std::span<const int> coords() const noexcept { return {coords_.data(), dim_}; }

  std::int64_t l1_norm() const noexcept;
  Parity parity() const noexcept;

  /// The vertex displaced by `delta` along `axis`.
  Vertex shifted(std::size_t axis, int delta) const;
  Vertex operator+(const Vertex& other) const;
  Vertex operator-(const Vertex& other) const;

  auto operator<=>(const Vertex&) const = default;
  bool operator==(const Vertex&) const = default;

  std::string to_string() const;

 private:
  std::uint8_t dim_ = 0;
  std::array<int, kMaxDimension> coords_{};
};

std::int64_t l1_distance(const Vertex& a, const Vertex& b) noexcept;

/// The 2d lattice neighbors of v, ordered by axis and then by -1 before +1.
std::vector<Vertex> neighbors(const Vertex& v);

std::ostream& operator<<(std::ostream& os, const Vertex& v);

struct VertexHash {
  std::size_t operator()(const Vertex& v) const noexcept;
};

}  // namespace heightlat
