#pragma once

#include <cstdint>

#include "heightlat/domain.hpp"

namespace heightlat {

/// SplitMix64 output function.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Per-chain seed derived from a master seed and a chain index.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return mix64(master ^ mix64(index + 0x632be59bd9b4e019ULL));
}

/// Stateless counter-based randomness. Every value is a pure function of
/// (seed, epoch, site): re-reading an epoch always reproduces the same
/// numbers, which is what coupling from the past relies on.
///
/// Site randomness is laid out per parity class: the coin of the interior
/// site with key (class, rank) is bit (rank mod 64) of
/// block_bits(epoch, class, rank / 64).
class RandomSource {
 public:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  explicit RandomSource(std::uint64_t seed) noexcept : seed_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t epoch_key(std::int64_t epoch, Parity stream) const noexcept {
    std::uint64_t counter = static_cast<std::uint64_t>(epoch) * 2 + static_cast<std::uint64_t>(stream);
    return mix64(seed_ + kGamma * (1 + mix64(counter ^ 0x2545f4914f6cdd1dULL)));
  }

  static std::uint64_t block_word(std::uint64_t epoch_key, std::uint64_t block) noexcept {
    return mix64(epoch_key + kGamma * (block + 1));
  }

  std::uint64_t block_bits(std::int64_t epoch, Parity stream, std::uint64_t block) const noexcept {
    return block_word(epoch_key(epoch, stream), block);
  }

  /// Fair coin of a site; equals uniform(epoch, key) >= 1/2.
  bool coin(std::int64_t epoch, SiteKey key) const noexcept {
    return (block_bits(epoch, key.klass, key.rank >> 6) >> (key.rank & 63)) & 1;
  }

  /// One uniform real in [0, 1) per (epoch, site).
  double uniform(std::int64_t epoch, SiteKey key) const noexcept;

 private:
  std::uint64_t seed_;
};

}  // namespace heightlat
