#pragma once

// Checkerboard heat-bath kernel for planar domains. Sites are split by
// parity into two arrays so that same-class sites of a row are contiguous
// and their four neighbors are unit-stride loads from the other array.
// A height h at a site of parity p is stored as the byte (h − p)/2 + 128;
// in these units the heat-bath rule becomes min − p + [max != min or coin].
// Runs two coupled chains that share coins.

#include <cstdint>
#include <span>
#include <vector>

#include "heightlat/domain.hpp"
#include "heightlat/height_function.hpp"
#include "heightlat/random.hpp"

namespace heightlat::detail {

enum class KernelIsa { kScalar, kAvx2, kAvx512 };

/// Best instruction set supported by the running CPU.
KernelIsa best_kernel_isa();

class GridKernel2D {
 public:
  /// d = 2, nonempty interior, envelope within the byte encoding, and a
  /// bounding box that is not mostly empty.
  static bool applicable(const LatticeDomain& domain, const Envelope& envelope);

  explicit GridKernel2D(const LatticeDomain& domain, KernelIsa isa = best_kernel_isa());

  KernelIsa isa() const noexcept { return isa_; }

  void load(int chain, std::span<const Height> values);
  void store(int chain, std::span<Height> out) const;

  /// One sweep (even class, then odd) of chains [0, chains).
  void sweep(std::int64_t epoch, const RandomSource& rng, int chains);

  bool coalesced() const;
  /// chain 1 <= chain 0 at every site.
  bool ordered() const;

  struct Run {
    std::uint32_t base;   // row offset in the class array
    std::uint32_t j0;     // first column index
    std::uint32_t len;
    std::uint32_t rank0;  // class rank of the first site
    std::int32_t shift;   // same-row neighbor offset, -1 or +1
  };

 private:
  void sweep_class(int p, int chains);

  KernelIsa isa_;
  std::int64_t row0_ = 0, col_left_ = 0;
  std::uint32_t width_ = 0, rows_ = 0;
  std::vector<std::uint32_t> cell_of_;       // (class << 31) | offset, per site
  std::vector<std::uint8_t> parity_of_;      // per site
  std::vector<Run> runs_[2];
  std::vector<std::uint8_t> cells_[2][2];    // [chain][class]
  std::vector<std::uint64_t> words_;
  std::size_t class_words_[2] = {0, 0};
};

}  // namespace heightlat::detail
