#include "grid_kernel.hpp"

#include <algorithm>
#include <cstring>

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define HEIGHTLAT_X86 1
#endif

namespace heightlat::detail {

namespace {

// Stored bytes are (h − p)/2 + 128; keep a margin for the ±1 moves.
constexpr Height kByteGuard = 250;
constexpr std::size_t kPadding = 128;

struct ClassArgs {
  std::uint8_t* self[2];
  const std::uint8_t* other[2];
  const std::uint64_t* words;
  std::uint32_t width;
  std::uint8_t p;
  int chains;
  std::span<const GridKernel2D::Run> runs;
};

inline std::uint64_t coin_bits(const std::uint64_t* words, std::uint32_t rank) {
  const std::uint32_t block = rank >> 6;
  const std::uint32_t off = rank & 63;
  std::uint64_t bits = words[block] >> off;
  if (off != 0) bits |= words[block + 1] << (64 - off);
  return bits;
}

inline std::uint8_t update_cell(const std::uint8_t* other, std::uint32_t idx, std::int32_t shift,
                                std::uint32_t width, std::uint8_t p, bool coin) {
  const std::uint8_t a = other[idx];
  const std::uint8_t b = other[idx + shift];
  const std::uint8_t c = other[idx - width];
  const std::uint8_t d = other[idx + width];
  const std::uint8_t mn = std::min(std::min(a, b), std::min(c, d));
  const std::uint8_t mx = std::max(std::max(a, b), std::max(c, d));
  const int up = (mx != mn || coin) ? 1 : 0;
  return static_cast<std::uint8_t>(mn - p + up);
}

void scalar_range(const ClassArgs& g, const GridKernel2D::Run& run, std::uint32_t from) {
  for (std::uint32_t i = from; i < run.len; ++i) {
    const bool coin = coin_bits(g.words, run.rank0 + i) & 1u;
    const std::uint32_t idx = run.base + run.j0 + i;
    for (int c = 0; c < g.chains; ++c) {
      g.self[c][idx] = update_cell(g.other[c], idx, run.shift, g.width, g.p, coin);
    }
  }
}

void sweep_scalar(const ClassArgs& g) {
  for (const auto& run : g.runs) scalar_range(g, run, 0);
}

#if HEIGHTLAT_X86

__attribute__((target("avx2"))) void sweep_avx2(const ClassArgs& g) {
  const __m256i one = _mm256_set1_epi8(1);
  const __m256i spread = _mm256_setr_epi8(0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1,  //
                                          2, 2, 2, 2, 2, 2, 2, 2, 3, 3, 3, 3, 3, 3, 3, 3);
  const __m256i select = _mm256_set1_epi64x(static_cast<long long>(0x8040201008040201ULL));
  const __m256i p_vec = _mm256_set1_epi8(static_cast<char>(g.p));
  for (const auto& run : g.runs) {
    std::uint32_t i = 0;
    for (; i + 32 <= run.len; i += 32) {
      const auto bits = static_cast<std::uint32_t>(coin_bits(g.words, run.rank0 + i));
      __m256i m = _mm256_shuffle_epi8(_mm256_set1_epi32(static_cast<int>(bits)), spread);
      const __m256i coin = _mm256_cmpeq_epi8(_mm256_and_si256(m, select), select);
      const std::uint32_t idx = run.base + run.j0 + i;
      for (int c = 0; c < g.chains; ++c) {
        const std::uint8_t* o = g.other[c];
        const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(o + idx));
        const __m256i b =
            _mm256_loadu_si256(reinterpret_cast<const __m256i*>(o + idx + run.shift));
        const __m256i cc =
            _mm256_loadu_si256(reinterpret_cast<const __m256i*>(o + idx - g.width));
        const __m256i d =
            _mm256_loadu_si256(reinterpret_cast<const __m256i*>(o + idx + g.width));
        const __m256i mn = _mm256_min_epu8(_mm256_min_epu8(a, b), _mm256_min_epu8(cc, d));
        const __m256i mx = _mm256_max_epu8(_mm256_max_epu8(a, b), _mm256_max_epu8(cc, d));
        const __m256i flat = _mm256_cmpeq_epi8(mx, mn);
        const __m256i up = _mm256_or_si256(_mm256_andnot_si256(flat, one),
                                           _mm256_and_si256(coin, one));
        const __m256i next = _mm256_add_epi8(_mm256_sub_epi8(mn, p_vec), up);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(g.self[c] + idx), next);
      }
    }
    scalar_range(g, run, i);
  }
}

__attribute__((target("avx512f,avx512bw"))) void sweep_avx512(const ClassArgs& g) {
  const __m512i one = _mm512_set1_epi8(1);
  const __m512i p_vec = _mm512_set1_epi8(static_cast<char>(g.p));
  for (const auto& run : g.runs) {
    for (std::uint32_t i = 0; i < run.len; i += 64) {
      const std::uint32_t rem = run.len - i;
      const __mmask64 lanes = rem >= 64 ? ~__mmask64{0} : ((__mmask64{1} << rem) - 1);
      const __mmask64 coin = coin_bits(g.words, run.rank0 + i);
      const std::uint32_t idx = run.base + run.j0 + i;
      for (int c = 0; c < g.chains; ++c) {
        const std::uint8_t* o = g.other[c];
        const __m512i a = _mm512_maskz_loadu_epi8(lanes, o + idx);
        const __m512i b = _mm512_maskz_loadu_epi8(lanes, o + idx + run.shift);
        const __m512i cc = _mm512_maskz_loadu_epi8(lanes, o + idx - g.width);
        const __m512i d = _mm512_maskz_loadu_epi8(lanes, o + idx + g.width);
        const __m512i mn = _mm512_min_epu8(_mm512_min_epu8(a, b), _mm512_min_epu8(cc, d));
        const __m512i mx = _mm512_max_epu8(_mm512_max_epu8(a, b), _mm512_max_epu8(cc, d));
        const __mmask64 up = _mm512_cmpneq_epu8_mask(mx, mn) | coin;
        const __m512i base = _mm512_sub_epi8(mn, p_vec);
        const __m512i next = _mm512_mask_add_epi8(base, up, base, one);
        _mm512_mask_storeu_epi8(g.self[c] + idx, lanes, next);
      }
    }
  }
}

#endif

}  // namespace

KernelIsa best_kernel_isa() {
#if HEIGHTLAT_X86
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx512f") && __builtin_cpu_supports("avx512bw")) {
    return KernelIsa::kAvx512;
  }
  if (__builtin_cpu_supports("avx2")) return KernelIsa::kAvx2;
#endif
  return KernelIsa::kScalar;
}

bool GridKernel2D::applicable(const LatticeDomain& domain, const Envelope& envelope) {
  if (domain.dimension() != 2 || domain.num_interior() == 0) return false;
  const Height lowest = *std::min_element(envelope.lower.begin(), envelope.lower.end());
  const Height highest = *std::max_element(envelope.upper.begin(), envelope.upper.end());
  if (lowest < -kByteGuard || highest > kByteGuard) return false;
  const double rows = domain.box_hi()[0] - domain.box_lo()[0] + 3.0;
  const double cols = (domain.box_hi()[1] - domain.box_lo()[1] + 4.0) / 2.0 + 2.0;
  // Sparse domains would waste the bounding box; leave them to the generic path.
  return rows * cols * 2.0 < 64.0 * static_cast<double>(domain.num_sites()) + 4096.0;
}

GridKernel2D::GridKernel2D(const LatticeDomain& domain, KernelIsa isa) : isa_(isa) {
#if !HEIGHTLAT_X86
  isa_ = KernelIsa::kScalar;
#endif
  const std::int64_t r0 = domain.box_lo()[0];
  const std::int64_t r1 = domain.box_hi()[0];
  const std::int64_t c0 = domain.box_lo()[1];
  const std::int64_t c1 = domain.box_hi()[1];
  row0_ = r0;
  col_left_ = c0 - 2;
  rows_ = static_cast<std::uint32_t>(r1 - r0 + 3);
  width_ = static_cast<std::uint32_t>((c1 - c0 + 4) / 2 + 2);

  auto first_col = [&](std::int64_t r, int p) {
    return col_left_ + ((((r + col_left_) & 1) != p) ? 1 : 0);
  };

  cell_of_.resize(domain.num_sites());
  parity_of_.resize(domain.num_sites());
  std::int64_t current[2] = {-1, -1};
  for (std::size_t s = 0; s < domain.num_sites(); ++s) {
    const Vertex& v = domain.vertex(static_cast<SiteIndex>(s));
    const int p = static_cast<int>(v.parity());
    const std::int64_t cf = first_col(v[0], p);
    const auto j = static_cast<std::uint32_t>((v[1] - cf) / 2);
    const auto base = static_cast<std::uint32_t>((v[0] - row0_ + 1) * width_);
    cell_of_[s] = (static_cast<std::uint32_t>(p) << 31) | (base + j);
    parity_of_[s] = static_cast<std::uint8_t>(p);
    if (!domain.is_interior(static_cast<SiteIndex>(s))) continue;

    const std::uint32_t rank = domain.site_key(static_cast<SiteIndex>(s)).rank;
    auto& runs = runs_[p];
    if (current[p] >= 0) {
      Run& run = runs[static_cast<std::size_t>(current[p])];
      if (run.base == base && run.j0 + run.len == j && run.rank0 + run.len == rank) {
        ++run.len;
        continue;
      }
    }
    const std::int32_t shift = (cf == col_left_) ? -1 : +1;
    runs.push_back(Run{base, j, 1, rank, shift});
    current[p] = static_cast<std::int64_t>(runs.size()) - 1;
  }

  const std::size_t cells = static_cast<std::size_t>(rows_) * width_ + kPadding;
  for (auto& chain : cells_) {
    for (auto& arr : chain) arr.assign(cells, 128);
  }
  class_words_[0] = domain.class_size(Parity::kEven) / 64 + 2;
  class_words_[1] = domain.class_size(Parity::kOdd) / 64 + 2;
  words_.assign(std::max(class_words_[0], class_words_[1]), 0);
}

void GridKernel2D::load(int chain, std::span<const Height> values) {
  for (std::size_t s = 0; s < values.size(); ++s) {
    const std::uint32_t c = cell_of_[s];
    cells_[chain][c >> 31][c & 0x7fffffffu] =
        static_cast<std::uint8_t>((values[s] - parity_of_[s]) / 2 + 128);
  }
}

void GridKernel2D::store(int chain, std::span<Height> out) const {
  for (std::size_t s = 0; s < out.size(); ++s) {
    const std::uint32_t c = cell_of_[s];
    const int stored = cells_[chain][c >> 31][c & 0x7fffffffu];
    out[s] = 2 * (stored - 128) + parity_of_[s];
  }
}

void GridKernel2D::sweep(std::int64_t epoch, const RandomSource& rng, int chains) {
  for (int p = 0; p < 2; ++p) {
    const std::uint64_t key = rng.epoch_key(epoch, static_cast<Parity>(p));
    for (std::size_t b = 0; b < class_words_[p]; ++b) words_[b] = RandomSource::block_word(key, b);
    sweep_class(p, chains);
  }
}

void GridKernel2D::sweep_class(int p, int chains) {
  const int q = 1 - p;
  ClassArgs args{{cells_[0][p].data(), cells_[1][p].data()},
                 {cells_[0][q].data(), cells_[1][q].data()},
                 words_.data(),
                 width_,
                 static_cast<std::uint8_t>(p),
                 chains,
                 runs_[p]};
  switch (isa_) {
#if HEIGHTLAT_X86
    case KernelIsa::kAvx512:
      sweep_avx512(args);
      return;
    case KernelIsa::kAvx2:
      sweep_avx2(args);
      return;
#endif
    default:
      sweep_scalar(args);
  }
}

bool GridKernel2D::coalesced() const {
  for (int p = 0; p < 2; ++p) {
    if (std::memcmp(cells_[0][p].data(), cells_[1][p].data(), cells_[0][p].size()) != 0) {
      return false;
    }
  }
  return true;
}

bool GridKernel2D::ordered() const {
  for (int p = 0; p < 2; ++p) {
    for (std::size_t k = 0; k < cells_[0][p].size(); ++k) {
      if (cells_[1][p][k] > cells_[0][p][k]) return false;
    }
  }
  return true;
}

}  // namespace heightlat::detail
