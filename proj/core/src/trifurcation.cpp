#include "heightlat/trifurcation.hpp"

#include <bit>

#include "heightlat/error.hpp"

namespace heightlat {

BinaryWindow::BinaryWindow(Vertex lo, Vertex hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_.dimension() != hi_.dimension()) {
    throw DimensionError("BinaryWindow corners have different dimensions");
  }
  std::int64_t total = 1;
  strides_.assign(lo_.dimension(), 0);
  for (std::size_t i = lo_.dimension(); i-- > 0;) {
    if (hi_[i] < lo_[i]) throw PreconditionViolation("BinaryWindow with empty extent");
    strides_[i] = total;
    total *= static_cast<std::int64_t>(hi_[i]) - lo_[i] + 1;
    if (total > (std::int64_t{1} << 31)) throw DomainTooLarge("BinaryWindow too large", 1u << 31);
  }
  bits_.assign(static_cast<std::size_t>(total), 0);
}

BinaryWindow BinaryWindow::from_predicate(Vertex lo, Vertex hi,
                                          const std::function<bool(const Vertex&)>& pred) {
  BinaryWindow w(std::move(lo), std::move(hi));
  for (std::size_t i = 0; i < w.size(); ++i) w.bits_[i] = pred(w.vertex(i)) ? 1 : 0;
  return w;
}

bool BinaryWindow::contains(const Vertex& v) const noexcept {
  if (v.dimension() != dimension()) return false;
  for (std::size_t i = 0; i < dimension(); ++i) {
    if (v[i] < lo_[i] || v[i] > hi_[i]) return false;
  }
  return true;
}

bool BinaryWindow::on_face(const Vertex& v) const noexcept {
  for (std::size_t i = 0; i < dimension(); ++i) {
    if (v[i] == lo_[i] || v[i] == hi_[i]) return true;
  }
  return false;
}

std::size_t BinaryWindow::index(const Vertex& v) const {
  if (!contains(v)) throw PreconditionViolation(v.to_string() + " is outside the window");
  std::int64_t idx = 0;
  for (std::size_t i = 0; i < dimension(); ++i) idx += (v[i] - lo_[i]) * strides_[i];
  return static_cast<std::size_t>(idx);
}

Vertex BinaryWindow::vertex(std::size_t index) const {
  Vertex v = lo_;
  auto rest = static_cast<std::int64_t>(index);
  for (std::size_t i = 0; i < dimension(); ++i) {
    v = v.shifted(i, static_cast<int>(rest / strides_[i]));
    rest %= strides_[i];
  }
  return v;
}

bool BinaryWindow::get(const Vertex& v) const { return bits_[index(v)] != 0; }
void BinaryWindow::set(const Vertex& v, bool value) { bits_[index(v)] = value ? 1 : 0; }

BinaryWindow comb_window(int half_width) {
  return BinaryWindow::from_predicate(
      Vertex{-half_width, -half_width}, Vertex{half_width, half_width},
      [](const Vertex& v) { return v[0] % 2 == 0 || v[1] == 0; });
}

namespace {

constexpr std::int32_t kNone = -1;

class ClusterSearch {
 public:
  ClusterSearch(const BinaryWindow& omega, const Vertex& v, int radius) : omega_(omega) {
    const std::size_t d = omega.dimension();
    if (v.dimension() != d) throw DimensionError("ball center has the wrong dimension");
    for (std::size_t i = 0; i < d; ++i) {
      if (v[i] - radius - 1 < omega.lo()[i] || v[i] + radius + 1 > omega.hi()[i]) {
        throw WindowTooSmall("window must contain the ball around " + v.to_string() +
                             " with margin 1");
      }
    }
    const std::size_t n = omega.size();
    nbr_.assign(n * 2 * d, kNone);
    face_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const Vertex u = omega.vertex(i);
      face_[i] = omega.on_face(u);
      std::size_t k = 0;
      for (const Vertex& w : neighbors(u)) {
        if (omega.contains(w)) nbr_[i * 2 * d + k] = static_cast<std::int32_t>(omega.index(w));
        ++k;
      }
    }
    label_clusters();

    // Occupied cells of the ball.
    for (std::size_t i = 0; i < n; ++i) {
      const Vertex u = omega.vertex(i);
      if (l1_distance(u, v) <= radius && label_[i] != kNone) ball_.push_back(i);
    }
    stamp_.assign(n, 0);
    removed_.assign(n, 0);
  }

  /// Face-reaching clusters meeting the ball, with their ball cells.
  std::vector<std::vector<std::size_t>> candidate_sets() const {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::int32_t> seen;
    for (std::size_t c : ball_) {
      const std::int32_t id = label_[c];
      if (!touches_face_[static_cast<std::size_t>(id)]) continue;
      std::size_t slot = 0;
      while (slot < seen.size() && seen[slot] != id) ++slot;
      if (slot == seen.size()) {
        seen.push_back(id);
        out.emplace_back();
      }
      out[slot].push_back(c);
    }
    return out;
  }

  /// Number of face-reaching components of 𝒞 ∖ D, stopping at `stop_at`.
  int split_count(const std::vector<std::size_t>& removed, int stop_at) {
    for (std::size_t c : removed) removed_[c] = 1;
    ++generation_;
    int count = 0;
    const std::size_t deg = 2 * omega_.dimension();
    std::vector<std::size_t> stack;
    for (std::size_t c : removed) {
      for (std::size_t k = 0; k < deg && count < stop_at; ++k) {
        const std::int32_t s = nbr_[c * deg + k];
        if (s == kNone || label_[s] == kNone || removed_[s] || stamp_[s] == generation_) continue;
        bool reaches_face = false;
        stamp_[s] = generation_;
        stack.assign(1, static_cast<std::size_t>(s));
        while (!stack.empty()) {
          const std::size_t u = stack.back();
          stack.pop_back();
          reaches_face |= face_[u] != 0;
          for (std::size_t j = 0; j < deg; ++j) {
            const std::int32_t w = nbr_[u * deg + j];
            if (w == kNone || label_[w] == kNone || removed_[w] || stamp_[w] == generation_) {
              continue;
            }
            stamp_[w] = generation_;
            stack.push_back(static_cast<std::size_t>(w));
          }
        }
        if (reaches_face) ++count;
      }
    }
    for (std::size_t c : removed) removed_[c] = 0;
    return count;
  }

  bool adjacent(std::size_t a, std::size_t b) const {
    const std::size_t deg = 2 * omega_.dimension();
    for (std::size_t k = 0; k < deg; ++k) {
      if (nbr_[a * deg + k] == static_cast<std::int32_t>(b)) return true;
    }
    return false;
  }

 private:
  void label_clusters() {
    const std::size_t n = omega_.size();
    const std::size_t deg = 2 * omega_.dimension();
    label_.assign(n, kNone);
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < n; ++i) {
      if (label_[i] != kNone || !omega_.get(omega_.vertex(i))) continue;
      const auto id = static_cast<std::int32_t>(touches_face_.size());
      bool face = false;
      label_[i] = id;
      stack.assign(1, i);
      while (!stack.empty()) {
        const std::size_t u = stack.back();
        stack.pop_back();
        face |= face_[u] != 0;
        for (std::size_t k = 0; k < deg; ++k) {
          const std::int32_t w = nbr_[u * deg + k];
          if (w == kNone || label_[w] != kNone || !omega_.get(omega_.vertex(w))) continue;
          label_[w] = id;
          stack.push_back(static_cast<std::size_t>(w));
        }
      }
      touches_face_.push_back(face);
    }
  }

  const BinaryWindow& omega_;
  std::vector<std::int32_t> nbr_;
  std::vector<std::uint8_t> face_;
  std::vector<std::int32_t> label_;
  std::vector<bool> touches_face_;
  std::vector<std::size_t> ball_;
  std::vector<std::uint32_t> stamp_;
  std::vector<std::uint8_t> removed_;
  std::uint32_t generation_ = 0;
};

// Enumerates connected subsets of a small cell set (ESU scheme: each subset
// is produced once, from its lowest cell).
class ConnectedSubsets {
 public:
  ConnectedSubsets(const ClusterSearch& search, const std::vector<std::size_t>& cells)
      : cells_(cells), adj_(cells.size(), 0) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      for (std::size_t j = 0; j < cells.size(); ++j) {
        if (i != j && search.adjacent(cells[i], cells[j])) adj_[i] |= std::uint64_t{1} << j;
      }
    }
  }

  /// Calls visit on each subset until it returns true.
  bool any(const std::function<bool(std::uint64_t)>& visit) {
    visit_ = &visit;
    for (std::size_t r = 0; r < cells_.size(); ++r) {
      const std::uint64_t root = std::uint64_t{1} << r;
      above_ = ~((root << 1) - 1);
      if (extend(root, adj_[r] & above_, root | adj_[r])) return true;
    }
    return false;
  }

 private:
  bool extend(std::uint64_t sub, std::uint64_t ext, std::uint64_t closed) {
    if ((*visit_)(sub)) return true;
    while (ext != 0) {
      const int w = std::countr_zero(ext);
      const std::uint64_t bit = std::uint64_t{1} << w;
      ext &= ~bit;
      const std::uint64_t next_ext = ext | (adj_[w] & ~closed & above_);
      if (extend(sub | bit, next_ext, closed | adj_[w])) return true;
    }
    return false;
  }

  const std::vector<std::size_t>& cells_;
  std::vector<std::uint64_t> adj_;
  std::uint64_t above_ = 0;
  const std::function<bool(std::uint64_t)>* visit_ = nullptr;
};

}  // namespace

bool is_trifurcation_ball(const BinaryWindow& omega, const Vertex& v, int radius,
                          const TrifurcationOptions& options) {
  if (radius < 0) throw PreconditionViolation("negative ball radius");
  if (radius > options.max_radius) {
    throw PreconditionViolation("radius " + std::to_string(radius) +
                                " exceeds the exhaustive search cap " +
                                std::to_string(options.max_radius));
  }
  ClusterSearch search(omega, v, radius);
  for (const auto& cells : search.candidate_sets()) {
    if (cells.size() > 64) throw DomainTooLarge("ball too large for subset search", 64);
    ConnectedSubsets subsets(search, cells);
    std::vector<std::size_t> removed;
    const bool found = subsets.any([&](std::uint64_t mask) {
      removed.clear();
      for (std::uint64_t m = mask; m != 0; m &= m - 1) removed.push_back(cells[std::countr_zero(m)]);
      return search.split_count(removed, 3) >= 3;
    });
    if (found) return true;
  }
  return false;
}

bool is_trifurcation_ball_alternative(const BinaryWindow& omega, const Vertex& v, int radius) {
  if (radius < 0) throw PreconditionViolation("negative ball radius");
  ClusterSearch search(omega, v, radius);
  for (const auto& cells : search.candidate_sets()) {
    if (search.split_count(cells, 3) >= 3) return true;
  }
  return false;
}

}  // namespace heightlat
