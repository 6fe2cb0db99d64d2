#include "heightlat/oracle.hpp"

#include <algorithm>
#include <limits>

namespace heightlat {

void ExactDistribution::add(Height value, const BigInt& count) {
  if (count <= 0) throw Error("ExactDistribution counts must be positive");
  counts_[value] += count;
  total_ += count;
}

Rational ExactDistribution::probability(Height value) const {
  auto it = counts_.find(value);
  if (it == counts_.end() || total_ == 0) return Rational(0);
  return Rational(it->second, total_);
}

std::vector<std::pair<Height, Rational>> ExactDistribution::support() const {
  std::vector<std::pair<Height, Rational>> out;
  out.reserve(counts_.size());
  for (const auto& [v, c] : counts_) out.emplace_back(v, Rational(c, total_));
  return out;
}

Rational ExactDistribution::mean() const {
  BigInt s = 0;
  for (const auto& [v, c] : counts_) s += c * v;
  return Rational(s, total_);
}

Rational ExactDistribution::second_moment() const {
  BigInt s = 0;
  for (const auto& [v, c] : counts_) s += c * (static_cast<std::int64_t>(v) * v);
  return Rational(s, total_);
}

Rational ExactDistribution::variance() const {
  Rational m = mean();
  return second_moment() - m * m;
}

ExactDistribution ExactDistribution::absolute() const {
  ExactDistribution out;
  for (const auto& [v, c] : counts_) out.add(v < 0 ? -v : v, c);
  return out;
}

namespace {

// Iterative DFS over interior sites; see enumerate_all.
class Dfs {
 public:
  Dfs(const BoundaryCondition& tau, const EnumerationLimits& limits)
      : dom_(tau.domain()), n_(dom_.num_interior()), limits_(limits) {
    Envelope env = extension_envelope(tau);
    lo_ = std::move(env.lower);
    hi_ = std::move(env.upper);
    values_.assign(dom_.num_sites(), 0);
    for (std::size_t b = 0; b < dom_.num_boundary(); ++b) {
      values_[n_ + b] = tau.values()[b];
    }
    constraints_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      for (SiteIndex w : dom_.neighbors_of(static_cast<SiteIndex>(i))) {
        if (w >= n_ || w < i) constraints_[i].push_back(w);
      }
    }
    cur_.assign(n_, 0);
    end_.assign(n_, 0);
    if (limits_.max_nodes == 0) {
      limits_.max_nodes = limits_.max_leaves > std::numeric_limits<std::uint64_t>::max() / 64
                              ? std::numeric_limits<std::uint64_t>::max()
                              : 64 * limits_.max_leaves;
    }
  }

  std::uint64_t run(const ConfigurationVisitor& visit) {
    if (n_ == 0) {
      visit(values_);
      return 1;
    }
    std::uint64_t leaves = 0;
    std::uint64_t nodes = 0;
    std::size_t i = 0;
    open(0);
    while (true) {
      if (cur_[i] > end_[i]) {
        if (i == 0) break;
        --i;
        cur_[i] += 2;
        continue;
      }
      values_[i] = cur_[i];
      if (++nodes > limits_.max_nodes) {
        throw DomainTooLarge("enumeration exceeded the search-node ceiling",
                             limits_.max_nodes);
      }
      if (i + 1 == n_) {
        if (++leaves > limits_.max_leaves) {
          throw DomainTooLarge("enumeration exceeded the configuration ceiling",
                               limits_.max_leaves);
        }
        visit(values_);
        cur_[i] += 2;
        continue;
      }
      ++i;
      open(i);
    }
    return leaves;
  }

 private:
  // Admissible values at site i given boundary and earlier sites.
  void open(std::size_t i) {
    Height lo = lo_[i];
    Height hi = hi_[i];
    for (SiteIndex w : constraints_[i]) {
      lo = std::max(lo, values_[w] - 1);
      hi = std::min(hi, values_[w] + 1);
    }
    cur_[i] = lo;
    end_[i] = hi;
  }

  const LatticeDomain& dom_;
  std::size_t n_;
  EnumerationLimits limits_;
  std::vector<Height> lo_, hi_, values_, cur_, end_;
  std::vector<std::vector<SiteIndex>> constraints_;
};

}  // namespace

BigInt enumerate_all(const BoundaryCondition& tau, const ConfigurationVisitor& visit,
                     const EnumerationLimits& limits) {
  Dfs dfs(tau, limits);
  return BigInt(dfs.run(visit));
}

std::vector<HeightFunction> collect_all(const BoundaryCondition& tau,
                                        const EnumerationLimits& limits) {
  std::vector<HeightFunction> out;
  enumerate_all(
      tau,
      [&](std::span<const Height> v) {
        out.push_back(HeightFunction::trusted(tau.domain_ptr(),
                                              std::vector<Height>(v.begin(), v.end())));
      },
      limits);
  return out;
}

BigInt count_extensions(const BoundaryCondition& tau, const EnumerationLimits& limits) {
  return enumerate_all(tau, [](std::span<const Height>) {}, limits);
}

std::vector<ExactDistribution> site_marginals(const BoundaryCondition& tau,
                                              const EnumerationLimits& limits) {
  const auto& dom = tau.domain();
  Envelope env = extension_envelope(tau);
  // Dense per-site histograms over the envelope, converted at the end.
  std::vector<std::vector<std::uint64_t>> hist(dom.num_sites());
  for (std::size_t s = 0; s < dom.num_sites(); ++s) {
    hist[s].assign(static_cast<std::size_t>(env.upper[s] - env.lower[s]) / 2 + 1, 0);
  }
  enumerate_all(
      tau,
      [&](std::span<const Height> v) {
        for (std::size_t s = 0; s < v.size(); ++s) {
          ++hist[s][static_cast<std::size_t>(v[s] - env.lower[s]) / 2];
        }
      },
      limits);
  std::vector<ExactDistribution> out(dom.num_sites());
  for (std::size_t s = 0; s < dom.num_sites(); ++s) {
    for (std::size_t k = 0; k < hist[s].size(); ++k) {
      if (hist[s][k]) out[s].add(env.lower[s] + 2 * static_cast<Height>(k), BigInt(hist[s][k]));
    }
  }
  return out;
}

ExactDistribution marginal_at(const BoundaryCondition& tau, const Vertex& v,
                              const EnumerationLimits& limits) {
  SiteIndex s = tau.domain().index_of(v);
  ExactDistribution out;
  std::map<Height, std::uint64_t> counts;
  enumerate_all(tau, [&](std::span<const Height> vals) { ++counts[vals[s]]; }, limits);
  for (const auto& [value, c] : counts) out.add(value, BigInt(c));
  return out;
}

ExactDistribution conditional_site_law(const HeightFunction& h, SiteIndex v) {
  const auto& dom = h.domain();
  if (!dom.is_interior(v)) {
    throw NotInterior("conditional_site_law needs an interior vertex, got " +
                      dom.vertex(v).to_string());
  }
  auto nbrs = dom.neighbors_of(v);
  ExactDistribution out;
  // Candidates are the values adjacent to the first neighbor; keep those
  // adjacent to every neighbor.
  Height a = h[nbrs.front()];
  for (Height m : {a - 1, a + 1}) {
    bool ok = std::all_of(nbrs.begin(), nbrs.end(),
                          [&](SiteIndex w) { return std::abs(m - h[w]) == 1; });
    if (ok) out.add(m);
  }
  return out;
}

BigInt enumerate_pairs(const BoundaryCondition& tau_f, const BoundaryCondition& tau_g,
                       const PairVisitor& visit, const EnumerationLimits& limits) {
  if (tau_f.domain_ptr() != tau_g.domain_ptr()) {
    throw Error("enumerate_pairs needs both boundary conditions on the same domain");
  }
  tau_f.check_feasible();
  tau_g.check_feasible();
  const std::size_t width = tau_f.domain().num_sites();
  auto flatten = [&](const BoundaryCondition& tau) {
    std::vector<Height> flat;
    enumerate_all(
        tau, [&](std::span<const Height> v) { flat.insert(flat.end(), v.begin(), v.end()); },
        limits);
    return flat;
  };
  std::vector<Height> fs = flatten(tau_f);
  std::vector<Height> gs = flatten(tau_g);
  const std::size_t nf = width ? fs.size() / width : 1;
  const std::size_t ng = width ? gs.size() / width : 1;
  BigInt total = BigInt(nf) * ng;
  if (total > limits.max_leaves) {
    throw DomainTooLarge("pair enumeration exceeded the configuration ceiling",
                         limits.max_leaves);
  }
  std::span<const Height> fspan(fs), gspan(gs);
  for (std::size_t i = 0; i < nf; ++i) {
    for (std::size_t j = 0; j < ng; ++j) {
      visit(fspan.subspan(i * width, width), gspan.subspan(j * width, width));
    }
  }
  return total;
}

std::map<std::vector<Height>, Rational> sweep_transition_law(const HeightFunction& h) {
  const auto& dom = h.domain();
  auto order = dom.sweep_order();
  std::map<std::vector<Height>, Rational> law;
  std::vector<Height> state(h.values().begin(), h.values().end());

  std::function<void(std::size_t, const Rational&)> branch = [&](std::size_t pos,
                                                                 const Rational& weight) {
    if (pos == order.size()) {
      law[state] += weight;
      return;
    }
    SiteIndex v = order[pos];
    auto current = HeightFunction::trusted(h.domain_ptr(), state);
    ExactDistribution site = conditional_site_law(current, v);
    Height saved = state[v];
    for (const auto& [value, p] : site.support()) {
      state[v] = value;
      branch(pos + 1, weight * p);
    }
    state[v] = saved;
  };
  branch(0, Rational(1));
  return law;
}

}  // namespace heightlat
