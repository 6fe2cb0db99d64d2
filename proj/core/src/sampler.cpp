#include "heightlat/sampler.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

#include "grid_kernel.hpp"

namespace heightlat {

Height heat_bath_value(const LatticeDomain& domain, std::span<const Height> values,
                       SiteIndex v, bool upper) {
  auto nbrs = domain.neighbors_of(v);
  Height mn = values[nbrs[0]];
  Height mx = mn;
  for (SiteIndex w : nbrs.subspan(1)) {
    mn = std::min(mn, values[w]);
    mx = std::max(mx, values[w]);
  }
  if (mx > mn) return mn + 1;
  return upper ? mn + 1 : mn - 1;
}

void heat_bath_update(ChainState& state, SiteIndex v, double u) {
  const auto& dom = state.current.domain();
  if (!dom.is_interior(v)) {
    throw NotInterior("heat_bath_update at non-interior vertex " + dom.vertex(v).to_string());
  }
  std::vector<Height> values(state.current.values().begin(), state.current.values().end());
  values[v] = heat_bath_value(dom, values, v, u >= 0.5);
  state.current = HeightFunction::trusted(state.current.domain_ptr(), std::move(values));
}

namespace {

void sweep_values(const LatticeDomain& dom, std::vector<Height>& values, std::int64_t epoch,
                  const RandomSource& rng) {
  for (SiteIndex v : dom.sweep_order()) {
    values[v] = heat_bath_value(dom, values, v, rng.coin(epoch, dom.site_key(v)));
  }
}

class SandwichChains {
 public:
  SandwichChains(const LatticeDomain& dom, const Envelope& env, bool allow_fast)
      : dom_(dom), env_(env) {
    if (allow_fast && detail::GridKernel2D::applicable(dom, env)) kernel_.emplace(dom);
  }

  void reset() {
    if (kernel_) {
      kernel_->load(0, env_.upper);
      kernel_->load(1, env_.lower);
    } else {
      top_ = env_.upper;
      bottom_ = env_.lower;
    }
    merged_ = false;
  }

  void sweep(std::int64_t epoch, const RandomSource& rng) {
    if (kernel_) {
      kernel_->sweep(epoch, rng, merged_ ? 1 : 2);
    } else {
      sweep_values(dom_, top_, epoch, rng);
      if (!merged_) sweep_values(dom_, bottom_, epoch, rng);
    }
  }

  bool coalesced() {
    if (!merged_) merged_ = kernel_ ? kernel_->coalesced() : top_ == bottom_;
    return merged_;
  }

  bool ordered() const {
    if (merged_) return true;
    if (kernel_) return kernel_->ordered();
    for (std::size_t s = 0; s < top_.size(); ++s) {
      if (bottom_[s] > top_[s]) return false;
    }
    return true;
  }

  std::vector<Height> top() const {
    if (!kernel_) return top_;
    std::vector<Height> out(dom_.num_sites());
    kernel_->store(0, out);
    return out;
  }

 private:
  const LatticeDomain& dom_;
  const Envelope& env_;
  std::optional<detail::GridKernel2D> kernel_;
  std::vector<Height> top_, bottom_;
  bool merged_ = false;
};

}  // namespace

void sweep(ChainState& state, std::int64_t epoch, const RandomSource& rng) {
  const auto& dom = state.current.domain();
  std::vector<Height> values(state.current.values().begin(), state.current.values().end());
  sweep_values(dom, values, epoch, rng);
  state.current = HeightFunction::trusted(state.current.domain_ptr(), std::move(values));
  ++state.sweep_count;
}

CftpResult cftp_sample(const BoundaryCondition& tau, const RandomSource& rng,
                       const CftpOptions& options) {
  const auto& dom = tau.domain();
  const Envelope env = extension_envelope(tau);
  SandwichChains chains(dom, env, options.allow_fast_kernel);
  // Coalescence is only polled periodically; once merged a single chain runs.
  constexpr std::int64_t kPollInterval = 32;

  CftpResult result;
  for (std::int64_t horizon = std::max<std::int64_t>(1, options.initial_horizon);; horizon *= 2) {
    if (horizon > options.max_epochs) {
      throw NoCoalescence("CFTP did not coalesce within " + std::to_string(options.max_epochs) +
                              " epochs",
                          options.max_epochs);
    }
    chains.reset();
    for (std::int64_t t = -horizon; t < 0; ++t) {
      if (options.on_epoch) options.on_epoch(horizon, t);
      chains.sweep(t, rng);
      ++result.sweeps;
      if (options.check_sandwich && !chains.ordered()) {
        throw Error("CFTP sandwich order violated at epoch " + std::to_string(t));
      }
      if ((t + horizon) % kPollInterval == kPollInterval - 1) chains.coalesced();
    }
    if (chains.coalesced()) {
      result.horizon = horizon;
      result.sample = HeightFunction::trusted(tau.domain_ptr(), chains.top());
      return result;
    }
  }
}

std::int64_t suggested_initial_horizon(std::size_t dimension, int radius) {
  if (dimension != 2 || radius < 1) return 1;
  return 3 * static_cast<std::int64_t>(radius) * radius;
}

std::vector<std::uint64_t> seed_sequence(std::uint64_t master, std::size_t n) {
  std::vector<std::uint64_t> seeds(n);
  for (std::size_t i = 0; i < n; ++i) seeds[i] = derive_seed(master, i);
  return seeds;
}

std::vector<CftpResult> sample_batch(const BoundaryCondition& tau,
                                     std::span<const std::uint64_t> seeds, std::size_t threads,
                                     const CftpOptions& options) {
  if (seeds.empty()) throw Error("sample_batch needs at least one seed");
  tau.check_feasible();
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, seeds.size());

  std::vector<CftpResult> out(seeds.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= seeds.size()) return;
      try {
        out[i] = cftp_sample(tau, RandomSource(seeds[i]), options);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = seeds.size();
        return;
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<HeightFunction> glauber_samples(const BoundaryCondition& tau,
                                            const RandomSource& rng,
                                            const GlauberOptions& options) {
  const auto& dom = tau.domain();
  std::vector<Height> values = extension_envelope(tau).lower;
  std::vector<HeightFunction> out;
  out.reserve(options.samples);
  std::int64_t epoch = 0;
  for (std::uint64_t i = 0; i < options.burn_in; ++i) sweep_values(dom, values, epoch++, rng);
  const std::uint64_t thinning = std::max<std::uint64_t>(1, options.thinning);
  for (std::size_t k = 0; k < options.samples; ++k) {
    for (std::uint64_t i = 0; i < thinning; ++i) sweep_values(dom, values, epoch++, rng);
    out.push_back(HeightFunction::trusted(tau.domain_ptr(), values));
  }
  return out;
}

}  // namespace heightlat
