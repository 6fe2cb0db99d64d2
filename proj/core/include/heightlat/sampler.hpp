#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "heightlat/height_function.hpp"
#include "heightlat/random.hpp"

namespace heightlat {

struct ChainState {
  HeightFunction current;
  std::uint64_t sweep_count = 0;
};

/// Heat-bath value at interior site v: the forced value when the neighbors
/// disagree, otherwise a + 1 if `upper` and a − 1 if not (a the common
/// neighbor value).
Height heat_bath_value(const LatticeDomain& domain, std::span<const Height> values,
                       SiteIndex v, bool upper);

/// Resamples h(v) with the uniform u (u >= 1/2 selects the larger value).
/// Throws NotInterior.
void heat_bath_update(ChainState& state, SiteIndex v, double u);

/// One systematic scan: heat-bath at every interior site in sweep order with
/// u = rng.uniform(epoch, site).
void sweep(ChainState& state, std::int64_t epoch, const RandomSource& rng);

struct CftpOptions {
  /// Largest horizon T tried before giving up.
  std::int64_t max_epochs = std::int64_t{1} << 24;
  /// First horizon tried; later attempts double it. Any fixed schedule keeps
  /// the output exact, a larger start only skips attempts that would fail.
  std::int64_t initial_horizon = 1;
  /// Verify bottom <= top after every sweep (throws Error on failure).
  bool check_sandwich = false;
  /// Called once per sweep with (horizon T, epoch t) before epoch t's
  /// randomness is used.
  std::function<void(std::int64_t, std::int64_t)> on_epoch;
  /// Use the vectorised planar kernel when the domain allows it.
  bool allow_fast_kernel = true;
};

struct CftpResult {
  HeightFunction sample;
  /// The horizon T at which the sandwich had coalesced by time 0.
  std::int64_t horizon = 0;
  /// Total sweeps performed over all attempts, per chain.
  std::int64_t sweeps = 0;
};

/// Exact sample from the uniform measure on extensions of τ by monotone
/// coupling from the past, started from the extension envelope and doubling
/// the horizon T0, 2·T0, 4·T0, ... with reused randomness.
CftpResult cftp_sample(const BoundaryCondition& tau, const RandomSource& rng,
                       const CftpOptions& options = {});

/// A starting horizon of about 3·L² sweeps, the typical coalescence time of
/// the zero-boundary ball Λ(L) in d = 2.
std::int64_t suggested_initial_horizon(std::size_t dimension, int radius);

/// Seeds derive_seed(master, 0..n-1).
std::vector<std::uint64_t> seed_sequence(std::uint64_t master, std::size_t n);

/// One CFTP sample per seed, in seed order. `threads` = 0 uses the hardware
/// concurrency. Chains share only the (immutable) domain.
std::vector<CftpResult> sample_batch(const BoundaryCondition& tau,
                                     std::span<const std::uint64_t> seeds,
                                     std::size_t threads = 0,
                                     const CftpOptions& options = {});

struct GlauberOptions {
  std::uint64_t burn_in = 1000;
  std::uint64_t thinning = 10;
  std::size_t samples = 1;
};

/// Plain forward heat-bath chain started from the lower envelope, epochs
/// 0, 1, 2, ...; returns one state every `thinning` sweeps after burn-in.
std::vector<HeightFunction> glauber_samples(const BoundaryCondition& tau,
                                            const RandomSource& rng,
                                            const GlauberOptions& options);

}  // namespace heightlat
