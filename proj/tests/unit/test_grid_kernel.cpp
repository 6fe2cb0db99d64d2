#include <gtest/gtest.h>

#include "grid_kernel.hpp"
#include "test_support.hpp"

using namespace heightlat;
using heightlat::detail::GridKernel2D;
using heightlat::detail::KernelIsa;

namespace {

std::vector<KernelIsa> available_isas() {
  std::vector<KernelIsa> out{KernelIsa::kScalar};
  const KernelIsa best = heightlat::detail::best_kernel_isa();
  if (best == KernelIsa::kAvx2 || best == KernelIsa::kAvx512) out.push_back(KernelIsa::kAvx2);
  if (best == KernelIsa::kAvx512) out.push_back(KernelIsa::kAvx512);
  return out;
}

// Same chains through the generic sweep.
void check_against_generic(const BoundaryCondition& tau, KernelIsa isa, std::uint64_t seed, int sweeps) {
  const auto& dom = tau.domain();
  auto env = extension_envelope(tau);
  ASSERT_TRUE(GridKernel2D::applicable(dom, env));
  GridKernel2D k(dom, isa);
  EXPECT_EQ(k.isa(), isa);
  k.load(0, env.upper);
  k.load(1, env.lower);
  ChainState top{HeightFunction::trusted(tau.domain_ptr(), env.upper), 0};
  ChainState bot{HeightFunction::trusted(tau.domain_ptr(), env.lower), 0};
  RandomSource rng(seed);
  std::vector<Height> a(dom.num_sites()), b(dom.num_sites());
  for (int t = 0; t < sweeps; ++t) {
    k.sweep(-sweeps + t, rng, 2);
    sweep(top, -sweeps + t, rng);
    sweep(bot, -sweeps + t, rng);
    EXPECT_TRUE(k.ordered());
  }
  k.store(0, a);
  k.store(1, b);
  EXPECT_EQ(a, std::vector<Height>(top.current.values().begin(), top.current.values().end()));
  EXPECT_EQ(b, std::vector<Height>(bot.current.values().begin(), bot.current.values().end()));
  EXPECT_EQ(k.coalesced(), a == b);
}

}  // namespace

TEST(GridKernel, LoadStoreRoundTrip) {
  auto tau = BoundaryCondition::zero(ball_domain(2, 9));
  auto env = extension_envelope(tau);
  for (auto isa : available_isas()) {
    GridKernel2D k(tau.domain(), isa);
    std::vector<Height> out(tau.domain().num_sites());
    k.load(0, env.lower);
    k.store(0, out);
    EXPECT_EQ(out, env.lower);
    k.load(1, env.upper);
    k.store(1, out);
    EXPECT_EQ(out, env.upper);
    EXPECT_FALSE(k.ordered());
    k.load(1, env.lower);
    EXPECT_TRUE(k.coalesced());
  }
}

TEST(GridKernel, AllIsasMatchGenericSweep) {
  for (int L : {1, 3, 9, 17, 40}) {
    auto tau = BoundaryCondition::zero(ball_domain(2, L | 1));
    for (auto isa : available_isas()) {
      for (std::uint64_t seed : {1u, 2u, 3u}) {
        SCOPED_TRACE(testing::Message() << "L=" << (L | 1) << " isa=" << static_cast<int>(isa));
        check_against_generic(tau, isa, seed, 40);
      }
    }
  }
}

TEST(GridKernel, NonBallDomainMatchesGenericSweep) {
  // A rectangle with an off-centre notch.
  std::vector<Vertex> in;
  for (int x = -3; x <= 40; ++x) {
    for (int y = 2; y <= 90; ++y) {
      if (x > 10 && x < 20 && y > 30 && y < 50) continue;
      in.push_back(Vertex{x, y});
    }
  }
  auto dom = LatticeDomain::from_interior(2, in);
  std::vector<Height> tau(dom->num_boundary());
  for (std::size_t b = 0; b < tau.size(); ++b) {
    const Vertex& v = dom->boundary()[b];
    tau[b] = static_cast<Height>((v.l1_norm() % 2 + 2) % 2);
  }
  BoundaryCondition bc(dom, tau);
  ASSERT_TRUE(bc.is_feasible());
  for (auto isa : available_isas()) check_against_generic(bc, isa, 17, 25);
}

TEST(GridKernel, SingleChainSweepAfterMerge) {
  auto tau = BoundaryCondition::zero(ball_domain(2, 5));
  auto env = extension_envelope(tau);
  for (auto isa : available_isas()) {
    GridKernel2D k(tau.domain(), isa);
    k.load(0, env.upper);
    ChainState ref{extend_max(tau), 0};
    RandomSource rng(4);
    for (int t = 0; t < 30; ++t) {
      k.sweep(t, rng, 1);
      sweep(ref, t, rng);
    }
    std::vector<Height> out(tau.domain().num_sites());
    k.store(0, out);
    EXPECT_EQ(out, std::vector<Height>(ref.current.values().begin(), ref.current.values().end()));
  }
}

TEST(GridKernel, Applicability) {
  auto ball = BoundaryCondition::zero(ball_domain(2, 5));
  EXPECT_TRUE(GridKernel2D::applicable(ball.domain(), extension_envelope(ball)));

  auto line = BoundaryCondition::zero(ball_domain(1, 5));
  EXPECT_FALSE(GridKernel2D::applicable(line.domain(), extension_envelope(line)));

  auto sparse = LatticeDomain::from_interior(2, {Vertex{0, 0}, Vertex{900, 900}});
  std::vector<Height> odd_ones(sparse->num_boundary(), 1);
  BoundaryCondition st(sparse, odd_ones);
  EXPECT_FALSE(GridKernel2D::applicable(*sparse, extension_envelope(st)));

  // Heights beyond the byte encoding fall back to the generic path.
  auto big = ball_domain(2, 301);
  Envelope fake{std::vector<Height>(big->num_sites(), -300), std::vector<Height>(big->num_sites(), 300)};
  EXPECT_FALSE(GridKernel2D::applicable(*big, fake));
}
