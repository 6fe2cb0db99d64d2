#include <gtest/gtest.h>

#include <map>
#include <set>

#include "test_support.hpp"

using namespace heightlat;

namespace {

std::vector<Height> vec(const HeightFunction& h) { return {h.values().begin(), h.values().end()}; }
using PairKey = std::pair<std::vector<Height>, std::vector<Height>>;
PairKey key(const HomPair& p) { return {vec(p.f()), vec(p.g())}; }

// Values on Λ+ of the d = 1 ball, listed from left to right.
HeightFunction line(const DomainPtr& dom, const std::vector<Height>& left_to_right) {
  std::map<Vertex, Height> table;
  const int L = static_cast<int>(left_to_right.size() / 2);
  for (int x = -L; x <= L; ++x) table[Vertex{x}] = left_to_right[static_cast<std::size_t>(x + L)];
  return HeightFunction::validated(dom, testsupport::values_from(*dom, table));
}

std::vector<HomPair> all_pairs_small_ball() {
  auto states = collect_all(BoundaryCondition::zero(ball_domain(2, 1)));
  std::vector<HomPair> out;
  for (const auto& f : states) {
    for (const auto& g : states) out.emplace_back(f, g);
  }
  return out;
}

std::size_t finite_clusters(const HomPair& p) {
  std::size_t n = 0;
  for (const auto& c : components(p, ClusterPredicate::kDifferent).clusters) n += !c.anchored;
  return n;
}

}  // namespace

TEST(HomPair, RequiresSameDomain) {
  auto a = collect_all(BoundaryCondition::zero(ball_domain(1, 1))).front();
  auto b = collect_all(BoundaryCondition::zero(ball_domain(1, 1))).front();
  EXPECT_THROW(HomPair(a, b), PreconditionViolation);
  EXPECT_NO_THROW(HomPair(a, a));
}

TEST(Components, EqualFunctionsHaveNoDisagreement) {
  auto h = collect_all(BoundaryCondition::zero(ball_domain(2, 1)))[3];
  HomPair p(h, h);
  auto lab = components(p, ClusterPredicate::kDifferent);
  EXPECT_TRUE(lab.clusters.empty());
  for (auto l : lab.label) EXPECT_EQ(l, -1);
}

TEST(Components, CentreBump) {
  auto dom = ball_domain(1, 1);
  auto f = line(dom, {0, 1, 2, 1, 0});
  auto g = line(dom, {0, 1, 0, 1, 0});
  auto lab = components(HomPair(f, g), ClusterPredicate::kGreater);
  ASSERT_EQ(lab.clusters.size(), 1u);
  EXPECT_EQ(lab.clusters[0].sites, std::vector<SiteIndex>{dom->index_of(Vertex{0})});
  EXPECT_FALSE(lab.clusters[0].anchored);
  EXPECT_EQ(lab.label[dom->index_of(Vertex{0})], 0);
  EXPECT_TRUE(components(HomPair(f, g), ClusterPredicate::kLess).clusters.empty());
}

TEST(Components, VeryNegativeShiftCoversEverything) {
  auto hs = collect_all(BoundaryCondition::zero(ball_domain(2, 1)));
  auto f = hs.front(), g = hs.back();
  auto lab = components(HomPair(f, g), ClusterPredicate::kShiftedAtLeast, -100);
  ASSERT_EQ(lab.clusters.size(), 1u);
  EXPECT_EQ(lab.clusters[0].sites.size(), f.domain().num_sites());
  EXPECT_TRUE(lab.clusters[0].anchored);
}

TEST(Components, MatchesBruteForceUnionFind) {
  for (const auto& p : all_pairs_small_ball()) {
    const auto& dom = p.domain();
    auto lab = components(p, ClusterPredicate::kDifferent);
    for (const auto& e : dom.edges()) {
      const bool a = p.f()[e.a] != p.g()[e.a];
      const bool b = p.f()[e.b] != p.g()[e.b];
      if (a && b) EXPECT_EQ(lab.label[e.a], lab.label[e.b]);
    }
    std::size_t labelled = 0;
    for (SiteIndex s = 0; s < dom.num_sites(); ++s) {
      EXPECT_EQ(lab.label[s] >= 0, p.f()[s] != p.g()[s]);
      labelled += lab.label[s] >= 0;
    }
    std::size_t total = 0;
    for (std::size_t c = 0; c < lab.clusters.size(); ++c) {
      total += lab.clusters[c].sites.size();
      EXPECT_EQ(lab.clusters[c].id(), lab.clusters[c].sites.front());
      bool touches = false;
      for (auto s : lab.clusters[c].sites) {
        EXPECT_EQ(lab.label[s], static_cast<int>(c));
        touches |= !dom.is_interior(s);
      }
      EXPECT_EQ(touches, lab.clusters[c].anchored);
    }
    EXPECT_EQ(total, labelled);
  }
}

TEST(SwapAnchored, IdentityWithoutAnchoredClusters) {
  for (const auto& p : all_pairs_small_ball()) {
    auto q = swap_anchored(p);
    EXPECT_EQ(q, p);
    EXPECT_EQ(swap_anchored(q), p);
  }
}

TEST(SwapAnchored, ExchangesAnchoredCluster) {
  auto dom = ball_domain(1, 3);
  // f sits above g on an anchored run at the left and on a finite bump at x = 1.
  auto f = line(dom, {2, 3, 2, 1, 0, 1, 0, 1, 0});
  auto g = line(dom, {0, 1, 0, 1, 0, -1, 0, 1, 0});
  HomPair p(f, g);
  auto lab = components(p, ClusterPredicate::kGreater);
  ASSERT_EQ(lab.clusters.size(), 2u);
  auto q = swap_anchored(p);
  for (int x = -4; x <= 4; ++x) {
    const Vertex v{x};
    const bool in_anchored = x <= -2;
    EXPECT_EQ(q.f().at(v), in_anchored ? g.at(v) : f.at(v)) << x;
    EXPECT_EQ(q.g().at(v), in_anchored ? f.at(v) : g.at(v)) << x;
    EXPECT_LE(q.f().at(v) - q.g().at(v), in_anchored ? -2 : 2);
  }
  // The finite cluster at x = 1 stays; a second application changes nothing.
  EXPECT_EQ(swap_anchored(q), q);
  // Exchanging the roles undoes the swap when {f < g} has no anchored part.
  auto back = swap_anchored(HomPair(q.g(), q.f()));
  EXPECT_EQ(HomPair(back.g(), back.f()), p);
}

TEST(SwapFinite, ZeroBitsIsIdentity) {
  for (const auto& p : all_pairs_small_ball()) EXPECT_EQ(swap_finite(p, {}), p);
}

TEST(SwapFinite, ExchangesSingleCluster) {
  auto dom = ball_domain(1, 1);
  auto f = line(dom, {0, 1, 2, 1, 0});
  auto g = line(dom, {0, -1, 0, 1, 0});
  HomPair p(f, g);
  auto lab = components(p, ClusterPredicate::kDifferent);
  ASSERT_EQ(lab.clusters.size(), 1u);
  ClusterBits eps{{lab.clusters[0].id(), true}};
  auto q = swap_finite(p, eps);
  EXPECT_EQ(q.f(), g);
  EXPECT_EQ(q.g(), f);
}

TEST(SwapFinite, InvolutionOnEveryPairAndAssignment) {
  std::size_t checked = 0;
  for (const auto& p : all_pairs_small_ball()) {
    for (const auto& eps : all_cluster_bits(p)) {
      auto q = swap_finite(p, eps);
      EXPECT_TRUE(check_height_values(q.domain(), q.f().values()).ok());
      EXPECT_TRUE(check_height_values(q.domain(), q.g().values()).ok());
      EXPECT_EQ(swap_finite(q, eps), p);
      ++checked;
    }
  }
  EXPECT_GT(checked, 324u);
}

// With ε drawn uniformly per finite cluster, the image law is the uniform pair law.
TEST(SwapFinite, PushforwardIsUniform) {
  std::map<PairKey, Rational> image;
  const auto pairs = all_pairs_small_ball();
  for (const auto& p : pairs) {
    auto all = all_cluster_bits(p);
    for (const auto& eps : all) image[key(swap_finite(p, eps))] += Rational(1, 324) / all.size();
  }
  ASSERT_EQ(image.size(), 324u);
  for (const auto& [k, w] : image) EXPECT_EQ(w, Rational(1, 324));

  // Every fixed rule ε ≡ 1 is a bijection.
  std::set<PairKey> seen;
  for (const auto& p : pairs) {
    ClusterBits ones;
    for (const auto& c : components(p, ClusterPredicate::kDifferent).clusters) ones[c.id()] = true;
    seen.insert(key(swap_finite(p, ones)));
  }
  EXPECT_EQ(seen.size(), 324u);
}

TEST(Equalize, IdentityOnEqualPair) {
  auto h = collect_all(BoundaryCondition::zero(ball_domain(2, 1)))[5];
  HomPair p(h, h);
  EXPECT_EQ(equalize(p, {}), p);
}

TEST(Equalize, ZeroBitsCopiesF) {
  auto dom = ball_domain(1, 1);
  auto f = line(dom, {0, 1, 2, 1, 0});
  auto g = line(dom, {0, 1, 0, 1, 0});
  auto q = equalize(HomPair(f, g), {});
  EXPECT_EQ(q.f(), f);
  EXPECT_EQ(q.g(), f);
  for (SiteIndex s = 0; s < dom->num_sites(); ++s) EXPECT_GE(q.f()[s], q.g()[s]);
}

TEST(Equalize, MarginalsArePreserved) {
  std::map<std::vector<Height>, Rational> first, second;
  for (const auto& p : all_pairs_small_ball()) {
    auto all = all_cluster_bits(p);
    for (const auto& eps : all) {
      auto q = equalize(p, eps);
      first[vec(q.f())] += Rational(1, 324) / all.size();
      second[vec(q.g())] += Rational(1, 324) / all.size();
    }
  }
  ASSERT_EQ(first.size(), 18u);
  ASSERT_EQ(second.size(), 18u);
  for (const auto& [k, w] : first) EXPECT_EQ(w, Rational(1, 18));
  for (const auto& [k, w] : second) EXPECT_EQ(w, Rational(1, 18));
}

TEST(ClusterBits, CountingOrder) {
  for (const auto& p : all_pairs_small_ball()) {
    auto all = all_cluster_bits(p);
    EXPECT_EQ(all.size(), std::size_t{1} << finite_clusters(p));
    for (const auto& [id, bit] : all.front()) EXPECT_FALSE(bit);
  }
}

TEST(LcInject, PathExample) {
  auto dom = ball_domain(1, 1);
  auto plus = line(dom, {0, 1, 2, 1, 0});
  auto minus = line(dom, {0, -1, -2, -1, 0});
  auto img = lc_inject(plus, minus, dom->index_of(Vertex{0}), 0, 1);
  EXPECT_EQ(img.h, line(dom, {0, -1, 0, -1, 0}));
  EXPECT_EQ(img.h_prime, line(dom, {0, 1, 0, 1, 0}));
  EXPECT_EQ(img.region, std::vector<SiteIndex>{dom->index_of(Vertex{0})});
  auto [p2, m2] = lc_recover(img.h, img.h_prime, dom->index_of(Vertex{0}), 1);
  EXPECT_EQ(p2, plus);
  EXPECT_EQ(m2, minus);
}

TEST(LcInject, Preconditions) {
  auto dom = ball_domain(1, 1);
  auto plus = line(dom, {0, 1, 2, 1, 0});
  auto minus = line(dom, {0, -1, -2, -1, 0});
  const SiteIndex v = dom->index_of(Vertex{0});
  EXPECT_THROW(lc_inject(plus, minus, v, 2, 1), PreconditionViolation);
  EXPECT_THROW(lc_inject(plus, minus, v, 0, 0), PreconditionViolation);
  EXPECT_THROW(lc_inject(minus, plus, v, 0, 1), PreconditionViolation);
  EXPECT_THROW(lc_recover(plus, minus, v, 0), PreconditionViolation);
  auto other = collect_all(BoundaryCondition::zero(ball_domain(1, 1))).front();
  EXPECT_THROW(lc_inject(plus, other, v, 0, 1), PreconditionViolation);

  auto shifted_dom = LatticeDomain::from_interior(1, {Vertex{0}});
  auto a = HeightFunction::validated(shifted_dom, {2, 1, 1});
  auto b = HeightFunction::validated(shifted_dom, {-2, -1, -1});
  EXPECT_THROW(lc_inject(a, b, 0, 0, 1), PreconditionViolation);
}

TEST(LcInject, InjectiveOnLineOfRadiusThree) {
  for (int L : {3, 5}) {
    auto tau = BoundaryCondition::zero(ball_domain(1, L));
    const SiteIndex v = tau.domain().index_of(Vertex{0});
    auto all = collect_all(tau);
    for (int k : {1, 2}) {
      std::vector<HeightFunction> hp, hm;
      for (const auto& h : all) {
        if (h[v] == 2 * k) hp.push_back(h);
        if (h[v] == -2 * k) hm.push_back(h);
      }
      if (L == 3 && k == 1) {
        EXPECT_GT(hp.size(), 1u);
      }
      std::set<PairKey> images;
      for (const auto& a : hp) {
        for (const auto& b : hm) {
          auto img = lc_inject(a, b, v, 0, k);
          EXPECT_EQ(img.h[v], 0);
          EXPECT_EQ(img.h_prime[v], 0);
          EXPECT_TRUE(images.insert({vec(img.h), vec(img.h_prime)}).second);
          auto [a2, b2] = lc_recover(img.h, img.h_prime, v, k);
          EXPECT_EQ(a2, a);
          EXPECT_EQ(b2, b);
        }
      }
      EXPECT_EQ(images.size(), hp.size() * hm.size());
    }
  }
}

TEST(LcInject, SmallBallSingletons) {
  auto tau = BoundaryCondition::zero(ball_domain(2, 1));
  const SiteIndex v = tau.domain().index_of(Vertex{0, 0});
  std::vector<HeightFunction> hp, hm;
  for (const auto& h : collect_all(tau)) {
    if (h[v] == 2) hp.push_back(h);
    if (h[v] == -2) hm.push_back(h);
  }
  ASSERT_EQ(hp.size(), 1u);
  ASSERT_EQ(hm.size(), 1u);
  auto img = lc_inject(hp[0], hm[0], v, 0, 1);
  EXPECT_EQ(img.region.size(), 1u);
  // k = 2 has no source pairs.
  for (const auto& h : collect_all(tau)) EXPECT_NE(h[v], 4);
}
