// Acceptance suite: one PASS/FAIL line per criterion.
//   heightlat_acceptance [--only N]... [--skip N]... [--variance-samples N]
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <heightlat/heightlat.hpp>

using namespace heightlat;

namespace {

using Clock = std::chrono::steady_clock;
using Values = std::vector<Height>;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Values vec(const HeightFunction& h) { return {h.values().begin(), h.values().end()}; }

std::string str(const Rational& r) { return r.str(); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

std::uint64_t binomial(unsigned n, unsigned k) {
  std::uint64_t r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

BoundaryCondition zero_ball(std::size_t d, int L) { return BoundaryCondition::zero(ball_domain(d, L)); }

void criterion_1(Outcome& out) {
  const auto t0 = Clock::now();
  for (int L : {1, 3, 5}) {
    const auto n = count_extensions(zero_ball(1, L));
    const auto bridge = binomial(2 * L + 2, L + 1);
    out.require(n == bridge, "d=1 L=" + std::to_string(L));
    out.detail << "d=1 L=" << L << ": " << n << " (bridge " << bridge << "); ";
  }
  const double t = seconds_since(t0);
  out.require(t < 1.0, "d=1 counts under 1 s");
  auto tau = zero_ball(2, 1);
  const auto n = count_extensions(tau);
  auto law = marginal_at(tau, Vertex{0, 0});
  out.require(n == 18, "18 configurations");
  out.require(law.probability(0) == Rational(8, 9) && law.probability(2) == Rational(1, 18) &&
                  law.probability(-2) == Rational(1, 18),
              "marginal (8/9, 1/18, 1/18)");
  out.require(law.variance() == Rational(4, 9), "Var = 4/9");
  out.detail << "d=2 L=1: " << n << " configs, P(0)=" << str(law.probability(0))
             << " P(2)=" << str(law.probability(2)) << " P(-2)=" << str(law.probability(-2))
             << " Var=" << str(law.variance()) << "; d=1 time " << t << " s";
}

void criterion_2(Outcome& out) {
  auto tau = zero_ball(2, 1);
  std::map<Values, std::size_t> index;
  for (const auto& h : collect_all(tau)) index.emplace(vec(h), index.size());
  const std::size_t n = 100000;
  const auto t0 = Clock::now();
  auto samples = sample_batch(tau, seed_sequence(20240601, n), 1);
  const double t = seconds_since(t0);
  std::vector<std::uint64_t> counts(index.size(), 0);
  for (const auto& r : samples) {
    auto it = index.find(vec(r.sample));
    if (it == index.end()) {
      out.require(false, "sample outside the oracle support");
      return;
    }
    ++counts[it->second];
  }
  std::vector<double> p(index.size(), 1.0 / 18);
  auto chi = chi_square_gof(counts, p);
  double worst_tv = 0;
  for (auto c : counts) worst_tv = std::max(worst_tv, std::abs(static_cast<double>(c) / n - 1.0 / 18) / 2);
  out.require(chi.p_value > 1e-3, "chi-square p > 1e-3");
  out.require(worst_tv < 0.01, "per-configuration TV < 0.01");
  out.require(t < 60, "runtime < 60 s");
  out.detail << "n=" << n << " chi2=" << chi.statistic << " dof=" << chi.dof << " p=" << chi.p_value
             << " max TV term=" << worst_tv << " time=" << t << " s (1 thread)";
}

void criterion_3(Outcome& out) {
  auto tau = zero_ball(2, 1);
  auto all = collect_all(tau);
  const auto& dom = tau.domain();
  std::size_t pairs = 0, updates = 0, violations = 0;
  for (const auto& a : all) {
    for (const auto& b : all) {
      bool ordered = true;
      for (std::size_t i = 0; i < dom.num_sites(); ++i) ordered &= a.values()[i] <= b.values()[i];
      if (!ordered) continue;
      ++pairs;
      for (double u : {0.25, 0.75}) {
        for (SiteIndex v = 0; v < dom.num_interior(); ++v) {
          ChainState lo{a, 0}, hi{b, 0};
          heat_bath_update(lo, v, u);
          heat_bath_update(hi, v, u);
          ++updates;
          for (std::size_t i = 0; i < dom.num_sites(); ++i) {
            violations += lo.current.values()[i] > hi.current.values()[i];
          }
        }
      }
    }
  }
  out.require(violations == 0, "order preserved");
  out.detail << pairs << " ordered pairs, " << updates << " single-site updates, " << violations
             << " violations";
}

void criterion_4(Outcome& out) {
  auto tau = zero_ball(2, 1);
  auto all = collect_all(tau);
  std::map<Values, Rational> image;
  bool rows_ok = true;
  for (const auto& h : all) {
    Rational row = 0;
    for (const auto& [to, p] : sweep_transition_law(h)) {
      image[to] += p * Rational(1, 18);
      row += p;
    }
    rows_ok &= row == 1;
  }
  bool stationary = image.size() == 18;
  for (const auto& h : all) stationary &= image[vec(h)] == Rational(1, 18);
  out.require(rows_ok, "rows sum to 1");
  out.require(stationary, "uniform measure is stationary");
  out.detail << "18x18 kernel, rows stochastic=" << rows_ok << ", piP = pi exactly=" << stationary;
}

void criterion_5(Outcome& out) {
  auto tau = zero_ball(2, 1);
  auto all = collect_all(tau);
  std::vector<HomPair> pairs;
  for (const auto& f : all) {
    for (const auto& g : all) pairs.emplace_back(f, g);
  }
  using Key = std::pair<Values, Values>;
  std::map<Key, Rational> push;
  std::map<Values, Rational> first, second;
  std::size_t maps = 0, bad = 0;
  for (const auto& p : pairs) {
    auto eps_all = all_cluster_bits(p);
    const Rational w = Rational(1, 324) / eps_all.size();
    for (const auto& eps : eps_all) {
      ++maps;
      auto s = swap_finite(p, eps);
      const bool valid = check_height_values(s.domain(), s.f().values()).ok() &&
                         check_height_values(s.domain(), s.g().values()).ok();
      if (!valid || !(swap_finite(s, eps) == p)) ++bad;
      push[{vec(s.f()), vec(s.g())}] += w;
      auto q = equalize(p, eps);
      first[vec(q.f())] += w;
      second[vec(q.g())] += w;
    }
  }
  bool uniform = push.size() == 324;
  for (const auto& [k, w] : push) uniform &= w == Rational(1, 324);
  bool marginals = first.size() == 18 && second.size() == 18;
  for (const auto& [k, w] : first) marginals &= w == Rational(1, 18);
  for (const auto& [k, w] : second) marginals &= w == Rational(1, 18);
  out.require(bad == 0, "valid involution");
  out.require(uniform, "pushforward uniform");
  out.require(marginals, "equalize marginals");
  out.detail << pairs.size() << " pairs, " << maps << " (pair, eps) cases, " << bad
             << " involution/validity failures, pushforward uniform=" << uniform
             << ", equalize marginals exact=" << marginals;
}

void criterion_6(Outcome& out) {
  std::size_t checked = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t d : {1u, 2u}) {
    for (int L : {1, 3}) {
      for (const auto& law : site_marginals(zero_ball(d, L))) {
        auto r = log_concavity_check(law);
        out.require(r.ok, "d=" + std::to_string(d) + " L=" + std::to_string(L));
        worst = std::min(worst, r.worst_ratio);
        ++checked;
      }
    }
  }
  auto tau = zero_ball(1, 3);
  auto all = collect_all(tau);
  const SiteIndex o = tau.domain().index_of(Vertex{0});
  std::set<std::pair<Values, Values>> images;
  std::size_t inputs = 0;
  bool images_ok = true;
  for (const auto& plus : all) {
    if (plus[o] != 2) continue;
    for (const auto& minus : all) {
      if (minus[o] != -2) continue;
      ++inputs;
      auto img = lc_inject(plus, minus, o, 0, 1);
      images_ok &= img.h[o] == 0 && img.h_prime[o] == 0;
      images.insert({vec(img.h), vec(img.h_prime)});
    }
  }
  out.require(images.size() == inputs && inputs > 0, "lc_inject injective");
  out.require(images_ok, "images land in H_0 x H_0");
  out.detail << checked << " oracle marginals log-concave (worst ratio " << worst << "); lc_inject "
             << inputs << " inputs -> " << images.size() << " distinct images";
}

void criterion_7(Outcome& out) {
  for (int L : {1, 3}) {
    auto tau = zero_ball(2, L);
    auto pairs = random_monotone_pairs(tau.domain(), 100, 777 + L);
    auto res = fkg_check_abs_exact(tau, pairs);
    double lowest = std::numeric_limits<double>::infinity();
    bool ok = true;
    for (const auto& r : res) {
      ok &= r.exact >= 0;
      lowest = std::min(lowest, r.value);
    }
    out.require(ok, "FKG on L=" + std::to_string(L));
    out.detail << "L=" << L << ": 100 pairs, min Cov=" << lowest << "; ";
  }
  auto dom = domination_check_abs_exact(ball_domain(2, 1), ball_domain(2, 3));
  out.require(dom.ok(), "domination L=1 in L=3");
  out.detail << "domination: " << dom.comparisons << " comparisons, " << dom.violations.size()
             << " violations";
}

void criterion_8(Outcome& out, std::size_t samples) {
  const std::vector<int> Ls{9, 17, 33, 65, 129};
  VarianceGrowthOptions opt;
  opt.samples = samples;
  opt.seed = 8;
  opt.threads = 0;
  opt.on_point = [](const VariancePoint& p) {
    std::printf("  L=%d Var=%.4f SE=%.4f n=%llu max T=%lld (%.1f s)\n", p.L, p.variance, p.se,
                static_cast<unsigned long long>(p.n), static_cast<long long>(p.max_horizon), p.seconds);
    std::fflush(stdout);
  };
  const auto t0 = Clock::now();
  auto curve = variance_growth(Ls, 2, opt);
  const double t = seconds_since(t0);
  const bool increasing = strictly_increasing_beyond_se(curve);
  out.require(samples >= 2000, "n >= 2000");
  out.require(increasing, "strictly increasing beyond SE bands");
  out.require(curve.fit.slope > 0, "positive slope");
  out.require(curve.fit.r2 >= 0.95, "R^2 >= 0.95");
  out.require(t <= 3600, "runtime <= 1 CPU-hour");
  out.detail << "n=" << samples << " per L; ";
  for (const auto& p : curve.points) out.detail << "L=" << p.L << ":" << p.variance << "±" << p.se << " ";
  out.detail << "; slope=" << curve.fit.slope << " R2=" << curve.fit.r2 << " time=" << t << " s";
}

void criterion_9(Outcome& out) {
  std::size_t samples = 0, coloring_bad = 0, ice_bad = 0;
  for (int L : {9, 17}) {
    auto tau = zero_ball(2, L);
    for (const auto& r : sample_batch(tau, seed_sequence(900 + L, 500), 0)) {
      ++samples;
      coloring_bad += !is_proper_coloring(tau.domain(), to_three_coloring(r.sample));
      ice_bad += to_six_vertex(r.sample).ice_rule_violations;
    }
  }
  out.require(coloring_bad == 0, "proper 3-colorings");
  out.require(ice_bad == 0, "ice rule");
  out.detail << samples << " samples, " << coloring_bad << " improper colorings, " << ice_bad
             << " ice-rule violations";
}

void criterion_10(Outcome& out) {
  auto w = comb_window(20);
  const auto t0 = Clock::now();
  const bool alt_tooth = is_trifurcation_ball_alternative(w, Vertex{0, 5}, 3);
  const bool real_tooth = is_trifurcation_ball(w, Vertex{0, 5}, 3);
  const bool real_spine = is_trifurcation_ball(w, Vertex{0, 0}, 3);
  const double t = seconds_since(t0);
  out.require(alt_tooth, "alternative marks (0,5)");
  out.require(!real_tooth, "real definition rejects (0,5)");
  out.require(real_spine, "real definition marks (0,0)");
  out.require(t < 10, "under 10 s");
  out.detail << "alt(0,5)=" << alt_tooth << " real(0,5)=" << real_tooth << " real(0,0)=" << real_spine
             << " time=" << t << " s";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"heightlat acceptance suite"};
  std::vector<int> only, skip;
  std::size_t variance_samples = 4000;
  app.add_option("--only", only, "Run only these criteria")->check(CLI::Range(1, 10));
  app.add_option("--skip", skip, "Skip these criteria")->check(CLI::Range(1, 10));
  app.add_option("--variance-samples", variance_samples, "Samples per L for criterion 8");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::function<void(Outcome&)>> criteria{
      criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7,
      [&](Outcome& o) { criterion_8(o, variance_samples); }, criterion_9, criterion_10};

  bool all_pass = true;
  for (int id = 1; id <= 10; ++id) {
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    if (std::find(skip.begin(), skip.end(), id) != skip.end()) continue;
    Outcome out;
    const auto t0 = Clock::now();
    try {
      criteria[id - 1](out);
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail << "exception: " << e.what();
    }
    std::printf("criterion %2d: %s  (%.1f s) %s\n", id, out.pass ? "PASS" : "FAIL", seconds_since(t0),
                out.detail.str().c_str());
    std::fflush(stdout);
    all_pass &= out.pass;
  }
  return all_pass ? 0 : 1;
}
