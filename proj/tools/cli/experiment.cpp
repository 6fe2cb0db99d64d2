#include "experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace heightlat::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const std::map<std::string, Experiment>& experiment_names() {
  static const std::map<std::string, Experiment> names{
      {"sample", Experiment::kSample},
      {"enumerate", Experiment::kEnumerate},
      {"verify", Experiment::kVerify},
      {"variance-growth", Experiment::kVarianceGrowth},
      {"levelset", Experiment::kLevelset},
      {"convert", Experiment::kConvert},
      {"trifurcation-demo", Experiment::kTrifurcationDemo},
  };
  return names;
}

std::string join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

// Typed accessors that name the field on failure.
template <typename T>
std::optional<T> optional_field(const json& obj, const std::string& prefix, const std::string& key) {
  if (!obj.contains(key)) return std::nullopt;
  const json& v = obj.at(key);
  const std::string path = join(prefix, key);
  if constexpr (std::is_same_v<T, bool>) {
    if (!v.is_boolean()) throw ConfigError(path, "expected true or false");
    return v.get<bool>();
  } else if constexpr (std::is_same_v<T, std::string>) {
    if (!v.is_string()) throw ConfigError(path, "expected a string");
    return v.get<std::string>();
  } else if constexpr (std::is_floating_point_v<T>) {
    if (!v.is_number()) throw ConfigError(path, "expected a number");
    return v.get<T>();
  } else if constexpr (std::is_unsigned_v<T>) {
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
      throw ConfigError(path, "expected a nonnegative integer");
    }
    return v.get<T>();
  } else {
    if (!v.is_number_integer()) throw ConfigError(path, "expected an integer");
    return v.get<T>();
  }
}

std::vector<int> int_list(const json& obj, const std::string& key) {
  const json& v = obj.at(key);
  if (v.is_number_integer()) return {v.get<int>()};
  if (!v.is_array() || v.empty()) throw ConfigError(key, "expected an integer or a nonempty list of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number_integer()) throw ConfigError(key + "[" + std::to_string(i) + "]", "expected an integer");
    out.push_back(v[i].get<int>());
  }
  return out;
}

void reject_unknown(const json& obj, const std::string& prefix, std::initializer_list<const char*> known) {
  for (const auto& [k, v] : obj.items()) {
    if (std::none_of(known.begin(), known.end(), [&](const char* n) { return k == n; })) {
      throw ConfigError(join(prefix, k), "unknown field");
    }
  }
}

const json& object_field(const json& obj, const std::string& key) {
  const json& v = obj.at(key);
  if (!v.is_object()) throw ConfigError(key, "expected an object");
  return v;
}

Vertex vertex_field(const json& v, const std::string& path, std::size_t d) {
  if (!v.is_array() || v.size() != d) {
    throw ConfigError(path, "expected a list of " + std::to_string(d) + " integers");
  }
  std::vector<int> c;
  for (const auto& x : v) {
    if (!x.is_number_integer()) throw ConfigError(path, "expected integer coordinates");
    c.push_back(x.get<int>());
  }
  return Vertex(std::span<const int>(c));
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// ---------------------------------------------------------------- running

struct Target {
  std::string label;  // "L9" or the boundary file stem
  int L = -1;         // -1 for file boundaries
  BoundaryCondition tau;
};

std::vector<Target> targets_of(const ExperimentConfig& cfg) {
  std::vector<Target> out;
  if (cfg.boundary.kind == BoundarySpec::Kind::kFile) {
    json j = read_config_file(cfg.boundary.path);
    BoundaryCondition tau = [&] {
      try {
        return boundary_from_json(j);
      } catch (const FormatError& e) {
        throw ConfigError("boundary.path", e.what());
      }
    }();
    if (tau.domain().dimension() != cfg.dimension) {
      throw ConfigError("dimension", "does not match the boundary file (d = " +
                                         std::to_string(tau.domain().dimension()) + ")");
    }
    out.push_back({cfg.boundary.path.stem().string(), -1, std::move(tau)});
    return out;
  }
  for (int L : cfg.Ls) {
    out.push_back({"L" + std::to_string(L), L, BoundaryCondition::zero(ball_domain(cfg.dimension, L))});
  }
  return out;
}

class Runner {
 public:
  explicit Runner(const ExperimentConfig& cfg) : cfg_(cfg) {}

  RunResult go() {
    const auto t0 = std::chrono::steady_clock::now();
    fs::create_directories(cfg_.output);
    switch (cfg_.experiment) {
      case Experiment::kSample: sample(); break;
      case Experiment::kEnumerate: enumerate(); break;
      case Experiment::kVerify: verify(); break;
      case Experiment::kVarianceGrowth: variance(); break;
      case Experiment::kLevelset: levelset(); break;
      case Experiment::kConvert: convert(); break;
      case Experiment::kTrifurcationDemo: trifurcation(); break;
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    json checks = json::array();
    for (const auto& c : result_.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    json files = json::array();
    for (const auto& a : result_.artifacts) files.push_back(a.filename().string());
    result_.manifest = {
        {"tool", "heightlat"},
        {"version", kVersion},
        {"experiment", experiment_name(cfg_.experiment)},
        {"config", cfg_.source},
        {"config_hash", config_hash(cfg_.source)},
        {"seed", cfg_.seed},
        {"checks", checks},
        {"all_pass", result_.all_pass()},
        {"wall_clock_seconds", seconds},
        {"artifacts", files},
        {"results", details_},
    };
    std::ofstream(cfg_.output / "manifest.json") << result_.manifest.dump(2) << '\n';
    return std::move(result_);
  }

 private:
  void check(std::string name, bool pass, std::string detail) {
    result_.checks.push_back({std::move(name), pass, std::move(detail)});
  }

  std::ofstream open(const std::string& name, bool binary = false) {
    const fs::path p = cfg_.output / name;
    std::ofstream out(p, binary ? std::ios::binary : std::ios::out);
    if (!out) throw Error("cannot write " + p.string());
    result_.artifacts.push_back(p);
    return out;
  }

  CftpOptions cftp_options(const Target& t) const {
    CftpOptions opt;
    opt.max_epochs = static_cast<std::int64_t>(cfg_.sampler.max_epochs);
    opt.initial_horizon = cfg_.sampler.initial_horizon > 0
                              ? cfg_.sampler.initial_horizon
                              : (t.L >= 0 ? suggested_initial_horizon(cfg_.dimension, t.L) : 1);
    return opt;
  }

  // Samples for target i with seeds derived from (seed, i); the per-sample
  // seeds match variance-growth's grouping.
  std::vector<HeightFunction> draw(const Target& t, std::size_t i, json& info) {
    std::vector<HeightFunction> out;
    const std::uint64_t group = derive_seed(cfg_.seed, i);
    info["seed_group"] = group;
    if (cfg_.sampler.kind == SamplerSpec::Kind::kGlauber) {
      GlauberOptions opt;
      opt.burn_in = cfg_.sampler.sweeps;
      opt.thinning = cfg_.sampler.thinning;
      opt.samples = cfg_.samples;
      out = glauber_samples(t.tau, RandomSource(group), opt);
      info["sampler"] = "glauber";
      info["burn_in"] = opt.burn_in;
      info["thinning"] = opt.thinning;
      return out;
    }
    const auto seeds = seed_sequence(group, cfg_.samples);
    auto res = sample_batch(t.tau, seeds, cfg_.threads, cftp_options(t));
    std::map<std::int64_t, std::size_t> horizons;
    double sweeps = 0;
    for (auto& r : res) {
      ++horizons[r.horizon];
      sweeps += static_cast<double>(r.sweeps);
      out.push_back(std::move(r.sample));
    }
    json hist = json::object();
    for (const auto& [T, n] : horizons) hist[std::to_string(T)] = n;
    info["sampler"] = "cftp";
    info["initial_horizon"] = cftp_options(t).initial_horizon;
    info["coalescence_horizons"] = hist;
    info["max_horizon"] = horizons.empty() ? 0 : horizons.rbegin()->first;
    info["mean_sweeps"] = res.empty() ? 0.0 : sweeps / static_cast<double>(res.size());
    return out;
  }

  void sample() {
    const auto targets = targets_of(cfg_);
    json per = json::array();
    for (std::size_t i = 0; i < targets.size(); ++i) {
      const Target& t = targets[i];
      json info{{"target", t.label}, {"sites", t.tau.domain().num_sites()}};
      auto samples = draw(t, i, info);
      std::size_t invalid = 0, boundary_bad = 0;
      const std::size_t n_in = t.tau.domain().num_interior();
      for (const auto& h : samples) {
        invalid += !check_height_values(h.domain(), h.values()).ok();
        for (std::size_t b = 0; b < t.tau.values().size(); ++b) {
          boundary_bad += h.values()[n_in + b] != t.tau.values()[b];
        }
      }
      check("samples_valid_" + t.label, invalid == 0 && boundary_bad == 0,
            std::to_string(samples.size()) + " samples, " + std::to_string(invalid) + " invalid, " +
                std::to_string(boundary_bad) + " boundary mismatches");
      {
        auto out = open("heights_" + t.label + ".hlat", true);
        HeightDumpWriter w(out, t.tau.domain());
        for (const auto& h : samples) w.write(h.values());
        w.finish();
      }
      if (auto origin = t.tau.domain().find(Vertex::origin(cfg_.dimension));
          origin && t.tau.domain().is_interior(*origin)) {
        EmpiricalDistribution centre;
        for (const auto& h : samples) centre.add(h[*origin]);
        auto out = open("centre_" + t.label + ".csv");
        write_distribution_csv(out, centre);
        info["centre_variance"] = centre.size() > 1 ? centre.variance() : 0.0;
      }
      per.push_back(info);
    }
    details_["targets"] = per;
  }

  void enumerate() {
    const auto targets = targets_of(cfg_);
    json per = json::array();
    for (const auto& t : targets) {
      const BigInt n = count_extensions(t.tau);
      json info{{"target", t.label}, {"count", n.str()}};
      if (cfg_.dimension == 1 && t.L >= 0) {
        // Zero-boundary paths of length 2L + 2 are bridges.
        BigInt bridge = 1;
        for (int i = 1; i <= t.L + 1; ++i) bridge = bridge * (t.L + 1 + i) / i;
        check("bridge_count_" + t.label, n == bridge, n.str() + " vs C(2L+2, L+1) = " + bridge.str());
      } else {
        check("count_positive_" + t.label, n > 0, n.str() + " configurations");
      }
      if (auto origin = t.tau.domain().find(Vertex::origin(cfg_.dimension));
          origin && t.tau.domain().is_interior(*origin)) {
        auto law = marginal_at(t.tau, Vertex::origin(cfg_.dimension));
        auto out = open("marginal_" + t.label + ".csv");
        write_distribution_csv(out, law);
        info["centre_variance"] = law.variance().str();
      }
      if (n <= cfg_.samples) {
        auto out = open("configurations_" + t.label + ".hlat", true);
        HeightDumpWriter w(out, t.tau.domain());
        enumerate_all(t.tau, [&](std::span<const Height> v) { w.write(v); });
        w.finish();
      }
      per.push_back(info);
    }
    details_["targets"] = per;
  }

  void verify() {
    const auto targets = targets_of(cfg_);
    json per = json::array();
    for (std::size_t i = 0; i < targets.size(); ++i) verify_one(targets[i], i, per);
    details_["targets"] = per;
  }

  void verify_one(const Target& t, std::size_t index, json& per) {
    const auto& dom = t.tau.domain();
    const std::string tag = "_" + t.label;
    json info{{"target", t.label}};
    std::vector<HeightFunction> all;
    try {
      EnumerationLimits lim;
      lim.max_leaves = 2'000'000;
      all = collect_all(t.tau, lim);
    } catch (const DomainTooLarge& e) {
      check("oracle" + tag, false, std::string("oracle enumeration refused: ") + e.what());
      per.push_back(info);
      return;
    }
    info["count"] = all.size();
    check("oracle" + tag, !all.empty(), std::to_string(all.size()) + " configurations");

    // CFTP against the oracle: chi-square over configurations.
    std::map<std::vector<Height>, std::size_t> index_of;
    for (const auto& h : all) index_of.emplace(std::vector<Height>(h.values().begin(), h.values().end()), index_of.size());
    const auto seeds = seed_sequence(derive_seed(cfg_.seed, index), cfg_.verify.cftp_samples);
    auto res = sample_batch(t.tau, seeds, cfg_.threads, cftp_options(t));
    std::vector<std::uint64_t> counts(all.size(), 0);
    std::size_t outside = 0, coloring_bad = 0, ice_bad = 0;
    for (const auto& r : res) {
      auto it = index_of.find(std::vector<Height>(r.sample.values().begin(), r.sample.values().end()));
      if (it == index_of.end()) {
        ++outside;
      } else {
        ++counts[it->second];
      }
      if (dom.dimension() == 2) {
        coloring_bad += !is_proper_coloring(dom, to_three_coloring(r.sample));
        ice_bad += to_six_vertex(r.sample).ice_rule_violations;
      }
    }
    if (all.size() <= res.size() / 5) {
      std::vector<double> p(all.size(), 1.0 / static_cast<double>(all.size()));
      auto chi = chi_square_gof(counts, p);
      std::ostringstream d;
      d << res.size() << " samples, chi2 = " << chi.statistic << " on " << chi.dof << " dof, p = " << chi.p_value;
      check("cftp_exactness" + tag, outside == 0 && chi.p_value > 1e-3, d.str());
    } else {
      check("cftp_support" + tag, outside == 0,
            std::to_string(res.size()) + " samples, too few per configuration for chi-square");
    }
    if (dom.dimension() == 2) {
      check("conversions" + tag, coloring_bad == 0 && ice_bad == 0,
            std::to_string(coloring_bad) + " improper colorings, " + std::to_string(ice_bad) +
                " ice-rule violations");
    }

    if (all.size() <= cfg_.verify.max_states) {
      // Heat-bath order preservation, every ordered pair and interior site.
      std::size_t violations = 0;
      for (const auto& a : all) {
        for (const auto& b : all) {
          bool le = true;
          for (std::size_t s = 0; s < dom.num_sites(); ++s) le &= a.values()[s] <= b.values()[s];
          if (!le) continue;
          for (double u : {0.25, 0.75}) {
            for (SiteIndex v = 0; v < dom.num_interior(); ++v) {
              ChainState x{a, 0}, y{b, 0};
              heat_bath_update(x, v, u);
              heat_bath_update(y, v, u);
              for (std::size_t s = 0; s < dom.num_sites(); ++s) violations += x.current.values()[s] > y.current.values()[s];
            }
          }
        }
      }
      check("monotonicity" + tag, violations == 0, std::to_string(violations) + " order violations");

      std::map<std::vector<Height>, Rational> image;
      const Rational w(1, static_cast<long long>(all.size()));
      for (const auto& h : all) {
        for (const auto& [to, p] : sweep_transition_law(h)) image[to] += w * p;
      }
      bool stationary = image.size() == all.size();
      for (const auto& [k, p] : image) stationary &= p == w;
      check("stationarity" + tag, stationary, "uniform measure fixed by the one-sweep kernel");
    }

    std::size_t lc_bad = 0, sym_bad = 0;
    const bool zero = std::all_of(t.tau.values().begin(), t.tau.values().end(), [](Height x) { return x == 0; });
    auto marginals = site_marginals(t.tau);
    for (const auto& law : marginals) {
      lc_bad += !log_concavity_check(law).ok;
      if (zero) {
        for (const auto& [v, p] : law.support()) sym_bad += p != law.probability(-v);
      }
    }
    check("log_concavity" + tag, lc_bad == 0,
          std::to_string(marginals.size()) + " marginals, " + std::to_string(lc_bad) + " failures");
    if (zero) {
      check("symmetry" + tag, sym_bad == 0, std::to_string(sym_bad) + " asymmetric cells");
      auto pairs = random_monotone_pairs(dom, cfg_.verify.fkg_pairs, derive_seed(cfg_.seed, 1000 + index));
      auto cov = fkg_check_abs_exact(t.tau, pairs);
      std::size_t negative = 0;
      for (const auto& c : cov) negative += c.exact < 0;
      check("fkg" + tag, negative == 0,
            std::to_string(cov.size()) + " monotone pairs, " + std::to_string(negative) + " negative");
    }
    per.push_back(info);
  }

  void variance() {
    if (cfg_.boundary.kind != BoundarySpec::Kind::kZero) throw ConfigError("boundary", "variance-growth needs the zero boundary");
    if (cfg_.sampler.kind != SamplerSpec::Kind::kCftp) throw ConfigError("sampler.kind", "variance-growth needs cftp");
    VarianceGrowthOptions opt;
    opt.samples = cfg_.samples;
    opt.seed = cfg_.seed;
    opt.threads = cfg_.threads;
    opt.cftp.max_epochs = static_cast<std::int64_t>(cfg_.sampler.max_epochs);
    if (cfg_.sampler.initial_horizon > 0) {
      opt.suggested_horizons = false;
      opt.cftp.initial_horizon = cfg_.sampler.initial_horizon;
    }
    auto curve = variance_growth(cfg_.Ls, cfg_.dimension, opt);
    {
      auto out = open("variance.csv");
      write_variance_csv(out, curve);
    }
    json pts = json::array();
    for (const auto& p : curve.points) {
      pts.push_back({{"L", p.L},
                     {"variance", p.variance},
                     {"se", p.se},
                     {"n", p.n},
                     {"exact", p.exact},
                     {"seed_group", p.seed_group},
                     {"max_horizon", p.max_horizon},
                     {"mean_horizon", p.mean_horizon},
                     {"seconds", p.seconds}});
    }
    details_["points"] = pts;
    details_["fit"] = {{"slope", curve.fit.slope}, {"intercept", curve.fit.intercept}, {"r2", curve.fit.r2},
                       {"slope_se", curve.fit.slope_se}, {"regressor", "ln L"}};
    const bool anchor = !curve.points.empty() && curve.points.front().exact;
    check("anchor_row", anchor, "exact L = 1 point first");
    if (cfg_.require_trend) {
      const bool band = strictly_increasing_beyond_se(curve);
      std::ostringstream d;
      d << "increasing beyond SE = " << band << ", slope = " << curve.fit.slope << ", R2 = " << curve.fit.r2;
      check("variance_trend", band && curve.fit.slope > 0 && curve.fit.r2 >= cfg_.min_r2, d.str());
    }
  }

  void levelset() {
    if (cfg_.dimension != 2) throw ConfigError("dimension", "levelset needs d = 2");
    const auto targets = targets_of(cfg_);
    json per = json::array();
    for (std::size_t i = 0; i < targets.size(); ++i) {
      const Target& t = targets[i];
      const std::uint64_t seed = derive_seed(cfg_.seed, i);
      const auto res = cftp_sample(t.tau, RandomSource(seed), cftp_options(t));
      const HeightFunction& h = res.sample;
      {
        auto out = open("levelset_" + t.label + ".hlat", true);
        HeightDumpWriter w(out, t.tau.domain());
        w.write(h.values());
        w.finish();
      }
      std::vector<Height> levels = cfg_.levels;
      if (levels.empty()) {
        const auto [lo, hi] = std::minmax_element(h.values().begin(), h.values().end());
        for (Height a = *lo + 1; a <= *hi; ++a) levels.push_back(a);
      }
      auto out = open("levelset_" + t.label + ".csv");
      out << "level,loop_id,closed,outermost,segment,x0,y0,x1,y1\n";
      int next_id = 0;
      std::size_t loops = 0, open_loops = 0, outermost = 0;
      for (Height a : levels) {
        auto ls = level_set_edges(h, a);
        write_level_set_csv(out, ls, false, next_id);
        next_id += static_cast<int>(ls.contours.size());
        for (const auto& c : ls.contours) {
          ++loops;
          open_loops += !c.closed;
          outermost += c.outermost;
        }
      }
      per.push_back({{"target", t.label}, {"seed", seed}, {"horizon", res.horizon}, {"loops", loops},
                     {"outermost_loops", outermost}, {"open_contours", open_loops}});
      if (cfg_.boundary.kind == BoundarySpec::Kind::kZero) {
        check("contours_closed_" + t.label, open_loops == 0,
              std::to_string(loops) + " contours, " + std::to_string(outermost) + " outermost");
      }
    }
    details_["targets"] = per;
  }

  void convert() {
    HeightDump dump = [&] {
      try {
        return read_height_dump(cfg_.input.string());
      } catch (const FormatError& e) {
        throw ConfigError("input", e.what());
      }
    }();
    const auto& dom = *dump.domain;
    if (cfg_.format == "json") {
      json arr = json::array();
      for (const auto& h : dump.records) arr.push_back(height_to_json(h));
      open("heights.json") << arr.dump() << '\n';
      check("converted", true, std::to_string(dump.records.size()) + " records");
    } else if (cfg_.format == "coloring") {
      auto out = open("coloring.csv");
      out << "record,site";
      for (std::size_t k = 0; k < dom.dimension(); ++k) out << ",x" << k + 1;
      out << ",height,color\n";
      std::size_t bad = 0;
      for (std::size_t r = 0; r < dump.records.size(); ++r) {
        const auto colors = to_three_coloring(dump.records[r]);
        bad += !is_proper_coloring(dom, colors);
        for (std::size_t s = 0; s < dom.num_sites(); ++s) {
          out << r << ',' << s;
          for (int c : dom.vertex(static_cast<SiteIndex>(s)).coords()) out << ',' << c;
          out << ',' << dump.records[r].values()[s] << ',' << int{colors[s]} << '\n';
        }
      }
      check("proper_colorings", bad == 0, std::to_string(dump.records.size()) + " records, " + std::to_string(bad) + " improper");
    } else {
      if (dom.dimension() != 2) throw ConfigError("format", "six-vertex needs a d = 2 dump");
      auto out = open("six_vertex.csv");
      out << "record,a1,a2,b1,b2,c1,c2,ice_rule_violations\n";
      std::size_t bad = 0;
      for (std::size_t r = 0; r < dump.records.size(); ++r) {
        const auto six = to_six_vertex(dump.records[r]);
        bad += six.ice_rule_violations;
        out << r;
        for (auto c : six.type_counts) out << ',' << c;
        out << ',' << six.ice_rule_violations << '\n';
      }
      check("ice_rule", bad == 0, std::to_string(dump.records.size()) + " records, " + std::to_string(bad) + " violations");
    }
    details_["records"] = dump.records.size();
    details_["input"] = cfg_.input.string();
  }

  void trifurcation() {
    const auto& spec = cfg_.trifurcation;
    const auto w = comb_window(spec.half_width);
    auto out = open("trifurcation.csv");
    out << "x,y,radius,real,alternative\n";
    json per = json::array();
    TrifurcationOptions opt;
    opt.max_radius = std::max(opt.max_radius, spec.radius);
    for (std::size_t i = 0; i < spec.centers.size(); ++i) {
      const Vertex& v = spec.centers[i];
      const auto t0 = std::chrono::steady_clock::now();
      bool real, alt;
      try {
        real = is_trifurcation_ball(w, v, spec.radius, opt);
        alt = is_trifurcation_ball_alternative(w, v, spec.radius);
      } catch (const WindowTooSmall& e) {
        throw ConfigError("trifurcation.centers[" + std::to_string(i) + "]", e.what());
      }
      const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      out << v[0] << ',' << v[1] << ',' << spec.radius << ',' << real << ',' << alt << '\n';
      per.push_back({{"center", v.to_string()}, {"real", real}, {"alternative", alt}, {"seconds", s}});
      if (i < spec.expect.size()) {
        const auto [er, ea] = spec.expect[i];
        check("trifurcation_" + v.to_string(), real == er && alt == ea,
              std::string("real = ") + (real ? "yes" : "no") + ", alternative = " + (alt ? "yes" : "no"));
      }
    }
    details_["centers"] = per;
    details_["window"] = {{"pattern", "comb"}, {"half_width", spec.half_width}};
  }

  const ExperimentConfig& cfg_;
  RunResult result_;
  json details_ = json::object();
};

}  // namespace

Experiment experiment_from_name(const std::string& name) {
  auto it = experiment_names().find(name);
  if (it == experiment_names().end()) throw ConfigError("experiment", "unknown experiment '" + name + "'");
  return it->second;
}

std::string experiment_name(Experiment e) {
  for (const auto& [n, v] : experiment_names()) {
    if (v == e) return n;
  }
  return "?";
}

json read_config_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("", path.string() + ": " + e.what());
  }
}

std::string config_hash(const json& j) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(j.dump())));
  return buf;
}

bool RunResult::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

ExperimentConfig parse_config(const json& j, const fs::path& base_dir) {
  if (!j.is_object()) throw ConfigError("", "config must be a JSON object");
  reject_unknown(j, "", {"experiment", "dimension", "L", "boundary", "sampler", "samples", "seed", "output",
                         "threads", "levels", "input", "format", "require_trend", "min_r2", "trifurcation",
                         "verify"});
  ExperimentConfig c;
  c.source = j;
  if (auto e = optional_field<std::string>(j, "", "experiment")) {
    c.experiment = experiment_from_name(*e);
  } else {
    throw ConfigError("experiment", "missing");
  }

  if (auto d = optional_field<std::size_t>(j, "", "dimension")) c.dimension = *d;
  if (c.dimension < 1 || c.dimension > Vertex::kMaxDimension) {
    throw ConfigError("dimension", "must be between 1 and " + std::to_string(Vertex::kMaxDimension));
  }
  if (auto s = optional_field<std::uint64_t>(j, "", "seed")) {
    c.seed = *s;
  } else {
    throw ConfigError("seed", "missing (runs are seeded explicitly)");
  }
  if (auto s = optional_field<std::size_t>(j, "", "samples")) c.samples = *s;
  if (c.samples < 1) throw ConfigError("samples", "must be at least 1");
  if (auto t = optional_field<std::size_t>(j, "", "threads")) c.threads = *t;
  if (auto o = optional_field<std::string>(j, "", "output")) c.output = *o;

  if (j.contains("boundary")) {
    const json& b = j.at("boundary");
    if (b.is_string()) {
      const auto kind = b.get<std::string>();
      if (kind != "zero") throw ConfigError("boundary", "a string boundary must be \"zero\"; use {\"kind\": \"file\", \"path\": ...}");
    } else {
      const json& o = object_field(j, "boundary");
      reject_unknown(o, "boundary", {"kind", "path"});
      const auto kind = optional_field<std::string>(o, "boundary", "kind").value_or("zero");
      if (kind == "file") {
        c.boundary.kind = BoundarySpec::Kind::kFile;
        auto p = optional_field<std::string>(o, "boundary", "path");
        if (!p) throw ConfigError("boundary.path", "missing for a file boundary");
        c.boundary.path = fs::path(*p).is_absolute() || base_dir.empty() ? fs::path(*p) : base_dir / *p;
      } else if (kind != "zero") {
        throw ConfigError("boundary.kind", "must be \"zero\" or \"file\"");
      }
    }
  }

  if (j.contains("sampler")) {
    const json& o = object_field(j, "sampler");
    reject_unknown(o, "sampler", {"kind", "sweeps", "thinning", "initial_horizon", "max_epochs"});
    const auto kind = optional_field<std::string>(o, "sampler", "kind").value_or("cftp");
    if (kind == "glauber") {
      c.sampler.kind = SamplerSpec::Kind::kGlauber;
    } else if (kind != "cftp") {
      throw ConfigError("sampler.kind", "must be \"cftp\" or \"glauber\"");
    }
    if (auto v = optional_field<std::uint64_t>(o, "sampler", "sweeps")) c.sampler.sweeps = *v;
    if (auto v = optional_field<std::uint64_t>(o, "sampler", "thinning")) c.sampler.thinning = *v;
    if (c.sampler.thinning < 1) throw ConfigError("sampler.thinning", "must be at least 1");
    if (auto v = optional_field<std::int64_t>(o, "sampler", "initial_horizon")) c.sampler.initial_horizon = *v;
    if (c.sampler.initial_horizon < 0) throw ConfigError("sampler.initial_horizon", "must be nonnegative");
    if (auto v = optional_field<std::uint64_t>(o, "sampler", "max_epochs")) c.sampler.max_epochs = *v;
    if (c.sampler.max_epochs < 1) throw ConfigError("sampler.max_epochs", "must be at least 1");
  }

  const bool needs_domain = c.experiment != Experiment::kConvert && c.experiment != Experiment::kTrifurcationDemo;
  if (j.contains("L")) c.Ls = int_list(j, "L");
  if (needs_domain && c.boundary.kind == BoundarySpec::Kind::kZero) {
    if (c.Ls.empty()) throw ConfigError("L", "missing");
    for (std::size_t i = 0; i < c.Ls.size(); ++i) {
      const int L = c.Ls[i];
      const std::string f = c.Ls.size() == 1 ? "L" : "L[" + std::to_string(i) + "]";
      if (L < 1) throw ConfigError(f, "must be positive");
      if (L % 2 == 0) throw ConfigError(f, "must be odd for the zero boundary (got " + std::to_string(L) + ")");
      if (i > 0 && L <= c.Ls[i - 1]) throw ConfigError(f, "L values must be strictly increasing");
    }
  }

  if (j.contains("levels")) {
    for (int a : int_list(j, "levels")) c.levels.push_back(a);
  }
  if (auto v = optional_field<std::string>(j, "", "input")) {
    c.input = fs::path(*v).is_absolute() || base_dir.empty() ? fs::path(*v) : base_dir / *v;
  }
  if (c.experiment == Experiment::kConvert && c.input.empty()) throw ConfigError("input", "missing");
  if (auto v = optional_field<std::string>(j, "", "format")) c.format = *v;
  if (c.format != "coloring" && c.format != "six-vertex" && c.format != "json") {
    throw ConfigError("format", "must be \"coloring\", \"six-vertex\" or \"json\"");
  }
  if (auto v = optional_field<bool>(j, "", "require_trend")) c.require_trend = *v;
  if (auto v = optional_field<double>(j, "", "min_r2")) c.min_r2 = *v;

  if (j.contains("verify")) {
    const json& o = object_field(j, "verify");
    reject_unknown(o, "verify", {"cftp_samples", "fkg_pairs", "max_states"});
    if (auto v = optional_field<std::size_t>(o, "verify", "cftp_samples")) c.verify.cftp_samples = *v;
    if (c.verify.cftp_samples < 1) throw ConfigError("verify.cftp_samples", "must be at least 1");
    if (auto v = optional_field<std::size_t>(o, "verify", "fkg_pairs")) c.verify.fkg_pairs = *v;
    if (auto v = optional_field<std::size_t>(o, "verify", "max_states")) c.verify.max_states = *v;
  }

  auto& tri = c.trifurcation;
  if (j.contains("trifurcation")) {
    const json& o = object_field(j, "trifurcation");
    reject_unknown(o, "trifurcation", {"half_width", "radius", "centers", "expect"});
    if (auto v = optional_field<int>(o, "trifurcation", "half_width")) tri.half_width = *v;
    if (auto v = optional_field<int>(o, "trifurcation", "radius")) tri.radius = *v;
    if (o.contains("centers")) {
      const json& cs = o.at("centers");
      if (!cs.is_array() || cs.empty()) throw ConfigError("trifurcation.centers", "expected a nonempty list of [x, y]");
      for (std::size_t i = 0; i < cs.size(); ++i) {
        tri.centers.push_back(vertex_field(cs[i], "trifurcation.centers[" + std::to_string(i) + "]", 2));
      }
    }
    if (o.contains("expect")) {
      const json& es = o.at("expect");
      if (!es.is_array()) throw ConfigError("trifurcation.expect", "expected a list");
      for (std::size_t i = 0; i < es.size(); ++i) {
        const std::string p = "trifurcation.expect[" + std::to_string(i) + "]";
        if (!es[i].is_object()) throw ConfigError(p, "expected {\"real\": bool, \"alternative\": bool}");
        auto r = optional_field<bool>(es[i], p, "real");
        auto a = optional_field<bool>(es[i], p, "alternative");
        if (!r || !a) throw ConfigError(p, "needs both \"real\" and \"alternative\"");
        tri.expect.emplace_back(*r, *a);
      }
    }
  }
  if (tri.half_width < 2) throw ConfigError("trifurcation.half_width", "must be at least 2");
  if (tri.radius < 0) throw ConfigError("trifurcation.radius", "must be nonnegative");
  if (tri.centers.empty()) {
    // The comb: a tooth only trifurcates under the alternative definition,
    // the spine under both.
    tri.centers = {Vertex{0, 5}, Vertex{0, 0}};
    if (tri.expect.empty() && tri.radius == 3 && tri.half_width >= 9) tri.expect = {{false, true}, {true, true}};
  }
  if (tri.expect.size() > tri.centers.size()) throw ConfigError("trifurcation.expect", "more entries than centers");
  return c;
}

RunResult run(const ExperimentConfig& config) { return Runner(config).go(); }

}  // namespace heightlat::cli
