#include "heightlat/height_function.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <sstream>

namespace heightlat {

namespace {

bool parity_ok(const Vertex& v, Height h) {
  return ((static_cast<std::int64_t>(h) + v.l1_norm()) & 1) == 0;
}

// min over sources w of seed(w) + graph distance, by Dijkstra on unit weights.
std::vector<Height> graph_cone_min(const LatticeDomain& domain,
                                   std::span<const Height> boundary_values) {
  constexpr Height kInf = std::numeric_limits<Height>::max();
  std::vector<Height> best(domain.num_sites(), kInf);
  using Item = std::pair<Height, SiteIndex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  for (std::size_t b = 0; b < boundary_values.size(); ++b) {
    auto s = static_cast<SiteIndex>(domain.num_interior() + b);
    best[s] = boundary_values[b];
    queue.emplace(best[s], s);
  }
  while (!queue.empty()) {
    auto [value, s] = queue.top();
    queue.pop();
    if (value != best[s]) continue;
    for (SiteIndex w : domain.neighbors_of(s)) {
      if (value + 1 < best[w]) {
        best[w] = value + 1;
        queue.emplace(best[w], w);
      }
    }
  }
  return best;
}

}  // namespace

std::string ValidationReport::describe(const LatticeDomain& domain) const {
  std::ostringstream os;
  if (size_mismatch) os << "value count does not match |Λ+|; ";
  for (const auto& p : parity) {
    os << "ParityViolation" << domain.vertex(p.site) << "=" << p.value << "; ";
  }
  for (const auto& g : gradient) {
    os << "GradientViolation" << domain.vertex(g.a) << "-" << domain.vertex(g.b) << "; ";
  }
  return os.str();
}

ValidationReport check_height_values(const LatticeDomain& domain,
                                     std::span<const Height> values) {
  ValidationReport report;
  if (values.size() != domain.num_sites()) {
    report.size_mismatch = true;
    return report;
  }
  for (std::size_t s = 0; s < values.size(); ++s) {
    if (!parity_ok(domain.vertex(static_cast<SiteIndex>(s)), values[s])) {
      report.parity.push_back({static_cast<SiteIndex>(s), values[s]});
    }
  }
  for (const Edge& e : domain.edges()) {
    if (std::abs(values[e.a] - values[e.b]) != 1) report.gradient.push_back({e.a, e.b});
  }
  return report;
}

HeightFunction HeightFunction::validated(DomainPtr domain, std::vector<Height> values) {
  auto report = check_height_values(*domain, values);
  if (!report.ok()) {
    throw ValidationError("invalid height function: " + report.describe(*domain),
                          std::move(report));
  }
  return HeightFunction(std::move(domain), std::move(values));
}

HeightFunction HeightFunction::trusted(DomainPtr domain, std::vector<Height> values) {
  return HeightFunction(std::move(domain), std::move(values));
}

HeightFunction HeightFunction::negated() const {
  std::vector<Height> out(values_.size());
  std::transform(values_.begin(), values_.end(), out.begin(), [](Height h) { return -h; });
  return HeightFunction(domain_, std::move(out));
}

BoundaryCondition::BoundaryCondition(DomainPtr domain, std::vector<Height> values)
    : domain_(std::move(domain)), values_(std::move(values)) {
  if (values_.size() != domain_->num_boundary()) {
    throw Error("boundary condition needs " + std::to_string(domain_->num_boundary()) +
                " values, got " + std::to_string(values_.size()));
  }
}

BoundaryCondition BoundaryCondition::zero(DomainPtr domain) {
  std::vector<Height> zeros(domain->num_boundary(), 0);
  return BoundaryCondition(std::move(domain), std::move(zeros));
}

BoundaryCondition BoundaryCondition::of(const HeightFunction& h) {
  const auto& dom = h.domain();
  auto vals = h.values().subspan(dom.num_interior());
  return BoundaryCondition(h.domain_ptr(), std::vector<Height>(vals.begin(), vals.end()));
}

BoundaryCondition BoundaryCondition::negated() const {
  std::vector<Height> out(values_.size());
  std::transform(values_.begin(), values_.end(), out.begin(), [](Height h) { return -h; });
  return BoundaryCondition(domain_, std::move(out));
}

void BoundaryCondition::check_feasible() const {
  auto boundary = domain_->boundary();
  for (std::size_t i = 0; i < boundary.size(); ++i) {
    if (!parity_ok(boundary[i], values_[i])) {
      throw InfeasibleBoundary("boundary value " + std::to_string(values_[i]) + " at " +
                               boundary[i].to_string() + " has the wrong parity");
    }
  }
  for (std::size_t i = 0; i < boundary.size(); ++i) {
    for (std::size_t j = i + 1; j < boundary.size(); ++j) {
      if (std::abs(static_cast<std::int64_t>(values_[i]) - values_[j]) >
          l1_distance(boundary[i], boundary[j])) {
        throw InfeasibleBoundary("boundary values at " + boundary[i].to_string() + " and " +
                                 boundary[j].to_string() + " violate the Lipschitz condition");
      }
    }
  }
}

bool BoundaryCondition::is_feasible() const {
  try {
    check_feasible();
    return true;
  } catch (const InfeasibleBoundary&) {
    return false;
  }
}

HeightFunction extend_max(const BoundaryCondition& tau) {
  tau.check_feasible();
  const auto& dom = tau.domain();
  auto boundary = dom.boundary();
  std::vector<Height> out(dom.num_sites());
  for (std::size_t s = 0; s < dom.num_sites(); ++s) {
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    const Vertex& v = dom.vertex(static_cast<SiteIndex>(s));
    for (std::size_t b = 0; b < boundary.size(); ++b) {
      best = std::min(best, tau.values()[b] + l1_distance(v, boundary[b]));
    }
    out[s] = static_cast<Height>(best);
  }
  return HeightFunction::trusted(tau.domain_ptr(), std::move(out));
}

HeightFunction extend_min(const BoundaryCondition& tau) {
  return extend_max(tau.negated()).negated();
}

Envelope extension_envelope(const BoundaryCondition& tau) {
  tau.check_feasible();
  Envelope env;
  env.upper = graph_cone_min(tau.domain(), tau.values());
  auto neg = tau.negated();
  env.lower = graph_cone_min(tau.domain(), neg.values());
  for (auto& h : env.lower) h = -h;
  return env;
}

}  // namespace heightlat
