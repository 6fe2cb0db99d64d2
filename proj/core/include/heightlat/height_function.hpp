#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "heightlat/domain.hpp"
#include "heightlat/error.hpp"

namespace heightlat {

using Height = std::int32_t;

struct ParityViolation {
  SiteIndex site;
  Height value;
};

struct GradientViolation {
  SiteIndex a;
  SiteIndex b;
};

/// Every violated constraint of a candidate height assignment on Λ+.
struct ValidationReport {
  std::vector<ParityViolation> parity;
  std::vector<GradientViolation> gradient;
  bool size_mismatch = false;

  bool ok() const noexcept { return parity.empty() && gradient.empty() && !size_mismatch; }
  std::string describe(const LatticeDomain& domain) const;
};

class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, ValidationReport report)
      : Error(what), report_(std::move(report)) {}
  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

/// Checks the parity condition at every site and |Δh| = 1 on every edge of Λ+.
ValidationReport check_height_values(const LatticeDomain& domain, std::span<const Height> values);

/// A homomorphism height function on Λ+.
class HeightFunction {
 public:
  HeightFunction() = default;

  /// Throws ValidationError listing every violation.
  static HeightFunction validated(DomainPtr domain, std::vector<Height> values);
  /// For values already known to be valid (sampler and enumerator output).
  static HeightFunction trusted(DomainPtr domain, std::vector<Height> values);

  const DomainPtr& domain_ptr() const noexcept { return domain_; }
  const LatticeDomain& domain() const noexcept { return *domain_; }
  std::span<const Height> values() const noexcept { return values_; }
  Height operator[](SiteIndex i) const noexcept { return values_[i]; }
  Height at(const Vertex& v) const { return values_[domain_->index_of(v)]; }

  HeightFunction negated() const;

  bool operator==(const HeightFunction& other) const {
    return values_ == other.values_ && (domain_ == other.domain_ || *domain_ == *other.domain_);
  }

 private:
  HeightFunction(DomainPtr domain, std::vector<Height> values)
      : domain_(std::move(domain)), values_(std::move(values)) {}

  DomainPtr domain_;
  std::vector<Height> values_;
};

/// Boundary values τ on ∂◦Λ, indexed by boundary ordinal (site - num_interior).
class BoundaryCondition {
 public:
  BoundaryCondition(DomainPtr domain, std::vector<Height> values);

  static BoundaryCondition zero(DomainPtr domain);
  static BoundaryCondition of(const HeightFunction& h);

  const DomainPtr& domain_ptr() const noexcept { return domain_; }
  const LatticeDomain& domain() const noexcept { return *domain_; }
  std::span<const Height> values() const noexcept { return values_; }
  Height at_site(SiteIndex boundary_site) const {
    return values_[boundary_site - domain_->num_interior()];
  }

  BoundaryCondition negated() const;

  /// Parity on ∂◦Λ and |τ(u) − τ(v)| ≤ ‖u − v‖₁ for all boundary pairs.
  /// Throws InfeasibleBoundary naming the first offending vertex or pair.
  void check_feasible() const;
  bool is_feasible() const;

  bool operator==(const BoundaryCondition& other) const {
    return values_ == other.values_ && (domain_ == other.domain_ || *domain_ == *other.domain_);
  }

 private:
  DomainPtr domain_;
  std::vector<Height> values_;
};

/// f_max(v) = min_{w ∈ ∂◦Λ} τ(w) + ‖v − w‖₁.
HeightFunction extend_max(const BoundaryCondition& tau);
/// f_min(v) = max_{w ∈ ∂◦Λ} τ(w) − ‖v − w‖₁.
HeightFunction extend_min(const BoundaryCondition& tau);

/// Pointwise bounds on every gradient-valid extension of τ, computed with the
/// graph metric of Λ+. Coincides with (extend_min, extend_max) whenever graph
/// distance in Λ+ equals ‖·‖₁ (balls, boxes).
struct Envelope {
  std::vector<Height> lower;
  std::vector<Height> upper;
};
Envelope extension_envelope(const BoundaryCondition& tau);

}  // namespace heightlat
