#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "heightlat/height_function.hpp"
#include "heightlat/level_sets.hpp"
#include "heightlat/oracle.hpp"
#include "heightlat/statistics.hpp"

namespace heightlat {

/// {"dimension": d, "kind": "ball", "L": L} or
/// {"dimension": d, "kind": "explicit", "vertices": [[...], ...]}.
nlohmann::json domain_to_json(const LatticeDomain& domain);
/// Throws FormatError naming the offending field.
DomainPtr domain_from_json(const nlohmann::json& j);

/// {"domain": ..., "values": [...]} with values in site order.
nlohmann::json height_to_json(const HeightFunction& h);
HeightFunction height_from_json(const nlohmann::json& j);

/// {"domain": ..., "tau": [[x1, ..., xd, value], ...]} covering ∂◦Λ.
nlohmann::json boundary_to_json(const BoundaryCondition& tau);
BoundaryCondition boundary_from_json(const nlohmann::json& j);

/// Binary height dump, little-endian:
///   "HLAT" | u32 version | u32 descriptor length | descriptor JSON bytes |
///   u64 site count | u64 record count | records of site-count int32 heights.
struct HeightDump {
  DomainPtr domain;
  std::vector<HeightFunction> records;
};

class HeightDumpWriter {
 public:
  HeightDumpWriter(std::ostream& out, const LatticeDomain& domain);
  void write(std::span<const Height> values);
  /// Rewrites the record count in the header (needs a seekable stream).
  void finish();
  std::uint64_t records() const noexcept { return records_; }

 private:
  std::ostream& out_;
  std::size_t sites_;
  std::streampos count_pos_;
  std::uint64_t records_ = 0;
};

void write_height_dump(const std::string& path, const LatticeDomain& domain,
                       std::span<const HeightFunction> records);
HeightDump read_height_dump(std::istream& in);
HeightDump read_height_dump(const std::string& path);

/// value,count,probability
void write_distribution_csv(std::ostream& out, const ExactDistribution& dist);
void write_distribution_csv(std::ostream& out, const EmpiricalDistribution& dist);

/// level,loop_id,closed,outermost,segment,x0,y0,x1,y1 (real coordinates).
void write_level_set_csv(std::ostream& out, const LevelSet& levels, bool header = true,
                         int first_loop_id = 0);

/// L,var,se,n,exact,seed_group
void write_variance_csv(std::ostream& out, const VarianceCurve& curve);

}  // namespace heightlat
