#include "heightlat/serialization.hpp"

#include <array>
#include <fstream>
#include <istream>
#include <ostream>

namespace heightlat {

using nlohmann::json;

namespace {

template <typename T>
T field(const json& j, const char* name, const char* context) {
  if (!j.is_object() || !j.contains(name)) {
    throw FormatError(std::string(context) + ": missing field '" + name + "'");
  }
  try {
    return j.at(name).get<T>();
  } catch (const json::exception& e) {
    throw FormatError(std::string(context) + ": field '" + name + "' has the wrong type (" +
                      e.what() + ")");
  }
}

Vertex vertex_from(const json& coords, std::size_t d, const char* context) {
  if (!coords.is_array() || coords.size() < d) {
    throw FormatError(std::string(context) + ": vertex must be an array of " +
                      std::to_string(d) + " integers");
  }
  std::vector<int> c;
  for (std::size_t i = 0; i < d; ++i) {
    if (!coords[i].is_number_integer()) {
      throw FormatError(std::string(context) + ": non-integer coordinate");
    }
    c.push_back(coords[i].get<int>());
  }
  return Vertex(std::span<const int>(c));
}

json vertex_json(const Vertex& v) {
  json a = json::array();
  for (int c : v.coords()) a.push_back(c);
  return a;
}

void put_u32(std::ostream& out, std::uint32_t x) {
  std::array<char, 4> b;
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((x >> (8 * i)) & 0xff);
  out.write(b.data(), 4);
}

void put_u64(std::ostream& out, std::uint64_t x) {
  std::array<char, 8> b;
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((x >> (8 * i)) & 0xff);
  out.write(b.data(), 8);
}

std::uint64_t get_uint(std::istream& in, int bytes) {
  std::array<unsigned char, 8> b{};
  in.read(reinterpret_cast<char*>(b.data()), bytes);
  if (!in) throw FormatError("height dump truncated");
  std::uint64_t x = 0;
  for (int i = bytes - 1; i >= 0; --i) x = (x << 8) | b[i];
  return x;
}

constexpr char kMagic[4] = {'H', 'L', 'A', 'T'};
constexpr std::uint32_t kVersion = 1;

}  // namespace

json domain_to_json(const LatticeDomain& domain) {
  const auto& desc = domain.descriptor();
  json j;
  j["dimension"] = domain.dimension();
  if (desc.kind == DomainDescriptor::Kind::kBall) {
    j["kind"] = "ball";
    j["L"] = desc.radius;
  } else {
    j["kind"] = "explicit";
    json vs = json::array();
    for (const Vertex& v : domain.interior()) vs.push_back(vertex_json(v));
    j["vertices"] = std::move(vs);
  }
  return j;
}

DomainPtr domain_from_json(const json& j) {
  const auto d = field<std::size_t>(j, "dimension", "domain");
  if (d < 1 || d > Vertex::kMaxDimension) throw FormatError("domain: dimension out of range");
  const auto kind = field<std::string>(j, "kind", "domain");
  if (kind == "ball") {
    const int L = field<int>(j, "L", "domain");
    if (L < 0) throw FormatError("domain: field 'L' must be nonnegative");
    return ball_domain(d, L);
  }
  if (kind == "explicit") {
    const auto vs = field<json>(j, "vertices", "domain");
    if (!vs.is_array()) throw FormatError("domain: field 'vertices' must be an array");
    std::vector<Vertex> interior;
    for (const auto& c : vs) interior.push_back(vertex_from(c, d, "domain.vertices"));
    return LatticeDomain::from_interior(d, std::move(interior));
  }
  throw FormatError("domain: field 'kind' must be \"ball\" or \"explicit\"");
}

json height_to_json(const HeightFunction& h) {
  return json{{"domain", domain_to_json(h.domain())},
              {"values", std::vector<Height>(h.values().begin(), h.values().end())}};
}

HeightFunction height_from_json(const json& j) {
  DomainPtr dom = domain_from_json(field<json>(j, "domain", "height"));
  auto values = field<std::vector<Height>>(j, "values", "height");
  if (values.size() != dom->num_sites()) {
    throw FormatError("height: expected " + std::to_string(dom->num_sites()) + " values, got " +
                      std::to_string(values.size()));
  }
  return HeightFunction::validated(std::move(dom), std::move(values));
}

json boundary_to_json(const BoundaryCondition& tau) {
  const auto& dom = tau.domain();
  json entries = json::array();
  for (std::size_t i = 0; i < dom.num_boundary(); ++i) {
    json e = vertex_json(dom.boundary()[i]);
    e.push_back(tau.values()[i]);
    entries.push_back(std::move(e));
  }
  return json{{"domain", domain_to_json(dom)}, {"tau", std::move(entries)}};
}

BoundaryCondition boundary_from_json(const json& j) {
  DomainPtr dom = domain_from_json(field<json>(j, "domain", "boundary"));
  const auto entries = field<json>(j, "tau", "boundary");
  if (!entries.is_array()) throw FormatError("boundary: field 'tau' must be an array");
  const std::size_t d = dom->dimension();
  std::vector<Height> values(dom->num_boundary(), 0);
  std::vector<char> seen(dom->num_boundary(), 0);
  for (const auto& e : entries) {
    if (!e.is_array() || e.size() != d + 1 || !e[d].is_number_integer()) {
      throw FormatError("boundary: each 'tau' entry must be [x1, ..., xd, value]");
    }
    const Vertex v = vertex_from(e, d, "boundary.tau");
    auto s = dom->find(v);
    if (!s || dom->is_interior(*s)) {
      throw FormatError("boundary: " + v.to_string() + " is not on the outer boundary");
    }
    const std::size_t k = *s - dom->num_interior();
    values[k] = e[d].get<Height>();
    seen[k] = 1;
  }
  for (std::size_t k = 0; k < seen.size(); ++k) {
    if (!seen[k]) {
      throw FormatError("boundary: no value for " + dom->boundary()[k].to_string());
    }
  }
  return BoundaryCondition(std::move(dom), std::move(values));
}

HeightDumpWriter::HeightDumpWriter(std::ostream& out, const LatticeDomain& domain)
    : out_(out), sites_(domain.num_sites()) {
  const std::string desc = domain_to_json(domain).dump();
  out_.write(kMagic, 4);
  put_u32(out_, kVersion);
  put_u32(out_, static_cast<std::uint32_t>(desc.size()));
  out_.write(desc.data(), static_cast<std::streamsize>(desc.size()));
  put_u64(out_, sites_);
  count_pos_ = out_.tellp();
  put_u64(out_, 0);
}

void HeightDumpWriter::write(std::span<const Height> values) {
  if (values.size() != sites_) throw FormatError("height record has the wrong length");
  for (Height h : values) put_u32(out_, static_cast<std::uint32_t>(h));
  ++records_;
}

void HeightDumpWriter::finish() {
  const auto end = out_.tellp();
  out_.seekp(count_pos_);
  put_u64(out_, records_);
  out_.seekp(end);
  out_.flush();
  if (!out_) throw FormatError("failed to write height dump");
}

void write_height_dump(const std::string& path, const LatticeDomain& domain,
                       std::span<const HeightFunction> records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot open " + path + " for writing");
  HeightDumpWriter writer(out, domain);
  for (const auto& h : records) writer.write(h.values());
  writer.finish();
}

HeightDump read_height_dump(std::istream& in) {
  char magic[4];
  in.read(magic, 4);
  if (!in || std::string(magic, 4) != std::string(kMagic, 4)) {
    throw FormatError("not a height dump (bad magic)");
  }
  const auto version = get_uint(in, 4);
  if (version != kVersion) throw FormatError("unsupported height dump version");
  const auto desc_len = get_uint(in, 4);
  if (desc_len > (1u << 30)) throw FormatError("height dump descriptor too long");
  std::string desc(desc_len, '\0');
  in.read(desc.data(), static_cast<std::streamsize>(desc_len));
  if (!in) throw FormatError("height dump truncated");
  json j;
  try {
    j = json::parse(desc);
  } catch (const json::exception& e) {
    throw FormatError(std::string("height dump descriptor: ") + e.what());
  }
  HeightDump dump;
  dump.domain = domain_from_json(j);
  const auto sites = get_uint(in, 8);
  if (sites != dump.domain->num_sites()) throw FormatError("height dump site count mismatch");
  const auto records = get_uint(in, 8);
  for (std::uint64_t r = 0; r < records; ++r) {
    std::vector<Height> values(sites);
    for (auto& h : values) h = static_cast<Height>(static_cast<std::uint32_t>(get_uint(in, 4)));
    dump.records.push_back(HeightFunction::validated(dump.domain, std::move(values)));
  }
  return dump;
}

HeightDump read_height_dump(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path);
  return read_height_dump(in);
}

void write_distribution_csv(std::ostream& out, const ExactDistribution& dist) {
  out << "value,count,probability\n";
  for (const auto& [v, p] : dist.support()) {
    out << v << ',' << dist.counts().at(v) << ',' << p << '\n';
  }
}

void write_distribution_csv(std::ostream& out, const EmpiricalDistribution& dist) {
  out << "value,count,probability\n";
  for (const auto& [v, c] : dist.counts()) {
    out << v << ',' << c << ',' << dist.probability(v) << '\n';
  }
}

void write_level_set_csv(std::ostream& out, const LevelSet& levels, bool header,
                         int first_loop_id) {
  if (header) out << "level,loop_id,closed,outermost,segment,x0,y0,x1,y1\n";
  int id = first_loop_id;
  for (const Contour& c : levels.contours) {
    int k = 0;
    for (const DualSegment& s : c.segments) {
      out << levels.level << ',' << id << ',' << (c.closed ? 1 : 0) << ','
          << (c.outermost ? 1 : 0) << ',' << k++ << ',' << s.p0[0] / 2.0 << ','
          << s.p0[1] / 2.0 << ',' << s.p1[0] / 2.0 << ',' << s.p1[1] / 2.0 << '\n';
    }
    ++id;
  }
}

void write_variance_csv(std::ostream& out, const VarianceCurve& curve) {
  out << "L,var,se,n,exact,seed_group\n";
  const auto old = out.precision(10);
  for (const auto& p : curve.points) {
    out << p.L << ',' << p.variance << ',' << p.se << ',' << p.n << ',' << (p.exact ? 1 : 0)
        << ',' << p.seed_group << '\n';
  }
  out.precision(old);
}

}  // namespace heightlat
