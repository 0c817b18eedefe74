#include "wma/io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "wma/error.hpp"

namespace wma {

namespace {

using nlohmann::json;

static_assert(std::endian::native == std::endian::little, "binary dumps assume a little-endian host");

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  return out;
}

struct Parsed {
  json header;
  std::string payload;
  bool binary = false;
};

Parsed open_in(const std::filesystem::path& path, const std::string& format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  Parsed p;
  std::string line;
  std::getline(in, line);
  try {
    p.header = json::parse(line);
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": bad header: " + e.what());
  }
  if (p.header.value("format", "") != format) throw ConfigError(path.string() + ": expected format " + format);
  if (p.header.value("version", 0) != 1) throw ConfigError(path.string() + ": unsupported version");
  const std::string enc = p.header.value("encoding", "");
  if (enc != "binary-le" && enc != "text") throw ConfigError(path.string() + ": unknown encoding");
  p.binary = enc == "binary-le";
  std::ostringstream ss;
  ss << in.rdbuf();
  p.payload = ss.str();
  return p;
}

template <class T>
std::vector<T> take(const std::string& payload, std::size_t& offset, std::size_t count, const std::string& what) {
  if (payload.size() < offset + count * sizeof(T)) throw ConfigError(what + ": truncated payload");
  std::vector<T> out(count);
  std::memcpy(out.data(), payload.data() + offset, count * sizeof(T));
  offset += count * sizeof(T);
  return out;
}

std::string g17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

void write_solution(const std::filesystem::path& path, const Grid& grid, const DiscreteField& field, double t,
                    bool binary) {
  if (field.values.size() != grid.unknown_count()) throw DomainError("write_solution: field does not match grid");
  json h;
  h["format"] = "wma-field";
  h["version"] = 1;
  h["encoding"] = binary ? "binary-le" : "text";
  h["n"] = grid.dim();
  h["h"] = grid.spacing();
  h["lo"] = std::vector<double>(grid.origin().data(), grid.origin().data() + grid.dim());
  h["dims"] = std::vector<int>(static_cast<std::size_t>(grid.dim()), grid.extent());
  h["resolution"] = grid.resolution();
  h["active_count"] = grid.active_count();
  h["closure_count"] = grid.closure_count();
  h["t"] = t;
  auto out = open_out(path);
  out << h.dump() << '\n';
  const auto nodes = grid.unknown_nodes();
  if (binary) {
    std::vector<std::uint64_t> idx(nodes.begin(), nodes.end());
    out.write(reinterpret_cast<const char*>(idx.data()), static_cast<std::streamsize>(idx.size() * sizeof(std::uint64_t)));
    out.write(reinterpret_cast<const char*>(field.values.data()),
              static_cast<std::streamsize>(field.values.size() * sizeof(double)));
  } else {
    for (std::size_t i = 0; i < nodes.size(); ++i) out << nodes[i] << ' ' << g17(field.values[i]) << '\n';
  }
  if (!out) throw ConfigError("write failed: " + path.string());
}

SolutionDump read_solution(const std::filesystem::path& path) {
  Parsed p = open_in(path, "wma-field");
  SolutionDump d;
  try {
    d.n = p.header.at("n").get<int>();
    d.h = p.header.at("h").get<double>();
    d.lo = p.header.at("lo").get<std::vector<double>>();
    d.dims = p.header.at("dims").get<std::vector<int>>();
    d.resolution = p.header.at("resolution").get<int>();
    d.active_count = p.header.at("active_count").get<std::size_t>();
    d.closure_count = p.header.at("closure_count").get<std::size_t>();
    d.t = p.header.at("t").get<double>();
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": bad header: " + e.what());
  }
  const std::size_t count = d.active_count + d.closure_count;
  if (p.binary) {
    std::size_t off = 0;
    d.nodes = take<std::uint64_t>(p.payload, off, count, path.string());
    d.values = take<double>(p.payload, off, count, path.string());
  } else {
    std::istringstream is(p.payload);
    d.nodes.resize(count);
    d.values.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
      std::string v;
      if (!(is >> d.nodes[i] >> v)) throw ConfigError(path.string() + ": truncated payload");
      d.values[i] = std::strtod(v.c_str(), nullptr);
    }
  }
  return d;
}

DiscreteField field_from_dump(const SolutionDump& dump, const Grid& grid) {
  const auto nodes = grid.unknown_nodes();
  if (dump.n != grid.dim() || dump.h != grid.spacing() || dump.nodes.size() != nodes.size() ||
      !std::equal(nodes.begin(), nodes.end(), dump.nodes.begin())) {
    throw ConfigError("solution dump does not match the grid");
  }
  return DiscreteField{dump.values};
}

void write_sampled(const std::filesystem::path& path, const SampledField& field, bool binary) {
  json h;
  h["format"] = "wma-sampled";
  h["version"] = 1;
  h["encoding"] = binary ? "binary-le" : "text";
  h["n"] = field.n;
  h["h"] = field.h;
  h["lo"] = std::vector<double>(field.origin.data(), field.origin.data() + field.n);
  h["dims"] = field.extents;
  auto out = open_out(path);
  out << h.dump() << '\n';
  if (binary) {
    out.write(reinterpret_cast<const char*>(field.values.data()),
              static_cast<std::streamsize>(field.values.size() * sizeof(double)));
  } else {
    for (double v : field.values) out << g17(v) << '\n';
  }
}

SampledField read_sampled(const std::filesystem::path& path) {
  Parsed p = open_in(path, "wma-sampled");
  SampledField f;
  std::vector<double> lo;
  try {
    f.n = p.header.at("n").get<int>();
    f.h = p.header.at("h").get<double>();
    lo = p.header.at("lo").get<std::vector<double>>();
    f.extents = p.header.at("dims").get<std::vector<int>>();
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": bad header: " + e.what());
  }
  if (f.n < 1 || static_cast<int>(lo.size()) != f.n || static_cast<int>(f.extents.size()) != f.n || !(f.h > 0.0)) {
    throw ConfigError(path.string() + ": inconsistent header");
  }
  f.origin = Eigen::Map<Eigen::VectorXd>(lo.data(), f.n);
  std::size_t count = 1;
  for (int e : f.extents) {
    if (e < 3) throw ConfigError(path.string() + ": each axis needs at least 3 samples");
    count *= static_cast<std::size_t>(e);
  }
  if (p.binary) {
    std::size_t off = 0;
    f.values = take<double>(p.payload, off, count, path.string());
  } else {
    std::istringstream is(p.payload);
    f.values.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
      std::string v;
      if (!(is >> v)) throw ConfigError(path.string() + ": truncated payload");
      f.values[i] = std::strtod(v.c_str(), nullptr);
    }
  }
  return f;
}

std::string path_csv(const std::vector<PathRow>& path) {
  std::string out = "t,residual,margin,sup_u,sup_du,sup_d2u,N,ratio\n";
  for (const auto& r : path) {
    const Monitors& m = r.monitors;
    out += g17(r.t) + ',' + g17(r.residual) + ',' + g17(r.margin) + ',' + g17(m.sup_u) + ',' + g17(m.sup_du) + ',' +
           g17(m.sup_d2u) + ',' + g17(m.N) + ',' + g17(m.ratio) + '\n';
  }
  return out;
}

}  // namespace wma
