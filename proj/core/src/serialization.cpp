#include "lowrank/serialization.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "json.hpp"

#include "lowrank/errors.hpp"

namespace lowrank {
namespace {

using nlohmann::json;

void write_double(std::ostream& out, double value) {
  std::uint64_t bits;
  std::memcpy(&bits, &value, sizeof bits);
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  out.write(reinterpret_cast<const char*>(&bits), sizeof bits);
}

double read_double(std::istream& in) {
  std::uint64_t bits = 0;
  if (!in.read(reinterpret_cast<char*>(&bits), sizeof bits)) throw ConfigError("deserialize: truncated payload");
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  double value;
  std::memcpy(&value, &bits, sizeof value);
  return value;
}

void write_complex(std::ostream& out, Complex c) {
  write_double(out, c.real());
  write_double(out, c.imag());
}

Complex read_complex(std::istream& in) {
  const double re = read_double(in);
  return {re, read_double(in)};
}

json spec_header(const char* format, const std::vector<BasisSpec>& specs) {
  json h;
  h["format"] = format;
  h["N"] = specs.size();
  json q = json::array(), b = json::array();
  for (const auto& s : specs) {
    q.push_back(s.modes());
    b.push_back(s.half_width());
  }
  h["Q"] = q;
  h["b"] = b;
  return h;
}

json read_header(std::istream& in, const char* format) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("deserialize: missing header");
  json h = json::parse(line);
  if (h.value("format", "") != format) throw ConfigError(std::string("deserialize: expected format ") + format);
  return h;
}

std::vector<BasisSpec> header_specs(const json& h) {
  const std::size_t n = h.at("N").get<std::size_t>();
  if (h.at("Q").size() != n || h.at("b").size() != n) throw ConfigError("deserialize: inconsistent header");
  std::vector<BasisSpec> specs;
  for (std::size_t k = 0; k < n; ++k) specs.emplace_back(h["Q"][k].get<int>(), h["b"][k].get<double>());
  return specs;
}

}  // namespace

void write_cp(std::ostream& out, const CPTensor& f) {
  json h = spec_header("cp", f.specs());
  h["r"] = f.rank();
  out << h.dump() << '\n';
  for (int l = 0; l < f.rank(); ++l) {
    for (int k = 0; k < f.dims(); ++k) {
      for (int s = 0; s < f.spec(k).modes(); ++s) write_complex(out, f.coeff(l, k, s));
    }
  }
}

CPTensor read_cp(std::istream& in) {
  const json h = read_header(in, "cp");
  const int r = h.at("r").get<int>();
  CPTensor f(header_specs(h), r);
  for (int l = 0; l < r; ++l) {
    for (int k = 0; k < f.dims(); ++k) {
      for (int s = 0; s < f.spec(k).modes(); ++s) f.factor(k)(s, l) = read_complex(in);
    }
  }
  return f;
}

void write_ht(std::ostream& out, const HTTensor& h) {
  json header = spec_header("ht", h.specs());
  json shapes = json::array();
  for (int i = 0; i < h.tree().size(); ++i) shapes.push_back({h.node(i).rows(), h.node(i).cols()});
  header["shapes"] = shapes;
  out << header.dump() << '\n';
  for (int i = 0; i < h.tree().size(); ++i) {
    const CMatrix& m = h.node(i);
    for (Eigen::Index j = 0; j < m.size(); ++j) write_complex(out, m.data()[j]);
  }
}

HTTensor read_ht(std::istream& in) {
  const json header = read_header(in, "ht");
  auto specs = header_specs(header);
  DimensionTree tree(static_cast<int>(specs.size()));
  const json& shapes = header.at("shapes");
  if (static_cast<int>(shapes.size()) != tree.size()) throw ConfigError("deserialize: node count mismatch");
  std::vector<CMatrix> nodes;
  for (const auto& shape : shapes) {
    CMatrix m(shape.at(0).get<Eigen::Index>(), shape.at(1).get<Eigen::Index>());
    for (Eigen::Index j = 0; j < m.size(); ++j) m.data()[j] = read_complex(in);
    nodes.push_back(std::move(m));
  }
  return HTTensor(std::move(tree), std::move(specs), std::move(nodes));
}

void save_cp(const std::string& path, const CPTensor& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("save_cp: cannot open " + path);
  write_cp(out, f);
}

CPTensor load_cp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("load_cp: cannot open " + path);
  return read_cp(in);
}

}  // namespace lowrank
