#ifndef RIESZLAB_SERIALIZE_HPP
#define RIESZLAB_SERIALIZE_HPP

#include <charconv>
#include <cstdio>
#include <fstream>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "rieszlab/assemble.hpp"
#include "rieszlab/domain.hpp"
#include "rieszlab/errors.hpp"
#include "rieszlab/spectra.hpp"
#include "rieszlab/trace_mc.hpp"

namespace rieszlab {

using nlohmann::json;

/// Shortest round-trip decimal form, locale independent; keeps CSV output
/// byte-stable across runs.
inline std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw DataError("format_double: conversion failed");
  return std::string(buf, ptr);
}

inline json point_to_json(const Point& p, int dim) {
  json arr = json::array();
  for (int i = 0; i < dim; ++i) arr.push_back(p[i]);
  return arr;
}

inline Point point_from_json(const json& arr) {
  if (!arr.is_array() || arr.size() > kMaxDim) {
    throw ConfigError("point: expected array of <= 3 coordinates");
  }
  Point p{};
  for (std::size_t i = 0; i < arr.size(); ++i) p[i] = arr[i].get<double>();
  return p;
}

inline json shape_to_json(const Shape& shape, int dim) {
  return std::visit(
      [&](const auto& node) -> json {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Shape::Ball>) {
          return {{"type", "ball"},
                  {"center", point_to_json(node.center, dim)},
                  {"radius", node.radius}};
        } else if constexpr (std::is_same_v<T, Shape::Box>) {
          return {{"type", "box"},
                  {"corner", point_to_json(node.corner, dim)},
                  {"sides", point_to_json(node.sides, dim)}};
        } else if constexpr (std::is_same_v<T, Shape::Ellipse>) {
          return {{"type", "ellipse"},
                  {"center", point_to_json(node.center, 2)},
                  {"semi_axes", point_to_json(node.semi_axes, 2)}};
        } else if constexpr (std::is_same_v<T, Shape::Annulus>) {
          return {{"type", "annulus"},
                  {"center", point_to_json(node.center, dim)},
                  {"inner", node.inner},
                  {"outer", node.outer}};
        } else if constexpr (std::is_same_v<T, Shape::Union>) {
          json members = json::array();
          for (const auto& m : node.members) {
            members.push_back(shape_to_json(m, dim));
          }
          return {{"type", "union"}, {"members", members}};
        } else {
          return {{"type", "translate"},
                  {"offset", point_to_json(node.offset, dim)},
                  {"inner", shape_to_json(*node.inner, dim)}};
        }
      },
      shape.node());
}

inline Shape shape_from_json(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "ball") {
    return Shape::ball(point_from_json(j.at("center")),
                       j.at("radius").get<double>());
  }
  if (type == "box") {
    return Shape::box(point_from_json(j.at("corner")),
                      point_from_json(j.at("sides")));
  }
  if (type == "ellipse") {
    return Shape::ellipse(point_from_json(j.at("center")),
                          point_from_json(j.at("semi_axes")));
  }
  if (type == "annulus") {
    return Shape::annulus(point_from_json(j.at("center")),
                          j.at("inner").get<double>(),
                          j.at("outer").get<double>());
  }
  if (type == "union") {
    std::vector<Shape> members;
    for (const auto& m : j.at("members")) members.push_back(shape_from_json(m));
    return Shape::union_of(std::move(members));
  }
  if (type == "translate") {
    return Shape::translate(shape_from_json(j.at("inner")),
                            point_from_json(j.at("offset")));
  }
  throw ConfigError("shape: unknown type '" + type + "'");
}

/// Documented grid form: {dim, h, bounding_box, cell_indices}.
inline json domain_to_json(const GridDomain& domain) {
  json cells = json::array();
  for (const auto& k : domain.cells()) {
    json idx = json::array();
    for (int a = 0; a < domain.dim(); ++a) idx.push_back(k[a]);
    cells.push_back(idx);
  }
  return {{"dim", domain.dim()},
          {"h", domain.h()},
          {"bounding_box",
           {{"corner", point_to_json(domain.bounding_box().corner, domain.dim())},
            {"sides", point_to_json(domain.bounding_box().sides, domain.dim())}}},
          {"cell_indices", cells}};
}

inline GridDomain domain_from_json(const json& j) {
  const int dim = j.at("dim").get<int>();
  const double h = j.at("h").get<double>();
  std::vector<CellIndex> cells;
  for (const auto& idx : j.at("cell_indices")) {
    CellIndex k{};
    for (int a = 0; a < dim; ++a) k[a] = idx.at(a).get<std::int64_t>();
    cells.push_back(k);
  }
  BoundingBox box;
  box.corner = point_from_json(j.at("bounding_box").at("corner"));
  box.sides = point_from_json(j.at("bounding_box").at("sides"));
  return GridDomain(dim, h, std::move(cells), box);
}

inline json estimate_to_json(const TraceMCEstimate& est) {
  return {{"s", est.s},
          {"estimate", est.estimate},
          {"std_error", est.std_error},
          {"n_samples", est.n_samples},
          {"seed", est.seed},
          {"lanes", est.lanes},
          {"rejections", est.rejections},
          {"domain_hash", est.domain_hash}};
}

/// Spectrum CSV: one (j, eigenvalue) row per index, 1-based.
inline void write_spectrum_csv(const std::string& path, const Spectrum& spec) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("write_spectrum_csv: cannot open " + path);
  out << "j,eigenvalue\n";
  for (std::size_t j = 0; j < spec.size(); ++j) {
    out << (j + 1) << ',' << format_double(spec.lambda(j)) << '\n';
  }
}

/// Matrix dump: one JSON header line, then row-major 64-bit floats.
inline void write_matrix_dump(const std::string& path,
                              const OperatorMatrix& matrix) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("write_matrix_dump: cannot open " + path);
  const json header = {{"n", matrix.size()},
                       {"h", matrix.domain_ref.h},
                       {"alpha", matrix.params.alpha()},
                       {"dim", matrix.params.dim()},
                       {"domain_hash", matrix.domain_ref.hash}};
  out << header.dump() << '\n';
  const auto n = static_cast<Eigen::Index>(matrix.size());
  std::vector<double> row(matrix.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) row[j] = matrix.entries(i, j);
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size() * sizeof(double)));
  }
}

/// Reads a dump written by write_matrix_dump; params are reconstructed from
/// the header (alpha, dim).
inline OperatorMatrix read_matrix_dump(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("read_matrix_dump: cannot open " + path);
  std::string header_line;
  std::getline(in, header_line);
  const json header = json::parse(header_line);
  const auto n = header.at("n").get<std::size_t>();
  OperatorMatrix matrix{
      Eigen::MatrixXd(n, n),
      RieszParams(header.at("alpha").get<double>(), header.at("dim").get<int>()),
      DomainRef{header.at("h").get<double>(), n,
                header.at("domain_hash").get<std::uint64_t>()}};
  std::vector<double> row(n);
  for (std::size_t i = 0; i < n; ++i) {
    in.read(reinterpret_cast<char*>(row.data()),
            static_cast<std::streamsize>(n * sizeof(double)));
    if (!in) throw DataError("read_matrix_dump: truncated payload");
    for (std::size_t j = 0; j < n; ++j) {
      matrix.entries(static_cast<Eigen::Index>(i),
                     static_cast<Eigen::Index>(j)) = row[j];
    }
  }
  return matrix;
}

}  // namespace rieszlab

#endif  // RIESZLAB_SERIALIZE_HPP
