#ifndef RIESZLAB_DOMAIN_HPP
#define RIESZLAB_DOMAIN_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <memory>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include "rieszlab/errors.hpp"
#include "rieszlab/special.hpp"

namespace rieszlab {

inline constexpr int kMaxDim = 3;

/// Coordinates beyond the active dimension are zero.
using Point = std::array<double, kMaxDim>;
using CellIndex = std::array<std::int64_t, kMaxDim>;

inline Point make_point(double x, double y = 0.0, double z = 0.0) {
  return {x, y, z};
}

inline double squared_distance(const Point& a, const Point& b, int dim) {
  double s = 0.0;
  for (int i = 0; i < dim; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

inline double distance(const Point& a, const Point& b, int dim) {
  return std::sqrt(squared_distance(a, b, dim));
}

/// Axis-aligned box given by its low corner and side lengths.
struct BoundingBox {
  Point corner{};
  Point sides{};
};

/// Tagged shape description; members of a union may overlap (membership is
/// the logical OR), but nominal_measure assumes disjointness.
class Shape {
 public:
  struct Ball {
    Point center;
    double radius;
  };
  struct Box {
    Point corner;
    Point sides;
  };
  struct Ellipse {  // d = 2 only
    Point center;
    Point semi_axes;
  };
  struct Annulus {
    Point center;
    double inner;
    double outer;
  };
  struct Union {
    std::vector<Shape> members;
  };
  struct Translate {
    Point offset;
    std::shared_ptr<const Shape> inner;
  };

  static Shape ball(const Point& center, double radius) {
    if (!(radius > 0.0)) throw DomainError("Shape::ball: radius must be > 0");
    return Shape(Ball{center, radius});
  }
  static Shape box(const Point& corner, const Point& sides) {
    for (double s : sides) {
      if (s < 0.0) throw DomainError("Shape::box: side lengths must be >= 0");
    }
    return Shape(Box{corner, sides});
  }
  static Shape ellipse(const Point& center, const Point& semi_axes) {
    if (!(semi_axes[0] > 0.0) || !(semi_axes[1] > 0.0)) {
      throw DomainError("Shape::ellipse: semi-axes must be > 0");
    }
    return Shape(Ellipse{center, semi_axes});
  }
  static Shape annulus(const Point& center, double inner, double outer) {
    if (!(inner > 0.0) || !(outer > inner)) {
      throw DomainError("Shape::annulus: requires 0 < inner < outer");
    }
    return Shape(Annulus{center, inner, outer});
  }
  static Shape union_of(std::vector<Shape> members) {
    if (members.empty()) throw DomainError("Shape::union_of: empty union");
    return Shape(Union{std::move(members)});
  }
  static Shape translate(Shape inner, const Point& offset) {
    return Shape(Translate{offset, std::make_shared<Shape>(std::move(inner))});
  }

  bool contains(const Point& p, int dim) const {
    return std::visit(
        [&](const auto& s) { return contains_impl(s, p, dim); }, node_);
  }

  /// Tight axis-aligned bounding box of the shape.
  BoundingBox tight_box(int dim) const {
    return std::visit([&](const auto& s) { return box_impl(s, dim); }, node_);
  }

  /// Analytic measure; union members are assumed pairwise disjoint.
  double nominal_measure(int dim) const {
    return std::visit([&](const auto& s) { return measure_impl(s, dim); },
                      node_);
  }

  using Node = std::variant<Ball, Box, Ellipse, Annulus, Union, Translate>;
  const Node& node() const { return node_; }

 private:
  explicit Shape(Node node) : node_(std::move(node)) {}

  static bool contains_impl(const Ball& s, const Point& p, int dim) {
    return squared_distance(p, s.center, dim) < s.radius * s.radius;
  }
  static bool contains_impl(const Box& s, const Point& p, int dim) {
    for (int i = 0; i < dim; ++i) {
      if (!(p[i] > s.corner[i] && p[i] < s.corner[i] + s.sides[i])) return false;
    }
    return true;
  }
  static bool contains_impl(const Ellipse& s, const Point& p, int dim) {
    if (dim != 2) throw UnsupportedError("Shape::ellipse: requires d = 2");
    double q = 0.0;
    for (int i = 0; i < 2; ++i) {
      const double t = (p[i] - s.center[i]) / s.semi_axes[i];
      q += t * t;
    }
    return q < 1.0;
  }
  static bool contains_impl(const Annulus& s, const Point& p, int dim) {
    const double d2 = squared_distance(p, s.center, dim);
    return d2 > s.inner * s.inner && d2 < s.outer * s.outer;
  }
  static bool contains_impl(const Union& s, const Point& p, int dim) {
    for (const auto& m : s.members) {
      if (m.contains(p, dim)) return true;
    }
    return false;
  }
  static bool contains_impl(const Translate& s, const Point& p, int dim) {
    Point q = p;
    for (int i = 0; i < dim; ++i) q[i] -= s.offset[i];
    return s.inner->contains(q, dim);
  }

  static BoundingBox box_impl(const Ball& s, int dim) {
    BoundingBox b;
    for (int i = 0; i < dim; ++i) {
      b.corner[i] = s.center[i] - s.radius;
      b.sides[i] = 2.0 * s.radius;
    }
    return b;
  }
  static BoundingBox box_impl(const Box& s, int) {
    return BoundingBox{s.corner, s.sides};
  }
  static BoundingBox box_impl(const Ellipse& s, int dim) {
    if (dim != 2) throw UnsupportedError("Shape::ellipse: requires d = 2");
    BoundingBox b;
    for (int i = 0; i < 2; ++i) {
      b.corner[i] = s.center[i] - s.semi_axes[i];
      b.sides[i] = 2.0 * s.semi_axes[i];
    }
    return b;
  }
  static BoundingBox box_impl(const Annulus& s, int dim) {
    BoundingBox b;
    for (int i = 0; i < dim; ++i) {
      b.corner[i] = s.center[i] - s.outer;
      b.sides[i] = 2.0 * s.outer;
    }
    return b;
  }
  static BoundingBox box_impl(const Union& s, int dim) {
    BoundingBox b = s.members.front().tight_box(dim);
    for (std::size_t m = 1; m < s.members.size(); ++m) {
      const BoundingBox mb = s.members[m].tight_box(dim);
      for (int i = 0; i < dim; ++i) {
        const double hi = std::max(b.corner[i] + b.sides[i],
                                   mb.corner[i] + mb.sides[i]);
        b.corner[i] = std::min(b.corner[i], mb.corner[i]);
        b.sides[i] = hi - b.corner[i];
      }
    }
    return b;
  }
  static BoundingBox box_impl(const Translate& s, int dim) {
    BoundingBox b = s.inner->tight_box(dim);
    for (int i = 0; i < dim; ++i) b.corner[i] += s.offset[i];
    return b;
  }

  static double measure_impl(const Ball& s, int dim) {
    return unit_ball_volume(dim) * std::pow(s.radius, dim);
  }
  static double measure_impl(const Box& s, int dim) {
    double m = 1.0;
    for (int i = 0; i < dim; ++i) m *= s.sides[i];
    return m;
  }
  static double measure_impl(const Ellipse& s, int dim) {
    if (dim != 2) throw UnsupportedError("Shape::ellipse: requires d = 2");
    return M_PI * s.semi_axes[0] * s.semi_axes[1];
  }
  static double measure_impl(const Annulus& s, int dim) {
    return unit_ball_volume(dim) *
           (std::pow(s.outer, dim) - std::pow(s.inner, dim));
  }
  static double measure_impl(const Union& s, int dim) {
    double m = 0.0;
    for (const auto& member : s.members) m += member.nominal_measure(dim);
    return m;
  }
  static double measure_impl(const Translate& s, int dim) {
    return s.inner->nominal_measure(dim);
  }

  Node node_;
};

namespace detail {

struct CellIndexHash {
  std::size_t operator()(const CellIndex& k) const {
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
    for (std::int64_t v : k) {
      auto u = static_cast<std::uint64_t>(v);
      for (int b = 0; b < 8; ++b) {
        h ^= (u >> (8 * b)) & 0xff;
        h *= 1099511628211ULL;
      }
    }
    return static_cast<std::size_t>(h);
  }
};

inline int flood_fill_components(const std::vector<CellIndex>& cells, int dim) {
  std::unordered_map<CellIndex, std::size_t, CellIndexHash> index_of;
  index_of.reserve(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) index_of.emplace(cells[i], i);
  std::vector<char> seen(cells.size(), 0);
  std::vector<std::size_t> stack;
  int components = 0;
  for (std::size_t seed = 0; seed < cells.size(); ++seed) {
    if (seen[seed]) continue;
    ++components;
    stack.push_back(seed);
    seen[seed] = 1;
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      for (int axis = 0; axis < dim; ++axis) {
        for (int step : {-1, 1}) {
          CellIndex nb = cells[i];
          nb[axis] += step;
          auto it = index_of.find(nb);
          if (it != index_of.end() && !seen[it->second]) {
            seen[it->second] = 1;
            stack.push_back(it->second);
          }
        }
      }
    }
  }
  return components;
}

}  // namespace detail

/// Rasterized finite-measure set: cells of the global lattice with spacing h,
/// cell k occupying [h k, h (k+1)) with center h (k + 1/2). Cell order is
/// lexicographic by multi-index; the domain is immutable after construction.
class GridDomain {
 public:
  GridDomain(int dim, double h, std::vector<CellIndex> cells,
             BoundingBox bounding_box)
      : dim_(dim),
        h_(h),
        cells_(std::move(cells)),
        bounding_box_(bounding_box) {
    if (dim < 1 || dim > kMaxDim) {
      throw UnsupportedError("GridDomain: dim must be in [1, " +
                             std::to_string(kMaxDim) + "]");
    }
    if (!(h > 0.0)) throw DomainError("GridDomain: h must be > 0");
    if (cells_.empty()) throw EmptyDomainError("GridDomain: no cells");
    components_ = detail::flood_fill_components(cells_, dim_);
  }

  int dim() const { return dim_; }
  double h() const { return h_; }
  std::size_t cell_count() const { return cells_.size(); }
  const std::vector<CellIndex>& cells() const { return cells_; }
  const BoundingBox& bounding_box() const { return bounding_box_; }

  Point cell_center(std::size_t i) const {
    Point p{};
    for (int a = 0; a < dim_; ++a) {
      p[a] = h_ * (static_cast<double>(cells_[i][a]) + 0.5);
    }
    return p;
  }

  double measure() const {
    return static_cast<double>(cells_.size()) * std::pow(h_, dim_);
  }

  int component_count() const { return components_; }
  bool connected() const { return components_ == 1; }

  /// Dilation by t > 0: same lattice indices, spacing and centers scaled by t.
  GridDomain scaled(double t) const {
    if (!(t > 0.0)) throw DomainError("GridDomain::scaled: t must be > 0");
    BoundingBox b = bounding_box_;
    for (int i = 0; i < dim_; ++i) {
      b.corner[i] *= t;
      b.sides[i] *= t;
    }
    return GridDomain(dim_, t * h_, cells_, b);
  }

  /// FNV-1a fingerprint over dim, h bit pattern and the index list.
  std::uint64_t content_hash() const {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::uint64_t u) {
      for (int b = 0; b < 8; ++b) {
        h ^= (u >> (8 * b)) & 0xff;
        h *= 1099511628211ULL;
      }
    };
    mix(static_cast<std::uint64_t>(dim_));
    std::uint64_t hbits;
    static_assert(sizeof(hbits) == sizeof(h_));
    std::memcpy(&hbits, &h_, sizeof(hbits));
    mix(hbits);
    for (const auto& k : cells_) {
      for (int a = 0; a < dim_; ++a) mix(static_cast<std::uint64_t>(k[a]));
    }
    return h;
  }

 private:
  int dim_;
  double h_;
  std::vector<CellIndex> cells_;
  BoundingBox bounding_box_;
  int components_ = 0;
};

/// Center-membership rasterization: a lattice cell belongs iff its center
/// lies inside the shape. Cells come out in lexicographic index order.
inline GridDomain rasterize(const Shape& shape, double h, int dim) {
  if (!(h > 0.0)) throw DomainError("rasterize: h must be > 0");
  if (dim < 1 || dim > kMaxDim) {
    throw UnsupportedError("rasterize: dim must be in [1, " +
                           std::to_string(kMaxDim) + "]");
  }
  const BoundingBox tight = shape.tight_box(dim);
  std::array<std::int64_t, kMaxDim> lo{}, hi{};
  std::int64_t candidates = 1;
  for (int i = 0; i < dim; ++i) {
    lo[i] = static_cast<std::int64_t>(std::floor(tight.corner[i] / h)) - 1;
    hi[i] = static_cast<std::int64_t>(
                std::ceil((tight.corner[i] + tight.sides[i]) / h)) +
            1;
    candidates *= (hi[i] - lo[i] + 1);
    if (candidates > (std::int64_t{1} << 31)) {
      throw CapacityError("rasterize: candidate lattice exceeds 2^31 cells");
    }
  }
  std::vector<CellIndex> cells;
  CellIndex k{};
  Point center{};
  // lexicographic scan: axis 0 slowest
  std::array<std::int64_t, kMaxDim> cur = lo;
  while (true) {
    for (int i = 0; i < dim; ++i) {
      k[i] = cur[i];
      center[i] = h * (static_cast<double>(cur[i]) + 0.5);
    }
    if (shape.contains(center, dim)) cells.push_back(k);
    int axis = dim - 1;
    while (axis >= 0 && ++cur[axis] > hi[axis]) {
      cur[axis] = lo[axis];
      --axis;
    }
    if (axis < 0) break;
  }
  if (cells.empty()) {
    throw EmptyDomainError("rasterize: no cell centers inside shape (h = " +
                           std::to_string(h) + " too coarse)");
  }
  BoundingBox padded = tight;
  for (int i = 0; i < dim; ++i) {
    padded.corner[i] -= h;
    padded.sides[i] += 2.0 * h;
  }
  return GridDomain(dim, h, std::move(cells), padded);
}

inline double measure(const GridDomain& domain) { return domain.measure(); }

/// Equal-measure ball centered at the origin (the symmetric rearrangement
/// Omega* of the domain): radius (|Omega| / v_d)^{1/d}.
inline Shape ball_rearrangement(const GridDomain& domain) {
  const double r = std::pow(domain.measure() / unit_ball_volume(domain.dim()),
                            1.0 / domain.dim());
  return Shape::ball(Point{}, r);
}

/// Union of two identical balls of half the given total measure, centers on
/// the first axis, boundary gap `distance`; symmetric about the origin.
inline Shape two_balls(double total_measure, double distance, int dim) {
  if (!(total_measure > 0.0)) {
    throw DomainError("two_balls: total_measure must be > 0");
  }
  if (distance < 0.0) throw DomainError("two_balls: distance must be >= 0");
  const double r =
      std::pow(0.5 * total_measure / unit_ball_volume(dim), 1.0 / dim);
  const double half_sep = r + 0.5 * distance;
  std::vector<Shape> members;
  members.push_back(Shape::ball(make_point(-half_sep), r));
  members.push_back(Shape::ball(make_point(half_sep), r));
  return Shape::union_of(std::move(members));
}

}  // namespace rieszlab

#endif  // RIESZLAB_DOMAIN_HPP
