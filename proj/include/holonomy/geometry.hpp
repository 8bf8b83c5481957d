#pragma once

// Exact piecewise-linear curves in Q^d and the point-location / overlap
// primitives that the groupoid, germ and hyph layers are built on.

#include "holonomy/error.hpp"
#include "holonomy/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace holonomy {

class Point {
 public:
  Point() = default;
  explicit Point(std::vector<Rational> coords) : coords_(std::move(coords)) {}
  Point(std::initializer_list<Rational> coords) : coords_(coords) {}

  std::size_t dimension() const { return coords_.size(); }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  std::span<const Rational> coords() const { return coords_; }

  bool is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) { return c == 0; });
  }

  friend bool operator==(const Point& a, const Point& b) { return a.coords_ == b.coords_; }
  friend bool operator<(const Point& a, const Point& b) {
    return std::lexicographical_compare(a.coords_.begin(), a.coords_.end(), b.coords_.begin(),
                                        b.coords_.end());
  }

  friend Point operator+(const Point& a, const Point& b) { return zip(a, b, 1); }
  friend Point operator-(const Point& a, const Point& b) { return zip(a, b, -1); }
  friend Point operator-(const Point& a) {
    std::vector<Rational> out;
    out.reserve(a.dimension());
    for (const auto& c : a.coords_) out.push_back(-c);
    return Point(std::move(out));
  }
  friend Point operator*(const Rational& k, const Point& a) {
    std::vector<Rational> out;
    out.reserve(a.dimension());
    for (const auto& c : a.coords_) out.push_back(k * c);
    return Point(std::move(out));
  }

 private:
  static Point zip(const Point& a, const Point& b, int sign) {
    if (a.dimension() != b.dimension()) throw input_error("dimension mismatch between points");
    std::vector<Rational> out;
    out.reserve(a.dimension());
    for (std::size_t i = 0; i < a.dimension(); ++i)
      out.push_back(sign > 0 ? a.coords_[i] + b.coords_[i] : a.coords_[i] - b.coords_[i]);
    return Point(std::move(out));
  }

  std::vector<Rational> coords_;
};

inline Rational dot(const Point& a, const Point& b) {
  Rational acc = 0;
  for (std::size_t i = 0; i < a.dimension(); ++i) acc += a[i] * b[i];
  return acc;
}

/// "(x,y,...)" with exact rationals.
inline std::string to_string(const Point& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.dimension(); ++i) {
    if (i) out += ",";
    out += to_string(p[i]);
  }
  return out + ")";
}

/// The factor k with v == k*u, if any. u must be nonzero.
inline std::optional<Rational> collinear_factor(const Point& u, const Point& v) {
  std::size_t pivot = 0;
  while (pivot < u.dimension() && u[pivot] == 0) ++pivot;
  if (pivot == u.dimension()) return std::nullopt;
  Rational k = v[pivot] / u[pivot];
  for (std::size_t i = 0; i < u.dimension(); ++i)
    if (v[i] != k * u[i]) return std::nullopt;
  return k;
}

inline bool same_direction(const Point& u, const Point& v) {
  auto k = collinear_factor(u, v);
  return k && *k > 0;
}

/// Piecewise-linear path given by its breakpoints. Consecutive breakpoints are
/// distinct; a single breakpoint is the trivial path at that point.
class PLPath {
 public:
  explicit PLPath(std::vector<Point> breakpoints) : points_(std::move(breakpoints)) {
    if (points_.empty()) throw input_error("a path needs at least one breakpoint");
    const std::size_t dim = points_.front().dimension();
    if (dim < 2) throw input_error("paths live in dimension >= 2");
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (points_[i].dimension() != dim) throw input_error("breakpoints of mixed dimension");
      if (i && points_[i] == points_[i - 1])
        throw input_error("zero-length segment at breakpoint " + std::to_string(i));
    }
  }

  static PLPath trivial(Point p) { return PLPath(std::vector<Point>{std::move(p)}); }

  std::span<const Point> breakpoints() const { return points_; }
  const Point& breakpoint(std::size_t i) const { return points_.at(i); }
  std::size_t segment_count() const { return points_.size() - 1; }
  bool is_trivial() const { return points_.size() == 1; }
  std::size_t dimension() const { return points_.front().dimension(); }
  const Point& start() const { return points_.front(); }
  const Point& end() const { return points_.back(); }

  Point direction(std::size_t segment) const { return points_.at(segment + 1) - points_.at(segment); }

  PLPath reversed() const { return PLPath(std::vector<Point>(points_.rbegin(), points_.rend())); }

  friend bool operator==(const PLPath& a, const PLPath& b) { return a.points_ == b.points_; }

 private:
  std::vector<Point> points_;
};

inline std::string to_string(const PLPath& path) {
  std::string out;
  for (std::size_t i = 0; i < path.breakpoints().size(); ++i) {
    if (i) out += "→";
    out += to_string(path.breakpoint(i));
  }
  return out;
}

/// Every coordinate multiplied by k.
inline PLPath scaled(const PLPath& path, const Rational& k) {
  if (k == 0) throw input_error("scaling factor must be nonzero");
  std::vector<Point> pts;
  for (const auto& p : path.breakpoints()) pts.push_back(k * p);
  return PLPath(std::move(pts));
}

/// Position on a path as (segment, fraction in [0,1]). (i,1) and (i+1,0) are the
/// same location; the canonical form uses (i+1,0) except at the final endpoint.
/// Locations are ordered by parameter() = segment + fraction.
struct PathLocation {
  std::size_t segment = 0;
  Rational fraction = 0;

  Rational parameter() const { return Rational(segment) + fraction; }

  friend bool operator==(const PathLocation& a, const PathLocation& b) {
    return a.parameter() == b.parameter();
  }
  friend bool operator<(const PathLocation& a, const PathLocation& b) {
    return a.parameter() < b.parameter();
  }
  friend bool operator<=(const PathLocation& a, const PathLocation& b) { return !(b < a); }
  friend bool operator>(const PathLocation& a, const PathLocation& b) { return b < a; }
  friend bool operator>=(const PathLocation& a, const PathLocation& b) { return !(a < b); }
};

inline std::string to_string(const PathLocation& loc) {
  return "(" + std::to_string(loc.segment) + ", " + to_string(loc.fraction) + ")";
}

inline PathLocation location_at_parameter(const PLPath& path, const Rational& s) {
  const Rational n(path.segment_count());
  if (s < 0 || s > n) throw input_error("path parameter " + to_string(s) + " out of range");
  if (path.is_trivial()) return {};
  Rational seg = floor_of(s);
  if (seg == n) seg -= 1;
  const auto index = static_cast<std::size_t>(numerator_of(seg).convert_to<long long>());
  return {index, s - seg};
}

inline PathLocation canonical(const PLPath& path, const PathLocation& loc) {
  return location_at_parameter(path, loc.parameter());
}

inline void check_location(const PLPath& path, const PathLocation& loc) {
  const std::size_t segments = std::max<std::size_t>(path.segment_count(), 1);
  if (loc.segment >= segments || loc.fraction < 0 || loc.fraction > 1 ||
      (path.is_trivial() && loc.fraction != 0))
    throw input_error("location " + to_string(loc) + " outside the path");
}

inline Point point_at(const PLPath& path, const PathLocation& loc) {
  check_location(path, loc);
  if (path.is_trivial()) return path.start();
  const Point& a = path.breakpoint(loc.segment);
  if (loc.fraction == 0) return a;
  const Point& b = path.breakpoint(loc.segment + 1);
  if (loc.fraction == 1) return b;
  return a + loc.fraction * (b - a);
}

/// All locations where the path passes x, one per passage, increasing.
inline std::vector<PathLocation> locate(const PLPath& path, const Point& x) {
  std::vector<Rational> params;
  if (path.is_trivial()) {
    if (path.start() == x) params.push_back(0);
  } else {
    for (std::size_t i = 0; i < path.segment_count(); ++i) {
      const Point& a = path.breakpoint(i);
      auto k = collinear_factor(path.direction(i), x - a);
      if (k && *k >= 0 && *k <= 1) params.push_back(Rational(i) + *k);
    }
  }
  std::sort(params.begin(), params.end());
  params.erase(std::unique(params.begin(), params.end()), params.end());
  std::vector<PathLocation> out;
  out.reserve(params.size());
  for (const auto& s : params) out.push_back(location_at_parameter(path, s));
  return out;
}

/// Restriction of the path between two locations; trivial when a == b.
inline PLPath subpath(const PLPath& path, const PathLocation& a, const PathLocation& b) {
  check_location(path, a);
  check_location(path, b);
  const Rational pa = a.parameter();
  const Rational pb = b.parameter();
  if (pb < pa) throw input_error("subpath locations are reversed");
  if (pa == pb) return PLPath::trivial(point_at(path, a));
  std::vector<Point> pts{point_at(path, a)};
  for (std::size_t k = 0; k < path.breakpoints().size(); ++k) {
    const Rational kk(k);
    if (kk > pa && kk < pb) pts.push_back(path.breakpoint(k));
  }
  pts.push_back(point_at(path, b));
  return PLPath(std::move(pts));
}

inline PLPath subpath_by_parameter(const PLPath& path, const Rational& a, const Rational& b) {
  return subpath(path, location_at_parameter(path, a), location_at_parameter(path, b));
}

/// How two closed segments [a,b] and [c,d] meet. Parameters s run along the
/// first segment, t along the second.
struct SegmentContact {
  enum class Kind { none, point, overlap };
  Kind kind = Kind::none;
  Rational s0, t0;  // the point, or the start of the overlap
  Rational s1, t1;  // end of the overlap (s0 < s1)
  int sign = 0;     // +1 same direction, -1 opposite (overlaps only)
};

inline SegmentContact segment_contact(const Point& a, const Point& b, const Point& c,
                                      const Point& d) {
  SegmentContact out;
  const Point u = b - a;
  const Point v = d - c;
  const Point w = c - a;
  if (auto lambda = collinear_factor(u, v)) {
    auto mu = collinear_factor(u, w);
    if (!mu) return out;  // parallel, distinct lines
    const Rational sc = *mu;
    const Rational sd = sc + *lambda;
    const Rational lo = std::max(Rational(0), std::min(sc, sd));
    const Rational hi = std::min(Rational(1), std::max(sc, sd));
    if (lo > hi) return out;
    out.s0 = lo;
    out.t0 = (lo - sc) / *lambda;
    if (lo == hi) {
      out.kind = SegmentContact::Kind::point;
      return out;
    }
    out.kind = SegmentContact::Kind::overlap;
    out.s1 = hi;
    out.t1 = (hi - sc) / *lambda;
    out.sign = *lambda > 0 ? 1 : -1;
    return out;
  }
  const Rational uu = dot(u, u), uv = dot(u, v), vv = dot(v, v);
  const Rational wu = dot(w, u), wv = dot(w, v);
  const Rational det = uv * uv - uu * vv;
  const Rational s = (uv * wv - wu * vv) / det;
  const Rational t = (uu * wv - uv * wu) / det;
  if (s < 0 || s > 1 || t < 0 || t > 1) return out;
  if (a + s * u != c + t * v) return out;  // skew lines in d > 2
  out.kind = SegmentContact::Kind::point;
  out.s0 = s;
  out.t0 = t;
  return out;
}

/// True iff two distinct parameter values map to the same point.
inline bool is_self_intersecting(const PLPath& path) {
  const std::size_t n = path.segment_count();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      auto contact = segment_contact(path.breakpoint(i), path.breakpoint(i + 1), path.breakpoint(j),
                                     path.breakpoint(j + 1));
      if (contact.kind == SegmentContact::Kind::none) continue;
      if (j == i + 1 && contact.kind == SegmentContact::Kind::point && contact.s0 == 1 &&
          contact.t0 == 0)
        continue;  // shared junction
      return true;
    }
  }
  return false;
}

namespace detail {

// Bounding boxes of [a, b] and [c, d] intersect.
inline bool boxes_meet(const Point& a, const Point& b, const Point& c, const Point& d) {
  for (std::size_t k = 0; k < a.dimension(); ++k) {
    const auto& [lo1, hi1] = std::minmax(a[k], b[k]);
    const auto& [lo2, hi2] = std::minmax(c[k], d[k]);
    if (hi1 < lo2 || hi2 < lo1) return false;
  }
  return true;
}

// [a, b] and [c, d] share a sub-segment of positive length.
inline bool segments_overlap(const Point& a, const Point& b, const Point& c, const Point& d) {
  const std::size_t n = a.dimension();
  std::size_t pivot = 0;
  while (b[pivot] == a[pivot]) ++pivot;
  const Rational up = b[pivot] - a[pivot];
  const Rational cp = c[pivot] - a[pivot], dp = d[pivot] - a[pivot];
  for (std::size_t k = 0; k < n; ++k) {
    if (k == pivot) continue;
    const Rational uk = b[k] - a[k];
    if (up * (c[k] - a[k]) != uk * cp || up * (d[k] - a[k]) != uk * dp) return false;
  }
  // parameters along [a, b] in units of b - a
  Rational tc = cp / up, td = dp / up;
  if (td < tc) std::swap(tc, td);
  return std::max(tc, Rational(0)) < std::min(td, Rational(1));
}

}  // namespace detail

/// True iff the two images share a sub-arc of positive length.
inline bool images_overlap(const PLPath& p, const PLPath& q) {
  for (std::size_t i = 0; i < p.segment_count(); ++i)
    for (std::size_t j = 0; j < q.segment_count(); ++j)
      if (detail::boxes_meet(p.breakpoint(i), p.breakpoint(i + 1), q.breakpoint(j), q.breakpoint(j + 1)) &&
          detail::segments_overlap(p.breakpoint(i), p.breakpoint(i + 1), q.breakpoint(j), q.breakpoint(j + 1)))
        return true;
  return false;
}

/// A maximal common sub-arc of two images. The first interval increases along
/// p, the second along q; sign is +1 when both traverse the arc the same way.
struct OverlapInterval {
  PathLocation first_from, first_to;
  PathLocation second_from, second_to;
  int sign = 0;
};

/// Maximal positive-length common sub-arcs of p and q, sorted along p.
/// Intended for non-self-intersecting p and q.
inline std::vector<OverlapInterval> image_overlap(const PLPath& p, const PLPath& q) {
  struct Piece {
    Rational pa, pb;  // along p, pa < pb
    Rational qa, qb;  // q parameters matching pa and pb
    int sign;
  };
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < p.segment_count(); ++i) {
    for (std::size_t j = 0; j < q.segment_count(); ++j) {
      auto c = segment_contact(p.breakpoint(i), p.breakpoint(i + 1), q.breakpoint(j),
                               q.breakpoint(j + 1));
      if (c.kind != SegmentContact::Kind::overlap) continue;
      pieces.push_back({Rational(i) + c.s0, Rational(i) + c.s1, Rational(j) + c.t0,
                        Rational(j) + c.t1, c.sign});
    }
  }
  std::sort(pieces.begin(), pieces.end(), [](const Piece& x, const Piece& y) { return x.pa < y.pa; });
  std::vector<Piece> merged;
  for (auto& piece : pieces) {
    if (!merged.empty()) {
      Piece& last = merged.back();
      if (last.pb == piece.pa && last.sign == piece.sign && last.qb == piece.qa) {
        last.pb = piece.pb;
        last.qb = piece.qb;
        continue;
      }
    }
    merged.push_back(std::move(piece));
  }
  std::vector<OverlapInterval> out;
  out.reserve(merged.size());
  for (const auto& m : merged) {
    OverlapInterval o;
    o.first_from = location_at_parameter(p, m.pa);
    o.first_to = location_at_parameter(p, m.pb);
    o.second_from = location_at_parameter(q, std::min(m.qa, m.qb));
    o.second_to = location_at_parameter(q, std::max(m.qa, m.qb));
    o.sign = m.sign;
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace holonomy
