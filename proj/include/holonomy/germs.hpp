#pragma once

// Initial/final segment relations, direction germs, independence and hyphs.

#include "holonomy/error.hpp"
#include "holonomy/geometry.hpp"
#include "holonomy/groupoid.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace holonomy {

enum class Side { outgoing, incoming };

inline const char* to_string(Side side) { return side == Side::outgoing ? "outgoing" : "incoming"; }

/// Representative of a direction up to positive scaling: the first nonzero
/// coordinate is scaled to +-1.
inline Point normalized_direction(const Point& v) {
  for (std::size_t i = 0; i < v.dimension(); ++i)
    if (v[i] != 0) return Rational(1) / abs(v[i]) * v;
  throw input_error("zero direction has no germ");
}

/// Direction germ of a path at one of its passages through a point. The
/// direction is the direction of travel; emanating() is the direction of the
/// subpath that starts at the point (reversed for the incoming side).
struct Germ {
  PathLocation anchor;
  Side side = Side::outgoing;
  Point direction;

  Point emanating() const { return side == Side::outgoing ? direction : -direction; }
};

inline std::vector<Germ> germs_at(const ReducedPath& d, const Point& x) {
  std::vector<Germ> out;
  if (d.is_trivial()) return out;
  const Rational n(d.segment_count());
  for (const auto& loc : locate(d.path(), x)) {
    const Rational s = loc.parameter();
    if (s < n) out.push_back({loc, Side::outgoing, normalized_direction(d.path().direction(loc.segment))});
    if (s > 0) {
      const std::size_t seg = loc.fraction > 0 ? loc.segment : loc.segment - 1;
      out.push_back({loc, Side::incoming, normalized_direction(d.path().direction(seg))});
    }
  }
  return out;
}

/// Relation BB: nontrivial initial subpaths coincide up to parametrization.
inline bool same_initial_segment(const ReducedPath& a, const ReducedPath& b) {
  if (a.is_trivial() || b.is_trivial()) throw input_error("segment relations need nontrivial paths");
  return a.start() == b.start() && same_direction(a.path().direction(0), b.path().direction(0));
}

enum class SegmentRelation { BB, BE, EB, EE };

/// BE: a's initial segment is b's final one; EB: a's final is b's initial;
/// EE: the final segments coincide.
inline bool related(SegmentRelation rel, const ReducedPath& a, const ReducedPath& b) {
  switch (rel) {
    case SegmentRelation::BB: return same_initial_segment(a, b);
    case SegmentRelation::BE: return same_initial_segment(a, invert(b));
    case SegmentRelation::EB: return same_initial_segment(invert(a), b);
    case SegmentRelation::EE: return same_initial_segment(invert(a), invert(b));
  }
  return false;
}

/// Witness of independence: at this location the germ on the given side
/// matches no germ of the comparison paths.
struct FreePoint {
  PathLocation location;
  Side side = Side::outgoing;
};

namespace detail {

inline void require_simple(const ReducedPath& p, const std::string& what) {
  if (is_self_intersecting(p.path())) throw self_intersection_error(what + " is self-intersecting");
}

inline bool germ_is_free(const ReducedPath& g, const Rational& s, Side side,
                         std::span<const ReducedPath> others) {
  const Rational n(g.segment_count());
  if (side == Side::outgoing ? s >= n : s <= 0) return false;
  const PathLocation loc = location_at_parameter(g.path(), s);
  const Point x = point_at(g.path(), loc);
  Point dir;
  if (side == Side::outgoing) {
    dir = g.path().direction(loc.segment);
  } else {
    dir = -g.path().direction(loc.fraction > 0 ? loc.segment : loc.segment - 1);
  }
  for (const auto& d : others)
    for (const auto& germ : germs_at(d, x))
      if (same_direction(germ.emanating(), dir)) return false;
  return true;
}

}  // namespace detail

/// Re-checks a witness against the comparison set.
inline bool is_free_point(const ReducedPath& g, const FreePoint& w, std::span<const ReducedPath> others) {
  return detail::germ_is_free(g, w.location.parameter(), w.side, others);
}

/// A free point of g with respect to D, if g is independent of D.
///
/// Germ coverage is constant on the open pieces between overlap endpoints, so
/// scanning gap midpoints, overlap endpoints, breakpoints and covered-interval
/// midpoints is exhaustive.
inline std::optional<FreePoint> is_independent(const ReducedPath& g, std::span<const ReducedPath> others) {
  detail::require_simple(g, "path");
  for (std::size_t i = 0; i < others.size(); ++i)
    detail::require_simple(others[i], "comparison path " + std::to_string(i));
  if (g.is_trivial()) return std::nullopt;

  const Rational n(g.segment_count());
  std::vector<std::pair<Rational, Rational>> covered;
  for (const auto& d : others)
    for (const auto& o : image_overlap(g.path(), d.path()))
      covered.emplace_back(o.first_from.parameter(), o.first_to.parameter());
  std::sort(covered.begin(), covered.end());

  std::vector<Rational> candidates;
  Rational cursor = 0;
  for (const auto& [a, b] : covered) {
    if (a > cursor) candidates.push_back((cursor + a) / 2);
    if (b > cursor) cursor = b;
  }
  if (cursor < n) candidates.push_back((cursor + n) / 2);
  for (const auto& [a, b] : covered) {
    candidates.push_back(a);
    candidates.push_back(b);
  }
  for (std::size_t k = 0; k <= g.segment_count(); ++k) candidates.push_back(Rational(k));
  for (const auto& [a, b] : covered) candidates.push_back((a + b) / 2);

  for (const auto& s : candidates) {
    for (Side side : {Side::outgoing, Side::incoming}) {
      if (detail::germ_is_free(g, s, side, others)) return FreePoint{location_at_parameter(g.path(), s), side};
    }
  }
  return std::nullopt;
}

inline std::optional<FreePoint> is_independent(const ReducedPath& g, std::initializer_list<ReducedPath> others) {
  return is_independent(g, std::span<const ReducedPath>(others.begin(), others.size()));
}

/// Witnesses that every edge is independent of its predecessors, or nullopt.
/// Throws self_intersection_error for a self-intersecting edge.
inline std::optional<std::vector<FreePoint>> is_hyph(std::span<const ReducedPath> edges) {
  for (std::size_t i = 0; i < edges.size(); ++i)
    detail::require_simple(edges[i], "edge " + std::to_string(i));
  std::vector<FreePoint> witnesses;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto w = is_independent(edges[i], edges.subspan(0, i));
    if (!w) return std::nullopt;
    witnesses.push_back(*w);
  }
  return witnesses;
}

struct PrescriptionCheck {
  bool ok = true;
  int condition = 0;  // 1..5, 0 when all hold
  std::size_t first = 0, second = 0;
  std::string message;

  explicit operator bool() const { return ok; }
};

/// Conditions under which transports on all of E can be prescribed at once:
/// (1) no self-intersections, (2) no two share an initial segment, (3) no
/// initial segment is a reversed final segment, (4) finitely many initial
/// points, (5) no initial point inside any edge.
inline PrescriptionCheck check_prescription_conditions(std::span<const ReducedPath> edges) {
  auto fail = [](int cond, std::size_t i, std::size_t j, std::string msg) {
    return PrescriptionCheck{false, cond, i, j, std::move(msg)};
  };
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (edges[i].is_trivial() || is_self_intersecting(edges[i].path()))
      return fail(1, i, i, "edge " + std::to_string(i) + " is trivial or self-intersecting");
  for (std::size_t i = 0; i < edges.size(); ++i)
    for (std::size_t j = 0; j < edges.size(); ++j)
      if (i != j && related(SegmentRelation::BB, edges[i], edges[j]))
        return fail(2, i, j, "edges " + std::to_string(i) + " and " + std::to_string(j) + " share an initial segment");
  for (std::size_t i = 0; i < edges.size(); ++i)
    for (std::size_t j = 0; j < edges.size(); ++j)
      if (related(SegmentRelation::BE, edges[i], edges[j]))
        return fail(3, i, j,
                    "initial segment of edge " + std::to_string(i) + " is the final segment of edge " +
                        std::to_string(j));
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Rational n(edges[i].segment_count());
    for (std::size_t j = 0; j < edges.size(); ++j)
      for (const auto& loc : locate(edges[i].path(), edges[j].start())) {
        const Rational s = loc.parameter();
        if (s > 0 && s < n)
          return fail(5, j, i,
                      "initial point of edge " + std::to_string(j) + " lies inside edge " + std::to_string(i));
      }
  }
  return {};
}

}  // namespace holonomy
