#pragma once

// Hyphs: the dependent-path decomposition, hyph construction from arbitrary
// finite path sets, directed refinement, and factorization through a hyph.

#include "holonomy/error.hpp"
#include "holonomy/germs.hpp"
#include "holonomy/groupoid.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace holonomy {

class GeneralizedConnection;

/// An ordered family of edges, each independent of its predecessors.
class Hyph {
 public:
  Hyph() = default;

  static Hyph from_edges(std::vector<ReducedPath> edges) {
    auto witnesses = is_hyph(edges);
    if (!witnesses) throw input_error("edges do not form a hyph");
    return Hyph(std::move(edges), std::move(*witnesses));
  }

  /// Validates that the given witnesses are free points in the given order.
  static Hyph from_parts(std::vector<ReducedPath> edges, std::vector<FreePoint> witnesses) {
    if (edges.size() != witnesses.size()) throw input_error("one witness per edge is required");
    for (std::size_t i = 0; i < edges.size(); ++i) {
      detail::require_simple(edges[i], "edge " + std::to_string(i));
      if (edges[i].is_trivial() ||
          !is_free_point(edges[i], witnesses[i], std::span<const ReducedPath>(edges).subspan(0, i)))
        throw input_error("witness " + std::to_string(i) + " is not a free point");
    }
    return Hyph(std::move(edges), std::move(witnesses));
  }

  const std::vector<ReducedPath>& edges() const { return edges_; }
  const std::vector<FreePoint>& witnesses() const { return witnesses_; }
  const ReducedPath& edge(std::size_t i) const { return edges_.at(i); }
  std::size_t size() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }

  std::optional<std::size_t> index_of(const ReducedPath& e) const {
    for (std::size_t i = 0; i < edges_.size(); ++i)
      if (edges_[i] == e) return i;
    return std::nullopt;
  }

 private:
  // Connections splice hyphs whose edges cannot share germs without
  // revalidating every witness.
  friend class GeneralizedConnection;

  Hyph(std::vector<ReducedPath> edges, std::vector<FreePoint> witnesses)
      : edges_(std::move(edges)), witnesses_(std::move(witnesses)) {}

  std::vector<ReducedPath> edges_;
  std::vector<FreePoint> witnesses_;
};

struct SignedEdge {
  std::size_t index = 0;
  int sign = 1;

  friend bool operator==(const SignedEdge&, const SignedEdge&) = default;
};

/// A path written as a product of hyph edges and their inverses.
struct Factorization {
  std::vector<SignedEdge> word;

  bool empty() const { return word.empty(); }
  friend bool operator==(const Factorization&, const Factorization&) = default;
};

inline std::string to_string(const Factorization& f) {
  if (f.word.empty()) return "[]";
  std::string out = "[";
  for (std::size_t i = 0; i < f.word.size(); ++i) {
    if (i) out += ", ";
    out += "(" + std::to_string(f.word[i].index) + "," + (f.word[i].sign > 0 ? "+1" : "-1") + ")";
  }
  return out + "]";
}

inline bool has_repeated_edge(const Factorization& f) {
  std::set<std::size_t> seen;
  for (const auto& s : f.word)
    if (!seen.insert(s.index).second) return true;
  return false;
}

inline ReducedPath oriented_edge(const Hyph& h, const SignedEdge& s) {
  if (s.index >= h.size()) throw input_error("edge index " + std::to_string(s.index) + " out of range");
  return s.sign > 0 ? h.edge(s.index) : invert(h.edge(s.index));
}

/// The reduced product of the word's edges. An empty word needs the base point.
inline ReducedPath realize(const Hyph& h, const Factorization& f, const std::optional<Point>& base = {}) {
  if (f.word.empty()) {
    if (!base) throw input_error("empty factorization has no base point");
    return ReducedPath::trivial(*base);
  }
  std::vector<PathLetter> letters;
  for (const auto& s : f.word) {
    if (s.index >= h.size()) throw input_error("edge index " + std::to_string(s.index) + " out of range");
    letters.push_back({h.edge(s.index).path(), s.sign});
  }
  return reduce(PathWord(std::move(letters)));
}

/// Cut data from the dependent-path decomposition.
struct DependentDecomposition {
  std::vector<PathLocation> cuts;                // on e, increasing, including both ends
  std::vector<std::vector<PathLocation>> c_cuts;  // on each c, increasing
  std::vector<ReducedPath> e_pieces;
  std::vector<std::vector<ReducedPath>> c_pieces;
};

namespace detail {

struct ParamInterval {
  Rational a, b;  // a < b, parameters on e
};

inline std::vector<ParamInterval> overlap_params(const ReducedPath& e, std::span<const ReducedPath> cs) {
  std::vector<ParamInterval> out;
  for (const auto& c : cs)
    for (const auto& o : image_overlap(e.path(), c.path()))
      out.push_back({o.first_from.parameter(), o.first_to.parameter()});
  return out;
}

// Assertion 1: BB forces equality, BE forces equality with the inverse.
inline bool satisfies_initial_assertion(const ReducedPath& x, std::span<const ReducedPath> cs) {
  for (const auto& c : cs) {
    if (related(SegmentRelation::BB, x, c) && !(x == c)) return false;
    if (related(SegmentRelation::BE, x, c) && !(x == invert(c))) return false;
  }
  return true;
}

// Assertion 2: the same statements at the final end of x.
inline bool satisfies_final_assertion(const ReducedPath& x, std::span<const ReducedPath> cs) {
  const ReducedPath xi = invert(x);
  for (const auto& c : cs) {
    if (related(SegmentRelation::EB, x, c) && !(xi == c)) return false;
    if (related(SegmentRelation::EE, x, c) && !(x == c)) return false;
  }
  return true;
}

}  // namespace detail

/// Cuts e (dependent on C) and every c so that each piece of e either equals
/// every piece of C it shares an initial germ with, or does so at its end.
///
/// Among the admissible choices, tau_{i+1,-} is tau_{i+1} and tau_{i+1/2} is
/// sup I_{tau_i,+}; both are overlap endpoints, so every cut lands on an
/// existing breakpoint of e or some c.
inline DependentDecomposition decompose_dependent(const ReducedPath& e, std::span<const ReducedPath> cs) {
  detail::require_simple(e, "path");
  for (std::size_t i = 0; i < cs.size(); ++i) detail::require_simple(cs[i], "comparison path " + std::to_string(i));
  if (e.is_trivial()) throw input_error("cannot decompose a trivial path");
  if (is_independent(e, cs)) throw input_error("path is independent of the comparison set");

  const Rational n(e.segment_count());
  const auto intervals = detail::overlap_params(e, cs);

  auto sup_plus = [&](const Rational& tau) {
    std::optional<Rational> best;
    for (const auto& iv : intervals)
      if (iv.a <= tau && tau < iv.b && (!best || iv.b < *best)) best = iv.b;
    if (!best) throw std::logic_error("uncovered outgoing germ on a dependent path");
    return *best;
  };

  std::vector<Rational> cuts{Rational(0)};
  Rational tau = 0;
  while (tau < n) {
    const Rational t_plus = sup_plus(tau);
    // tau is bad iff it lies in some (a, b] with a > t_plus; the supremum of the
    // good set is the left end of the bad chain that reaches n, or n.
    Rational next = n;
    for (bool moved = true; moved;) {
      moved = false;
      for (const auto& iv : intervals)
        if (iv.a > t_plus && iv.a < next && next <= iv.b) {
          next = iv.a;
          moved = true;
        }
    }
    if (next <= tau) throw std::logic_error("dependent decomposition did not advance");
    cuts.push_back(t_plus);
    cuts.push_back(next);
    tau = next;
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  DependentDecomposition out;
  std::vector<Point> images;
  for (const auto& s : cuts) {
    out.cuts.push_back(location_at_parameter(e.path(), s));
    images.push_back(point_at(e.path(), out.cuts.back()));
  }
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) out.e_pieces.push_back(reduced_subpath(e, cuts[i], cuts[i + 1]));
  for (const auto& c : cs) {
    std::vector<Rational> params{Rational(0), Rational(c.segment_count())};
    for (const auto& x : images)
      for (const auto& loc : locate(c.path(), x)) params.push_back(loc.parameter());
    std::sort(params.begin(), params.end());
    params.erase(std::unique(params.begin(), params.end()), params.end());
    std::vector<PathLocation> locs;
    for (const auto& s : params) locs.push_back(location_at_parameter(c.path(), s));
    out.c_cuts.push_back(std::move(locs));
    out.c_pieces.push_back(decompose_at_points(c, images));
  }
  return out;
}

inline DependentDecomposition decompose_dependent(const ReducedPath& e, std::initializer_list<ReducedPath> cs) {
  return decompose_dependent(e, std::span<const ReducedPath>(cs.begin(), cs.size()));
}

/// Post-hoc check that every e piece satisfies one of the two assertions
/// against all pieces of C.
inline bool verify_decomposition(const DependentDecomposition& d) {
  std::vector<ReducedPath> all;
  for (const auto& ps : d.c_pieces) all.insert(all.end(), ps.begin(), ps.end());
  for (const auto& x : d.e_pieces)
    if (!detail::satisfies_initial_assertion(x, all) && !detail::satisfies_final_assertion(x, all)) return false;
  return true;
}

struct HyphBuild {
  Hyph hyph;
  std::vector<Factorization> factorizations;  // one per input path
};

namespace detail {

// Atoms are stored once up to orientation; the first orientation seen wins.
class AtomTable {
 public:
  struct Ref {
    std::size_t id;
    int sign;
  };

  Ref intern(const ReducedPath& p) {
    if (auto it = index_.find(p); it != index_.end()) return it->second;
    const std::size_t id = atoms_.size();
    atoms_.push_back(p);
    index_.emplace(p, Ref{id, 1});
    index_.emplace(invert(p), Ref{id, -1});
    return {id, 1};
  }

  void retire(std::size_t id) {
    index_.erase(atoms_[id]);
    index_.erase(invert(atoms_[id]));
  }

  const ReducedPath& operator[](std::size_t id) const { return atoms_[id]; }

 private:
  std::vector<ReducedPath> atoms_;
  std::map<ReducedPath, Ref> index_;
};

using AtomWord = std::vector<AtomTable::Ref>;

inline void substitute(AtomWord& word, std::size_t id, const AtomWord& pieces) {
  AtomWord out;
  for (const auto& r : word) {
    if (r.id != id) {
      out.push_back(r);
    } else if (r.sign > 0) {
      out.insert(out.end(), pieces.begin(), pieces.end());
    } else {
      for (auto it = pieces.rbegin(); it != pieces.rend(); ++it) out.push_back({it->id, -it->sign});
    }
  }
  word = std::move(out);
}

}  // namespace detail

/// Builds a hyph whose edges generate every input path, with one
/// factorization per input. Edges are listed with the last finalized group
/// first; inside a group they run along the parent path.
inline HyphBuild build_hyph(std::span<const ReducedPath> paths) {
  for (std::size_t i = 0; i < paths.size(); ++i) detail::require_simple(paths[i], "path " + std::to_string(i));

  std::vector<Point> vertices;
  for (const auto& p : paths) {
    vertices.push_back(p.start());
    vertices.push_back(p.end());
  }

  detail::AtomTable atoms;
  std::vector<detail::AtomWord> words;
  std::vector<std::size_t> pending;
  std::set<std::size_t> in_pending;
  for (const auto& p : paths) {
    detail::AtomWord w;
    for (const auto& piece : decompose_at_points(p, vertices)) {
      auto ref = atoms.intern(piece);
      w.push_back(ref);
      if (in_pending.insert(ref.id).second) pending.push_back(ref.id);
    }
    words.push_back(std::move(w));
  }

  std::vector<std::vector<std::size_t>> groups;
  std::set<std::size_t> finalized;
  while (!pending.empty()) {
    const std::size_t x = pending.front();
    std::vector<std::size_t> rest(pending.begin() + 1, pending.end());
    std::vector<ReducedPath> rest_paths;
    for (auto id : rest) rest_paths.push_back(atoms[id]);

    if (is_independent(atoms[x], rest_paths)) {
      groups.push_back({x});
      finalized.insert(x);
      pending = std::move(rest);
      continue;
    }

    const auto d = decompose_dependent(atoms[x], rest_paths);
    atoms.retire(x);
    for (auto id : rest) atoms.retire(id);

    auto intern_all = [&](const std::vector<ReducedPath>& ps) {
      detail::AtomWord w;
      for (const auto& p : ps) w.push_back(atoms.intern(p));
      return w;
    };
    const detail::AtomWord x_pieces = intern_all(d.e_pieces);
    std::vector<detail::AtomWord> rest_pieces;
    for (const auto& ps : d.c_pieces) rest_pieces.push_back(intern_all(ps));

    // Substitution must not clobber an atom whose id is reused by a piece.
    auto replace = [&](std::size_t id, const detail::AtomWord& ps) {
      if (ps.size() == 1 && ps[0].id == id && ps[0].sign > 0) return;
      for (auto& w : words) detail::substitute(w, id, ps);
    };
    replace(x, x_pieces);
    for (std::size_t k = 0; k < rest.size(); ++k) replace(rest[k], rest_pieces[k]);

    std::vector<std::size_t> group;
    std::set<std::size_t> group_ids;
    for (const auto& r : x_pieces)
      if (group_ids.insert(r.id).second) group.push_back(r.id);
    groups.push_back(group);
    finalized.insert(group.begin(), group.end());

    std::vector<std::size_t> next;
    std::set<std::size_t> seen;
    for (const auto& ps : rest_pieces)
      for (const auto& r : ps)
        if (!group_ids.count(r.id) && seen.insert(r.id).second) next.push_back(r.id);
    pending = std::move(next);
  }

  std::vector<ReducedPath> edges;
  std::map<std::size_t, std::size_t> edge_of_atom;
  for (auto g = groups.rbegin(); g != groups.rend(); ++g)
    for (auto id : *g) {
      edge_of_atom[id] = edges.size();
      edges.push_back(atoms[id]);
    }

  auto witnesses = is_hyph(edges);
  if (!witnesses) throw std::logic_error("constructed edge family is not a hyph");

  HyphBuild out;
  for (const auto& w : words) {
    Factorization f;
    for (const auto& r : w) {
      auto it = edge_of_atom.find(r.id);
      if (it == edge_of_atom.end()) throw std::logic_error("factorization refers to a retired atom");
      f.word.push_back({it->second, r.sign});
    }
    out.factorizations.push_back(std::move(f));
  }
  out.hyph = Hyph::from_parts(std::move(edges), std::move(*witnesses));
  return out;
}

inline HyphBuild build_hyph(std::initializer_list<ReducedPath> paths) {
  return build_hyph(std::span<const ReducedPath>(paths.begin(), paths.size()));
}

/// A common refinement: factorizations list the edges of h1 first, then h2.
inline HyphBuild refine(const Hyph& h1, const Hyph& h2) {
  std::vector<ReducedPath> all = h1.edges();
  all.insert(all.end(), h2.edges().begin(), h2.edges().end());
  return build_hyph(all);
}

/// Writes p as a product of edges of h and their inverses, if possible.
/// Depth-first along p with memoized dead ends.
inline std::optional<Factorization> factorize(const ReducedPath& p, const Hyph& h) {
  if (p.is_trivial()) return Factorization{};
  const Rational n(p.segment_count());
  std::set<Rational> dead;
  std::vector<SignedEdge> word;

  auto search = [&](auto&& self, const Rational& s) -> bool {
    if (s == n) return true;
    if (dead.count(s)) return false;
    const PathLocation loc = location_at_parameter(p.path(), s);
    const Point x = point_at(p.path(), loc);
    const Point dir = p.path().direction(loc.segment);
    for (std::size_t k = 0; k < h.size(); ++k) {
      const PLPath& edge = h.edge(k).path();
      for (int sign : {1, -1}) {
        if (sign > 0 ? edge.start() != x || !same_direction(edge.direction(0), dir)
                     : edge.end() != x || !same_direction(-edge.direction(edge.segment_count() - 1), dir))
          continue;
        const ReducedPath e = sign > 0 ? h.edge(k) : invert(h.edge(k));
        for (const auto& end : locate(p.path(), e.end())) {
          const Rational t = end.parameter();
          if (t <= s || !(subpath(p.path(), loc, end) == e.path())) continue;
          word.push_back({k, sign});
          if (self(self, t)) return true;
          word.pop_back();
        }
      }
    }
    dead.insert(s);
    return false;
  };
  if (!search(search, Rational(0))) return std::nullopt;
  return Factorization{std::move(word)};
}

inline std::optional<Factorization> factorize(const PathWord& w, const Hyph& h) { return factorize(reduce(w), h); }

/// Factorizations of every edge of h1 through h2 when h1 <= h2.
inline std::optional<std::vector<Factorization>> leq(const Hyph& h1, const Hyph& h2) {
  std::vector<Factorization> out;
  for (const auto& e : h1.edges()) {
    auto f = factorize(e, h2);
    if (!f) return std::nullopt;
    out.push_back(std::move(*f));
  }
  return out;
}

/// Substitutes factorizations of the inner hyph's edges into a word over it.
inline Factorization compose_factorizations(const Factorization& outer, const std::vector<Factorization>& inner) {
  Factorization out;
  for (const auto& s : outer.word) {
    const auto& f = inner.at(s.index).word;
    if (s.sign > 0) {
      out.word.insert(out.word.end(), f.begin(), f.end());
    } else {
      for (auto it = f.rbegin(); it != f.rend(); ++it) out.word.push_back({it->index, -it->sign});
    }
  }
  return out;
}

}  // namespace holonomy
