#pragma once

// The path groupoid: words of PL paths, reduction to the backtrack-free
// canonical representative, composition, inversion and point decomposition.

#include "holonomy/error.hpp"
#include "holonomy/geometry.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace holonomy {

struct PathLetter {
  PLPath path;
  int sign = 1;  // -1 traverses the path backwards

  const Point& start() const { return sign > 0 ? path.start() : path.end(); }
  const Point& end() const { return sign > 0 ? path.end() : path.start(); }
};

/// A composable product of PL paths. The empty word carries its base point.
class PathWord {
 public:
  explicit PathWord(Point base) : base_(std::move(base)) {}

  explicit PathWord(std::vector<PathLetter> letters) : letters_(std::move(letters)) {
    if (letters_.empty()) throw input_error("an empty word needs an explicit base point");
    for (const auto& l : letters_)
      if (l.sign != 1 && l.sign != -1) throw input_error("letter sign must be +1 or -1");
    for (std::size_t i = 1; i < letters_.size(); ++i)
      if (letters_[i - 1].end() != letters_[i].start())
        throw composability_error("letters " + std::to_string(i - 1) + " and " + std::to_string(i) +
                                  " are not composable: " + to_string(letters_[i - 1].end()) +
                                  " vs " + to_string(letters_[i].start()));
    base_ = letters_.front().start();
  }

  PathWord(const PLPath& path, int sign = 1) : PathWord(std::vector<PathLetter>{{path, sign}}) {}

  const std::vector<PathLetter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  const Point& start() const { return base_; }
  const Point& end() const { return letters_.empty() ? base_ : letters_.back().end(); }

  PathWord inverse() const {
    if (letters_.empty()) return *this;
    std::vector<PathLetter> out;
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.push_back({it->path, -it->sign});
    return PathWord(std::move(out));
  }

  friend PathWord operator*(const PathWord& a, const PathWord& b) {
    if (a.end() != b.start())
      throw composability_error("cannot compose: " + to_string(a.end()) + " vs " + to_string(b.start()));
    if (a.empty()) return b;
    if (b.empty()) return a;
    std::vector<PathLetter> out = a.letters_;
    out.insert(out.end(), b.letters_.begin(), b.letters_.end());
    return PathWord(std::move(out));
  }

 private:
  std::vector<PathLetter> letters_;
  Point base_;
};

/// Canonical representative of a path class: no immediate reversal at any
/// breakpoint and no collinear same-direction breakpoint triple.
class ReducedPath {
 public:
  /// Wraps a path that is already reduced; throws otherwise.
  static ReducedPath from_reduced(PLPath path) {
    if (!is_reduced(path)) throw input_error("path is not in reduced form");
    return ReducedPath(std::move(path));
  }

  static ReducedPath trivial(Point p) { return ReducedPath(PLPath::trivial(std::move(p))); }

  const PLPath& path() const { return path_; }
  std::span<const Point> breakpoints() const { return path_.breakpoints(); }
  bool is_trivial() const { return path_.is_trivial(); }
  const Point& start() const { return path_.start(); }
  const Point& end() const { return path_.end(); }
  std::size_t segment_count() const { return path_.segment_count(); }

  static bool is_reduced(const PLPath& path) {
    for (std::size_t i = 1; i + 1 < path.breakpoints().size(); ++i)
      if (collinear_factor(path.direction(i - 1), path.direction(i))) return false;
    return true;
  }

  friend bool operator==(const ReducedPath& a, const ReducedPath& b) { return a.path_ == b.path_; }
  friend bool operator<(const ReducedPath& a, const ReducedPath& b) {
    auto x = a.breakpoints();
    auto y = b.breakpoints();
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
  }

 private:
  explicit ReducedPath(PLPath path) : path_(std::move(path)) {}
  friend ReducedPath reduce(const PathWord& word);
  friend ReducedPath invert(const ReducedPath& a);
  friend ReducedPath reduced_subpath(const ReducedPath& a, const PathLocation& from,
                                     const PathLocation& to);

  PLPath path_;
};

inline std::string to_string(const ReducedPath& p) {
  if (p.is_trivial()) return "trivial@" + to_string(p.start());
  return to_string(p.path());
}

namespace detail {

/// Appends q to a stack of breakpoints while keeping it reduced: merges
/// collinear continuations and cancels retracings left to right.
inline void push_reducing(std::vector<Point>& stack, const Point& q) {
  for (;;) {
    if (stack.empty()) {
      stack.push_back(q);
      return;
    }
    if (stack.back() == q) return;
    if (stack.size() == 1) {
      stack.push_back(q);
      return;
    }
    const Point& p = stack.back();
    const Point& r = stack[stack.size() - 2];
    const auto k = collinear_factor(p - r, q - p);
    if (!k) {
      stack.push_back(q);
      return;
    }
    if (*k > -1) {
      // continues straight on, or retraces only part of the last segment
      stack.back() = q;
      return;
    }
    stack.pop_back();
    if (*k == -1) return;  // exact retrace back to r
  }
}

}  // namespace detail

inline ReducedPath reduce(const PathWord& word) {
  std::vector<Point> stack;
  stack.push_back(word.start());
  for (const auto& letter : word.letters()) {
    const auto pts = letter.path.breakpoints();
    if (letter.sign > 0)
      for (const auto& p : pts) detail::push_reducing(stack, p);
    else
      for (auto it = pts.rbegin(); it != pts.rend(); ++it) detail::push_reducing(stack, *it);
  }
  return ReducedPath(PLPath(std::move(stack)));
}

inline ReducedPath reduce(const PLPath& path) { return reduce(PathWord(path)); }

inline PathWord as_word(const ReducedPath& a) {
  return a.is_trivial() ? PathWord(a.start()) : PathWord(a.path());
}

inline ReducedPath invert(const ReducedPath& a) { return ReducedPath(a.path().reversed()); }

inline ReducedPath compose(const ReducedPath& a, const ReducedPath& b) {
  if (a.end() != b.start())
    throw composability_error("endpoint mismatch: " + to_string(a.end()) + " vs " + to_string(b.start()));
  return reduce(as_word(a) * as_word(b));
}

inline bool equivalent(const PathWord& a, const PathWord& b) { return reduce(a) == reduce(b); }

/// Subpath of a reduced path; it is reduced as well.
inline ReducedPath reduced_subpath(const ReducedPath& a, const PathLocation& from, const PathLocation& to) {
  return ReducedPath(subpath(a.path(), from, to));
}

/// Same as the parameter-free version but with parameters in [0, segments].
inline ReducedPath reduced_subpath(const ReducedPath& a, const Rational& from, const Rational& to) {
  return reduced_subpath(a, location_at_parameter(a.path(), from), location_at_parameter(a.path(), to));
}

/// Cuts a at every passage through a point of P. Pieces are nontrivial, in
/// order, and none contains a point of P in its interior. A trivial path
/// yields no pieces.
inline std::vector<ReducedPath> decompose_at_points(const ReducedPath& a, std::span<const Point> points) {
  std::vector<ReducedPath> out;
  if (a.is_trivial()) return out;
  const Rational n(a.segment_count());
  std::vector<Rational> cuts{Rational(0), n};
  for (const auto& x : points)
    for (const auto& loc : locate(a.path(), x)) cuts.push_back(loc.parameter());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) out.push_back(reduced_subpath(a, cuts[i], cuts[i + 1]));
  return out;
}

inline std::vector<ReducedPath> decompose_at_points(const ReducedPath& a, std::initializer_list<Point> points) {
  return decompose_at_points(a, std::span<const Point>(points.begin(), points.size()));
}

}  // namespace holonomy
