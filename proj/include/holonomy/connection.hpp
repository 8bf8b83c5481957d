#pragma once

// Generalized connections as lazily extended homomorphisms from the path
// groupoid into a structure group, with modification and prescription.

#include "holonomy/error.hpp"
#include "holonomy/germs.hpp"
#include "holonomy/group.hpp"
#include "holonomy/groupoid.hpp"
#include "holonomy/hyph.hpp"

#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace holonomy {

enum class ExtensionPolicy { identity, haar };

/// Redefinition of transports near the initial points of a family of edges.
/// base_values hold the transports of the edges before the modification.
struct Modification {
  std::vector<ReducedPath> edges;
  std::vector<GroupElement> targets;
  std::vector<GroupElement> base_values;
};

class GeneralizedConnection {
 public:
  explicit GeneralizedConnection(Group group, ExtensionPolicy policy = ExtensionPolicy::identity,
                                 std::uint64_t seed = 42)
      : group_(std::move(group)), policy_(policy), seed_(seed), rng_(seed) {}

  GeneralizedConnection(Group group, Hyph support, std::vector<GroupElement> values,
                        ExtensionPolicy policy = ExtensionPolicy::identity, std::uint64_t seed = 42)
      : GeneralizedConnection(std::move(group), policy, seed) {
    if (values.size() != support.size()) throw input_error("one value per support edge is required");
    for (const auto& v : values) group_.check(v);
    support_ = std::move(support);
    values_ = std::move(values);
  }

  const Group& group() const { return group_; }
  const Hyph& support() const { return support_; }
  const std::vector<GroupElement>& values() const { return values_; }
  ExtensionPolicy policy() const { return policy_; }
  std::uint64_t seed() const { return seed_; }
  const std::vector<Modification>& modifications() const { return modifications_; }

  GroupElement evaluate(const PathWord& word) { return evaluate(reduce(word)); }
  GroupElement evaluate(const ReducedPath& path) { return evaluate_level(modifications_.size(), path); }

  /// Appends a modification record; its base values are taken from the
  /// current evaluation.
  void push_modification(std::vector<ReducedPath> edges, std::vector<GroupElement> targets) {
    if (edges.size() != targets.size()) throw input_error("one target per edge is required");
    Modification m;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      group_.check(targets[i]);
      m.base_values.push_back(evaluate(edges[i]));
    }
    m.edges = std::move(edges);
    m.targets = std::move(targets);
    modifications_.push_back(std::move(m));
  }

  /// Restores a serialized modification verbatim.
  void restore_modification(Modification m) {
    if (m.edges.size() != m.targets.size() || m.edges.size() != m.base_values.size())
      throw input_error("malformed modification record");
    modifications_.push_back(std::move(m));
  }

  /// Makes the base support factor p.
  void extend_to(const ReducedPath& p) {
    if (p.is_trivial() || factorize(p, support_)) return;
    extend(p);
  }

 private:
  GroupElement fresh_value() { return policy_ == ExtensionPolicy::haar ? group_.haar_sample(rng_) : group_.identity(); }

  GroupElement word_value(const Factorization& f) {
    return word_product(group_, f.word, [&](std::size_t i) -> const GroupElement& { return values_[i]; });
  }

  GroupElement evaluate_base(const ReducedPath& p) {
    if (p.is_trivial()) return group_.identity();
    auto f = factorize(p, support_);
    if (!f) {
      extend(p);
      f = factorize(p, support_);
      if (!f) throw std::logic_error("extended support does not factor the path");
    }
    return word_value(*f);
  }

  GroupElement evaluate_level(std::size_t level, const ReducedPath& p) {
    if (level == 0) return evaluate_base(p);
    const Modification& m = modifications_[level - 1];
    std::vector<Point> initial;
    for (const auto& e : m.edges) initial.push_back(e.start());
    GroupElement acc = group_.identity();
    for (const auto& piece : decompose_at_points(p, initial)) {
      GroupElement v = evaluate_level(level - 1, piece);
      for (std::size_t j = 0; j < m.edges.size(); ++j)
        if (related(SegmentRelation::EB, piece, m.edges[j])) {
          v = group_.mul(v, group_.mul(m.base_values[j], group_.inv(m.targets[j])));
          break;
        }
      for (std::size_t i = 0; i < m.edges.size(); ++i)
        if (related(SegmentRelation::BB, piece, m.edges[i])) {
          v = group_.mul(group_.mul(m.targets[i], group_.inv(m.base_values[i])), v);
          break;
        }
      acc = group_.mul(acc, v);
    }
    return acc;
  }

  // Splits p into maximal runs of consecutive segments without
  // self-intersections.
  static std::vector<ReducedPath> simple_runs(const ReducedPath& p) {
    std::vector<ReducedPath> out;
    const std::size_t n = p.segment_count();
    std::size_t start = 0;
    while (start < n) {
      std::size_t end = start + 1;
      while (end < n && !is_self_intersecting(subpath_by_parameter(p.path(), Rational(start), Rational(end + 1))))
        ++end;
      out.push_back(reduced_subpath(p, Rational(start), Rational(end)));
      start = end;
    }
    return out;
  }

  // Rebuilds the support edges that overlap p (transitively) together with
  // p's simple runs, and carries the old values over by a triangular solve.
  // Edges meeting only in points keep their free points, so the rest of the
  // support is left alone.
  void extend(const ReducedPath& p) {
    const auto pieces = simple_runs(p);
    const std::size_t s = support_.size();

    // support edges reachable from the pieces through positive-length overlaps
    std::vector<bool> touched(s, false);
    std::vector<const ReducedPath*> frontier;
    for (const auto& piece : pieces) frontier.push_back(&piece);
    while (!frontier.empty()) {
      const ReducedPath* x = frontier.back();
      frontier.pop_back();
      for (std::size_t i = 0; i < s; ++i)
        if (!touched[i] && images_overlap(x->path(), support_.edge(i).path())) {
          touched[i] = true;
          frontier.push_back(&support_.edge(i));
        }
    }

    std::vector<ReducedPath> inputs;
    std::vector<std::size_t> touched_edges;
    std::vector<ReducedPath> edges;
    std::vector<FreePoint> witnesses;
    std::vector<GroupElement> values;
    for (std::size_t i = 0; i < s; ++i) {
      if (touched[i]) {
        touched_edges.push_back(i);
        inputs.push_back(support_.edge(i));
      } else {
        edges.push_back(support_.edge(i));
        witnesses.push_back(support_.witnesses()[i]);
        values.push_back(values_[i]);
      }
    }
    inputs.insert(inputs.end(), pieces.begin(), pieces.end());
    const HyphBuild built = build_hyph(inputs);

    std::vector<std::optional<GroupElement>> fresh(built.hyph.size());
    for (std::size_t t = 0; t < touched_edges.size(); ++t) {
      const auto& word = built.factorizations[t].word;
      std::optional<std::size_t> pivot;
      for (std::size_t a = 0; a < word.size() && !pivot; ++a) {
        if (fresh[word[a].index]) continue;
        std::size_t count = 0;
        for (const auto& b : word) count += b.index == word[a].index;
        if (count == 1) pivot = a;
      }
      for (const auto& b : word)
        if (!fresh[b.index] && (!pivot || b.index != word[*pivot].index)) fresh[b.index] = fresh_value();
      const GroupElement& target = values_[touched_edges[t]];
      if (!pivot) {
        auto v = word_product(group_, word, [&](std::size_t i) -> const GroupElement& { return *fresh[i]; });
        if (!group_.equal(v, target)) throw std::logic_error("support refinement is inconsistent with old values");
        continue;
      }
      GroupElement left = group_.identity(), right = group_.identity();
      for (std::size_t a = 0; a < word.size(); ++a) {
        if (a == *pivot) continue;
        const GroupElement& v = *fresh[word[a].index];
        GroupElement x = word[a].sign > 0 ? v : group_.inv(v);
        if (a < *pivot)
          left = group_.mul(left, x);
        else
          right = group_.mul(right, x);
      }
      GroupElement solved = group_.mul(group_.mul(group_.inv(left), target), group_.inv(right));
      fresh[word[*pivot].index] = word[*pivot].sign > 0 ? solved : group_.inv(solved);
    }
    for (std::size_t k = 0; k < built.hyph.size(); ++k) {
      if (!fresh[k]) fresh[k] = fresh_value();
      edges.push_back(built.hyph.edge(k));
      witnesses.push_back(built.hyph.witnesses()[k]);
      values.push_back(*fresh[k]);
    }
    // Kept edges lose only predecessors, and rebuilt edges share no germ with
    // kept ones, so every witness stays free.
    support_ = Hyph(std::move(edges), std::move(witnesses));
    values_ = std::move(values);
  }

  Group group_;
  ExtensionPolicy policy_;
  std::uint64_t seed_;
  std::mt19937_64 rng_;
  Hyph support_;
  std::vector<GroupElement> values_;
  std::vector<Modification> modifications_;
};

/// Single-edge modification: the result takes the value g on e and agrees
/// with conn on paths that neither start nor end along e at e(0).
inline GeneralizedConnection modify(GeneralizedConnection conn, const ReducedPath& e, const GroupElement& g) {
  if (e.is_trivial()) throw input_error("cannot modify along a trivial path");
  detail::require_simple(e, "modified edge");
  conn.push_modification({e}, {g});
  return conn;
}

/// Connection with the prescribed values on E. Uses the simultaneous formula
/// when E satisfies the prescription conditions, otherwise E must be a hyph
/// and each edge is fixed through its free tail.
inline GeneralizedConnection prescribe(GeneralizedConnection conn, const std::vector<ReducedPath>& edges,
                                       const std::vector<GroupElement>& values) {
  if (edges.size() != values.size()) throw input_error("one value per edge is required");
  const Group& G = conn.group();
  for (const auto& v : values) G.check(v);
  if (check_prescription_conditions(edges)) {
    conn.push_modification(edges, values);
    return conn;
  }
  std::optional<std::vector<FreePoint>> witnesses;
  try {
    witnesses = is_hyph(edges);
  } catch (const self_intersection_error&) {
  }
  if (!witnesses) throw input_error("edges neither satisfy the prescription conditions nor form a hyph");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    ReducedPath e = edges[i];
    GroupElement g = values[i];
    Rational s = (*witnesses)[i].location.parameter();
    if ((*witnesses)[i].side == Side::incoming) {
      s = Rational(e.segment_count()) - s;
      e = invert(e);
      g = G.inv(g);
    }
    const ReducedPath head = reduced_subpath(e, Rational(0), s);
    const ReducedPath tail = reduced_subpath(e, s, Rational(e.segment_count()));
    const GroupElement h_head = conn.evaluate(head);
    conn = modify(std::move(conn), tail, G.mul(G.inv(h_head), g));
  }
  return conn;
}

/// Transports along the edges of h, in order.
inline std::vector<GroupElement> project(GeneralizedConnection& conn, const Hyph& h) {
  std::vector<GroupElement> out;
  for (const auto& e : h.edges()) out.push_back(conn.evaluate(e));
  return out;
}

}  // namespace holonomy
