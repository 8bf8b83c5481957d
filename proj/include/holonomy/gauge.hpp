#pragma once

// Vertex gauge transformations, Wilson loops and integration on the quotient.

#include "holonomy/error.hpp"
#include "holonomy/group.hpp"
#include "holonomy/hyph.hpp"
#include "holonomy/measure.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <vector>

namespace holonomy {

/// Group-valued function on points; the identity off its support.
class GaugeTransform {
 public:
  explicit GaugeTransform(Group group) : group_(std::move(group)) {}

  void set(const Point& x, const GroupElement& g) {
    group_.check(g);
    assignment_[x] = g;
  }

  GroupElement at(const Point& x) const {
    auto it = assignment_.find(x);
    return it == assignment_.end() ? group_.identity() : it->second;
  }

  const Group& group() const { return group_; }
  const std::map<Point, GroupElement>& assignment() const { return assignment_; }

  /// Random transform on every endpoint of the hyph's edges.
  template <class Rng>
  static GaugeTransform random(const Group& G, const Hyph& h, Rng& rng) {
    GaugeTransform t(G);
    for (const auto& e : h.edges()) {
      if (!t.assignment_.count(e.start())) t.set(e.start(), G.haar_sample(rng));
      if (!t.assignment_.count(e.end())) t.set(e.end(), G.haar_sample(rng));
    }
    return t;
  }

 private:
  Group group_;
  std::map<Point, GroupElement> assignment_;
};

/// v_e -> t(e(0))^-1 v_e t(e(1)) on every edge.
inline std::vector<GroupElement> act(const GaugeTransform& t, const Hyph& h, std::span<const GroupElement> config) {
  if (config.size() != h.size()) throw input_error("configuration length does not match the hyph");
  const Group& G = t.group();
  std::vector<GroupElement> out;
  out.reserve(config.size());
  for (std::size_t k = 0; k < config.size(); ++k)
    out.push_back(G.mul(G.mul(G.inv(t.at(h.edge(k).start())), config[k]), t.at(h.edge(k).end())));
  return out;
}

/// Real part of the class function of the ordered product along a closed word.
inline double wilson_loop(const Group& G, const Hyph& h, const Factorization& loop,
                          std::span<const GroupElement> config) {
  if (config.size() != h.size()) throw input_error("configuration length does not match the hyph");
  if (!loop.word.empty()) {
    const Point start = oriented_edge(h, loop.word.front()).start();
    Point at = start;
    for (const auto& s : loop.word) {
      const ReducedPath e = oriented_edge(h, s);
      if (e.start() != at) throw composability_error("loop word is not composable");
      at = e.end();
    }
    if (at != start) throw input_error("loop word is not closed");
  }
  const auto product = word_product(G, loop.word, [&](std::size_t i) -> const GroupElement& { return config[i]; });
  return G.class_value(product).real();
}

template <class Value>
struct QuotientIntegration {
  IntegrationResult<Value> result;
  std::size_t probes = 0;
  bool invariant = false;
};

/// Integral of a gauge-invariant function. Invariance is probed on random
/// configurations and transforms first; a failed probe throws
/// property_violation.
template <class Value>
QuotientIntegration<Value> integrate_quotient(const CylindricalFunction<Value>& f, const MonteCarloParams& mc = {},
                                              std::size_t probes = 100) {
  const Group& G = f.group;
  const double tol = G.is_finite() ? 1e-12 : G.tolerance();
  std::mt19937_64 rng(mc.seed);
  std::vector<GroupElement> config(f.arity());
  for (std::size_t p = 0; p < probes; ++p) {
    for (auto& v : config) v = G.haar_sample(rng);
    const auto t = GaugeTransform::random(G, f.hyph, rng);
    const auto moved = act(t, f.hyph, config);
    if (!value_traits<Value>::equal(f.body(config), f.body(moved), tol))
      throw property_violation("function is not gauge invariant (probe " + std::to_string(p) + ")");
  }
  return {integrate(f, mc), probes, true};
}

}  // namespace holonomy
