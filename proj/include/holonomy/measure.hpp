#pragma once

// Cylindrical functions and the induced Haar functional: exact integration
// over finite groups, Monte-Carlo over Lie groups, pullback to finer hyphs.

#include "holonomy/error.hpp"
#include "holonomy/group.hpp"
#include "holonomy/hyph.hpp"
#include "holonomy/rational.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <span>
#include <thread>
#include <type_traits>
#include <vector>

namespace holonomy {

template <class Value>
struct value_traits;

template <>
struct value_traits<std::complex<double>> {
  using type = std::complex<double>;
  static type zero() { return 0; }
  static type one() { return 1; }
  static type divide(const type& v, std::uint64_t n) { return v / static_cast<double>(n); }
  static type conj(const type& v) { return std::conj(v); }
  static double magnitude(const type& v) { return std::abs(v); }
  static bool equal(const type& a, const type& b, double tol) { return std::abs(a - b) <= tol; }
  static std::complex<double> to_complex(const type& v) { return v; }
};

template <>
struct value_traits<double> {
  using type = double;
  static type zero() { return 0; }
  static type one() { return 1; }
  static type divide(const type& v, std::uint64_t n) { return v / static_cast<double>(n); }
  static type conj(const type& v) { return v; }
  static double magnitude(const type& v) { return std::fabs(v); }
  static bool equal(const type& a, const type& b, double tol) { return std::fabs(a - b) <= tol; }
  static std::complex<double> to_complex(const type& v) { return v; }
};

/// Exact real values for bit-exact integration over finite groups.
template <>
struct value_traits<Rational> {
  using type = Rational;
  static type zero() { return 0; }
  static type one() { return 1; }
  static type divide(const type& v, std::uint64_t n) { return v / Rational(n); }
  static type conj(const type& v) { return v; }
  static double magnitude(const type& v) { return std::fabs(v.convert_to<double>()); }
  static bool equal(const type& a, const type& b, double) { return a == b; }
  static std::complex<double> to_complex(const type& v) { return v.convert_to<double>(); }
};

/// A function of the transports along the edges of a hyph.
template <class Value = std::complex<double>>
struct CylindricalFunction {
  using Body = std::function<Value(std::span<const GroupElement>)>;

  Hyph hyph;
  Group group;
  Body body;

  std::size_t arity() const { return hyph.size(); }
};

enum class IntegrationMode { exact, monte_carlo };

template <class Value = std::complex<double>>
struct IntegrationResult {
  Value value{};
  double standard_error = 0;
  std::uint64_t sample_count = 0;
  IntegrationMode mode = IntegrationMode::exact;
};

struct MonteCarloParams {
  std::uint64_t samples = 100000;
  std::uint64_t seed = 42;
  unsigned workers = 4;
};

namespace detail {

inline void decode_tuple(std::uint64_t code, const std::vector<GroupElement>& elements,
                         std::vector<GroupElement>& tuple) {
  const std::uint64_t base = elements.size();
  for (auto& slot : tuple) {
    slot = elements[code % base];
    code /= base;
  }
}

constexpr std::uint64_t exact_block = 4096;
constexpr std::uint64_t parallel_threshold = 1u << 15;

}  // namespace detail

/// Haar average of the body over G^n.
template <class Value>
IntegrationResult<Value> integrate(const CylindricalFunction<Value>& f, const MonteCarloParams& mc = {}) {
  using traits = value_traits<Value>;
  const Group& G = f.group;
  const std::size_t n = f.arity();

  if (G.is_finite()) {
    const auto elements = G.enumerate();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (total > (std::uint64_t{1} << 40) / elements.size()) throw input_error("tuple space too large to enumerate");
      total *= elements.size();
    }
    const std::uint64_t blocks = (total + detail::exact_block - 1) / detail::exact_block;
    std::vector<Value> partial(blocks, traits::zero());
    auto run_block = [&](std::uint64_t b) {
      std::vector<GroupElement> tuple(n);
      Value acc = traits::zero();
      const std::uint64_t end = std::min(total, (b + 1) * detail::exact_block);
      for (std::uint64_t code = b * detail::exact_block; code < end; ++code) {
        detail::decode_tuple(code, elements, tuple);
        acc += f.body(tuple);
      }
      partial[b] = acc;
    };
    const unsigned workers = total >= detail::parallel_threshold ? std::max(1u, mc.workers) : 1u;
    if (workers == 1) {
      for (std::uint64_t b = 0; b < blocks; ++b) run_block(b);
    } else {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
          for (std::uint64_t b = w; b < blocks; b += workers) run_block(b);
        });
    }
    Value sum = traits::zero();
    for (const auto& p : partial) sum += p;  // fixed order keeps the result reproducible
    return {traits::divide(sum, total), 0, total, IntegrationMode::exact};
  }

  if constexpr (std::is_same_v<Value, Rational>) {
    throw input_error("exact-valued bodies need a finite group");
  } else {
    if (mc.samples == 0) throw input_error("Monte-Carlo integration needs at least one sample");
    const unsigned workers = std::max(1u, mc.workers);
    struct Moments {
      std::complex<double> sum = 0;
      double sum_sq = 0;
    };
    std::vector<Moments> moments(workers);
    auto run = [&](unsigned w) {
      std::mt19937_64 rng(mc.seed + w);
      const std::uint64_t count = mc.samples / workers + (w < mc.samples % workers ? 1 : 0);
      std::vector<GroupElement> tuple(n);
      Moments m;
      for (std::uint64_t k = 0; k < count; ++k) {
        for (auto& slot : tuple) slot = G.haar_sample(rng);
        const std::complex<double> v = traits::to_complex(f.body(tuple));
        m.sum += v;
        m.sum_sq += std::norm(v);
      }
      moments[w] = m;
    };
    {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    }
    std::complex<double> sum = 0;
    double sum_sq = 0;
    for (const auto& m : moments) {
      sum += m.sum;
      sum_sq += m.sum_sq;
    }
    const double N = static_cast<double>(mc.samples);
    const std::complex<double> mean = sum / N;
    const double variance = mc.samples > 1 ? std::max(0.0, (sum_sq - N * std::norm(mean)) / (N - 1)) : 0.0;
    Value value;
    if constexpr (std::is_same_v<Value, double>)
      value = mean.real();
    else
      value = mean;
    return {value, std::sqrt(variance / N), mc.samples, IntegrationMode::monte_carlo};
  }
}

/// Re-expresses f on a finer hyph through the given factorizations of f's
/// edges.
template <class Value>
CylindricalFunction<Value> pullback(const CylindricalFunction<Value>& f, const Hyph& finer,
                                    std::vector<Factorization> factors) {
  if (factors.size() != f.arity()) throw input_error("one factorization per coarse edge is required");
  for (const auto& fac : factors)
    for (const auto& s : fac.word)
      if (s.index >= finer.size()) throw input_error("factorization refers to a missing edge");
  auto body = f.body;
  Group G = f.group;
  const std::size_t coarse = f.arity();
  auto words = std::make_shared<const std::vector<Factorization>>(std::move(factors));
  return {finer, G, [body, G, words, coarse](std::span<const GroupElement> fine) {
            std::vector<GroupElement> args;
            args.reserve(coarse);
            for (const auto& fac : *words)
              args.push_back(word_product(G, fac.word, [&](std::size_t i) -> const GroupElement& { return fine[i]; }));
            return body(args);
          }};
}

/// Same, with the factorizations found by searching the finer hyph.
template <class Value>
CylindricalFunction<Value> pullback(const CylindricalFunction<Value>& f, const Hyph& finer) {
  auto factors = leq(f.hyph, finer);
  if (!factors) throw input_error("target hyph does not refine the function's hyph");
  return pullback(f, finer, std::move(*factors));
}

template <class Value>
struct ConsistencyReport {
  IntegrationResult<Value> coarse;
  IntegrationResult<Value> fine;
  bool consistent = false;
};

/// Integrates f on its own hyph and after pullback to a finer one. Exact
/// groups must agree exactly (or to 1e-12 for floating bodies), Lie groups
/// within three combined standard errors.
template <class Value>
ConsistencyReport<Value> consistency_check(const CylindricalFunction<Value>& f, const Hyph& finer,
                                           const MonteCarloParams& mc = {}) {
  using traits = value_traits<Value>;
  ConsistencyReport<Value> r;
  r.coarse = integrate(f, mc);
  r.fine = integrate(pullback(f, finer), mc);
  if (f.group.is_finite()) {
    r.consistent = traits::equal(r.coarse.value, r.fine.value, 1e-12);
  } else {
    const double band = 3 * std::hypot(r.coarse.standard_error, r.fine.standard_error);
    r.consistent = std::abs(traits::to_complex(r.coarse.value) - traits::to_complex(r.fine.value)) <= band + 1e-12;
  }
  return r;
}

namespace detail {

template <class Value, class Op>
CylindricalFunction<Value> combine(const CylindricalFunction<Value>& a, const CylindricalFunction<Value>& b, Op op) {
  if (!(a.group == b.group)) throw group_mismatch_error("cylindrical functions over different groups");
  const HyphBuild r = refine(a.hyph, b.hyph);
  std::vector<Factorization> fa(r.factorizations.begin(), r.factorizations.begin() + a.arity());
  std::vector<Factorization> fb(r.factorizations.begin() + a.arity(), r.factorizations.end());
  auto pa = pullback(a, r.hyph, std::move(fa));
  auto pb = pullback(b, r.hyph, std::move(fb));
  return {r.hyph, a.group, [ba = pa.body, bb = pb.body, op](std::span<const GroupElement> g) {
            return op(ba(g), bb(g));
          }};
}

}  // namespace detail

template <class Value>
CylindricalFunction<Value> cyl_add(const CylindricalFunction<Value>& a, const CylindricalFunction<Value>& b) {
  return detail::combine(a, b, [](const Value& x, const Value& y) { return x + y; });
}

template <class Value>
CylindricalFunction<Value> cyl_mul(const CylindricalFunction<Value>& a, const CylindricalFunction<Value>& b) {
  return detail::combine(a, b, [](const Value& x, const Value& y) { return x * y; });
}

template <class Value>
CylindricalFunction<Value> cyl_conj(const CylindricalFunction<Value>& f) {
  return {f.hyph, f.group, [body = f.body](std::span<const GroupElement> g) { return value_traits<Value>::conj(body(g)); }};
}

/// Constant function on the empty hyph.
template <class Value>
CylindricalFunction<Value> cyl_constant(const Group& G, Value c) {
  return {Hyph(), G, [c](std::span<const GroupElement>) { return c; }};
}

/// max |body| over all tuples (finite groups only).
template <class Value>
double sup_norm(const CylindricalFunction<Value>& f) {
  if (!f.group.is_finite()) throw input_error("sup norm is only computed over finite groups");
  const auto elements = f.group.enumerate();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < f.arity(); ++i) total *= elements.size();
  std::vector<GroupElement> tuple(f.arity());
  double best = 0;
  for (std::uint64_t code = 0; code < total; ++code) {
    detail::decode_tuple(code, elements, tuple);
    best = std::max(best, value_traits<Value>::magnitude(f.body(tuple)));
  }
  return best;
}

/// Exact mass of the cylinder set {transport along edge k lies in U[k]}.
inline IntegrationResult<Rational> positivity_probe(const std::vector<std::vector<GroupElement>>& U, const Hyph& h,
                                                    const Group& G) {
  if (!G.is_finite()) throw input_error("subset probes need a finite group; use ball probes for Lie groups");
  if (U.size() != h.size()) throw input_error("one subset per edge is required");
  for (const auto& u : U) {
    if (u.empty()) throw input_error("empty subset has zero Haar mass");
    for (const auto& x : u) G.check(x);
  }
  auto membership = std::make_shared<std::vector<std::vector<bool>>>();
  for (const auto& u : U) {
    std::vector<bool> in(G.order(), false);
    for (const auto& x : u) in[x.index] = true;
    membership->push_back(std::move(in));
  }
  CylindricalFunction<Rational> f{h, G, [membership](std::span<const GroupElement> g) {
                                    for (std::size_t k = 0; k < g.size(); ++k)
                                      if (!(*membership)[k][g[k].index]) return Rational(0);
                                    return Rational(1);
                                  }};
  return integrate(f);
}

/// Ball of radius r (chordal distance of the defining representation).
struct LieBall {
  GroupElement center;
  double radius = 0.5;
};

inline double lie_distance(const Group& G, const GroupElement& a, const GroupElement& b) {
  if (G.kind() == GroupKind::u1) return std::abs(std::polar(1.0, a.angle) - std::polar(1.0, b.angle));
  if (G.kind() == GroupKind::su2)
    return std::sqrt((a.q.w - b.q.w) * (a.q.w - b.q.w) + (a.q.x - b.q.x) * (a.q.x - b.q.x) +
                     (a.q.y - b.q.y) * (a.q.y - b.q.y) + (a.q.z - b.q.z) * (a.q.z - b.q.z));
  throw input_error("ball probes need a Lie group");
}

/// Monte-Carlo integral of a product of tent bumps supported in the balls;
/// strictly positive whenever every radius is positive.
inline IntegrationResult<double> positivity_probe(const std::vector<LieBall>& balls, const Hyph& h, const Group& G,
                                                  const MonteCarloParams& mc = {}) {
  if (G.is_finite()) throw input_error("ball probes need a Lie group");
  if (balls.size() != h.size()) throw input_error("one ball per edge is required");
  for (const auto& b : balls) {
    if (!(b.radius > 0)) throw input_error("ball radius must be positive");
    G.check(b.center);
  }
  CylindricalFunction<double> f{h, G, [balls, G](std::span<const GroupElement> g) {
                                  double v = 1;
                                  for (std::size_t k = 0; k < g.size(); ++k)
                                    v *= std::max(0.0, 1 - lie_distance(G, g[k], balls[k].center) / balls[k].radius);
                                  return v;
                                }};
  return integrate(f, mc);
}

}  // namespace holonomy
