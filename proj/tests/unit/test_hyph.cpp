#include "support/random_paths.hpp"

#include <gtest/gtest.h>

using namespace holonomy;
using namespace holonomy::testing;

namespace {

std::vector<std::string> strings(const std::vector<ReducedPath>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(to_string(p));
  return out;
}

void expect_round_trip(const HyphBuild& b, std::span<const ReducedPath> inputs) {
  ASSERT_TRUE(is_hyph(b.hyph.edges()));
  ASSERT_EQ(b.factorizations.size(), inputs.size());
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    EXPECT_FALSE(has_repeated_edge(b.factorizations[i]));
    EXPECT_EQ(realize(b.hyph, b.factorizations[i]), inputs[i]) << "input " << i;
  }
}

}  // namespace

TEST(DecomposeDependent, SplitsAtSharedBreakpoint) {
  const auto d = decompose_dependent(rpath({pt(0, 0), pt(2, 0)}), {rpath({pt(0, 0), pt(1, 0)}), rpath({pt(1, 0), pt(2, 0)})});
  EXPECT_EQ(strings(d.e_pieces), (std::vector<std::string>{"(0,0)→(1,0)", "(1,0)→(2,0)"}));
  ASSERT_EQ(d.c_pieces.size(), 2u);
  EXPECT_EQ(strings(d.c_pieces[0]), std::vector<std::string>{"(0,0)→(1,0)"});
  EXPECT_EQ(strings(d.c_pieces[1]), std::vector<std::string>{"(1,0)→(2,0)"});
  EXPECT_TRUE(verify_decomposition(d));
}

TEST(DecomposeDependent, CutsTheLongerComparisonPath) {
  const auto d = decompose_dependent(rpath({pt(0, 0), pt(2, 0)}), {rpath({pt(0, 0), pt(3, 0)})});
  EXPECT_EQ(strings(d.e_pieces), std::vector<std::string>{"(0,0)→(2,0)"});
  EXPECT_EQ(strings(d.c_pieces[0]), (std::vector<std::string>{"(0,0)→(2,0)", "(2,0)→(3,0)"}));
  EXPECT_TRUE(verify_decomposition(d));
}

TEST(DecomposeDependent, ReversedComparisonPiece) {
  // e is uncovered near (0,0) against (3,0)→(1,0) alone, so add a cover for the first half
  EXPECT_THROW(decompose_dependent(rpath({pt(0, 0), pt(2, 0)}), {rpath({pt(3, 0), pt(1, 0)})}), input_error);
  const ReducedPath e = rpath({pt(0, 0), pt(2, 0)});
  const auto d = decompose_dependent(e, {rpath({pt(0, 0), pt(1, 0)}), rpath({pt(3, 0), pt(1, 0)})});
  EXPECT_EQ(strings(d.e_pieces), (std::vector<std::string>{"(0,0)→(1,0)", "(1,0)→(2,0)"}));
  EXPECT_EQ(strings(d.c_pieces[1]), (std::vector<std::string>{"(3,0)→(2,0)", "(2,0)→(1,0)"}));
  EXPECT_EQ(d.e_pieces[1], invert(d.c_pieces[1][1]));
  EXPECT_TRUE(verify_decomposition(d));
}

TEST(BuildHyph, OverlappingSegments) {
  const std::vector<ReducedPath> in{rpath({pt(0, 0), pt(2, 0)}), rpath({pt(1, 0), pt(3, 0)})};
  const HyphBuild b = build_hyph(in);
  std::vector<std::string> edges = strings(b.hyph.edges());
  std::sort(edges.begin(), edges.end());
  EXPECT_EQ(edges, (std::vector<std::string>{"(0,0)→(1,0)", "(1,0)→(2,0)", "(2,0)→(3,0)"}));
  EXPECT_EQ(b.factorizations[0].word.size(), 2u);
  EXPECT_EQ(b.factorizations[1].word.size(), 2u);
  EXPECT_EQ(b.factorizations[0].word[1].index, b.factorizations[1].word[0].index);
  expect_round_trip(b, in);
}

TEST(BuildHyph, SinglePathAndItsInverse) {
  const ReducedPath p = rpath({pt(0, 0), pt(1, 0), pt(1, 1)});
  HyphBuild b = build_hyph({p});
  ASSERT_EQ(b.hyph.size(), 1u);
  EXPECT_EQ(b.hyph.edge(0), p);
  EXPECT_EQ(to_string(b.factorizations[0]), "[(0,+1)]");

  b = build_hyph({p, invert(p)});
  ASSERT_EQ(b.hyph.size(), 1u);
  EXPECT_EQ(to_string(b.factorizations[0]), "[(0,+1)]");
  EXPECT_EQ(to_string(b.factorizations[1]), "[(0,-1)]");
}

TEST(BuildHyph, RejectsSelfIntersectingInput) {
  EXPECT_THROW(build_hyph({rpath({pt(0, 0), pt(2, 0), pt(2, 1), pt(1, 1), pt(1, -1)})}), self_intersection_error);
}

TEST(Refine, Examples) {
  const Hyph h = Hyph::from_edges({rpath({pt(0, 0), pt(1, 0)}), rpath({pt(1, 0), pt(1, 1)})});
  HyphBuild r = refine(h, h);
  EXPECT_EQ(r.hyph.size(), 2u);
  for (const auto& f : r.factorizations) EXPECT_EQ(f.word.size(), 1u);

  r = refine(Hyph::from_edges({rpath({pt(0, 0), pt(1, 0)})}), Hyph::from_edges({rpath({pt(0, 1), pt(1, 1)})}));
  EXPECT_EQ(r.hyph.size(), 2u);

  r = refine(Hyph::from_edges({rpath({pt(0, 0), pt(2, 0)})}), Hyph::from_edges({rpath({pt(1, 0), pt(3, 0)})}));
  EXPECT_EQ(r.hyph.size(), 3u);
}

TEST(Leq, Examples) {
  const Hyph h = Hyph::from_edges({rpath({pt(0, 0), pt(1, 0)}), rpath({pt(1, 0), pt(2, 0)})});
  auto f = leq(h, h);
  ASSERT_TRUE(f);
  EXPECT_EQ(to_string((*f)[1]), "[(1,+1)]");
  f = leq(Hyph::from_edges({rpath({pt(0, 0), pt(2, 0)})}), h);
  ASSERT_TRUE(f);
  EXPECT_EQ(to_string((*f)[0]), "[(0,+1), (1,+1)]");
  EXPECT_FALSE(leq(Hyph::from_edges({rpath({pt(0, 0), pt(1, 0)})}), Hyph::from_edges({rpath({pt(0, 1), pt(1, 1)})})));
}

TEST(Factorize, Examples) {
  const Hyph h = Hyph::from_edges(
      {rpath({pt(0, 0), pt(1, 0)}), rpath({pt(1, 0), pt(1, 1)}), rpath({pt(2, 1), pt(1, 1)})});
  EXPECT_EQ(to_string(*factorize(h.edge(1), h)), "[(1,+1)]");
  EXPECT_EQ(to_string(*factorize(compose(h.edge(1), invert(h.edge(2))), h)), "[(1,+1), (2,-1)]");
  EXPECT_FALSE(factorize(rpath({pt(0, 0), pt(0, 1)}), h));
  // stops partway along an edge
  EXPECT_FALSE(factorize(rpath({pt(0, 0), pt(1, 0), pt(1, 1, 2, 1)}), h));
  EXPECT_TRUE(factorize(ReducedPath::trivial(pt(5, 5)), h)->empty());
}

TEST(DecomposeProperty, PiecesSatisfyAnAssertion) {
  Rng rng(21);
  const Grid grid{2, 2};
  int checked = 0;
  while (checked < 150) {
    const auto inst = random_dependent_instance(rng, grid);
    if (!inst) continue;
    ++checked;
    const auto d = decompose_dependent(inst->e, inst->C);
    EXPECT_TRUE(verify_decomposition(d)) << to_string(inst->e);
    for (std::size_t i = 0; i + 1 < d.cuts.size(); ++i) EXPECT_LT(d.cuts[i].parameter(), d.cuts[i + 1].parameter());
    EXPECT_EQ(d.cuts.front().parameter(), 0);
    EXPECT_EQ(d.cuts.back().parameter(), Rational(inst->e.segment_count()));
    // pieces reassemble e and each c exactly
    ReducedPath acc = ReducedPath::trivial(inst->e.start());
    for (const auto& x : d.e_pieces) acc = compose(acc, x);
    EXPECT_EQ(acc, inst->e);
    for (std::size_t j = 0; j < inst->C.size(); ++j) {
      ReducedPath c = ReducedPath::trivial(inst->C[j].start());
      for (const auto& x : d.c_pieces[j]) c = compose(c, x);
      EXPECT_EQ(c, inst->C[j]);
    }
  }
}

TEST(BuildHyphProperty, SoundOnRandomFamilies) {
  Rng rng(33);
  const Grid grid{2, 2};
  for (int trial = 0; trial < 150; ++trial) {
    std::vector<ReducedPath> in;
    for (std::size_t k = uniform(rng, 1, 4); k > 0; --k) in.push_back(random_simple_path(rng, grid));
    const HyphBuild b = build_hyph(in);
    expect_round_trip(b, in);
    for (std::size_t i = 0; i < b.hyph.size(); ++i)
      for (std::size_t j = i + 1; j < b.hyph.size(); ++j) {
        EXPECT_NE(b.hyph.edge(i), b.hyph.edge(j));
        EXPECT_NE(b.hyph.edge(i), invert(b.hyph.edge(j)));
      }
    // deterministic given input order
    EXPECT_EQ(build_hyph(in).hyph.edges(), b.hyph.edges());
  }
}

TEST(RefineProperty, DirectedAndTransitive) {
  Rng rng(44);
  const Grid grid{2, 2};
  for (int trial = 0; trial < 100; ++trial) {
    const Hyph h1 = random_hyph(rng, grid, uniform(rng, 1, 3));
    const Hyph h2 = random_hyph(rng, grid, uniform(rng, 1, 3));
    const HyphBuild r = refine(h1, h2);
    const auto f1 = leq(h1, r.hyph);
    const auto f2 = leq(h2, r.hyph);
    ASSERT_TRUE(f1);
    ASSERT_TRUE(f2);
    for (std::size_t i = 0; i < h1.size(); ++i) EXPECT_EQ(realize(r.hyph, (*f1)[i]), h1.edge(i));

    // h1 <= r <= r' composes to h1 <= r'
    const Hyph h3 = random_hyph(rng, grid, uniform(rng, 1, 2));
    const HyphBuild rr = refine(r.hyph, h3);
    const auto g = leq(r.hyph, rr.hyph);
    ASSERT_TRUE(g);
    for (std::size_t i = 0; i < h1.size(); ++i)
      EXPECT_EQ(realize(rr.hyph, compose_factorizations((*f1)[i], *g)), h1.edge(i));
  }
}

TEST(FactorizeProperty, RecoversRandomWords) {
  Rng rng(55);
  const Grid grid{2, 2};
  for (int trial = 0; trial < 100; ++trial) {
    const Hyph h = random_hyph(rng, grid, uniform(rng, 1, 4));
    const Factorization w = random_loop(rng, h, 6);
    const ReducedPath p = realize(h, w);
    const auto f = factorize(p, h);
    ASSERT_TRUE(f) << to_string(p);
    EXPECT_EQ(realize(h, *f, p.start()), p);
  }
}

TEST(Scaling, HyphConstructionCommutesWithScaling) {
  Rng rng(66);
  const Grid grid{2, 2};
  const Rational k = make_rational(5, 3);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<ReducedPath> in, scaled_in;
    for (std::size_t j = uniform(rng, 1, 3); j > 0; --j) {
      in.push_back(random_simple_path(rng, grid));
      scaled_in.push_back(ReducedPath::from_reduced(scaled(in.back().path(), k)));
    }
    const HyphBuild a = build_hyph(in), b = build_hyph(scaled_in);
    ASSERT_EQ(a.hyph.size(), b.hyph.size());
    for (std::size_t i = 0; i < a.hyph.size(); ++i) EXPECT_EQ(scaled(a.hyph.edge(i).path(), k), b.hyph.edge(i).path());
    for (std::size_t i = 0; i < in.size(); ++i) EXPECT_EQ(to_string(a.factorizations[i]), to_string(b.factorizations[i]));
  }
}
