#include "support/random_paths.hpp"

#include <gtest/gtest.h>

using namespace holonomy;
using namespace holonomy::testing;

TEST(Reduce, CancelsRetracing) {
  const PathWord w(std::vector<PathLetter>{{path({pt(0, 0), pt(2, 0)}), 1}, {path({pt(2, 0), pt(1, 0), pt(3, 0)}), 1}});
  EXPECT_EQ(to_string(reduce(w)), "(0,0)→(3,0)");
  const PLPath a = path({pt(0, 0), pt(1, 0), pt(1, 1)});
  EXPECT_TRUE(reduce(PathWord(a) * PathWord(a, -1)).is_trivial());
  EXPECT_EQ(to_string(reduce(PathWord(a) * PathWord(a, -1))), "trivial@(0,0)");
}

TEST(Reduce, MergesCollinearBreakpoints) {
  const ReducedPath r = reduce(path({pt(0, 0), pt(1, 0), pt(2, 0), pt(2, 1)}));
  EXPECT_EQ(r.segment_count(), 2u);
  EXPECT_TRUE(ReducedPath::is_reduced(r.path()));
  EXPECT_THROW(ReducedPath::from_reduced(path({pt(0, 0), pt(1, 0), pt(2, 0)})), input_error);
}

TEST(Reduce, OverRetracePassesThroughEarlierBreakpoints) {
  // (0,0)→(1,1)→(2,1) followed by (2,1)→(0,1): cancels back past (1,1)
  const ReducedPath r = reduce(path({pt(0, 0), pt(1, 1), pt(2, 1), pt(0, 1)}));
  EXPECT_EQ(to_string(r), "(0,0)→(1,1)→(0,1)");
  const ReducedPath s = reduce(path({pt(0, 0), pt(3, 0), pt(1, 0), pt(1, 1), pt(1, 0), pt(-1, 0)}));
  EXPECT_EQ(to_string(s), "(0,0)→(-1,0)");
}

TEST(PathWord, ReportsNonComposableLetters) {
  try {
    PathWord w(std::vector<PathLetter>{{path({pt(0, 0), pt(1, 0)}), 1}, {path({pt(2, 0), pt(3, 0)}), 1}});
    FAIL() << "expected composability_error";
  } catch (const composability_error& e) {
    EXPECT_NE(std::string(e.what()).find("letters 0 and 1"), std::string::npos);
  }
  EXPECT_THROW(compose(rpath({pt(0, 0), pt(1, 0)}), rpath({pt(0, 1), pt(1, 1)})), composability_error);
}

TEST(DecomposeAtPoints, CutsAtEveryPassage) {
  const ReducedPath p = rpath({pt(0, 0), pt(2, 0), pt(2, 2)});
  const auto pieces = decompose_at_points(p, {pt(1, 0), pt(2, 1), pt(7, 7)});
  ASSERT_EQ(pieces.size(), 3u);
  EXPECT_EQ(to_string(pieces[0]), "(0,0)→(1,0)");
  EXPECT_EQ(to_string(pieces[1]), "(1,0)→(2,0)→(2,1)");
  EXPECT_EQ(to_string(pieces[2]), "(2,1)→(2,2)");
  EXPECT_TRUE(decompose_at_points(ReducedPath::trivial(pt(0, 0)), {pt(0, 0)}).empty());
}

// Properties against the free-groupoid lattice oracle.
TEST(ReduceProperty, AgreesWithFreeGroupoidOracle) {
  Rng rng(7);
  const Grid grid{4, 2};
  for (int trial = 0; trial < 300; ++trial) {
    const PathWord w = random_word_from(rng, grid, grid.random_point(rng), uniform(rng, 1, 4));
    const ReducedPath r = reduce(w);
    EXPECT_TRUE(ReducedPath::is_reduced(r.path()));
    const std::int64_t den = common_denominator(w);
    EXPECT_EQ(free_reduce(r, den), free_reduce(w, den)) << to_string(r);
  }
}

TEST(ReduceProperty, IdempotentCongruentAndInverse) {
  Rng rng(11);
  const Grid grid{2, 3};
  for (int trial = 0; trial < 300; ++trial) {
    const PathWord u = random_word_from(rng, grid, grid.random_point(rng), uniform(rng, 1, 3));
    const PathWord v = random_word_from(rng, grid, u.end(), uniform(rng, 1, 3));
    const ReducedPath ru = reduce(u), rv = reduce(v);
    EXPECT_EQ(reduce(as_word(ru)), ru);
    EXPECT_EQ(reduce(u * v), compose(ru, rv));
    EXPECT_TRUE(reduce(u * u.inverse()).is_trivial());
    EXPECT_EQ(invert(reduce(u)), reduce(u.inverse()));
    EXPECT_EQ(reduce(u * v * v.inverse()), ru);
  }
}

TEST(ReduceProperty, CommutesWithScaling) {
  Rng rng(3);
  const Grid grid{2, 3};
  for (int trial = 0; trial < 100; ++trial) {
    const PLPath p = random_path(rng, grid);
    const Rational k = make_rational(static_cast<std::int64_t>(uniform(rng, 1, 5)), 3);
    const ReducedPath r = reduce(p);
    if (r.is_trivial()) continue;
    EXPECT_EQ(reduce(scaled(p, k)).path(), scaled(r.path(), k));
  }
}
