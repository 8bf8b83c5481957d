#include "support/random_paths.hpp"

#include <gtest/gtest.h>

using namespace holonomy;
using namespace holonomy::testing;

TEST(Rational, ParsesAndPrints) {
  EXPECT_EQ(parse_rational("3/6"), make_rational(1, 2));
  EXPECT_EQ(parse_rational("-7"), Rational(-7));
  EXPECT_EQ(to_string(make_rational(-4, 8)), "-1/2");
  EXPECT_EQ(to_string(Rational(5)), "5");
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
  EXPECT_EQ(floor_of(make_rational(-1, 2)), Rational(-1));
  EXPECT_EQ(floor_of(make_rational(7, 2)), Rational(3));
}

TEST(PLPath, RejectsMalformedInput) {
  EXPECT_THROW(PLPath(std::vector<Point>{}), input_error);
  EXPECT_THROW(path({pt(0, 0), pt(0, 0)}), input_error);
  EXPECT_THROW(path({Point{Rational(1)}, Point{Rational(2)}}), input_error);
  EXPECT_THROW(path({pt(0, 0), Point{Rational(1), Rational(0), Rational(0)}}), input_error);
  EXPECT_TRUE(PLPath::trivial(pt(1, 1)).is_trivial());
}

TEST(Locate, FindsEveryPassage) {
  const PLPath p = path({pt(0, 0), pt(2, 0), pt(2, 2), pt(1, 2), pt(1, -1)});
  const auto locs = locate(p, pt(1, 0));
  ASSERT_EQ(locs.size(), 2u);
  EXPECT_EQ(locs[0].parameter(), make_rational(1, 2));
  EXPECT_EQ(locs[1].parameter(), Rational(3) + make_rational(2, 3));
  EXPECT_TRUE(locate(p, pt(5, 5)).empty());
  // a breakpoint is reported once, in canonical form
  const auto corner = locate(p, pt(2, 0));
  ASSERT_EQ(corner.size(), 1u);
  EXPECT_EQ(corner[0].segment, 1u);
  EXPECT_EQ(corner[0].fraction, 0);
}

TEST(Subpath, MatchesPointAt) {
  Rng rng(1);
  Grid grid{4, 3};
  for (int trial = 0; trial < 200; ++trial) {
    const PLPath p = random_path(rng, grid);
    const Rational n(p.segment_count());
    Rational a = make_rational(static_cast<std::int64_t>(uniform(rng, 0, 8 * p.segment_count())), 8);
    Rational b = make_rational(static_cast<std::int64_t>(uniform(rng, 0, 8 * p.segment_count())), 8);
    if (a > b) std::swap(a, b);
    const PLPath s = subpath_by_parameter(p, a, b);
    EXPECT_EQ(s.start(), point_at(p, location_at_parameter(p, a)));
    EXPECT_EQ(s.end(), point_at(p, location_at_parameter(p, b)));
    EXPECT_LE(a, n);
  }
  const PLPath p = path({pt(0, 0), pt(2, 0)});
  EXPECT_THROW(subpath_by_parameter(p, Rational(1), make_rational(1, 2)), input_error);
  EXPECT_TRUE(subpath_by_parameter(p, make_rational(1, 2), make_rational(1, 2)).is_trivial());
}

TEST(SegmentContact, CoversCollinearAndTransverseCases) {
  auto c = segment_contact(pt(0, 0), pt(2, 0), pt(1, 0), pt(3, 0));
  EXPECT_EQ(c.kind, SegmentContact::Kind::overlap);
  EXPECT_EQ(c.s0, make_rational(1, 2));
  EXPECT_EQ(c.s1, Rational(1));
  EXPECT_EQ(c.sign, 1);
  c = segment_contact(pt(0, 0), pt(2, 0), pt(3, 0), pt(1, 0));
  EXPECT_EQ(c.sign, -1);
  EXPECT_EQ(c.t0, Rational(1));
  c = segment_contact(pt(0, 0), pt(2, 2), pt(0, 2), pt(2, 0));
  EXPECT_EQ(c.kind, SegmentContact::Kind::point);
  EXPECT_EQ(c.s0, make_rational(1, 2));
  c = segment_contact(pt(0, 0), pt(1, 0), pt(0, 1), pt(1, 1));
  EXPECT_EQ(c.kind, SegmentContact::Kind::none);
  c = segment_contact(pt(0, 0), pt(1, 0), pt(1, 0), pt(1, 1));
  EXPECT_EQ(c.kind, SegmentContact::Kind::point);
  // skew lines in three dimensions
  const Point a{Rational(0), Rational(0), Rational(0)}, b{Rational(1), Rational(0), Rational(0)};
  const Point d{Rational(0), Rational(1), Rational(1)}, e{Rational(1), Rational(-1), Rational(1)};
  EXPECT_EQ(segment_contact(a, b, d, e).kind, SegmentContact::Kind::none);
}

TEST(SelfIntersection, DetectsCrossingsAndLoops) {
  EXPECT_FALSE(is_self_intersecting(path({pt(0, 0), pt(1, 0), pt(1, 1)})));
  EXPECT_TRUE(is_self_intersecting(path({pt(0, 0), pt(2, 0), pt(2, 1), pt(1, 1), pt(1, -1)})));
  EXPECT_TRUE(is_self_intersecting(path({pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 0)})));
  EXPECT_TRUE(is_self_intersecting(path({pt(0, 0), pt(2, 0), pt(1, 0)})));
}

TEST(ImageOverlap, MergesAcrossBreakpoints) {
  const PLPath p = path({pt(0, 0), pt(1, 0), pt(3, 0)});
  const PLPath q = path({pt(4, 0), pt(2, 0), pt(1, 0), pt(1, 1)});
  const auto o = image_overlap(p, q);
  ASSERT_EQ(o.size(), 1u);
  EXPECT_EQ(o[0].first_from.parameter(), Rational(1));
  EXPECT_EQ(o[0].first_to.parameter(), Rational(2));
  EXPECT_EQ(o[0].second_from.parameter(), Rational(0) + make_rational(1, 2));
  EXPECT_EQ(o[0].second_to.parameter(), Rational(2));
  EXPECT_EQ(o[0].sign, -1);
  EXPECT_TRUE(image_overlap(p, path({pt(0, 1), pt(1, 1)})).empty());
}

TEST(ImageOverlap, FastTestAgreesWithContacts) {
  Rng rng(7);
  const Grid grid{3, 2};
  for (int trial = 0; trial < 500; ++trial) {
    const PLPath p = random_path(rng, grid), q = random_path(rng, grid);
    EXPECT_EQ(images_overlap(p, q), !image_overlap(p, q).empty()) << to_string(p) << " / " << to_string(q);
  }
  EXPECT_FALSE(images_overlap(path({pt(0, 0), pt(1, 0)}), path({pt(1, 0), pt(2, 0)})));
  EXPECT_TRUE(images_overlap(path({pt(0, 0), pt(2, 2)}), path({pt(3, 3), pt(1, 1)})));
}

TEST(Scaling, PreservesIncidence) {
  const PLPath p = path({pt(0, 0), pt(2, 0), pt(2, 2)});
  const PLPath s = scaled(p, make_rational(3, 2));
  EXPECT_EQ(s.breakpoint(1), pt(3, 0));
  EXPECT_THROW(scaled(p, Rational(0)), input_error);
}
