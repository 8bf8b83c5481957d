#include "holonomy/expr.hpp"
#include "holonomy/io.hpp"
#include "support/random_paths.hpp"

#include <gtest/gtest.h>

using namespace holonomy;
using namespace holonomy::testing;
using nlohmann::json;

namespace {

io::PathSet random_path_set(Rng& rng) {
  io::PathSet s;
  const Grid grid{8, 2};
  for (std::size_t k = uniform(rng, 1, 4); k > 0; --k)
    s.paths.push_back({"p" + std::to_string(k), random_path(rng, grid)});
  return s;
}

}  // namespace

TEST(Io, RationalsAreReducedPairs) {
  EXPECT_EQ(io::rational_to_json(make_rational(6, -8)), json::parse("[-3, 4]"));
  EXPECT_EQ(io::rational_from_json(json::parse("[2, 4]")), make_rational(1, 2));
  EXPECT_EQ(io::rational_from_json(json::parse("7")), Rational(7));
  EXPECT_THROW(io::rational_from_json(json::parse("[1, 0]")), input_error);
  EXPECT_THROW(io::rational_from_json(json::parse("[1, 2, 3]")), input_error);
  // beyond 64 bits the integer is written as a string
  const Rational big = make_rational(Integer("123456789012345678901234567890"), Integer(7));
  EXPECT_EQ(io::rational_from_json(io::rational_to_json(big)), big);
}

TEST(Io, PathSetRoundTrip) {
  Rng rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    const io::PathSet s = random_path_set(rng);
    const json j = io::path_set_to_json(s);
    const json again = io::path_set_to_json(io::path_set_from_json(json::parse(j.dump())));
    EXPECT_EQ(j, again);
  }
}

TEST(Io, PathSetValidation) {
  EXPECT_THROW(io::path_set_from_json(json::parse(R"({"paths": [
      {"name": "a", "breakpoints": [[0, 0], [1, 0]]},
      {"name": "a", "breakpoints": [[0, 0], [0, 1]]}]})")),
               input_error);
  EXPECT_THROW(io::path_set_from_json(json::parse(R"({"dimension": 3, "paths": [
      {"name": "a", "breakpoints": [[0, 0], [1, 0]]}]})")),
               input_error);
  EXPECT_THROW(io::path_set_from_json(json::parse("{}")), input_error);
}

TEST(Io, WordsReportPositions) {
  io::PathSet s;
  s.paths.push_back({"a", path({pt(0, 0), pt(2, 0)})});
  s.paths.push_back({"b", path({pt(2, 0), pt(1, 0), pt(3, 0)})});
  EXPECT_EQ(to_string(reduce(io::parse_word("a * b", s))), "(0,0)→(3,0)");
  EXPECT_TRUE(reduce(io::parse_word("a * a^-1", s)).is_trivial());
  EXPECT_TRUE(reduce(io::parse_word("(a * b) * (a * b)^-1", s)).is_trivial());
  try {
    io::parse_word("a * ?", s);
    FAIL();
  } catch (const input_error& e) {
    EXPECT_NE(std::string(e.what()).find("position 4"), std::string::npos) << e.what();
  }
  EXPECT_THROW(io::parse_word("a * c", s), input_error);
  try {
    io::parse_word("b * b", s);
    FAIL();
  } catch (const input_error& e) {
    EXPECT_NE(std::string(e.what()).find("do not compose at position 3"), std::string::npos) << e.what();
  }
}

TEST(Io, ElementsRoundTrip) {
  std::mt19937_64 rng(2);
  for (const Group& G : {Group::cyclic(6), Group::quaternion8(), Group::u1(), Group::su2()}) {
    for (int k = 0; k < 20; ++k) {
      const auto g = G.haar_sample(rng);
      EXPECT_TRUE(G.equal(io::element_from_json(G, json::parse(io::element_to_json(G, g).dump())), g));
    }
  }
  const Group q8 = Group::quaternion8();
  EXPECT_EQ(io::element_from_text(q8, "-k").index, 7u);
  EXPECT_EQ(io::element_from_text(q8, "3").index, 3u);
  EXPECT_THROW(io::element_from_text(Group::cyclic(2), "2"), input_error);
  EXPECT_THROW(io::element_from_text(Group::su2(), "[1, 1, 0, 0]"), input_error);
}

TEST(Io, HyphRoundTrip) {
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const Hyph h = random_hyph(rng, Grid{2, 2}, uniform(rng, 1, 4));
    const Hyph back = io::hyph_from_json(json::parse(io::hyph_to_json(h).dump()));
    EXPECT_EQ(back.edges(), h.edges());
  }
  // a witness that is not free is rejected
  const json bad = json::parse(R"({"edges": [[[0,0],[2,0]], [[0,0],[1,0]]],
      "witnesses": [{"segment": 0, "fraction": [1,2], "side": "outgoing"},
                    {"segment": 0, "fraction": [1,2], "side": "outgoing"}]})");
  EXPECT_THROW(io::hyph_from_json(bad), input_error);
}

TEST(Io, ConnectionRoundTripPreservesEvaluation) {
  Rng rng(4);
  const Grid grid{2, 2};
  for (const Group& G : {Group::quaternion8(), Group::su2()}) {
    for (int trial = 0; trial < 10; ++trial) {
      GeneralizedConnection conn(G, ExtensionPolicy::identity);
      const Hyph h = random_hyph(rng, grid, uniform(rng, 1, 3));
      std::vector<GroupElement> vals;
      for (std::size_t i = 0; i < h.size(); ++i) vals.push_back(G.haar_sample(rng));
      conn = prescribe(std::move(conn), h.edges(), vals);
      conn = modify(std::move(conn), random_simple_path(rng, grid), G.haar_sample(rng));
      GeneralizedConnection back = io::connection_from_json(json::parse(io::connection_to_json(conn).dump()));
      Group tol = G;
      tol.set_tolerance(1e-6);
      for (int probe = 0; probe < 5; ++probe) {
        const ReducedPath p = reduce(random_path(rng, grid));
        EXPECT_TRUE(tol.equal(back.evaluate(p), conn.evaluate(p))) << G.name();
      }
    }
  }
  EXPECT_THROW(io::connection_from_json(json::parse(R"({"group": "Z3", "values": [1]})")), input_error);
  EXPECT_THROW(io::connection_from_json(json::parse(R"({"group": "G2"})")), input_error);
}

TEST(Expr, ArithmeticAndFunctions) {
  const Group z4 = Group::cyclic(4);
  const std::vector<GroupElement> v{z4.element(1), z4.element(2)};
  const auto e = [&](const std::string& text) { return expr::parse(text, {"a", "b"}).evaluate(z4, v); };
  EXPECT_EQ(e("1"), std::complex<double>(1));
  EXPECT_EQ(e("a"), std::complex<double>(0, 1));
  EXPECT_EQ(e("tr(a * b)"), std::complex<double>(0, -1));
  EXPECT_EQ(e("re(b) + 2 * im(a)"), std::complex<double>(1));
  EXPECT_EQ(e("abs2(a + b)"), std::complex<double>(2));
  EXPECT_EQ(e("conj(a)"), std::complex<double>(0, -1));
  EXPECT_EQ(e("a^-1 * a"), std::complex<double>(1));
  EXPECT_EQ(e("-3i / 2"), std::complex<double>(0, -1.5));
  EXPECT_EQ(e("x1 * x2"), e("a * b"));
  EXPECT_THROW(e("c"), input_error);
  EXPECT_THROW(e("foo(a)"), input_error);
  EXPECT_THROW(e("1 +"), input_error);

  const Group su2 = Group::su2();
  const std::vector<GroupElement> id{su2.identity()};
  EXPECT_EQ(expr::parse("chi_1(x1)", {"e"}).evaluate(su2, id), std::complex<double>(3));
  EXPECT_EQ(expr::parse("chi_1/2(x1)", {"e"}).evaluate(su2, id), std::complex<double>(2));
  EXPECT_EQ(expr::parse("abs(tr(inv(e)))", {"e"}).evaluate(su2, id), std::complex<double>(2));
}
