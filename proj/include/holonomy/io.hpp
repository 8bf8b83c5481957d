#pragma once

// JSON formats for path sets, hyphs, group elements and connections, and the
// parser for path words such as "a * (b * c)^-1".

#include "holonomy/connection.hpp"
#include "holonomy/error.hpp"
#include "holonomy/geometry.hpp"
#include "holonomy/group.hpp"
#include "holonomy/groupoid.hpp"
#include "holonomy/hyph.hpp"

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace holonomy::io {

using nlohmann::json;

inline json integer_to_json(const Integer& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return v.convert_to<std::int64_t>();
  return v.str();
}

inline Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return Integer(j.get<std::string>());
    } catch (const std::runtime_error&) {
    }
  }
  throw input_error("expected an integer, got " + j.dump());
}

/// [numerator, denominator] with a positive, reduced denominator.
inline json rational_to_json(const Rational& r) {
  return json::array({integer_to_json(numerator_of(r)), integer_to_json(denominator_of(r))});
}

inline Rational rational_from_json(const json& j) {
  if (j.is_number_integer() || j.is_string()) return Rational(integer_from_json(j));
  if (!j.is_array() || j.size() != 2) throw input_error("expected [numerator, denominator], got " + j.dump());
  const Integer den = integer_from_json(j[1]);
  if (den == 0) throw input_error("zero denominator in " + j.dump());
  return make_rational(integer_from_json(j[0]), den);
}

inline json point_to_json(const Point& p) {
  json out = json::array();
  for (const auto& c : p.coords()) out.push_back(rational_to_json(c));
  return out;
}

inline Point point_from_json(const json& j) {
  if (!j.is_array()) throw input_error("expected a coordinate list, got " + j.dump());
  std::vector<Rational> coords;
  for (const auto& c : j) coords.push_back(rational_from_json(c));
  return Point(std::move(coords));
}

inline json path_to_json(const PLPath& p) {
  json out = json::array();
  for (const auto& x : p.breakpoints()) out.push_back(point_to_json(x));
  return out;
}

inline PLPath path_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw input_error("expected a non-empty breakpoint list");
  std::vector<Point> pts;
  for (const auto& x : j) pts.push_back(point_from_json(x));
  return PLPath(std::move(pts));
}

struct NamedPath {
  std::string name;
  PLPath path;
};

struct PathSet {
  std::size_t dimension = 2;
  std::vector<NamedPath> paths;

  const PLPath& get(const std::string& name) const {
    for (const auto& p : paths)
      if (p.name == name) return p.path;
    throw input_error("unknown path '" + name + "'");
  }

  std::vector<ReducedPath> reduced() const {
    std::vector<ReducedPath> out;
    for (const auto& p : paths) out.push_back(reduce(p.path));
    return out;
  }
};

inline json path_set_to_json(const PathSet& s) {
  json paths = json::array();
  for (const auto& p : s.paths) paths.push_back({{"name", p.name}, {"breakpoints", path_to_json(p.path)}});
  return {{"dimension", s.dimension}, {"paths", paths}};
}

inline PathSet path_set_from_json(const json& j) {
  if (!j.is_object() || !j.contains("paths")) throw input_error("path set needs a 'paths' array");
  PathSet s;
  s.dimension = j.value("dimension", std::size_t{2});
  std::map<std::string, bool> seen;
  for (const auto& entry : j.at("paths")) {
    NamedPath p{entry.at("name").get<std::string>(), path_from_json(entry.at("breakpoints"))};
    if (seen[p.name]) throw input_error("duplicate path name '" + p.name + "'");
    seen[p.name] = true;
    if (p.path.dimension() != s.dimension)
      throw input_error("path '" + p.name + "' does not have dimension " + std::to_string(s.dimension));
    s.paths.push_back(std::move(p));
  }
  return s;
}

inline json read_json_file(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw input_error("cannot open '" + file + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw input_error("'" + file + "' is not valid JSON: " + e.what());
  }
}

inline void write_json_file(const std::string& file, const json& j) {
  std::ofstream out(file);
  if (!out) throw input_error("cannot write '" + file + "'");
  out << j.dump(2) << "\n";
}

inline PathSet read_path_set(const std::string& file) {
  try {
    return path_set_from_json(read_json_file(file));
  } catch (const json::exception& e) {
    throw input_error("malformed path set '" + file + "': " + e.what());
  }
}

// Group elements: finite index (Q8 also by name), U(1) angle, SU(2) [w,x,y,z].

inline json element_to_json(const Group& G, const GroupElement& a) {
  G.check(a);
  switch (G.kind()) {
    case GroupKind::u1: return a.angle;
    case GroupKind::su2: return json::array({a.q.w, a.q.x, a.q.y, a.q.z});
    default: return a.index;
  }
}

inline GroupElement element_from_json(const Group& G, const json& j) {
  switch (G.kind()) {
    case GroupKind::u1:
      if (!j.is_number()) throw input_error("U1 element must be an angle");
      return GroupElement::from_angle(j.get<double>());
    case GroupKind::su2: {
      if (!j.is_array() || j.size() != 4) throw input_error("SU2 element must be [w,x,y,z]");
      Quaternion q{j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
      if (std::fabs(q.norm() - 1) > 1e-6) throw input_error("SU2 element must have unit norm");
      return GroupElement::from_quaternion(q);
    }
    default:
      if (G.kind() == GroupKind::quaternion8 && j.is_string()) return G.q8_from_name(j.get<std::string>());
      if (!j.is_number_integer() || j.get<std::int64_t>() < 0) throw input_error("finite group element must be an index");
      return G.element(static_cast<std::uint32_t>(j.get<std::int64_t>()));
  }
}

/// Parses a command-line value: JSON text, or a bare Q8 name.
inline GroupElement element_from_text(const Group& G, const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error&) {
    j = text;
  }
  return element_from_json(G, j);
}

inline json location_to_json(const PathLocation& loc) {
  return {{"segment", loc.segment}, {"fraction", rational_to_json(loc.fraction)}};
}

inline PathLocation location_from_json(const json& j) {
  return {j.at("segment").get<std::size_t>(), rational_from_json(j.at("fraction"))};
}

inline json free_point_to_json(const FreePoint& w) {
  json j = location_to_json(w.location);
  j["side"] = to_string(w.side);
  return j;
}

inline FreePoint free_point_from_json(const json& j) {
  const auto side = j.at("side").get<std::string>();
  if (side != "outgoing" && side != "incoming") throw input_error("witness side must be outgoing or incoming");
  return {location_from_json(j), side == "outgoing" ? Side::outgoing : Side::incoming};
}

inline json hyph_to_json(const Hyph& h) {
  json edges = json::array(), witnesses = json::array();
  for (std::size_t i = 0; i < h.size(); ++i) {
    edges.push_back(path_to_json(h.edge(i).path()));
    witnesses.push_back(free_point_to_json(h.witnesses()[i]));
  }
  return {{"edges", edges}, {"witnesses", witnesses}};
}

inline Hyph hyph_from_json(const json& j) {
  std::vector<ReducedPath> edges;
  for (const auto& e : j.at("edges")) edges.push_back(reduce(path_from_json(e)));
  if (!j.contains("witnesses")) return Hyph::from_edges(std::move(edges));
  std::vector<FreePoint> witnesses;
  for (const auto& w : j.at("witnesses")) witnesses.push_back(free_point_from_json(w));
  return Hyph::from_parts(std::move(edges), std::move(witnesses));
}

inline json factorization_to_json(const Factorization& f) {
  json out = json::array();
  for (const auto& s : f.word) out.push_back(json::array({s.index, s.sign}));
  return out;
}

inline json connection_to_json(const GeneralizedConnection& c) {
  const Group& G = c.group();
  json values = json::array();
  for (const auto& v : c.values()) values.push_back(element_to_json(G, v));
  json mods = json::array();
  for (const auto& m : c.modifications()) {
    json edges = json::array(), targets = json::array(), base = json::array();
    for (std::size_t i = 0; i < m.edges.size(); ++i) {
      edges.push_back(path_to_json(m.edges[i].path()));
      targets.push_back(element_to_json(G, m.targets[i]));
      base.push_back(element_to_json(G, m.base_values[i]));
    }
    mods.push_back({{"edges", edges}, {"targets", targets}, {"base_values", base}});
  }
  return {{"group", G.name()},
          {"policy", c.policy() == ExtensionPolicy::haar ? "haar" : "identity"},
          {"seed", c.seed()},
          {"support", hyph_to_json(c.support())},
          {"values", values},
          {"modifications", mods}};
}

inline GeneralizedConnection connection_from_json(const json& j) {
  try {
    const Group G = Group::parse(j.at("group").get<std::string>());
    const auto policy_name = j.value("policy", std::string("identity"));
    if (policy_name != "identity" && policy_name != "haar") throw input_error("unknown extension policy");
    const auto policy = policy_name == "haar" ? ExtensionPolicy::haar : ExtensionPolicy::identity;
    const auto seed = j.value("seed", std::uint64_t{42});
    Hyph support = j.contains("support") ? hyph_from_json(j.at("support")) : Hyph();
    std::vector<GroupElement> values;
    if (j.contains("values"))
      for (const auto& v : j.at("values")) values.push_back(element_from_json(G, v));
    GeneralizedConnection c(G, std::move(support), std::move(values), policy, seed);
    if (j.contains("modifications"))
      for (const auto& m : j.at("modifications")) {
        Modification mod;
        for (const auto& e : m.at("edges")) mod.edges.push_back(reduce(path_from_json(e)));
        for (const auto& t : m.at("targets")) mod.targets.push_back(element_from_json(G, t));
        for (const auto& b : m.at("base_values")) mod.base_values.push_back(element_from_json(G, b));
        c.restore_modification(std::move(mod));
      }
    return c;
  } catch (const json::exception& e) {
    throw input_error(std::string("malformed connection: ") + e.what());
  }
}

/// Recursive-descent parser for words: name, '*', postfix '^-1', parentheses.
class WordParser {
 public:
  WordParser(std::string text, const PathSet& paths) : text_(std::move(text)), paths_(paths) {}

  PathWord parse() {
    PathWord w = product();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return w;
  }

 private:
  PathWord product() {
    PathWord w = factor();
    for (;;) {
      skip();
      if (pos_ < text_.size() && text_[pos_] == '*') {
        ++pos_;
        const std::size_t at = pos_;
        PathWord rhs = factor();
        if (w.end() != rhs.start())
          fail("factors do not compose at position " + std::to_string(at) + ": " + to_string(w.end()) + " vs " +
               to_string(rhs.start()));
        w = w * rhs;
      } else {
        return w;
      }
    }
  }

  PathWord factor() {
    skip();
    PathWord w = atom();
    for (;;) {
      skip();
      if (text_.compare(pos_, 3, "^-1") == 0) {
        pos_ += 3;
        w = w.inverse();
      } else {
        return w;
      }
    }
  }

  PathWord atom() {
    if (pos_ >= text_.size()) fail("unexpected end of word");
    if (text_[pos_] == '(') {
      ++pos_;
      PathWord w = product();
      skip();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return w;
    }
    const std::size_t begin = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (begin == pos_) fail("expected a path name");
    return PathWord(paths_.get(text_.substr(begin, pos_ - begin)));
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw input_error("word parse error at position " + std::to_string(pos_) + ": " + msg);
  }

  std::string text_;
  const PathSet& paths_;
  std::size_t pos_ = 0;
};

inline PathWord parse_word(const std::string& text, const PathSet& paths) { return WordParser(text, paths).parse(); }

}  // namespace holonomy::io
