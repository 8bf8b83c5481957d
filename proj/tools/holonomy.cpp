// Command-line front end: path reduction, germ relations, hyph construction,
// connections, integration and gauge observables on JSON path files.
//
// Exit codes: 0 success, 2 input error, 3 property violation, 1 internal error.

#include "holonomy/expr.hpp"
#include "holonomy/holonomy.hpp"
#include "holonomy/io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <complex>
#include <cstdint>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace holonomy;
using nlohmann::json;

namespace {

constexpr int exit_input = 2;
constexpr int exit_property = 3;

struct Options {
  std::string group = "Z2";
  std::uint64_t samples = 100000;
  std::uint64_t seed = 42;
  bool json = false;
  bool check_refinement = false;
};

std::string complex_text(std::complex<double> z) {
  std::ostringstream out;
  out.precision(12);
  out << z.real();
  if (z.imag() != 0) out << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return out.str();
}

json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

Hyph hyph_from_path_set(const io::PathSet& s) { return Hyph::from_edges(s.reduced()); }

std::vector<std::string> names_of(const io::PathSet& s) {
  std::vector<std::string> out;
  for (const auto& p : s.paths) out.push_back(p.name);
  return out;
}

// The named paths as a hyph (as given when they already form one), with a
// factorization of each name.
struct VariableHyph {
  Hyph hyph;
  std::vector<Factorization> words;
};

VariableHyph variable_hyph(const io::PathSet& s) {
  const auto paths = s.reduced();
  bool simple = true;
  for (const auto& p : paths) simple = simple && !p.is_trivial();
  if (simple) {
    try {
      if (auto w = is_hyph(paths)) {
        VariableHyph v{Hyph::from_parts(paths, *w), {}};
        for (std::size_t i = 0; i < paths.size(); ++i) v.words.push_back(Factorization{{{i, 1}}});
        return v;
      }
    } catch (const self_intersection_error&) {
    }
  }
  auto built = build_hyph(paths);
  return {std::move(built.hyph), std::move(built.factorizations)};
}

CylindricalFunction<std::complex<double>> body_from_expression(const io::PathSet& s, const std::string& text,
                                                               const Group& G,
                                                               const std::optional<std::string>& table_file) {
  VariableHyph v = variable_hyph(s);
  auto words = std::make_shared<const std::vector<Factorization>>(std::move(v.words));
  if (table_file) {
    const json t = io::read_json_file(*table_file);
    if (!G.is_finite()) throw input_error("table bodies need a finite group");
    const json& values = t.is_object() ? t.at("values") : t;
    std::uint64_t expected = 1;
    for (std::size_t i = 0; i < words->size(); ++i) expected *= G.order();
    if (values.size() != expected)
      throw input_error("table needs " + std::to_string(expected) + " entries, has " + std::to_string(values.size()));
    auto table = std::make_shared<std::vector<std::complex<double>>>();
    for (const auto& x : values) {
      if (x.is_array() && x.size() == 2)
        table->emplace_back(x[0].get<double>(), x[1].get<double>());
      else
        table->emplace_back(x.get<double>(), 0.0);
    }
    const std::uint64_t order = G.order();
    return {v.hyph, G, [G, words, table, order](std::span<const GroupElement> g) {
              std::uint64_t code = 0, scale = 1;
              for (const auto& f : *words) {
                const GroupElement x =
                    word_product(G, f.word, [&](std::size_t i) -> const GroupElement& { return g[i]; });
                code += x.index * scale;
                scale *= order;
              }
              return (*table)[code];
            }};
  }
  auto e = std::make_shared<const expr::Expression>(expr::parse(text, names_of(s)));
  return {v.hyph, G, [G, words, e](std::span<const GroupElement> g) {
            std::vector<GroupElement> vars;
            vars.reserve(words->size());
            for (const auto& f : *words)
              vars.push_back(word_product(G, f.word, [&](std::size_t i) -> const GroupElement& { return g[i]; }));
            return e->evaluate(G, vars);
          }};
}

// Splits every edge at its parameter midpoint and builds a hyph from the halves.
Hyph midpoint_refinement(const Hyph& h) {
  std::vector<ReducedPath> halves;
  for (const auto& e : h.edges()) {
    const Rational n(e.segment_count());
    halves.push_back(reduced_subpath(e, Rational(0), n / 2));
    halves.push_back(reduced_subpath(e, n / 2, n));
  }
  return build_hyph(halves).hyph;
}

json result_json(const IntegrationResult<std::complex<double>>& r) {
  return {{"value", complex_json(r.value)},
          {"standard_error", r.standard_error},
          {"samples", r.sample_count},
          {"mode", r.mode == IntegrationMode::exact ? "exact" : "monte_carlo"}};
}

std::string result_text(const IntegrationResult<std::complex<double>>& r) {
  std::string out = complex_text(r.value);
  if (r.mode == IntegrationMode::exact) return out + " (exact, " + std::to_string(r.sample_count) + " tuples)";
  return out + " ± " + std::to_string(r.standard_error) + " (monte_carlo, " + std::to_string(r.sample_count) +
         " samples)";
}

json hyph_report(const Hyph& h) {
  json edges = json::array();
  for (std::size_t i = 0; i < h.size(); ++i)
    edges.push_back({{"index", i},
                     {"breakpoints", io::path_to_json(h.edge(i).path())},
                     {"text", to_string(h.edge(i))},
                     {"witness", io::free_point_to_json(h.witnesses()[i])}});
  return edges;
}

void print_hyph_text(const Hyph& h) {
  for (std::size_t i = 0; i < h.size(); ++i)
    std::cout << "e" << i << ": " << to_string(h.edge(i)) << "  witness " << to_string(h.witnesses()[i].location)
              << " " << to_string(h.witnesses()[i].side) << "\n";
}

std::vector<GroupElement> config_from_text(const Group& G, const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw input_error(std::string("configuration is not valid JSON: ") + e.what());
  }
  if (!j.is_array()) throw input_error("configuration must be a JSON array");
  std::vector<GroupElement> out;
  for (const auto& x : j) out.push_back(io::element_from_json(G, x));
  return out;
}

json config_json(const Group& G, const std::vector<GroupElement>& c) {
  json out = json::array();
  for (const auto& x : c) out.push_back(io::element_to_json(G, x));
  return out;
}

GaugeTransform transform_from_file(const Group& G, const std::string& file) {
  const json j = io::read_json_file(file);
  GaugeTransform t(G);
  const json& entries = j.is_object() ? j.at("assignment") : j;
  for (const auto& e : entries) t.set(io::point_from_json(e.at("point")), io::element_from_json(G, e.at("value")));
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact path-groupoid, hyph and holonomy toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--group", opt.group, "Structure group: Z<n>, Q8, U1, SU2")->capture_default_str();
  app.add_option("--samples", opt.samples, "Monte-Carlo samples for Lie groups")->capture_default_str();
  app.add_option("--seed", opt.seed, "Random seed")->capture_default_str();
  app.add_flag("--json", opt.json, "Machine-readable output");

  std::string file, file2, word, name, other_name, expression, out_file, config_text, transform_file, conn_file;
  std::vector<std::string> names, values;
  std::optional<std::string> table_file, paths_file;
  std::string policy = "identity";
  bool save = false;

  auto* reduce_cmd = app.add_subcommand("reduce", "Print the reduced form of a word over named paths");
  reduce_cmd->add_option("file", file, "Path set JSON")->required();
  reduce_cmd->add_option("word", word, "Word, e.g. \"a * b^-1\"")->required();

  auto* relations_cmd = app.add_subcommand("relations", "Initial/final segment relations between two paths");
  relations_cmd->add_option("file", file)->required();
  relations_cmd->add_option("first", name)->required();
  relations_cmd->add_option("second", other_name)->required();

  auto* independent_cmd = app.add_subcommand("independent", "Free point of a path relative to others");
  independent_cmd->add_option("file", file)->required();
  independent_cmd->add_option("path", name)->required();
  independent_cmd->add_option("others", names, "Comparison paths (default: all others)");

  auto* hyph_cmd = app.add_subcommand("hyph", "Build a hyph generating all paths in the file");
  hyph_cmd->add_option("file", file)->required();

  auto* refine_cmd = app.add_subcommand("refine", "Common refinement of two hyph files");
  refine_cmd->add_option("first", file)->required();
  refine_cmd->add_option("second", file2)->required();

  auto* factorize_cmd = app.add_subcommand("factorize", "Factor a word through a hyph file");
  factorize_cmd->add_option("hyph", file, "Path set whose paths form a hyph")->required();
  factorize_cmd->add_option("word", word)->required();
  factorize_cmd->add_option("--paths", paths_file, "Path set the word refers to (default: the hyph file)");

  auto* conn_cmd = app.add_subcommand("connection", "Generalized connections");
  conn_cmd->require_subcommand(1);
  auto* conn_new = conn_cmd->add_subcommand("new", "Write an empty connection");
  conn_new->add_option("--policy", policy, "Extension policy: identity or haar")->capture_default_str();
  conn_new->add_option("-o,--output", out_file)->required();
  auto* conn_eval = conn_cmd->add_subcommand("eval", "Evaluate a word");
  conn_eval->add_option("connection", conn_file)->required();
  conn_eval->add_option("file", file)->required();
  conn_eval->add_option("word", word)->required();
  conn_eval->add_flag("--save", save, "Store the extended support back into the connection file");
  auto* conn_modify = conn_cmd->add_subcommand("modify", "Modify along one path");
  conn_modify->add_option("connection", conn_file)->required();
  conn_modify->add_option("file", file)->required();
  conn_modify->add_option("path", name)->required();
  conn_modify->add_option("value", config_text)->required();
  conn_modify->add_option("-o,--output", out_file)->required();
  auto* conn_prescribe = conn_cmd->add_subcommand("prescribe", "Prescribe values on all paths of a file");
  conn_prescribe->add_option("connection", conn_file)->required();
  conn_prescribe->add_option("file", file)->required();
  conn_prescribe->add_option("values", values, "One value per path")->required();
  conn_prescribe->add_option("-o,--output", out_file)->required();
  auto* conn_project = conn_cmd->add_subcommand("project", "Transports along the edges of a hyph file");
  conn_project->add_option("connection", conn_file)->required();
  conn_project->add_option("hyph", file)->required();

  auto* integrate_cmd = app.add_subcommand("integrate", "Haar integral of a cylindrical function");
  integrate_cmd->add_option("file", file)->required();
  integrate_cmd->add_option("body", expression, "Body expression over path names or x1, x2, ...");
  integrate_cmd->add_option("--table", table_file, "JSON table of body values (finite groups)");
  integrate_cmd->add_flag("--check-refinement", opt.check_refinement, "Compare with a refined hyph");

  auto* gauge_cmd = app.add_subcommand("gauge", "Gauge transformations and Wilson loops");
  gauge_cmd->require_subcommand(1);
  auto* gauge_act = gauge_cmd->add_subcommand("act", "Apply a gauge transform to a configuration");
  gauge_act->add_option("hyph", file)->required();
  gauge_act->add_option("--config", config_text, "JSON array of edge values")->required();
  gauge_act->add_option("--transform", transform_file, "JSON transform file")->required();
  auto* gauge_wilson = gauge_cmd->add_subcommand("wilson", "Wilson loop of a closed word over hyph edges");
  gauge_wilson->add_option("hyph", file)->required();
  gauge_wilson->add_option("word", word)->required();
  gauge_wilson->add_option("--config", config_text, "JSON array of edge values")->required();
  auto* gauge_quotient = gauge_cmd->add_subcommand("integrate-quotient", "Integral of a gauge-invariant function");
  gauge_quotient->add_option("file", file)->required();
  gauge_quotient->add_option("body", expression)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_input;
  }

  const MonteCarloParams mc{opt.samples, opt.seed, 4};

  try {
    if (*reduce_cmd) {
      const auto paths = io::read_path_set(file);
      const ReducedPath r = reduce(io::parse_word(word, paths));
      if (opt.json)
        std::cout << json{{"text", to_string(r)}, {"breakpoints", io::path_to_json(r.path())}}.dump(2) << "\n";
      else
        std::cout << to_string(r) << "\n";
    } else if (*relations_cmd) {
      const auto paths = io::read_path_set(file);
      const ReducedPath a = reduce(paths.get(name)), b = reduce(paths.get(other_name));
      const json rel{{"BB", related(SegmentRelation::BB, a, b)},
                     {"BE", related(SegmentRelation::BE, a, b)},
                     {"EB", related(SegmentRelation::EB, a, b)},
                     {"EE", related(SegmentRelation::EE, a, b)}};
      if (opt.json) {
        std::cout << rel.dump(2) << "\n";
      } else {
        for (const auto& [k, v] : rel.items()) std::cout << k << " " << (v.get<bool>() ? "true" : "false") << "\n";
      }
    } else if (*independent_cmd) {
      const auto paths = io::read_path_set(file);
      const ReducedPath g = reduce(paths.get(name));
      std::vector<ReducedPath> others;
      if (names.empty()) {
        for (const auto& p : paths.paths)
          if (p.name != name) others.push_back(reduce(p.path));
      } else {
        for (const auto& n : names) others.push_back(reduce(paths.get(n)));
      }
      const auto w = is_independent(g, others);
      if (opt.json) {
        json out{{"independent", w.has_value()}};
        if (w) {
          out["witness"] = io::free_point_to_json(*w);
          out["point"] = io::point_to_json(point_at(g.path(), w->location));
        }
        std::cout << out.dump(2) << "\n";
      } else if (w) {
        std::cout << "independent: free point " << to_string(point_at(g.path(), w->location)) << " at "
                  << to_string(w->location) << " " << to_string(w->side) << "\n";
      } else {
        std::cout << "dependent\n";
      }
    } else if (*hyph_cmd) {
      const auto paths = io::read_path_set(file);
      const auto reduced = paths.reduced();
      const HyphBuild b = build_hyph(reduced);
      bool roundtrip = true;
      json facts = json::object();
      for (std::size_t i = 0; i < reduced.size(); ++i) {
        if (!(realize(b.hyph, b.factorizations[i], reduced[i].start()) == reduced[i])) roundtrip = false;
        facts[paths.paths[i].name] = io::factorization_to_json(b.factorizations[i]);
      }
      if (opt.json) {
        std::cout << json{{"edges", hyph_report(b.hyph)}, {"factorizations", facts}, {"roundtrip", roundtrip}}.dump(2)
                  << "\n";
      } else {
        print_hyph_text(b.hyph);
        for (std::size_t i = 0; i < reduced.size(); ++i)
          std::cout << paths.paths[i].name << " = " << to_string(b.factorizations[i]) << "\n";
        std::cout << "roundtrip " << (roundtrip ? "ok" : "FAILED") << "\n";
      }
      if (!roundtrip) return exit_property;
    } else if (*refine_cmd) {
      const Hyph h1 = hyph_from_path_set(io::read_path_set(file));
      const Hyph h2 = hyph_from_path_set(io::read_path_set(file2));
      const HyphBuild r = refine(h1, h2);
      const bool ok = leq(h1, r.hyph).has_value() && leq(h2, r.hyph).has_value();
      json facts = json::array();
      for (const auto& f : r.factorizations) facts.push_back(io::factorization_to_json(f));
      if (opt.json) {
        std::cout << json{{"edges", hyph_report(r.hyph)}, {"factorizations", facts}, {"dominates", ok}}.dump(2)
                  << "\n";
      } else {
        print_hyph_text(r.hyph);
        for (std::size_t i = 0; i < r.factorizations.size(); ++i)
          std::cout << (i < h1.size() ? "first." + std::to_string(i) : "second." + std::to_string(i - h1.size()))
                    << " = " << to_string(r.factorizations[i]) << "\n";
        std::cout << "dominates both " << (ok ? "yes" : "NO") << "\n";
      }
      if (!ok) return exit_property;
    } else if (*factorize_cmd) {
      const auto hpaths = io::read_path_set(file);
      const Hyph h = hyph_from_path_set(hpaths);
      const auto wpaths = paths_file ? io::read_path_set(*paths_file) : hpaths;
      const auto f = factorize(io::parse_word(word, wpaths), h);
      if (opt.json) {
        json out{{"factorizable", f.has_value()}};
        if (f) out["word"] = io::factorization_to_json(*f);
        std::cout << out.dump(2) << "\n";
      } else if (f) {
        std::string text;
        for (const auto& s : f->word) {
          if (!text.empty()) text += " * ";
          text += hpaths.paths[s.index].name + (s.sign < 0 ? "^-1" : "");
        }
        std::cout << (text.empty() ? "trivial" : text) << "\n";
      } else {
        std::cout << "not factorizable\n";
      }
    } else if (*conn_cmd) {
      if (*conn_new) {
        if (policy != "identity" && policy != "haar") throw input_error("policy must be identity or haar");
        GeneralizedConnection c(Group::parse(opt.group),
                                policy == "haar" ? ExtensionPolicy::haar : ExtensionPolicy::identity, opt.seed);
        io::write_json_file(out_file, io::connection_to_json(c));
      } else if (*conn_eval) {
        auto c = io::connection_from_json(io::read_json_file(conn_file));
        const auto paths = io::read_path_set(file);
        const GroupElement v = c.evaluate(io::parse_word(word, paths));
        if (opt.json)
          std::cout << json{{"value", io::element_to_json(c.group(), v)}}.dump(2) << "\n";
        else
          std::cout << c.group().format(v) << "\n";
        if (save) io::write_json_file(conn_file, io::connection_to_json(c));
      } else if (*conn_modify) {
        auto c = io::connection_from_json(io::read_json_file(conn_file));
        const auto paths = io::read_path_set(file);
        const GroupElement g = io::element_from_text(c.group(), config_text);
        c = modify(std::move(c), reduce(paths.get(name)), g);
        io::write_json_file(out_file, io::connection_to_json(c));
      } else if (*conn_prescribe) {
        auto c = io::connection_from_json(io::read_json_file(conn_file));
        const auto paths = io::read_path_set(file);
        if (values.size() != paths.paths.size()) throw input_error("one value per path is required");
        std::vector<GroupElement> gs;
        for (const auto& v : values) gs.push_back(io::element_from_text(c.group(), v));
        c = prescribe(std::move(c), paths.reduced(), gs);
        io::write_json_file(out_file, io::connection_to_json(c));
      } else if (*conn_project) {
        auto c = io::connection_from_json(io::read_json_file(conn_file));
        const Hyph h = hyph_from_path_set(io::read_path_set(file));
        const auto v = project(c, h);
        if (opt.json) {
          std::cout << config_json(c.group(), v).dump(2) << "\n";
        } else {
          for (std::size_t i = 0; i < v.size(); ++i) std::cout << (i ? " " : "") << c.group().format(v[i]);
          std::cout << "\n";
        }
      }
    } else if (*integrate_cmd) {
      if (expression.empty() && !table_file) throw input_error("give a body expression or --table");
      const Group G = Group::parse(opt.group);
      const auto paths = io::read_path_set(file);
      const auto f = body_from_expression(paths, expression, G, table_file);
      if (!opt.check_refinement) {
        const auto r = integrate(f, mc);
        std::cout << (opt.json ? result_json(r).dump(2) : result_text(r)) << "\n";
      } else {
        const auto report = consistency_check(f, midpoint_refinement(f.hyph), mc);
        if (opt.json) {
          std::cout << json{{"coarse", result_json(report.coarse)},
                            {"fine", result_json(report.fine)},
                            {"consistent", report.consistent}}
                           .dump(2)
                    << "\n";
        } else {
          std::cout << "coarse " << result_text(report.coarse) << "\n"
                    << "fine   " << result_text(report.fine) << "\n"
                    << "consistency " << (report.consistent ? "pass" : "FAIL") << "\n";
        }
        if (!report.consistent) return exit_property;
      }
    } else if (*gauge_cmd) {
      const Group G = Group::parse(opt.group);
      if (*gauge_act) {
        const Hyph h = hyph_from_path_set(io::read_path_set(file));
        const auto config = config_from_text(G, config_text);
        const auto moved = act(transform_from_file(G, transform_file), h, config);
        if (opt.json) {
          std::cout << config_json(G, moved).dump(2) << "\n";
        } else {
          for (std::size_t i = 0; i < moved.size(); ++i) std::cout << (i ? " " : "") << G.format(moved[i]);
          std::cout << "\n";
        }
      } else if (*gauge_wilson) {
        const auto paths = io::read_path_set(file);
        const Hyph h = hyph_from_path_set(paths);
        const PathWord w = io::parse_word(word, paths);
        if (w.start() != w.end()) throw input_error("loop word is not closed");
        const auto f = factorize(w, h);
        if (!f) throw input_error("loop does not factor through the hyph");
        const double v = wilson_loop(G, h, *f, config_from_text(G, config_text));
        if (opt.json)
          std::cout << json{{"value", v}}.dump(2) << "\n";
        else
          std::cout << v << "\n";
      } else if (*gauge_quotient) {
        const auto paths = io::read_path_set(file);
        const auto f = body_from_expression(paths, expression, G, std::nullopt);
        const auto q = integrate_quotient(f, mc);
        if (opt.json) {
          json out = result_json(q.result);
          out["invariance_probes"] = q.probes;
          out["invariant"] = q.invariant;
          std::cout << out.dump(2) << "\n";
        } else {
          std::cout << result_text(q.result) << "\ninvariance probes " << q.probes << " passed\n";
        }
      }
    }
  } catch (const input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return exit_input;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return exit_input;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return exit_input;
  } catch (const property_violation& e) {
    std::cerr << "property violation: " << e.what() << "\n";
    return exit_property;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
