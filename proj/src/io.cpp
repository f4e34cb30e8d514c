#include "bsn/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

namespace bsn {
namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

void only_keys(const json& j, std::initializer_list<const char*> keys) {
  if (!j.is_object()) throw ParseError("expected a JSON object");
  for (const auto& [key, _] : j.items())
    if (std::find_if(keys.begin(), keys.end(), [&](const char* k) { return key == k; }) == keys.end())
      throw ParseError("unknown field \"" + key + "\"");
}

const json& field(const json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

Metric parse_metric(const json& p) {
  if (p.is_string()) {
    if (p.get<std::string>() != "inf") throw ParseError("p must be a number or \"inf\"");
    return Metric::linf();
  }
  if (!p.is_number()) throw ParseError("p must be a number or \"inf\"");
  const double v = p.get<double>();
  if (!(v >= 1.0)) throw ParseError("p must be at least 1");
  return std::isinf(v) ? Metric::linf() : Metric::lp(v);
}

json metric_json(const Metric& m) { return m.is_linf() ? json("inf") : json(m.p()); }

Point parse_point(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError("points must be [x, y] pairs of numbers");
  return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<Point> parse_points(const json& j) {
  if (!j.is_array()) throw ParseError("expected a list of points");
  std::vector<Point> out;
  for (const auto& p : j) out.push_back(parse_point(p));
  return out;
}

int parse_k(const json& j) {
  if (!j.is_number_integer() || j.get<long>() < 0) throw ParseError("k must be a non-negative integer");
  return j.get<int>();
}

json point_json(Point p) { return json::array({p.x, p.y}); }

void validated(const Instance& inst) {
  try {
    inst.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

}  // namespace

Instance parse_instance(const std::string& text) {
  const json j = parse_json(text);
  only_keys(j, {"p", "k", "terminals"});
  Instance inst;
  inst.metric = parse_metric(field(j, "p"));
  inst.k = parse_k(field(j, "k"));
  inst.terminals = parse_points(field(j, "terminals"));
  validated(inst);
  return inst;
}

std::string format_instance(const Instance& inst) {
  json j;
  j["p"] = metric_json(inst.metric);
  j["k"] = inst.k;
  j["terminals"] = json::array();
  for (const auto& p : inst.terminals) j["terminals"].push_back(point_json(p));
  return j.dump(2) + "\n";
}

std::string format_solution(const Instance& inst, const Solution& sol) {
  const Network& g = sol.network;
  json j;
  j["p"] = metric_json(inst.metric);
  j["k"] = inst.k;
  j["terminals"] = json::array();
  for (const auto& p : inst.terminals) j["terminals"].push_back(point_json(p));
  j["bottleneck"] = sol.bottleneck;
  j["threshold_used"] = sol.threshold_used;
  j["steiner_points"] = json::array();
  for (int v = g.terminal_count(); v < g.vertex_count(); ++v) j["steiner_points"].push_back(point_json(*g.position(v)));
  j["edges"] = json::array();
  for (const auto& e : g.edges()) j["edges"].push_back({{"u", e.u}, {"v", e.v}, {"length", *g.length(e, inst.metric)}});
  j["stats"] = {{"candidate_types", sol.stats.candidate_types},
                {"levels_explored", sol.stats.levels_explored},
                {"linked_evaluations", sol.stats.linked_evaluations},
                {"wall_seconds", sol.stats.wall_seconds}};
  return j.dump(2) + "\n";
}

SolutionDocument parse_solution(const std::string& text) {
  const json j = parse_json(text);
  only_keys(j, {"p", "k", "terminals", "bottleneck", "threshold_used", "steiner_points", "edges", "stats"});
  SolutionDocument doc;
  doc.instance.metric = parse_metric(field(j, "p"));
  doc.instance.k = parse_k(field(j, "k"));
  doc.instance.terminals = parse_points(field(j, "terminals"));
  validated(doc.instance);
  const auto steiner = parse_points(field(j, "steiner_points"));
  const int n = static_cast<int>(doc.instance.terminals.size());
  Network g(n, static_cast<int>(steiner.size()));
  for (int i = 0; i < n; ++i) g.set_position(i, doc.instance.terminals[static_cast<size_t>(i)]);
  for (size_t i = 0; i < steiner.size(); ++i) g.set_position(n + static_cast<int>(i), steiner[i]);
  const json& edges = field(j, "edges");
  if (!edges.is_array()) throw ParseError("edges must be a list");
  for (const auto& e : edges) {
    only_keys(e, {"u", "v", "length"});
    const json& u = field(e, "u");
    const json& v = field(e, "v");
    if (!u.is_number_integer() || !v.is_number_integer()) throw ParseError("edge endpoints must be integers");
    const int a = u.get<int>(), b = v.get<int>();
    if (a < 0 || b < 0 || a >= g.vertex_count() || b >= g.vertex_count() || a == b)
      throw ParseError("edge endpoint out of range");
    if (!g.add_edge(a, b)) throw ParseError("duplicate edge");
  }
  auto& sol = doc.solution;
  const json& bn = field(j, "bottleneck");
  const json& th = field(j, "threshold_used");
  if (!bn.is_number() || !th.is_number()) throw ParseError("bottleneck and threshold_used must be numbers");
  sol.bottleneck = bn.get<double>();
  sol.threshold_used = th.get<double>();
  sol.steiner_count = static_cast<int>(steiner.size());
  if (j.contains("stats")) {
    const json& s = j.at("stats");
    only_keys(s, {"candidate_types", "levels_explored", "linked_evaluations", "wall_seconds"});
    sol.stats.candidate_types = s.value("candidate_types", 0L);
    sol.stats.levels_explored = s.value("levels_explored", 0);
    sol.stats.linked_evaluations = s.value("linked_evaluations", 0L);
    sol.stats.wall_seconds = s.value("wall_seconds", 0.0);
  }
  sol.network = std::move(g);
  return doc;
}

std::vector<double> recorded_edge_lengths(const std::string& text) {
  const json j = parse_json(text);
  std::vector<double> out;
  if (!j.contains("edges") || !j["edges"].is_array()) return out;
  for (const auto& e : j["edges"]) {
    if (!e.contains("length") || !e["length"].is_number()) throw ParseError("edge without a numeric length");
    out.push_back(e["length"].get<double>());
  }
  return out;
}

CheckReport check_solution(const SolutionDocument& doc, double tolerance, const std::vector<double>& recorded_lengths) {
  CheckReport r;
  auto fail = [&](std::string msg) {
    r.ok = false;
    r.problems.push_back(std::move(msg));
  };
  const Network& g = doc.solution.network;
  const Metric& m = doc.instance.metric;
  if (!is_2_connected(g)) fail("network is not 2-connected");
  if (g.steiner_count() > doc.instance.k)
    fail("uses " + std::to_string(g.steiner_count()) + " Steiner points, budget is " + std::to_string(doc.instance.k));
  for (int v = g.terminal_count(); v < g.vertex_count(); ++v)
    if (g.degree(v) > m.max_steiner_degree())
      fail("Steiner point " + std::to_string(v) + " has degree " + std::to_string(g.degree(v)));
  const double scale = std::max(1.0, std::abs(doc.solution.bottleneck));
  if (!recorded_lengths.empty()) {
    // Edge lengths are stored in the file's edge order, which format_solution
    // writes sorted; parse_solution keeps the network sorted as well.
    if (recorded_lengths.size() != g.edges().size()) fail("edge list and lengths disagree");
    else
      for (size_t i = 0; i < g.edges().size(); ++i) {
        const double len = *g.length(g.edges()[i], m);
        if (std::abs(len - recorded_lengths[i]) > tolerance * std::max(1.0, len))
          fail("edge " + std::to_string(g.edges()[i].u) + "-" + std::to_string(g.edges()[i].v) +
               " length does not match its coordinates");
      }
  }
  if (g.edges().empty()) {
    fail("network has no edges");
  } else {
    const double b = g.bottleneck(m);
    if (std::abs(b - doc.solution.bottleneck) > tolerance * scale) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "bottleneck %.12g does not match recomputed %.12g", doc.solution.bottleneck, b);
      fail(buf);
    }
  }
  return r;
}

std::string render_svg(const SolutionDocument& doc) {
  const Network& g = doc.solution.network;
  const Metric& m = doc.instance.metric;
  double xlo = std::numeric_limits<double>::infinity(), ylo = xlo, xhi = -xlo, yhi = -xlo;
  for (int v = 0; v < g.vertex_count(); ++v) {
    const Point p = *g.position(v);
    xlo = std::min(xlo, p.x);
    xhi = std::max(xhi, p.x);
    ylo = std::min(ylo, p.y);
    yhi = std::max(yhi, p.y);
  }
  const double span = std::max({xhi - xlo, yhi - ylo, 1e-9});
  const double size = 480.0, pad = 40.0, s = size / span;
  auto sx = [&](double x) { return pad + (x - xlo) * s; };
  auto sy = [&](double y) { return pad + (yhi - y) * s; };  // y grows upward
  const double w = (xhi - xlo) * s + 2 * pad, h = (yhi - ylo) * s + 2 * pad;

  std::ostringstream out;
  out.precision(6);
  out << std::fixed;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << w << "\" height=\"" << h
      << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";
  const double b = g.edges().empty() ? 0.0 : g.bottleneck(m);
  bool labelled = false;
  for (const auto& e : g.edges()) {
    const Point p = *g.position(e.u), q = *g.position(e.v);
    out << "  <line class=\"edge\" x1=\"" << sx(p.x) << "\" y1=\"" << sy(p.y) << "\" x2=\"" << sx(q.x) << "\" y2=\""
        << sy(q.y) << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    if (!labelled && *g.length(e, m) >= b * (1 - 1e-12)) {
      labelled = true;
      out << "  <text class=\"bottleneck\" x=\"" << (sx(p.x) + sx(q.x)) / 2 + 4 << "\" y=\"" << (sy(p.y) + sy(q.y)) / 2 - 4
          << "\" font-family=\"sans-serif\" font-size=\"14\">b</text>\n";
    }
  }
  for (int v = 0; v < g.terminal_count(); ++v) {
    const Point p = *g.position(v);
    out << "  <circle class=\"terminal\" cx=\"" << sx(p.x) << "\" cy=\"" << sy(p.y)
        << "\" r=\"5\" fill=\"black\" stroke=\"black\"/>\n";
  }
  std::set<std::pair<long long, long long>> drawn;  // coincident Steiner points share one marker
  for (int v = g.terminal_count(); v < g.vertex_count(); ++v) {
    const Point p = *g.position(v);
    const auto key = std::make_pair(std::llround(sx(p.x) * 100), std::llround(sy(p.y) * 100));
    if (!drawn.insert(key).second) continue;
    out << "  <circle class=\"steiner\" cx=\"" << sx(p.x) << "\" cy=\"" << sy(p.y)
        << "\" r=\"5\" fill=\"white\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace bsn
