// Command-line front end: solve, oracle, check, render and sweep.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "bsn/driver.hpp"
#include "bsn/io.hpp"
#include "bsn/oracle.hpp"

namespace {

constexpr int kMalformed = 1;
constexpr int kOracleBounds = 2;
constexpr int kCheckFailed = 3;

struct Options {
  std::string input;
  std::string output;
  std::string svg;
  double tolerance = 1e-9;
  bool sweep = false;
  long seed = -1;
  int oracle_max_k = bsn::OracleConfig{}.max_k;
};

std::string read_input(const std::string& path) {
  std::stringstream ss;
  if (path.empty() || path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw bsn::ParseError("cannot read " + path);
    ss << in.rdbuf();
  }
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

// Re-solves with the terminals shuffled and reports a mismatch in the optimum.
bool tie_audit(const bsn::Instance& inst, double value, long seed, double tolerance) {
  std::mt19937_64 rng(static_cast<unsigned long>(seed));
  bsn::Instance shuffled = inst;
  std::shuffle(shuffled.terminals.begin(), shuffled.terminals.end(), rng);
  const double other = bsn::solve(shuffled).bottleneck;
  if (std::abs(other - value) <= tolerance * std::max(1.0, value)) return true;
  std::fprintf(stderr, "tie audit failed: %.12g with seed %ld, %.12g originally\n", other, seed, value);
  return false;
}

int run_solve(const Options& o) {
  const auto inst = bsn::parse_instance(read_input(o.input));
  bsn::SolveOptions so;
  so.sweep = o.sweep;
  const auto sol = bsn::solve(inst, so);
  write_output(o.output, bsn::format_solution(inst, sol));
  if (!o.svg.empty()) write_output(o.svg, bsn::render_svg({inst, sol}));
  if (o.seed >= 0 && !tie_audit(inst, sol.bottleneck, o.seed, o.tolerance)) return kCheckFailed;
  return 0;
}

int run_oracle(const Options& o) {
  const auto inst = bsn::parse_instance(read_input(o.input));
  bsn::OracleConfig cfg;
  cfg.max_k = o.oracle_max_k;
  const auto sol = bsn::naive_solve(inst, cfg);
  write_output(o.output, bsn::format_solution(inst, sol));
  if (!o.svg.empty()) write_output(o.svg, bsn::render_svg({inst, sol}));
  return 0;
}

int run_check(const Options& o) {
  const std::string text = read_input(o.input);
  const auto doc = bsn::parse_solution(text);
  const auto report = bsn::check_solution(doc, o.tolerance, bsn::recorded_edge_lengths(text));
  std::ostringstream out;
  if (report.ok) {
    out << "ok: 2-connected, " << doc.solution.network.steiner_count() << " Steiner point(s), bottleneck "
        << doc.solution.bottleneck << "\n";
  } else {
    for (const auto& p : report.problems) out << "error: " << p << "\n";
  }
  write_output(o.output, out.str());
  return report.ok ? 0 : kCheckFailed;
}

int run_render(const Options& o) {
  const auto doc = bsn::parse_solution(read_input(o.input));
  write_output(o.svg.empty() ? o.output : o.svg, bsn::render_svg(doc));
  return 0;
}

int run_sweep(const Options& o) {
  const auto inst = bsn::parse_instance(read_input(o.input));
  std::ostringstream out;
  out << "index\tlevel\tgated\tbest\n";
  out.precision(12);
  const auto levels = bsn::solver_levels(inst);
  for (size_t i = 0; i < levels.size(); ++i) {
    const auto r = bsn::evaluate_level(inst, levels[i]);
    out << i << '\t' << r.level << '\t' << (r.gated ? "yes" : "no") << '\t';
    if (r.best) out << r.best->bottleneck;
    else out << "none";
    out << '\n';
  }
  write_output(o.output, out.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bottleneck 2-connected k-Steiner networks in L_p planes"};
  app.require_subcommand(1);
  Options o;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--input,-i", o.input, "input file (default: stdin)");
    sub->add_option("--output,-o", o.output, "output file (default: stdout)");
    sub->add_option("--svg", o.svg, "also write an SVG drawing");
    sub->add_option("--tolerance", o.tolerance, "relative tolerance for checks")->check(CLI::PositiveNumber);
    sub->add_flag("--sweep", o.sweep, "evaluate every level instead of binary searching");
    sub->add_option("--seed", o.seed, "re-solve with shuffled terminals and compare");
  };
  auto* solve = app.add_subcommand("solve", "instance -> solution");
  auto* oracle = app.add_subcommand("oracle", "instance -> brute-force solution (small instances)");
  auto* check = app.add_subcommand("check", "solution -> validity report");
  auto* render = app.add_subcommand("render", "solution -> SVG");
  auto* sweep = app.add_subcommand("sweep", "instance -> per-level table");
  for (auto* sub : {solve, oracle, check, render, sweep}) add_common(sub);
  oracle->add_option("--max-k", o.oracle_max_k, "largest Steiner budget accepted")->check(CLI::Range(0, 3));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kMalformed;
  }

  try {
    if (solve->parsed()) return run_solve(o);
    if (oracle->parsed()) return run_oracle(o);
    if (check->parsed()) return run_check(o);
    if (render->parsed()) return run_render(o);
    return run_sweep(o);
  } catch (const bsn::ParseError& e) {
    std::fprintf(stderr, "malformed input: %s\n", e.what());
    return kMalformed;
  } catch (const bsn::OracleBoundsError& e) {
    std::fprintf(stderr, "oracle bounds exceeded: %s\n", e.what());
    return kOracleBounds;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kMalformed;
  }
}
