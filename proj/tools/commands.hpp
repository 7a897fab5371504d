#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cbtopo/cbtopo.hpp"

namespace cbtopo::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kIo = 3, kClaimFailed = 4, kResourceBound = 5 };

inline int exit_code_for(errc code) {
  switch (code) {
    case errc::bad_resilience:
    case errc::invalid_config:
    case errc::invalid_schedule:
    case errc::dimension_out_of_range:
      return kUsage;
    case errc::parse_error:
      return kIo;
    case errc::resource_bound:
      return kResourceBound;
    default:
      return kClaimFailed;
  }
}

namespace detail {

struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoFailure("cannot write " + path);
  f << text;
  if (!f) throw IoFailure("write failed for " + path);
}

inline std::string tuple_string(const std::vector<std::size_t>& xs) {
  std::string s = "(";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + std::to_string(xs[i]);
  return s + ")";
}

inline std::string list_string(const std::vector<std::size_t>& xs) {
  std::string s = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + std::to_string(xs[i]);
  return s + "]";
}

inline void print_obstruction(const SolvabilityReport& r, std::ostream& out) {
  out << "verdict: " << to_string(r.verdict) << " (n = " << r.n << ", t = " << r.t << ")\n";
  if (!r.reason.empty()) out << "  reason: " << r.reason << '\n';
  if (!r.obstruction) return;
  const auto& ev = *r.obstruction;
  out << "  skeleton components: " << ev.skeleton_components << ", spanning tree of " << ev.spanning_tree.size()
      << " edges, reduced betti " << list_string(ev.skeleton_betti.reduced_betti) << '\n';
  out << "  output components: " << ev.output_components << '\n';
  for (std::size_t i = 0; i < ev.witnesses.size(); ++i)
    out << "  witness " << i + 1 << ": " << ev.witnesses[i] << " is carried into " << ev.witness_images[i]
        << ", inside output component " << ev.witness_components[i] << '\n';
  if (r.verdict == Verdict::UnsolvableByObstruction)
    out << "  the skeleton is connected, so any carried map sends it into one output component;\n"
           "  the two witnesses are confined to different components, so no such map exists.\n";
}

// ---- build ----

struct BuildArgs {
  int n = 0;
  int block_index = 0;
  std::string out;
  bool colorless = false;
};

inline int cmd_build(const BuildArgs& a, std::ostream& out, std::ostream& err) {
  CbtConfig cfg{a.n, a.block_index};
  cfg.validate();
  const Task task = a.colorless ? build_colorless_task(cfg) : build_task(cfg);
  std::string path = a.out;
  if (path.empty()) path = "cbt_n" + std::to_string(a.n) + (a.colorless ? "_colorless" : "") + ".json";
  write_output(path, io::to_json(task).dump(1) + "\n", out);
  std::ostream& summary = path == "-" ? err : out;
  summary << "wrote " << (path == "-" ? std::string("<stdout>") : path) << ": " << (a.colorless ? "colorless" : "colored")
          << " task, n = " << a.n << '\n'
          << "  input f-vector " << tuple_string(task.input.f_vector()) << '\n'
          << "  output f-vector " << tuple_string(task.output.f_vector()) << '\n'
          << "  carrier entries " << task.carrier.size() << '\n';
  return kOk;
}

// ---- analyze ----

struct AnalyzeArgs {
  std::string task;
  int t = 1;
  bool json = false;
};

inline int cmd_analyze(const AnalyzeArgs& a, std::ostream& out, std::ostream& err) {
  const Task task = io::parse_task(read_file(a.task));
  const int n = task.input.dimension();
  check_resilience(n, a.t);

  io::json report;
  std::ostringstream text;
  bool confirmed = true;
  auto claim = [&](const std::string& name, bool ok, const std::string& detail = {}) {
    report["claims"][name] = ok;
    text << "  " << name << ": " << (ok ? "confirmed" : "FAILED") << (detail.empty() ? "" : " -- " + detail) << '\n';
    if (!ok) confirmed = false;
  };

  text << "task: " << (task.colored ? "colored" : "colorless") << ", n = " << n << '\n';
  text << "  input f-vector " << tuple_string(task.input.f_vector()) << ", output f-vector "
       << tuple_string(task.output.f_vector()) << ", carrier entries " << task.carrier.size() << '\n';
  report["colored"] = task.colored;
  report["n"] = n;
  report["t"] = a.t;
  report["input_f_vector"] = task.input.f_vector();
  report["output_f_vector"] = task.output.f_vector();

  const ComponentMap<Vertex> out_parts(task.output);
  text << "output components: " << out_parts.count() << '\n';
  io::json comps = io::json::array();
  for (const auto& part : out_parts.partition()) {
    const Complex piece = induced_subcomplex(task.output, part);
    const BettiReport b = reduced_betti(piece, piece.dimension());
    text << "  component on " << part.size() << " vertices: reduced betti " << list_string(b.reduced_betti) << '\n';
    comps.push_back(io::to_json(b));
  }
  report["output_components"] = std::move(comps);

  const Complex skel = skeleton(task.input, a.t);
  const BettiReport skel_betti = reduced_betti(skel, a.t - 1);
  text << "input " << a.t << "-skeleton: f-vector " << tuple_string(skel.f_vector()) << ", components "
       << skel_betti.components << ", reduced betti " << list_string(skel_betti.reduced_betti) << '\n';
  report["skeleton"] = io::to_json(skel_betti);

  text << "claims:\n";
  claim("input pure", is_pure(task.input));
  claim("output disconnected", out_parts.count() >= 2);
  const CheckResult formed = verify_well_formed(task);
  report["checks"]["well_formed"] = io::to_json(formed);
  claim("carrier well-formed", formed.holds, formed.detail);

  if (formed.holds) {
    const CheckResult mono = verify_monotonic(task);
    report["checks"]["monotonic"] = io::to_json(mono);
    claim("carrier monotonic", mono.holds, mono.detail);
    const CheckResult rigid = verify_rigid(task);
    report["checks"]["rigid"] = io::to_json(rigid);
    if (task.colored) {
      claim("carrier rigid", rigid.holds, rigid.detail);
      const CheckResult names = verify_name_preserving(task);
      report["checks"]["name_preserving"] = io::to_json(names);
      claim("carrier name-preserving", names.holds, names.detail);
    } else {
      text << "  carrier rigid: " << (rigid.holds ? "yes" : "no") << " (not claimed for colorless tasks)\n";
    }

    const Task colorless = task.colored ? colorless_projection(task) : task;
    const SolvabilityReport verdict = connectivity_obstruction(colorless, a.t);
    report["obstruction"] = io::to_json(verdict);
    claim("no carried continuous map (connectivity obstruction)", verdict.verdict == Verdict::UnsolvableByObstruction);
    print_obstruction(verdict, text);
  }
  report["confirmed"] = confirmed;

  if (a.json)
    out << report.dump(2) << '\n';
  else
    out << text.str() << (confirmed ? "all claims confirmed\n" : "claim check FAILED\n");
  if (!confirmed) err << "analyze: at least one claim failed\n";
  return confirmed ? kOk : kClaimFailed;
}

// ---- search ----

struct SearchArgs {
  std::string task;
  int t = 1;
  int depth = 0;
  std::uint64_t budget = 0;
  bool json = false;
};

inline int cmd_search(const SearchArgs& a, std::ostream& out, std::ostream&) {
  const Task task = io::parse_task(read_file(a.task));
  check_resilience(task.input.dimension(), a.t);
  SearchOptions opts;
  opts.node_budget = a.budget ? a.budget : default_node_budget();
  const SolvabilityReport r = search_carried_simplicial_map(task, a.t, a.depth, opts);
  if (a.json) {
    out << io::to_json(r).dump(2) << '\n';
    return kOk;
  }
  out << "verdict: " << to_string(r.verdict) << "(" << r.depth << ") (n = " << r.n << ", t = " << r.t << ", "
      << r.search_nodes << " search nodes)\n";
  if (r.verdict == Verdict::MapFound)
    for (const auto& e : r.assignment)
      out << "  u" << e.vertex << " carrier " << e.carrier << " -> " << e.image << '\n';
  return kOk;
}

// ---- simulate ----

struct SimulateArgs {
  int n = 2;
  int t = 0;
  bool exhaustive = false;
  bool random = false;
  int depth = 40;
  std::uint64_t seed = 0;
  int trials = 1000;
  int max_steps = 64;
  bool no_suspend = false;
  std::string target = "any";
  std::string trace_out;
  std::string replay;
};

inline int cmd_simulate(const SimulateArgs& a, std::ostream& out, std::ostream&) {
  sim::check_sim_bounds(a.n, a.t);
  const sim::TwoPhaseCommit protocol;
  std::optional<sim::ExecutionTrace> trace;
  if (!a.replay.empty()) {
    trace = sim::run(a.n, a.t, protocol, io::schedule_from_jsonl(read_file(a.replay)));
  } else {
    sim::FindOptions opts;
    opts.allow_suspend = !a.no_suspend;
    opts.target = a.target == "atomicity"     ? sim::ViolationTarget::Atomicity
                  : a.target == "termination" ? sim::ViolationTarget::Termination
                                              : sim::ViolationTarget::Any;
    const sim::SearchMode mode =
        a.random ? sim::SearchMode{sim::RandomTrials{a.seed, a.trials, a.max_steps}} : sim::SearchMode{sim::Exhaustive{a.depth}};
    trace = sim::find_violation(a.n, a.t, protocol, mode, opts);
    out << "search: " << (a.random ? "random" : "exhaustive") << ", n = " << a.n << ", t = " << a.t
        << ", suspensions " << (a.no_suspend ? "disabled" : "enabled") << ", target " << a.target << '\n';
    if (!trace) {
      out << "no violation within the bound\n";
      return kOk;
    }
    out << "violation found:\n";
  }
  out << sim::render_timeline(*trace);
  if (!a.trace_out.empty()) write_output(a.trace_out, io::trace_to_jsonl(*trace), out);
  return kOk;
}

// ---- export ----

struct ExportArgs {
  std::string task;
  std::string format = "dot";
  std::string complex = "input";
  std::string out;
};

inline int cmd_export(const ExportArgs& a, std::ostream& out, std::ostream&) {
  const Task task = io::parse_task(read_file(a.task));
  const Complex& k = a.complex == "output" ? task.output : task.input;
  const std::string text = a.format == "json" ? io::to_graph_json(k, a.complex) : io::to_dot(k, a.complex);
  write_output(a.out, text, out);
  return kOk;
}

}  // namespace detail

/// Parses `args` (args[0] is the program name) and dispatches. Returns the
/// process exit code; never throws.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using namespace detail;
  CLI::App app{"cbtopo: topology of cross-blockchain transactions under fork suspension"};
  app.require_subcommand(1);

  BuildArgs build;
  auto* b = app.add_subcommand("build", "generate the transaction task as JSON");
  b->add_option("--n", build.n, "chains minus one (n >= 1)")->required();
  b->add_option("--out", build.out, "output path ('-' for stdout)");
  b->add_option("--block-index", build.block_index, "block index j on every chain");
  b->add_flag("--colorless", build.colorless, "emit the colorless projection");

  AnalyzeArgs analyze;
  auto* an = app.add_subcommand("analyze", "check carrier properties and the connectivity obstruction");
  an->add_option("--task", analyze.task, "task JSON")->required();
  an->add_option("--t", analyze.t, "resilience, 0 < t < (n+1)/2");
  an->add_flag("--json", analyze.json, "machine-readable report");

  SearchArgs search;
  auto* se = app.add_subcommand("search", "search carried simplicial maps on a subdivided skeleton");
  se->add_option("--task", search.task, "task JSON")->required();
  se->add_option("--t", search.t, "resilience / skeleton level");
  se->add_option("--N", search.depth, "barycentric subdivision depth")->check(CLI::NonNegativeNumber);
  se->add_option("--budget", search.budget, "search node budget (default CBTOPO_NODE_BUDGET or 10^7)");
  se->add_flag("--json", search.json, "machine-readable report");

  SimulateArgs simulate;
  auto* si = app.add_subcommand("simulate", "search the 2PC simulator for violating schedules");
  si->add_option("--n", simulate.n, "chains minus one")->required();
  si->add_option("--t", simulate.t, "crash budget, t < (n+1)/2");
  auto* ex = si->add_flag("--exhaustive", simulate.exhaustive, "enumerate interleavings (default)");
  auto* rn = si->add_flag("--random", simulate.random, "seeded random trials");
  ex->excludes(rn);
  si->add_option("--depth", simulate.depth, "exhaustive depth bound")->check(CLI::NonNegativeNumber);
  si->add_option("--seed", simulate.seed, "random seed");
  si->add_option("--trials", simulate.trials, "random trials")->check(CLI::NonNegativeNumber);
  si->add_option("--max-steps", simulate.max_steps, "events per random trial")->check(CLI::NonNegativeNumber);
  si->add_flag("--no-suspend", simulate.no_suspend, "disable fork suspension");
  si->add_option("--target", simulate.target, "violation kind")->check(CLI::IsMember({"any", "atomicity", "termination"}));
  si->add_option("--trace-out", simulate.trace_out, "write the trace as JSON lines");
  si->add_option("--replay", simulate.replay, "run a schedule file instead of searching");

  ExportArgs exp;
  auto* xp = app.add_subcommand("export", "render a complex's 1-skeleton as a graph");
  xp->add_option("--task", exp.task, "task JSON")->required();
  xp->add_option("--format", exp.format, "dot or json")->check(CLI::IsMember({"dot", "json"}));
  xp->add_option("--complex", exp.complex, "input or output")->check(CLI::IsMember({"input", "output"}));
  xp->add_option("--out", exp.out, "output path (default stdout)");

  std::vector<std::string> storage = args;
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (b->parsed()) return cmd_build(build, out, err);
    if (an->parsed()) return cmd_analyze(analyze, out, err);
    if (se->parsed()) return cmd_search(search, out, err);
    if (si->parsed()) return cmd_simulate(simulate, out, err);
    if (xp->parsed()) return cmd_export(exp, out, err);
  } catch (const IoFailure& e) {
    err << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const error& e) {
    err << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return kUsage;
}

}  // namespace cbtopo::cli
