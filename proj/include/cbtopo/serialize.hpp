#pragma once

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "cbtopo/complex.hpp"
#include "cbtopo/connectivity.hpp"
#include "cbtopo/fork_sim.hpp"
#include "cbtopo/solvability.hpp"
#include "cbtopo/task.hpp"

// JSON forms of complexes, tasks, reports and traces. Object keys keep
// insertion order and arrays follow canonical simplex order, so dumps are
// byte-stable.
namespace cbtopo::io {

using json = nlohmann::ordered_json;

[[noreturn]] inline void parse_failure(const std::string& what) { throw error(errc::parse_error, what); }

inline json to_json(const Vertex& v) {
  json j;
  j["chain"] = v.block ? json(v.block->chain) : json(nullptr);
  j["block"] = v.block ? json(v.block->block) : json(nullptr);
  j["value"] = std::string(to_string(v.value));
  return j;
}

inline Vertex vertex_from_json(const json& j) {
  if (!j.is_object() || !j.contains("value") || !j["value"].is_string()) parse_failure("vertex needs a string \"value\"");
  auto value = value_from_string(j["value"].get<std::string>());
  if (!value) parse_failure("unknown vertex value " + j["value"].dump());
  const json chain = j.value("chain", json(nullptr));
  const json block = j.value("block", json(nullptr));
  if (chain.is_null() != block.is_null()) parse_failure("chain and block must both be set or both be null");
  if (chain.is_null()) return Vertex::colorless(*value);
  if (!chain.is_number_integer() || !block.is_number_integer()) parse_failure("chain and block must be integers");
  const auto c = chain.get<long long>();
  const auto b = block.get<long long>();
  if (c < 0 || b < 0 || c > 1'000'000 || b > 1'000'000'000) parse_failure("block coordinates out of range");
  return Vertex::colored(static_cast<int>(c), *value, static_cast<int>(b));
}

inline json to_json(const Simplex& s) {
  json arr = json::array();
  for (const auto& v : s) arr.push_back(to_json(v));
  return arr;
}

inline Simplex simplex_from_json(const json& j) {
  if (!j.is_array()) parse_failure("simplex must be an array of vertices");
  std::vector<Vertex> vs;
  for (const auto& v : j) vs.push_back(vertex_from_json(v));
  return Simplex(std::move(vs));
}

inline json facets_to_json(const Complex& k) {
  json arr = json::array();
  for (const auto& f : k.facets()) arr.push_back(to_json(f));
  return arr;
}

inline Complex complex_from_facets_json(const json& arr) {
  if (!arr.is_array()) parse_failure("facets must be an array");
  std::vector<Simplex> facets;
  for (const auto& f : arr) facets.push_back(simplex_from_json(f));
  return make_complex(std::move(facets));
}

inline json to_json(const Complex& k) {
  json j;
  j["facets"] = facets_to_json(k);
  return j;
}

inline Complex complex_from_json(const json& j) {
  if (!j.is_object() || !j.contains("facets")) parse_failure("complex needs \"facets\"");
  return complex_from_facets_json(j["facets"]);
}

inline json to_json(const Task& task) {
  json j;
  j["input"] = to_json(task.input);
  j["output"] = to_json(task.output);
  json entries = json::array();
  for (const auto& [s, image] : task.carrier) {
    json e;
    e["simplex"] = to_json(s);
    e["image_facets"] = facets_to_json(image);
    entries.push_back(std::move(e));
  }
  j["carrier"] = std::move(entries);
  j["colored"] = task.colored;
  return j;
}

inline Task task_from_json(const json& j) {
  if (!j.is_object()) parse_failure("task must be a JSON object");
  for (const char* key : {"input", "output", "carrier", "colored"})
    if (!j.contains(key)) parse_failure(std::string("task is missing \"") + key + "\"");
  if (!j["colored"].is_boolean()) parse_failure("\"colored\" must be a boolean");
  if (!j["carrier"].is_array()) parse_failure("\"carrier\" must be an array");
  Task task{complex_from_json(j["input"]), complex_from_json(j["output"]), {}, j["colored"].get<bool>()};
  for (const auto& e : j["carrier"]) {
    if (!e.is_object() || !e.contains("simplex") || !e.contains("image_facets"))
      parse_failure("carrier entry needs \"simplex\" and \"image_facets\"");
    if (!task.carrier.emplace(simplex_from_json(e["simplex"]), complex_from_facets_json(e["image_facets"])).second)
      parse_failure("duplicate carrier entry");
  }
  return task;
}

inline Task parse_task(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& ex) {
    parse_failure(ex.what());
  }
  try {
    return task_from_json(j);
  } catch (const error& e) {
    if (e.code() == errc::parse_error) throw;
    parse_failure(e.what());
  }
}

inline json to_json(const BettiReport& b) {
  json j;
  j["reduced_betti"] = b.reduced_betti;
  j["components"] = b.components;
  return j;
}

inline json to_json(const CheckResult& c) {
  json j;
  j["holds"] = c.holds;
  if (!c.holds) {
    json w = json::array();
    for (const auto& s : c.witness) w.push_back(to_json(s));
    j["witness"] = std::move(w);
    j["detail"] = c.detail;
  }
  return j;
}

inline json to_json(const ObstructionEvidence& ev) {
  json j;
  j["skeleton_components"] = ev.skeleton_components;
  j["skeleton_betti"] = to_json(ev.skeleton_betti);
  j["output_components"] = ev.output_components;
  json tree = json::array();
  for (const auto& [a, b] : ev.spanning_tree) tree.push_back(json::array({to_json(a), to_json(b)}));
  j["spanning_tree"] = std::move(tree);
  json wit = json::array();
  for (std::size_t i = 0; i < ev.witnesses.size(); ++i) {
    json w;
    w["simplex"] = to_json(ev.witnesses[i]);
    w["image_facets"] = facets_to_json(ev.witness_images[i]);
    w["component"] = ev.witness_components[i];
    wit.push_back(std::move(w));
  }
  j["witnesses"] = std::move(wit);
  return j;
}

inline json to_json(const SolvabilityReport& r) {
  json j;
  j["verdict"] = std::string(to_string(r.verdict));
  j["n"] = r.n;
  j["t"] = r.t;
  j["depth"] = r.depth;
  if (!r.reason.empty()) j["reason"] = r.reason;
  if (r.obstruction) j["obstruction"] = to_json(*r.obstruction);
  j["search_nodes"] = r.search_nodes;
  if (r.verdict == Verdict::MapFound) {
    json a = json::array();
    for (const auto& e : r.assignment) {
      json entry;
      entry["vertex"] = e.vertex;
      entry["carrier"] = to_json(e.carrier);
      entry["image"] = to_json(e.image);
      a.push_back(std::move(entry));
    }
    j["assignment"] = std::move(a);
  }
  return j;
}

// --- simulator traces and schedules (JSON lines) ---

inline json values_to_json(const std::vector<Value>& vs) {
  json arr = json::array();
  for (Value v : vs) arr.push_back(std::string(to_string(v)));
  return arr;
}

inline json to_json(const sim::Message& m) {
  json j;
  j["seq"] = m.sequence;
  j["from"] = m.from;
  j["to"] = m.to;
  j["payload"] = std::string(sim::to_string(m.payload.kind));
  j["value"] = std::string(to_string(m.payload.value));
  return j;
}

inline json to_json(const sim::TraceEvent& rec) {
  json j;
  j["event"] = std::string(sim::to_string(rec.event.kind));
  if (rec.event.kind == sim::EventKind::Deliver) {
    j["seq"] = rec.event.sequence;
    j["from"] = rec.delivered->from;
    j["to"] = rec.delivered->to;
    j["payload"] = std::string(sim::to_string(rec.delivered->payload.kind));
    j["value"] = std::string(to_string(rec.delivered->payload.value));
  } else {
    j["chain"] = rec.event.chain;
  }
  json sent = json::array();
  for (const auto& m : rec.sent) sent.push_back(to_json(m));
  j["sent"] = std::move(sent);
  return j;
}

/// One init line, one line per event, one outcome line. The output replays
/// as a schedule.
inline std::string trace_to_jsonl(const sim::ExecutionTrace& trace) {
  std::ostringstream os;
  json init;
  init["event"] = "init";
  init["n"] = trace.n;
  init["t"] = trace.t;
  init["protocol"] = trace.protocol;
  init["inputs"] = values_to_json(trace.inputs);
  os << init.dump() << '\n';
  for (const auto& rec : trace.events) os << to_json(rec).dump() << '\n';
  json outcome;
  outcome["event"] = "outcome";
  json decided = json::array();
  for (const auto& node : trace.final_states)
    decided.push_back(node.decided ? json(std::string(to_string(*node.decided))) : json(nullptr));
  outcome["decided"] = std::move(decided);
  json suspended = json::array();
  for (const auto& node : trace.final_states) suspended.push_back(node.suspended());
  outcome["suspended"] = std::move(suspended);
  json crashed = json::array();
  for (const auto& node : trace.final_states) crashed.push_back(node.crashed);
  outcome["crashed"] = std::move(crashed);
  outcome["quiescent"] = trace.quiescent;
  const auto report = sim::check_trace(trace);
  outcome["atomicity_violation"] = report.atomicity;
  outcome["non_termination"] = report.non_termination;
  os << outcome.dump() << '\n';
  return os.str();
}

/// Reads a schedule in the trace line format: an init line carrying
/// "inputs", then event lines. Outcome lines and extra fields are ignored.
inline sim::ExecutionSchedule schedule_from_jsonl(std::string_view text) {
  sim::ExecutionSchedule schedule;
  bool have_inputs = false;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& ex) {
      parse_failure(ex.what());
    }
    const std::string kind = j.value("event", std::string());
    if (kind == "init") {
      if (!j.contains("inputs") || !j["inputs"].is_array()) parse_failure("init line needs \"inputs\"");
      for (const auto& v : j["inputs"]) {
        auto value = v.is_string() ? value_from_string(v.get<std::string>()) : std::nullopt;
        if (!value) parse_failure("bad input value " + v.dump());
        schedule.inputs.push_back(*value);
      }
      have_inputs = true;
    } else if (kind == "outcome") {
      continue;
    } else if (kind == "drain") {
      schedule.drain = true;
    } else if (auto ek = sim::event_kind_from_string(kind)) {
      if (*ek == sim::EventKind::Deliver) {
        if (!j.contains("seq") || !j["seq"].is_number_unsigned()) parse_failure("deliver needs a non-negative \"seq\"");
        schedule.events.push_back(sim::Event::deliver(j["seq"].get<std::uint64_t>()));
      } else {
        if (!j.contains("chain") || !j["chain"].is_number_integer()) parse_failure(kind + " needs an integer \"chain\"");
        schedule.events.push_back(sim::Event{*ek, j["chain"].get<int>(), 0});
      }
    } else {
      parse_failure("unknown event kind \"" + kind + "\"");
    }
  }
  if (!have_inputs) parse_failure("schedule has no init line");
  return schedule;
}

// --- 1-skeleton graph export ---

inline std::string_view fill_color(Value v) {
  switch (v) {
    case Value::Zero: return "#9ecae1";
    case Value::One: return "#a1d99b";
    case Value::Bottom: return "#d9d9d9";
  }
  return "#ffffff";
}

inline std::string vertex_label(const Vertex& v) {
  std::string label = v.block ? "v" + std::to_string(v.block->chain) + "^" + std::to_string(v.block->block) + ":" : "";
  return label + std::string(to_string(v.value));
}

inline std::vector<std::pair<std::size_t, std::size_t>> skeleton_edges(const Complex& k) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  const auto verts = k.vertices();
  auto index = [&](const Vertex& v) {
    return static_cast<std::size_t>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin());
  };
  for (const auto& e : k.simplices_of_dimension(1)) edges.emplace_back(index(e[0]), index(e[1]));
  return edges;
}

inline std::string to_dot(const Complex& k, std::string_view name) {
  std::ostringstream os;
  const auto verts = k.vertices();
  os << "graph " << name << " {\n";
  os << "  node [shape=circle, style=filled, fontsize=10];\n";
  for (std::size_t i = 0; i < verts.size(); ++i)
    os << "  n" << i << " [label=\"" << vertex_label(verts[i]) << "\", fillcolor=\"" << fill_color(verts[i].value)
       << "\"];\n";
  for (const auto& [a, b] : skeleton_edges(k)) os << "  n" << a << " -- n" << b << ";\n";
  os << "}\n";
  return os.str();
}

inline std::string to_graph_json(const Complex& k, std::string_view name) {
  json j;
  j["graph"] = std::string(name);
  json nodes = json::array();
  const auto verts = k.vertices();
  for (std::size_t i = 0; i < verts.size(); ++i) {
    json n = to_json(verts[i]);
    n["id"] = i;
    n["color"] = std::string(fill_color(verts[i].value));
    nodes.push_back(std::move(n));
  }
  j["nodes"] = std::move(nodes);
  json edges = json::array();
  for (const auto& [a, b] : skeleton_edges(k)) edges.push_back(json::array({a, b}));
  j["edges"] = std::move(edges);
  return j.dump(2) + "\n";
}

}  // namespace cbtopo::io
