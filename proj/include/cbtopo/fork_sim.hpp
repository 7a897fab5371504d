#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "cbtopo/error.hpp"
#include "cbtopo/simplex.hpp"

// Asynchronous message-passing executor for an (n+1)-chain atomic commit
// under crash failures and fork suspension. Everything here is a pure
// function of its arguments: runs, searches and random trials replay
// identically.
namespace cbtopo::sim {

enum class MessageKind { Prepare, Vote, Commit, Abort };

constexpr std::string_view to_string(MessageKind k) noexcept {
  switch (k) {
    case MessageKind::Prepare: return "prepare";
    case MessageKind::Vote: return "vote";
    case MessageKind::Commit: return "commit";
    case MessageKind::Abort: return "abort";
  }
  return "?";
}

inline std::optional<MessageKind> message_kind_from_string(std::string_view s) {
  for (auto k : {MessageKind::Prepare, MessageKind::Vote, MessageKind::Commit, MessageKind::Abort})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

struct Payload {
  MessageKind kind = MessageKind::Prepare;
  Value value = Value::Zero;

  friend bool operator==(const Payload&, const Payload&) = default;
};

/// `sequence` is the global send order; `channel_index` counts messages on
/// the (from, to) channel and stays stable when independent events commute.
struct Message {
  int from = 0;
  int to = 0;
  Payload payload;
  std::uint64_t sequence = 0;
  std::uint32_t channel_index = 0;

  friend bool operator==(const Message&, const Message&) = default;
};

enum class EventKind { Step, Deliver, Crash, Suspend };

constexpr std::string_view to_string(EventKind k) noexcept {
  switch (k) {
    case EventKind::Step: return "step";
    case EventKind::Deliver: return "deliver";
    case EventKind::Crash: return "crash";
    case EventKind::Suspend: return "suspend";
  }
  return "?";
}

inline std::optional<EventKind> event_kind_from_string(std::string_view s) {
  for (auto k : {EventKind::Step, EventKind::Deliver, EventKind::Crash, EventKind::Suspend})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

/// Scheduler decision. Deliver names a message by sequence number; the
/// others name a chain.
struct Event {
  EventKind kind = EventKind::Step;
  int chain = 0;
  std::uint64_t sequence = 0;

  static Event step(int chain) { return {EventKind::Step, chain, 0}; }
  static Event deliver(std::uint64_t seq) { return {EventKind::Deliver, 0, seq}; }
  static Event crash(int chain) { return {EventKind::Crash, chain, 0}; }
  static Event suspend(int chain) { return {EventKind::Suspend, chain, 0}; }

  friend bool operator==(const Event&, const Event&) = default;
};

struct NodeState {
  BlockRef chain;
  Value input = Value::Zero;
  Value local_value = Value::Zero;
  int phase = 0;
  std::vector<std::optional<Value>> votes;
  std::optional<Value> decided;
  bool crashed = false;

  bool suspended() const noexcept { return local_value == Value::Bottom; }
};

using Outbox = std::vector<std::pair<int, Payload>>;

/// A commit protocol as a per-node state machine. `step` is a spontaneous
/// local action; `receive` reacts to one delivered message.
class Protocol {
 public:
  virtual ~Protocol() = default;
  virtual std::string_view name() const = 0;
  virtual void initialize(NodeState& node, int n) const = 0;
  virtual bool can_step(const NodeState& node) const = 0;
  virtual void step(NodeState& node, int n, Outbox& out) const = 0;
  virtual void receive(NodeState& node, int n, const Message& m, Outbox& out) const = 0;
};

/// Coordinator-based two-phase commit with chain 0 as coordinator. A node
/// votes One only while its local transaction is committed; the coordinator
/// commits iff every vote, its own included, is One. No timeouts.
class TwoPhaseCommit final : public Protocol {
 public:
  enum Phase { Idle = 0, Collecting = 1, Voted = 1, Done = 2 };

  std::string_view name() const override { return "2pc"; }

  void initialize(NodeState& node, int n) const override {
    node.phase = Idle;
    if (node.chain.chain == 0) node.votes.assign(static_cast<std::size_t>(n) + 1, std::nullopt);
  }

  bool can_step(const NodeState& node) const override { return node.chain.chain == 0 && node.phase == Idle; }

  void step(NodeState& node, int n, Outbox& out) const override {
    for (int i = 1; i <= n; ++i) out.emplace_back(i, Payload{MessageKind::Prepare, Value::Zero});
    node.phase = Collecting;
  }

  void receive(NodeState& node, int n, const Message& m, Outbox& out) const override {
    const bool coordinator = node.chain.chain == 0;
    switch (m.payload.kind) {
      case MessageKind::Prepare:
        if (coordinator || node.phase != Idle) return;
        out.emplace_back(0, Payload{MessageKind::Vote, vote_of(node)});
        node.phase = Voted;
        return;
      case MessageKind::Vote: {
        if (!coordinator || node.phase != Collecting) return;
        node.votes[static_cast<std::size_t>(m.from)] = m.payload.value;
        bool all_in = true;
        bool all_yes = vote_of(node) == Value::One;
        for (int i = 1; i <= n; ++i) {
          const auto& v = node.votes[static_cast<std::size_t>(i)];
          if (!v) all_in = false;
          else if (*v != Value::One) all_yes = false;
        }
        if (!all_in) return;
        node.decided = all_yes ? Value::One : Value::Zero;
        node.phase = Done;
        for (int i = 1; i <= n; ++i)
          out.emplace_back(i, Payload{all_yes ? MessageKind::Commit : MessageKind::Abort, *node.decided});
        return;
      }
      case MessageKind::Commit:
      case MessageKind::Abort:
        if (coordinator || node.decided) return;
        node.decided = m.payload.kind == MessageKind::Commit ? Value::One : Value::Zero;
        node.phase = Done;
        return;
    }
  }

 private:
  static Value vote_of(const NodeState& node) { return node.local_value == Value::One ? Value::One : Value::Zero; }
};

/// Explicit schedule: initial local values (0 or 1 per chain) and the
/// adversary's event sequence. With `drain`, enabled protocol events are
/// then run in canonical order until quiescence.
struct ExecutionSchedule {
  std::vector<Value> inputs;
  std::vector<Event> events;
  bool drain = false;
};

struct TraceEvent {
  Event event;
  std::optional<Message> delivered;
  std::vector<Message> sent;
};

struct ExecutionTrace {
  int n = 0;
  int t = 0;
  std::string protocol;
  std::vector<Value> inputs;
  std::vector<TraceEvent> events;
  std::vector<NodeState> final_states;
  std::vector<Message> pending;
  // No step or delivery remains enabled.
  bool quiescent = false;
};

struct ViolationReport {
  bool atomicity = false;
  bool non_termination = false;
  std::vector<int> undecided;
  std::string detail;

  bool any() const noexcept { return atomicity || non_termination; }
};

/// Checks a final configuration against the task's carrier rules: decisions
/// must agree, any suspended chain forces abort, all chains committed forces
/// commit. Termination is judged only at quiescence.
inline ViolationReport evaluate(const std::vector<Value>& inputs, const std::vector<NodeState>& nodes, bool quiescent) {
  ViolationReport r;
  bool any_bottom = false;
  bool all_one = true;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Value realized = nodes[i].suspended() ? Value::Bottom : inputs[i];
    any_bottom |= realized == Value::Bottom;
    all_one &= realized == Value::One;
  }
  bool decided_zero = false;
  bool decided_one = false;
  for (const auto& node : nodes) {
    if (node.decided == Value::Zero) decided_zero = true;
    if (node.decided == Value::One) decided_one = true;
  }
  std::ostringstream why;
  if (decided_zero && decided_one) {
    r.atomicity = true;
    why << "chains decided both commit and abort; ";
  }
  if (any_bottom && decided_one) {
    r.atomicity = true;
    why << "a suspended chain forces abort but some chain committed; ";
  }
  if (all_one && decided_zero) {
    r.atomicity = true;
    why << "every chain committed locally but some chain aborted; ";
  }
  if (quiescent)
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (!nodes[i].crashed && !nodes[i].decided) r.undecided.push_back(static_cast<int>(i));
  if (!r.undecided.empty()) {
    r.non_termination = true;
    why << "live chains blocked without a decision; ";
  }
  r.detail = why.str();
  if (!r.detail.empty()) r.detail.resize(r.detail.size() - 2);
  return r;
}

inline ViolationReport check_trace(const ExecutionTrace& trace) {
  return evaluate(trace.inputs, trace.final_states, trace.quiescent);
}

/// 0 <= t and 2t < n + 1, with at least two chains.
inline void check_sim_bounds(int n, int t) {
  if (n < 1) throw error(errc::invalid_config, "need at least two chains (n >= 1)");
  if (t < 0 || 2 * t >= n + 1)
    throw error(errc::bad_resilience, "t = " + std::to_string(t) + " violates t < (n+1)/2 for n = " + std::to_string(n));
}

/// Mutable configuration of one execution.
class World {
 public:
  World(int n, int t, const Protocol& protocol, const std::vector<Value>& inputs)
      : n_(n), t_(t), protocol_(&protocol) {
    check_sim_bounds(n, t);
    if (inputs.size() != static_cast<std::size_t>(n) + 1)
      throw error(errc::invalid_schedule, "expected " + std::to_string(n + 1) + " input values");
    for (int i = 0; i <= n; ++i) {
      const Value v = inputs[static_cast<std::size_t>(i)];
      if (v == Value::Bottom) throw error(errc::invalid_schedule, "inputs are 0 or 1; suspension is an event");
      NodeState node;
      node.chain = BlockRef{i, 0};
      node.input = v;
      node.local_value = v;
      protocol.initialize(node, n);
      nodes_.push_back(std::move(node));
    }
    channel_counts_.assign(nodes_.size() * nodes_.size(), 0);
  }

  const std::vector<NodeState>& nodes() const noexcept { return nodes_; }
  const std::vector<Message>& pending() const noexcept { return pending_; }
  int crashes() const noexcept { return crashes_; }

  /// Enabled events in canonical order: steps, deliveries by sequence,
  /// suspensions, crashes.
  std::vector<Event> enabled(bool allow_suspend, bool allow_crash) const {
    std::vector<Event> out;
    for (const auto& node : nodes_)
      if (!node.crashed && protocol_->can_step(node)) out.push_back(Event::step(node.chain.chain));
    for (const auto& m : pending_)
      if (!nodes_[static_cast<std::size_t>(m.to)].crashed) out.push_back(Event::deliver(m.sequence));
    if (allow_suspend)
      for (const auto& node : nodes_)
        if (!node.crashed && !node.suspended()) out.push_back(Event::suspend(node.chain.chain));
    if (allow_crash && crashes_ < t_)
      for (const auto& node : nodes_)
        if (!node.crashed) out.push_back(Event::crash(node.chain.chain));
    return out;
  }

  bool quiescent() const { return enabled(false, false).empty(); }

  const Message* find_pending(std::uint64_t seq) const {
    for (const auto& m : pending_)
      if (m.sequence == seq) return &m;
    return nullptr;
  }

  /// Node an event acts on (the receiver, for deliveries).
  int target_of(const Event& e) const {
    if (e.kind != EventKind::Deliver) return e.chain;
    const Message* m = find_pending(e.sequence);
    return m ? m->to : -1;
  }

  TraceEvent apply(const Event& e) {
    TraceEvent record{e, std::nullopt, {}};
    Outbox out;
    switch (e.kind) {
      case EventKind::Step: {
        NodeState& node = live_node(e.chain);
        if (!protocol_->can_step(node)) throw error(errc::invalid_schedule, "chain " + std::to_string(e.chain) + " has no step enabled");
        guarded(node, [&] { protocol_->step(node, n_, out); });
        break;
      }
      case EventKind::Deliver: {
        auto it = std::find_if(pending_.begin(), pending_.end(), [&](const Message& m) { return m.sequence == e.sequence; });
        if (it == pending_.end()) throw error(errc::invalid_schedule, "message #" + std::to_string(e.sequence) + " is not in flight");
        const Message m = *it;
        NodeState& node = live_node(m.to);
        pending_.erase(it);
        record.event.chain = m.to;
        record.delivered = m;
        guarded(node, [&] { protocol_->receive(node, n_, m, out); });
        break;
      }
      case EventKind::Crash: {
        NodeState& node = live_node(e.chain);
        if (crashes_ >= t_) throw error(errc::invalid_schedule, "crash budget t = " + std::to_string(t_) + " exhausted");
        node.crashed = true;
        ++crashes_;
        break;
      }
      case EventKind::Suspend: {
        NodeState& node = live_node(e.chain);
        if (node.suspended()) throw error(errc::invalid_schedule, "chain " + std::to_string(e.chain) + " already suspended");
        node.local_value = Value::Bottom;
        break;
      }
    }
    const int sender = record.event.chain;
    for (auto& [to, payload] : out) {
      auto& counter = channel_counts_[static_cast<std::size_t>(sender) * nodes_.size() + static_cast<std::size_t>(to)];
      Message m{sender, to, payload, next_sequence_++, counter++};
      pending_.push_back(m);
      record.sent.push_back(m);
    }
    return record;
  }

 private:
  NodeState& live_node(int chain) {
    if (chain < 0 || chain > n_) throw error(errc::invalid_schedule, "chain index " + std::to_string(chain) + " out of range");
    NodeState& node = nodes_[static_cast<std::size_t>(chain)];
    if (node.crashed) throw error(errc::invalid_schedule, "chain " + std::to_string(chain) + " has crashed");
    return node;
  }

  template <class Fn>
  static void guarded(NodeState& node, Fn&& fn) {
    const auto before = node.decided;
    fn();
    if (before && node.decided != before) throw std::logic_error("protocol changed a decided value");
  }

  int n_;
  int t_;
  const Protocol* protocol_;
  std::vector<NodeState> nodes_;
  std::vector<Message> pending_;
  std::vector<std::uint32_t> channel_counts_;
  std::uint64_t next_sequence_ = 0;
  int crashes_ = 0;
};

inline ExecutionTrace run(int n, int t, const Protocol& protocol, const ExecutionSchedule& schedule) {
  World world(n, t, protocol, schedule.inputs);
  ExecutionTrace trace;
  trace.n = n;
  trace.t = t;
  trace.protocol = std::string(protocol.name());
  trace.inputs = schedule.inputs;
  for (const auto& e : schedule.events) trace.events.push_back(world.apply(e));
  if (schedule.drain) {
    constexpr std::size_t kDrainLimit = 1'000'000;
    for (std::size_t i = 0;; ++i) {
      auto next = world.enabled(false, false);
      if (next.empty()) break;
      if (i == kDrainLimit) throw error(errc::resource_bound, "protocol did not quiesce while draining");
      trace.events.push_back(world.apply(next.front()));
    }
  }
  trace.final_states = world.nodes();
  trace.pending = world.pending();
  trace.quiescent = world.quiescent();
  return trace;
}

enum class ViolationTarget { Any, Atomicity, Termination };

struct Exhaustive {
  int depth = 40;
};

struct RandomTrials {
  std::uint64_t seed = 0;
  int trials = 1000;
  int max_steps = 64;
};

using SearchMode = std::variant<Exhaustive, RandomTrials>;

struct FindOptions {
  bool allow_suspend = true;
  ViolationTarget target = ViolationTarget::Any;
  std::uint64_t state_budget = 10'000'000;
  // Fixed initial values; when empty every vector in {0,1}^(n+1) is tried
  // in lexicographic order.
  std::optional<std::vector<Value>> inputs;
};

namespace detail {

inline bool matches(const ViolationReport& r, ViolationTarget target) {
  switch (target) {
    case ViolationTarget::Any: return r.any();
    case ViolationTarget::Atomicity: return r.atomicity;
    case ViolationTarget::Termination: return r.non_termination;
  }
  return false;
}

inline std::vector<std::vector<Value>> input_vectors(int n, const FindOptions& opts) {
  if (opts.inputs) return {*opts.inputs};
  std::vector<std::vector<Value>> out;
  const std::size_t chains = static_cast<std::size_t>(n) + 1;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << chains); ++bits) {
    std::vector<Value> v(chains);
    for (std::size_t i = 0; i < chains; ++i)
      v[i] = (bits >> (chains - 1 - i)) & 1u ? Value::One : Value::Zero;
    out.push_back(std::move(v));
  }
  return out;
}

// Stable identity of an event across commuting reorderings.
struct EventKey {
  EventKind kind;
  int target;
  int from;
  std::uint32_t channel;

  friend bool operator==(const EventKey&, const EventKey&) = default;
};

inline EventKey key_of(const World& w, const Event& e) {
  if (e.kind == EventKind::Deliver) {
    const Message* m = w.find_pending(e.sequence);
    return {e.kind, m->to, m->from, m->channel_index};
  }
  return {e.kind, e.chain, -1, 0};
}

// Events on different nodes commute, except that two crashes share the budget.
inline bool independent(const EventKey& a, const EventKey& b) {
  return a.target != b.target && !(a.kind == EventKind::Crash && b.kind == EventKind::Crash);
}

// Depth-bounded DFS with sleep sets over event interleavings.
class Explorer {
 public:
  Explorer(const FindOptions& opts, int depth) : opts_(opts), depth_(depth) {}

  bool explore(const World& w, std::vector<EventKey> sleep) {
    if (++states_ > opts_.state_budget)
      throw error(errc::resource_bound, "schedule exploration exceeded " + std::to_string(opts_.state_budget) + " states");
    if (matches(evaluate(inputs_, w.nodes(), w.quiescent()), opts_.target)) return true;
    if (static_cast<int>(path_.size()) >= depth_) return false;
    for (const Event& e : w.enabled(opts_.allow_suspend, true)) {
      const EventKey key = key_of(w, e);
      if (std::find(sleep.begin(), sleep.end(), key) != sleep.end()) continue;
      World child = w;
      child.apply(e);
      std::vector<EventKey> child_sleep;
      for (const auto& z : sleep)
        if (independent(z, key)) child_sleep.push_back(z);
      path_.push_back(e);
      if (explore(child, std::move(child_sleep))) return true;
      path_.pop_back();
      sleep.push_back(key);
    }
    return false;
  }

  void reset(std::vector<Value> inputs) {
    inputs_ = std::move(inputs);
    path_.clear();
  }
  const std::vector<Event>& path() const noexcept { return path_; }

 private:
  const FindOptions& opts_;
  int depth_;
  std::uint64_t states_ = 0;
  std::vector<Value> inputs_;
  std::vector<Event> path_;
};

}  // namespace detail

/// First violating execution in canonical order (exhaustive) or in trial
/// order (random), or nothing within the bound.
inline std::optional<ExecutionTrace> find_violation(int n, int t, const Protocol& protocol, const SearchMode& mode,
                                                    const FindOptions& opts = {}) {
  check_sim_bounds(n, t);
  if (const auto* ex = std::get_if<Exhaustive>(&mode)) {
    if (ex->depth < 0) throw error(errc::invalid_config, "exploration depth must be non-negative");
    detail::Explorer explorer(opts, ex->depth);
    for (const auto& inputs : detail::input_vectors(n, opts)) {
      explorer.reset(inputs);
      if (explorer.explore(World(n, t, protocol, inputs), {})) {
        auto trace = run(n, t, protocol, ExecutionSchedule{inputs, explorer.path(), false});
        return trace;
      }
    }
    return std::nullopt;
  }

  const auto& rnd = std::get<RandomTrials>(mode);
  if (rnd.trials < 0 || rnd.max_steps < 0) throw error(errc::invalid_config, "trial counts must be non-negative");
  std::mt19937_64 rng(rnd.seed);
  const auto all_inputs = detail::input_vectors(n, opts);
  for (int trial = 0; trial < rnd.trials; ++trial) {
    const auto& inputs = all_inputs[std::uniform_int_distribution<std::size_t>(0, all_inputs.size() - 1)(rng)];
    World w(n, t, protocol, inputs);
    std::vector<Event> path;
    while (static_cast<int>(path.size()) < rnd.max_steps) {
      auto events = w.enabled(opts.allow_suspend, true);
      if (events.empty()) break;
      const Event e = events[std::uniform_int_distribution<std::size_t>(0, events.size() - 1)(rng)];
      w.apply(e);
      path.push_back(e);
    }
    if (detail::matches(evaluate(inputs, w.nodes(), w.quiescent()), opts.target))
      return run(n, t, protocol, ExecutionSchedule{inputs, std::move(path), false});
  }
  return std::nullopt;
}

/// Human-readable timeline of a trace and its verdict.
inline std::string render_timeline(const ExecutionTrace& trace) {
  std::ostringstream os;
  os << "protocol " << trace.protocol << ", n = " << trace.n << ", t = " << trace.t << ", inputs [";
  for (std::size_t i = 0; i < trace.inputs.size(); ++i) os << (i ? " " : "") << to_string(trace.inputs[i]);
  os << "]\n";
  for (std::size_t i = 0; i < trace.events.size(); ++i) {
    const auto& rec = trace.events[i];
    os << "  " << i << ". ";
    switch (rec.event.kind) {
      case EventKind::Step: os << "chain " << rec.event.chain << " steps"; break;
      case EventKind::Deliver:
        os << "deliver #" << rec.delivered->sequence << " " << to_string(rec.delivered->payload.kind);
        if (rec.delivered->payload.kind == MessageKind::Vote) os << "(" << to_string(rec.delivered->payload.value) << ")";
        os << " " << rec.delivered->from << " -> " << rec.delivered->to;
        break;
      case EventKind::Crash: os << "chain " << rec.event.chain << " CRASHES"; break;
      case EventKind::Suspend: os << "chain " << rec.event.chain << " SUSPENDED (fork lost)"; break;
    }
    if (!rec.sent.empty()) {
      os << "; sends";
      for (const auto& m : rec.sent) os << " #" << m.sequence << ":" << to_string(m.payload.kind) << "->" << m.to;
    }
    os << '\n';
  }
  os << "outcome:";
  for (const auto& node : trace.final_states) {
    os << " chain " << node.chain.chain << '=';
    os << (node.decided ? std::string(to_string(*node.decided)) : std::string("undecided"));
    if (node.suspended()) os << "(suspended)";
    if (node.crashed) os << "(crashed)";
    os << ';';
  }
  os << (trace.quiescent ? " quiescent\n" : " not quiescent\n");
  const auto report = check_trace(trace);
  os << "violation: ";
  if (!report.any()) os << "none";
  if (report.atomicity) os << "atomicity";
  if (report.atomicity && report.non_termination) os << ", ";
  if (report.non_termination) os << "non-termination";
  if (report.any()) os << " (" << report.detail << ')';
  os << '\n';
  return os.str();
}

}  // namespace cbtopo::sim
