// Replays the classic bad schedule: every chain votes to commit, the
// coordinator commits, and then chain 1 loses its fork race.
#include <iostream>

#include "cbtopo/fork_sim.hpp"

int main() {
  using namespace cbtopo;
  using sim::Event;
  const sim::TwoPhaseCommit protocol;
  sim::ExecutionSchedule schedule{
      {Value::One, Value::One, Value::One},
      {Event::step(0), Event::deliver(0), Event::deliver(1), Event::deliver(2), Event::deliver(3), Event::suspend(1)},
      true};
  const auto trace = sim::run(2, 1, protocol, schedule);
  std::cout << sim::render_timeline(trace);
  return sim::check_trace(trace).atomicity ? 0 : 1;
}
