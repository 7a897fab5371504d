// Builds the transaction task for three chains, checks the carrier map and
// prints the solvability verdict with its witnesses.
#include <iostream>

#include "cbtopo/cbtopo.hpp"

int main() {
  using namespace cbtopo;
  const Task task = build_task(CbtConfig{2, 0});

  std::cout << "rigid: " << bool(verify_rigid(task)) << ", monotonic: " << bool(verify_monotonic(task))
            << ", name-preserving: " << bool(verify_name_preserving(task)) << '\n';

  const SolvabilityReport r = decide(task, 1, 2);
  std::cout << "verdict: " << to_string(r.verdict) << '\n';
  for (const auto& w : r.obstruction->witnesses) std::cout << "  witness " << w << '\n';
  return r.verdict == Verdict::UnsolvableByObstruction ? 0 : 1;
}
