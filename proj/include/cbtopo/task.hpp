#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "cbtopo/complex.hpp"

namespace cbtopo {

/// Extensional carrier map: every simplex of the input complex maps to a
/// subcomplex of the output complex.
using CarrierMap = std::map<Simplex, Complex>;

/// The triple (input, output, carrier). A colored task keeps block
/// identities on output vertices; a colorless one drops them.
struct Task {
  Complex input;
  Complex output;
  CarrierMap carrier;
  bool colored = true;
};

/// Outcome of a carrier-map property check. On failure `witness` holds the
/// offending simplex (or face/simplex pair) and `detail` says what broke.
struct CheckResult {
  bool holds = true;
  std::vector<Simplex> witness;
  std::string detail;

  explicit operator bool() const noexcept { return holds; }

  static CheckResult pass() { return {}; }
  static CheckResult fail(std::vector<Simplex> witness, std::string detail) {
    return {false, std::move(witness), std::move(detail)};
  }
};

inline const Complex& carrier_at(const Task& task, const Simplex& s) {
  auto it = task.carrier.find(s);
  if (it == task.carrier.end()) throw error(errc::incomplete_carrier, "no carrier entry for " + to_display(s));
  return it->second;
}

/// Totality over every input simplex, no stray entries, and every image a
/// subcomplex of the output.
inline CheckResult verify_well_formed(const Task& task) {
  const auto simplices = task.input.simplices();
  for (const auto& s : simplices) {
    auto it = task.carrier.find(s);
    if (it == task.carrier.end()) return CheckResult::fail({s}, "simplex has no carrier entry");
    if (!it->second.is_subcomplex_of(task.output))
      return CheckResult::fail({s}, "image " + to_display(it->second) + " is not a subcomplex of the output");
  }
  for (const auto& [s, image] : task.carrier)
    if (!task.input.contains(s)) return CheckResult::fail({s}, "carrier entry for a simplex outside the input");
  if (task.colored) {
    for (const auto& v : task.output.vertices())
      if (!v.is_colored()) return CheckResult::fail({Simplex{v}}, "colored task has an unlabeled output vertex");
  } else {
    for (const auto& v : task.output.vertices())
      if (v.is_colored()) return CheckResult::fail({Simplex{v}}, "colorless task has a block-labeled output vertex");
  }
  return CheckResult::pass();
}

/// tau a face of sigma implies carrier(tau) inside carrier(sigma). Checking
/// codimension-one faces suffices by transitivity.
inline CheckResult verify_monotonic(const Task& task) {
  for (const auto& [sigma, image] : task.carrier)
    for (const auto& tau : sigma.boundary_faces()) {
      auto it = task.carrier.find(tau);
      if (it == task.carrier.end()) return CheckResult::fail({tau, sigma}, "face has no carrier entry");
      if (!it->second.is_subcomplex_of(image))
        return CheckResult::fail({tau, sigma}, "carrier of face " + to_display(tau) + " = " + to_display(it->second) +
                                                   " is not inside carrier of " + to_display(sigma) + " = " +
                                                   to_display(image));
    }
  return CheckResult::pass();
}

inline CheckResult verify_rigid(const Task& task) {
  for (const auto& [sigma, image] : task.carrier)
    if (image.dimension() != sigma.dimension())
      return CheckResult::fail({sigma}, "carrier of " + to_display(sigma) + " has dimension " +
                                            std::to_string(image.dimension()) + ", expected " +
                                            std::to_string(sigma.dimension()));
  return CheckResult::pass();
}

/// Block identities in carrier(sigma) equal those of sigma.
inline CheckResult verify_name_preserving(const Task& task) {
  if (!task.colored) throw error(errc::not_colored, "name preservation is defined for colored tasks only");
  for (const auto& [sigma, image] : task.carrier) {
    std::set<BlockRef> in;
    std::set<BlockRef> out;
    for (const auto& v : sigma)
      if (v.block) in.insert(*v.block);
    for (const auto& v : image.vertices()) {
      if (!v.block) return CheckResult::fail({sigma}, "image vertex " + to_display(v) + " has no block identity");
      out.insert(*v.block);
    }
    if (in != out) return CheckResult::fail({sigma}, "carrier of " + to_display(sigma) + " names different blocks");
  }
  return CheckResult::pass();
}

/// Keeps the input's t-skeleton and the carrier entries that survive.
inline Task restrict_to_skeleton(const Task& task, int t) {
  if (t <= 0 || t > task.input.dimension())
    throw error(errc::bad_resilience, "skeleton level " + std::to_string(t) + " outside (0, dim]");
  Task out{skeleton(task.input, t), task.output, {}, task.colored};
  for (const auto& [s, image] : task.carrier)
    if (s.dimension() <= t) out.carrier.emplace(s, image);
  return out;
}

/// Drops the block identity of an output vertex.
inline Vertex project(const Vertex& v) {
  if (!v.is_colored()) throw error(errc::not_colored, "vertex " + to_display(v) + " carries no block identity");
  return Vertex::colorless(v.value);
}

inline Simplex project(const Simplex& s) {
  std::vector<Vertex> vs;
  for (const auto& v : s) vs.push_back(project(v));
  return Simplex::spanned_by(std::move(vs));
}

inline Complex project(const Complex& k) {
  std::vector<Simplex> facets;
  for (const auto& f : k.facets()) facets.push_back(project(f));
  return make_complex(std::move(facets));
}

/// Colorless counterpart: output vertices lose their blocks and each image
/// becomes the vertex-wise projection of the colored image. Input is kept.
inline Task colorless_projection(const Task& task) {
  if (!task.colored) throw error(errc::not_colored, "task is already colorless");
  Task out{task.input, project(task.output), {}, false};
  for (const auto& [s, image] : task.carrier) out.carrier.emplace(s, project(image));
  return out;
}

}  // namespace cbtopo
