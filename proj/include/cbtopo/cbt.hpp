#pragma once

#include <algorithm>
#include <string_view>
#include <vector>

#include "cbtopo/complex.hpp"
#include "cbtopo/task.hpp"

namespace cbtopo {

/// n+1 blockchains, each contributing block `block_index` to the global
/// transaction.
struct CbtConfig {
  int n = 1;
  int block_index = 0;

  void validate() const {
    if (n < 1) throw error(errc::invalid_config, "need at least two blockchains (n >= 1), got n = " + std::to_string(n));
    if (block_index < 0) throw error(errc::invalid_config, "block index must be non-negative");
  }
  int chains() const noexcept { return n + 1; }
};

/// Which carrier rule an input simplex falls under.
enum class CarrierRule { AllCommitted, AnySuspended, Undetermined };

constexpr std::string_view to_string(CarrierRule r) noexcept {
  switch (r) {
    case CarrierRule::AllCommitted: return "all-committed";
    case CarrierRule::AnySuspended: return "any-suspended";
    case CarrierRule::Undetermined: return "undetermined";
  }
  return "?";
}

inline CarrierRule classify(const Simplex& sigma) {
  const auto& vs = sigma.vertices();
  if (std::any_of(vs.begin(), vs.end(), [](const Vertex& v) { return v.value == Value::Bottom; }))
    return CarrierRule::AnySuspended;
  if (std::all_of(vs.begin(), vs.end(), [](const Vertex& v) { return v.value == Value::One; }))
    return CarrierRule::AllCommitted;
  return CarrierRule::Undetermined;
}

/// Output values permitted for an input simplex under its rule.
inline std::vector<Value> permitted_outputs(CarrierRule rule) {
  switch (rule) {
    case CarrierRule::AllCommitted: return {Value::One};
    case CarrierRule::AnySuspended: return {Value::Zero};
    case CarrierRule::Undetermined: return {Value::Zero, Value::One};
  }
  return {};
}

/// Every chain contributes values 0, 1 and bot; a vertex set is a simplex iff
/// its blocks are pairwise distinct. Facets pick one value per chain.
inline Complex build_input_complex(const CbtConfig& cfg) {
  cfg.validate();
  const Value values[] = {Value::Zero, Value::One, Value::Bottom};
  std::vector<Simplex> facets;
  std::vector<int> digit(static_cast<std::size_t>(cfg.chains()), 0);
  while (true) {
    std::vector<Vertex> vs;
    for (int i = 0; i < cfg.chains(); ++i)
      vs.push_back(Vertex::colored(i, values[digit[static_cast<std::size_t>(i)]], cfg.block_index));
    facets.emplace_back(std::move(vs));
    std::size_t pos = 0;
    while (pos < digit.size() && ++digit[pos] == 3) digit[pos++] = 0;
    if (pos == digit.size()) break;
  }
  return Complex::from_maximal_facets(std::move(facets));
}

/// Two disjoint full n-simplices: every chain committed, or every chain aborted.
inline Complex build_output_complex(const CbtConfig& cfg) {
  cfg.validate();
  std::vector<Simplex> facets;
  for (Value y : {Value::Zero, Value::One}) {
    std::vector<Vertex> vs;
    for (int i = 0; i < cfg.chains(); ++i) vs.push_back(Vertex::colored(i, y, cfg.block_index));
    facets.emplace_back(std::move(vs));
  }
  return Complex::from_maximal_facets(std::move(facets));
}

/// Image of one input simplex: the output subcomplex induced on its blocks
/// paired with the permitted output values.
inline Complex carrier_image(const Complex& output, const Simplex& sigma) {
  std::vector<Vertex> keep;
  for (const auto& v : sigma)
    for (Value y : permitted_outputs(classify(sigma))) keep.push_back(Vertex{v.block, y});
  return induced_subcomplex(output, std::move(keep));
}

inline CarrierMap build_carrier_map(const CbtConfig& cfg) {
  const Complex input = build_input_complex(cfg);
  const Complex output = build_output_complex(cfg);
  CarrierMap map;
  for (const auto& sigma : input.simplices()) map.emplace(sigma, carrier_image(output, sigma));
  return map;
}

inline Task build_task(const CbtConfig& cfg) {
  return Task{build_input_complex(cfg), build_output_complex(cfg), build_carrier_map(cfg), true};
}

inline Task build_colorless_task(const CbtConfig& cfg) { return colorless_projection(build_task(cfg)); }

}  // namespace cbtopo
