#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cbtopo {

enum class errc {
  empty_input,
  malformed_simplex,
  unknown_vertex,
  dimension_out_of_range,
  not_colored,
  bad_resilience,
  incomplete_carrier,
  resource_bound,
  invalid_schedule,
  invalid_config,
  parse_error,
};

constexpr std::string_view to_string(errc code) noexcept {
  switch (code) {
    case errc::empty_input: return "EmptyInput";
    case errc::malformed_simplex: return "MalformedSimplex";
    case errc::unknown_vertex: return "UnknownVertex";
    case errc::dimension_out_of_range: return "DimensionOutOfRange";
    case errc::not_colored: return "NotColored";
    case errc::bad_resilience: return "BadResilience";
    case errc::incomplete_carrier: return "IncompleteCarrier";
    case errc::resource_bound: return "ResourceBound";
    case errc::invalid_schedule: return "InvalidSchedule";
    case errc::invalid_config: return "InvalidConfig";
    case errc::parse_error: return "ParseError";
  }
  return "Unknown";
}

// Every failure raised by the library carries one of the codes above.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace cbtopo
