#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace epilip {

// Every failure surfaced by the library carries one of these codes. The
// textual names are part of the CLI contract.
enum class Errc {
  malformed_syntax,
  dimension_mismatch,
  zero_objectives,
  zero_objective_vector,
  not_solvable,
  zero_direction,
  infeasible_point,
  not_in_dom_s,
  infeasible,
  unbounded_scalarization,
  invalid_weights,
  anchor_not_in_graph,
  anchor_not_on_front,
  anchor_not_optimal,
  lip_p_unsupported,
  not_dual_consistent,
  row_not_multiple_of_c,
  on_domain_boundary,
  empty_set,
  dimension_too_large,
};

std::string_view error_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }

 private:
  Errc code_;
};

}  // namespace epilip
