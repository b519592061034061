#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace harmtree {

enum class ErrorKind {
  invalid_config,
  invalid_address,
  root_has_no_parent,
  no_edge_at_root,
  splitter_violates_sum,
  class_not_in_table,
  representation_unsupported,
  wrong_degree,
  depth_insufficient,
  nonintegral_p_in_exact_mode,
  unsupported_p,
  family_model_mismatch,
  parse_error,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` lets callers map failures
/// to exit codes without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace harmtree
