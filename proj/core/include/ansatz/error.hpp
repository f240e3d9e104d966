#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ansatz {

enum class ErrorKind {
  invalid_input,
  unsupported_degree,
  singular_step,
  degenerate_recurrence,
  internal_consistency,
  singularity,
  no_representation,
  path_planning,
  path_failure,
  degenerate_normalization,
  no_valid_representation,
  out_of_domain,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so callers (the CLI in
// particular) can map it to a stable exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ansatz
