#include "ansatz/error.hpp"

namespace ansatz {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_input: return "invalid input";
    case ErrorKind::unsupported_degree: return "unsupported degree";
    case ErrorKind::singular_step: return "singular step";
    case ErrorKind::degenerate_recurrence: return "degenerate recurrence";
    case ErrorKind::internal_consistency: return "internal consistency";
    case ErrorKind::singularity: return "singularity";
    case ErrorKind::no_representation: return "no representation";
    case ErrorKind::path_planning: return "path planning";
    case ErrorKind::path_failure: return "path failure";
    case ErrorKind::degenerate_normalization: return "degenerate normalization";
    case ErrorKind::no_valid_representation: return "no valid representation";
    case ErrorKind::out_of_domain: return "out of domain";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace ansatz
