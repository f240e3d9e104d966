#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "ansatz/endpoints.hpp"
#include "ansatz/error.hpp"
#include "ansatz/recurrence.hpp"
#include "ansatz/resolvent.hpp"

namespace ansatz::cli {

using nlohmann::json;

/// A parsed problem file.
///
///   {
///     "order": 2,
///     "coefficients": {"alpha": 1, "a": 2, "beta": [1, 0], ...},   // or a list
///     "shift": 0,                                                  // optional
///     "initial_conditions": [{"x": 0, "value": 1}],
///     "x_window": {"min": 0, "max": 20},
///     "tolerance": 1e-10                                           // optional
///   }
struct Problem {
  RecurrenceSpec spec;
  Interval window;
  bool has_window = false;
  double tolerance = 1e-10;
};

/// Throws invalid_input naming the offending field.
Problem parse_problem(const json& doc);
Problem parse_problem_text(const std::string& text);
Problem load_problem(const std::string& path);
json problem_to_json(const Problem& problem);

json complex_to_json(Complex z);
Complex complex_from_json(const json& j, const std::string& field);

json weight_to_json(const WeightForm& w);
WeightForm weight_from_json(const json& j);

json derivation_to_json(const ResolventSolution& sol, const std::vector<EndpointSpec>& endpoints,
                        const std::vector<EndpointPair>& pairs);

/// 0 ok, 1 input, 2 degenerate recurrence, 3 no endpoints, 4 no representation, 5 verification failed.
int exit_code(ErrorKind kind);

/// Entry point; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ansatz::cli
