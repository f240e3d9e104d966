#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "ansatz/families.hpp"
#include "ansatz/representation.hpp"

namespace ansatz::cli {

namespace {

[[noreturn]] void bad_field(const std::string& field, const std::string& why) {
  throw Error(ErrorKind::invalid_input, "field '" + field + "': " + why);
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string num(Complex z) {
  if (z.imag() == 0.0) return num(z.real());
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

std::string poly_text(const Polynomial& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.coefficients().size(); ++i) s += (i ? ", " : "") + num(p.coefficients()[i]);
  return s + "]";
}

json poly_json(const Polynomial& p) {
  json arr = json::array();
  for (Complex c : p.coefficients()) arr.push_back(complex_to_json(c));
  return arr;
}

Polynomial poly_from_json(const json& j, const std::string& field) {
  if (!j.is_array()) bad_field(field, "expected a list of coefficients");
  std::vector<Complex> c;
  for (std::size_t i = 0; i < j.size(); ++i) c.push_back(complex_from_json(j[i], field + "[" + std::to_string(i) + "]"));
  return Polynomial(std::move(c));
}

json interval_json(const Interval& w) { return {{"min", w.lo}, {"max", w.hi}}; }

json cut_json(const BranchCut& c) { return {{"angle", c.angle}, {"sheet", c.sheet}}; }

BranchCut cut_from_json(const json& j, const std::string& field) {
  if (!j.is_object() || !j.contains("angle")) bad_field(field, "expected {angle, sheet}");
  return {j.at("angle").get<double>(), j.value("sheet", 0)};
}

json endpoint_json(const EndpointSpec& e) {
  json j;
  j["kind"] = e.kind == EndpointKind::finite ? "finite" : "infinite";
  if (e.kind == EndpointKind::finite) {
    j["location"] = complex_to_json(e.location);
    if (e.approach) j["approach"] = complex_to_json(*e.approach);
  } else {
    j["direction"] = e.direction;
  }
  j["window"] = interval_json(e.window);
  j["conditional"] = e.conditional;
  return j;
}

std::string endpoint_text(const EndpointSpec& e) {
  if (e.kind == EndpointKind::infinite) return "ray at angle " + num(e.direction);
  std::string s = "t = " + num(e.location);
  if (e.approach) s += " approached along " + num(*e.approach);
  return s;
}

std::size_t index_of(const std::vector<EndpointSpec>& eps, const EndpointSpec& e) {
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const EndpointSpec& q = eps[i];
    if (q.kind == e.kind && q.location == e.location && q.direction == e.direction && q.approach == e.approach) {
      return i;
    }
  }
  return eps.size();
}

Interval parse_window(const std::string& text) {
  double lo = 0.0;
  double hi = 0.0;
  char sep = 0;
  std::istringstream in(text);
  if (!(in >> lo >> sep >> hi) || (sep != ',' && sep != ':')) {
    throw Error(ErrorKind::invalid_input, "--window expects lo,hi");
  }
  return {lo, hi};
}

std::vector<double> parse_x_list(const std::string& text) {
  std::vector<double> xs;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      xs.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::invalid_input, "--x: cannot parse '" + item + "'");
    }
  }
  return xs;
}

std::vector<double> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw Error(ErrorKind::invalid_input, "--n expects a..b");
  int a = 0;
  int b = 0;
  try {
    a = std::stoi(text.substr(0, dots));
    b = std::stoi(text.substr(dots + 2));
  } catch (const std::exception&) {
    throw Error(ErrorKind::invalid_input, "--n expects integers a..b");
  }
  std::vector<double> xs;
  for (int n = a; n <= b; ++n) xs.push_back(n);
  return xs;
}

std::map<std::string, Complex> parse_params(const std::vector<std::string>& items) {
  std::map<std::string, Complex> params;
  for (const std::string& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw Error(ErrorKind::invalid_input, "--param expects key=value");
    const std::string key = item.substr(0, eq);
    json value;
    try {
      value = json::parse(item.substr(eq + 1));
    } catch (const json::parse_error&) {
      bad_field(key, "expected a number or [re, im]");
    }
    params[key] = complex_from_json(value, key);
  }
  return params;
}

struct Flags {
  std::string file;
  std::string family;
  std::vector<std::string> params;
  std::string mode = "eval";
  double tol = 0.0;
  std::string window;
  std::string format = "human";
  bool verify = false;
  int pair_index = 0;
  std::string xs;
  std::string range;
  int probes = 5;
  std::string reference;
};

class Runner {
 public:
  Runner(const Flags& flags, bool tol_given, std::ostream& out) : flags_(flags), out_(out) {
    if (flags.format != "human" && flags.format != "json" && flags.format != "csv") {
      throw Error(ErrorKind::invalid_input, "--format must be human, json or csv");
    }
    if (!flags.family.empty()) {
      family_ = make_family(flags.family, parse_params(flags.params));
      problem_.spec = family_->spec;
      problem_.window = family_->window;
      problem_.has_window = true;
    } else {
      problem_ = load_problem(flags.file);
    }
    if (!flags.window.empty()) {
      problem_.window = parse_window(flags.window);
      problem_.has_window = true;
    }
    if (tol_given) problem_.tolerance = flags.tol;
    if (!problem_.has_window) throw Error(ErrorKind::invalid_input, "field 'x_window': missing (or pass --window)");
  }

  int problem() {
    out_ << problem_to_json(problem_).dump(2) << "\n";
    return 0;
  }

  int derive() {
    const ResolventSolution sol = derive_resolvent(problem_.spec);
    const std::vector<EndpointSpec> endpoints = find_endpoints(sol, problem_.window);
    const std::vector<EndpointPair> pairs = enumerate_pairs(endpoints);
    if (flags_.format == "json") {
      out_ << derivation_to_json(sol, endpoints, pairs).dump(2) << "\n";
      return 0;
    }
    out_ << "D(t)            = " << poly_text(sol.boundary_poly) << "\n";
    out_ << "L(t) numerator  = " << poly_text(sol.log_derivative.numerator()) << "\n";
    out_ << "L(t) denominator= " << poly_text(sol.log_derivative.denominator()) << "\n";
    out_ << "Q(t)            = D(t) h(t)\n";
    out_ << "h(t): exp_poly  = " << poly_text(sol.weight.exp_poly) << "\n";
    for (const PowerFactor& f : sol.weight.power_factors) {
      out_ << "  power factor (t - " << num(f.root) << ")^" << num(f.exponent) << "\n";
    }
    for (const EssentialTerm& e : sol.weight.essential_terms) {
      out_ << "  essential term exp(" << num(e.strength) << " / (t - " << num(e.pole) << "))\n";
    }
    out_ << "endpoints:\n";
    for (std::size_t i = 0; i < endpoints.size(); ++i) {
      const EndpointSpec& e = endpoints[i];
      out_ << "  [" << i << "] " << endpoint_text(e) << ", x in [" << num(e.window.lo) << ", " << num(e.window.hi)
           << "]" << (e.conditional ? " (conditional)" : "") << "\n";
    }
    out_ << "pairs:\n";
    for (const EndpointPair& p : pairs) {
      out_ << "  " << index_of(endpoints, p.lower) << " -> " << index_of(endpoints, p.upper) << ", x in ["
           << num(p.joint_window.lo) << ", " << num(p.joint_window.hi) << "]\n";
    }
    return 0;
  }

  int eval() {
    std::vector<double> xs;
    if (!flags_.xs.empty()) xs = parse_x_list(flags_.xs);
    if (!flags_.range.empty()) {
      const std::vector<double> more = parse_range(flags_.range);
      xs.insert(xs.end(), more.begin(), more.end());
    }
    const IntegralRepresentation rep = pick(solve_problem(problem_));
    const bool with_oracle = family_.has_value();

    std::vector<std::optional<Complex>> oracles;
    double oracle_scale = 0.0;
    for (double x : xs) {
      std::optional<Complex> oracle;
      if (with_oracle) {
        try {
          oracle = oracle_eval(*family_, x);
          oracle_scale = std::max(oracle_scale, std::abs(*oracle));
        } catch (const Error&) {
        }
      }
      oracles.push_back(oracle);
    }

    json rows = json::array();
    std::vector<std::vector<std::string>> table;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double x = xs[i];
      const Evaluation ev = evaluate_detailed(rep, x);
      json row = {{"x", x}, {"value", complex_to_json(ev.value)}, {"error_estimate", ev.quadrature.error_estimate}};
      std::vector<std::string> cells = {num(x), num(ev.value.real()), num(ev.value.imag()),
                                        num(ev.quadrature.error_estimate)};
      if (flags_.verify) {
        const double r = ansatz::verify(rep, {Complex{x}}).front().relative_residual;
        row["residual"] = r;
        cells.push_back(num(r));
      }
      if (with_oracle) {
        if (const std::optional<Complex>& oracle = oracles[i]) {
          const double diff = relative_difference(ev.value, *oracle, oracle_scale);
          row["oracle"] = complex_to_json(*oracle);
          row["relative_difference"] = diff;
          cells.insert(cells.end(), {num(oracle->real()), num(oracle->imag()), num(diff)});
        } else {
          cells.insert(cells.end(), {"", "", ""});
        }
      }
      rows.push_back(row);
      table.push_back(cells);
    }

    std::vector<std::string> header = {"x", "re", "im", "error_estimate"};
    if (flags_.verify) header.push_back("residual");
    if (with_oracle) header.insert(header.end(), {"oracle_re", "oracle_im", "relative_difference"});
    emit(header, table, [&] {
      return json{{"representation", describe(rep)}, {"rows", rows}};
    });
    return 0;
  }

  int verify() {
    std::optional<Problem> reference;
    if (!flags_.reference.empty()) reference = load_problem(flags_.reference);
    const Problem& solved = reference ? *reference : problem_;
    const IntegralRepresentation rep = pick(solve_problem(solved));
    const double limit = residual_tolerance(problem_.tolerance);
    const ScalarFunction f = [&rep](Complex x) { return evaluate(rep, x); };

    Interval window = rep.pair.joint_window.intersect(problem_.window);
    json rows = json::array();
    std::vector<std::vector<std::string>> table;
    bool ok = true;
    for (double x : probe_points(problem_.spec, window, flags_.probes)) {
      const ResidualReport r = residual(problem_.spec, f, x);
      const bool pass = r.relative_residual <= limit;
      ok = ok && pass;
      rows.push_back({{"x", x}, {"absolute_residual", r.absolute_residual}, {"relative_residual", r.relative_residual},
                      {"pass", pass}});
      table.push_back({num(x), num(r.absolute_residual), num(r.relative_residual), pass ? "pass" : "FAIL"});
    }
    emit({"x", "absolute_residual", "relative_residual", "status"}, table, [&] {
      return json{{"representation", describe(rep)}, {"tolerance", limit}, {"passed", ok}, {"rows", rows}};
    });
    return ok ? 0 : 5;
  }

 private:
  std::vector<IntegralRepresentation> solve_problem(const Problem& p) const {
    SolveOptions opts;
    opts.tol = p.tolerance;
    return solve_detailed(p.spec, p.window, opts).representations;
  }

  IntegralRepresentation pick(std::vector<IntegralRepresentation> reps) const {
    if (flags_.pair_index < 0 || static_cast<std::size_t>(flags_.pair_index) >= reps.size()) {
      throw Error(ErrorKind::invalid_input, "--pair-index " + std::to_string(flags_.pair_index) + " out of range (" +
                                                std::to_string(reps.size()) + " representations)");
    }
    return std::move(reps[flags_.pair_index]);
  }

  json describe(const IntegralRepresentation& rep) const {
    return {{"index", flags_.pair_index},
            {"principal", flags_.pair_index == 0},
            {"lower", endpoint_json(rep.pair.lower)},
            {"upper", endpoint_json(rep.pair.upper)},
            {"normalization", complex_to_json(rep.normalization)}};
  }

  template <typename MakeJson>
  void emit(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& table,
            MakeJson make_json) {
    if (flags_.format == "json") {
      out_ << make_json().dump(2) << "\n";
      return;
    }
    const char* sep = flags_.format == "csv" ? "," : "\t";
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? sep : "") << cells[i];
      out_ << "\n";
    };
    if (flags_.format == "human") out_ << "# ";
    line(header);
    for (const auto& cells : table) line(cells);
  }

  const Flags& flags_;
  std::ostream& out_;
  Problem problem_;
  std::optional<FamilyDescriptor> family_;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--tol", f.tol, "Quadrature tolerance");
  sub->add_option("--window", f.window, "x window as lo,hi");
  sub->add_option("--format", f.format, "human, json or csv");
}

void add_eval(CLI::App* sub, Flags& f) {
  sub->add_option("--x", f.xs, "Comma-separated x values");
  sub->add_option("--n", f.range, "Integer range a..b");
  sub->add_flag("--verify", f.verify, "Add the recurrence residual column");
  sub->add_option("--pair-index", f.pair_index, "Representation to use (0 = principal)");
}

void add_verify(CLI::App* sub, Flags& f) {
  sub->add_option("--probes", f.probes, "Number of probe points");
  sub->add_option("--reference", f.reference, "Solve this problem file and check its representation");
}

}  // namespace

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j, const std::string& field) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  bad_field(field, "expected a number or [re, im]");
}

Problem parse_problem(const json& doc) {
  if (!doc.is_object()) bad_field("<root>", "expected an object");
  Problem p;
  RecurrenceSpec& s = p.spec;
  if (!doc.contains("order")) bad_field("order", "missing");
  if (!doc["order"].is_number_integer()) bad_field("order", "expected 1 or 2");
  s.order = doc["order"].get<int>();
  if (s.order != 1 && s.order != 2) bad_field("order", "expected 1 or 2");
  s.shift = s.order == 1 ? -1 : 0;

  if (!doc.contains("coefficients")) bad_field("coefficients", "missing");
  const json& co = doc["coefficients"];
  const std::vector<std::string> names = s.order == 2 ? std::vector<std::string>{"alpha", "a", "beta", "b", "gamma", "c"}
                                                      : std::vector<std::string>{"beta", "b", "gamma", "c"};
  std::map<std::string, Complex> values;
  if (co.is_array()) {
    if (co.size() != names.size()) {
      bad_field("coefficients", "expected " + std::to_string(names.size()) + " entries");
    }
    for (std::size_t i = 0; i < names.size(); ++i) values[names[i]] = complex_from_json(co[i], "coefficients." + names[i]);
  } else if (co.is_object()) {
    for (const auto& [key, val] : co.items()) {
      if (std::find(names.begin(), names.end(), key) == names.end()) bad_field("coefficients." + key, "unknown");
    }
    for (const std::string& n : names) {
      if (!co.contains(n)) bad_field("coefficients." + n, "missing");
      values[n] = complex_from_json(co[n], "coefficients." + n);
    }
  } else {
    bad_field("coefficients", "expected an object or a list");
  }
  if (s.order == 2) {
    s.alpha = values["alpha"];
    s.a = values["a"];
  }
  s.beta = values["beta"];
  s.b = values["b"];
  s.gamma = values["gamma"];
  s.c = values["c"];

  if (doc.contains("shift")) {
    if (!doc["shift"].is_number_integer()) bad_field("shift", "expected an integer");
    s.shift = doc["shift"].get<int>();
  }
  if (!doc.contains("initial_conditions")) bad_field("initial_conditions", "missing");
  const json& ics = doc["initial_conditions"];
  if (!ics.is_array() || ics.empty()) bad_field("initial_conditions", "expected a nonempty list");
  for (std::size_t i = 0; i < ics.size(); ++i) {
    const std::string f = "initial_conditions[" + std::to_string(i) + "]";
    if (!ics[i].is_object() || !ics[i].contains("x") || !ics[i].contains("value")) bad_field(f, "expected {x, value}");
    s.initial_conditions.push_back(
        {complex_from_json(ics[i]["x"], f + ".x"), complex_from_json(ics[i]["value"], f + ".value")});
  }
  if (doc.contains("x_window")) {
    const json& w = doc["x_window"];
    if (!w.is_object() || !w.contains("min") || !w.contains("max") || !w["min"].is_number() || !w["max"].is_number()) {
      bad_field("x_window", "expected {min, max}");
    }
    p.window = {w["min"].get<double>(), w["max"].get<double>()};
    if (p.window.empty()) bad_field("x_window", "min exceeds max");
    p.has_window = true;
  }
  if (doc.contains("tolerance")) {
    if (!doc["tolerance"].is_number()) bad_field("tolerance", "expected a number");
    p.tolerance = doc["tolerance"].get<double>();
    if (!(p.tolerance >= 1e-14 && p.tolerance <= 1e-2)) bad_field("tolerance", "must lie in [1e-14, 1e-2]");
  }
  try {
    s.validate();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::invalid_input) bad_field("coefficients", e.what());
    throw;
  }
  return p;
}

Problem parse_problem_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::invalid_input, std::string("malformed problem file: ") + e.what());
  }
  return parse_problem(doc);
}

Problem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::invalid_input, "cannot open problem file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_problem_text(text.str());
}

json problem_to_json(const Problem& p) {
  const RecurrenceSpec& s = p.spec;
  json j;
  j["order"] = s.order;
  json co;
  if (s.order == 2) {
    co["alpha"] = complex_to_json(s.alpha);
    co["a"] = complex_to_json(s.a);
  }
  co["beta"] = complex_to_json(s.beta);
  co["b"] = complex_to_json(s.b);
  co["gamma"] = complex_to_json(s.gamma);
  co["c"] = complex_to_json(s.c);
  j["coefficients"] = co;
  j["shift"] = s.shift;
  json ics = json::array();
  for (const InitialCondition& ic : s.initial_conditions) {
    ics.push_back({{"x", complex_to_json(ic.x)}, {"value", complex_to_json(ic.value)}});
  }
  j["initial_conditions"] = ics;
  if (p.has_window) j["x_window"] = interval_json(p.window);
  j["tolerance"] = p.tolerance;
  return j;
}

json weight_to_json(const WeightForm& w) {
  json j;
  j["exp_poly"] = poly_json(w.exp_poly);
  j["power_factors"] = json::array();
  for (const PowerFactor& f : w.power_factors) {
    j["power_factors"].push_back(
        {{"root", complex_to_json(f.root)}, {"exponent", complex_to_json(f.exponent)}, {"cut", cut_json(f.cut)}});
  }
  j["essential_terms"] = json::array();
  for (const EssentialTerm& e : w.essential_terms) {
    j["essential_terms"].push_back({{"pole", complex_to_json(e.pole)}, {"strength", complex_to_json(e.strength)}});
  }
  j["branch_anchor"] = complex_to_json(w.branch_anchor);
  j["origin_cut"] = cut_json(w.origin_cut);
  return j;
}

WeightForm weight_from_json(const json& j) {
  if (!j.is_object()) bad_field("weight", "expected an object");
  WeightForm w;
  w.exp_poly = poly_from_json(j.value("exp_poly", json::array()), "weight.exp_poly");
  for (const json& f : j.value("power_factors", json::array())) {
    w.power_factors.push_back({complex_from_json(f.at("root"), "weight.power_factors.root"),
                               complex_from_json(f.at("exponent"), "weight.power_factors.exponent"),
                               f.contains("cut") ? cut_from_json(f["cut"], "weight.power_factors.cut") : BranchCut{}});
  }
  for (const json& e : j.value("essential_terms", json::array())) {
    w.essential_terms.push_back({complex_from_json(e.at("pole"), "weight.essential_terms.pole"),
                                 complex_from_json(e.at("strength"), "weight.essential_terms.strength")});
  }
  if (j.contains("branch_anchor")) w.branch_anchor = complex_from_json(j["branch_anchor"], "weight.branch_anchor");
  if (j.contains("origin_cut")) w.origin_cut = cut_from_json(j["origin_cut"], "weight.origin_cut");
  return w;
}

json derivation_to_json(const ResolventSolution& sol, const std::vector<EndpointSpec>& endpoints,
                        const std::vector<EndpointPair>& pairs) {
  json j;
  j["order"] = sol.order;
  j["shift"] = sol.shift;
  j["boundary_polynomial"] = poly_json(sol.boundary_poly);
  j["log_derivative"] = {{"numerator", poly_json(sol.log_derivative.numerator())},
                         {"denominator", poly_json(sol.log_derivative.denominator())}};
  j["weight"] = weight_to_json(sol.weight);
  j["boundary_function"] = {{"polynomial", poly_json(sol.boundary_poly)}, {"times", "weight"}};
  j["endpoints"] = json::array();
  for (const EndpointSpec& e : endpoints) j["endpoints"].push_back(endpoint_json(e));
  j["pairs"] = json::array();
  for (const EndpointPair& p : pairs) {
    j["pairs"].push_back({{"lower", index_of(endpoints, p.lower)},
                          {"upper", index_of(endpoints, p.upper)},
                          {"window", interval_json(p.joint_window)}});
  }
  return j;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_input:
    case ErrorKind::out_of_domain:
      return 1;
    case ErrorKind::degenerate_recurrence:
    case ErrorKind::unsupported_degree:
      return 2;
    case ErrorKind::no_representation:
      return 3;
    default:
      return 4;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Integral representations for linear-coefficient difference equations", "ansatz"};
  app.require_subcommand(1, 1);
  Flags flags;

  auto* derive = app.add_subcommand("derive", "Derive weight, endpoints and pairs");
  derive->add_option("problem", flags.file, "Problem file (JSON)")->required();
  add_common(derive, flags);

  auto* eval = app.add_subcommand("eval", "Evaluate the representation");
  eval->add_option("problem", flags.file, "Problem file (JSON)")->required();
  add_common(eval, flags);
  add_eval(eval, flags);

  auto* verify = app.add_subcommand("verify", "Check the recurrence residual at probe points");
  verify->add_option("problem", flags.file, "Problem file (JSON)")->required();
  add_common(verify, flags);
  add_verify(verify, flags);
  verify->add_option("--pair-index", flags.pair_index, "Representation to use (0 = principal)");

  auto* family = app.add_subcommand("family", "Run a built-in family");
  family->add_option("name", flags.family, "gamma, legendre, hermite, laguerre or gauss2f1")->required();
  family->add_option("--param", flags.params, "Family parameter key=value (value: number or [re, im])");
  family->add_option("--mode", flags.mode, "eval, verify, derive or problem")
      ->check(CLI::IsMember({"eval", "verify", "derive", "problem"}));
  add_common(family, flags);
  add_eval(family, flags);
  add_verify(family, flags);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  const auto* chosen = app.get_subcommands().front();
  try {
    Runner runner(flags, chosen->count("--tol") > 0, out);
    const std::string& cmd = chosen->get_name();
    if (cmd == "derive") return runner.derive();
    if (cmd == "eval") return runner.eval();
    if (cmd == "verify") return runner.verify();
    if (flags.mode == "derive") return runner.derive();
    if (flags.mode == "verify") return runner.verify();
    if (flags.mode == "problem") return runner.problem();
    return runner.eval();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace ansatz::cli
