#pragma once

#include <json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "okb/klyachko.hpp"
#include "okb/okounkov.hpp"

namespace okb::cli {

using Json = nlohmann::ordered_json;

// Input that cannot be read as a problem file at all (syntax or shape).
struct MalformedInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnknownExample : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A class as written in a file: either basis coefficients (flag order) or
// a full invariant divisor (input ray order) to be normalized.
struct ClassSpec {
  std::optional<IntVector> coeffs;
  std::optional<IntVector> divisor;
  Int twist = 0;
};

struct SplitData {
  IntVector h1;
  IntVector h2;
};

struct ProblemFile {
  std::string name;
  Fan fan;
  Bundle2 bundle;
  std::optional<std::size_t> tau;
  std::vector<ClassSpec> classes;
  std::optional<SplitData> split;
  std::vector<std::string> warnings;
};

ProblemFile parse_problem(const Json& j);
// Reports syntax errors with line and column.
ProblemFile load_problem_text(const std::string& text);
Json to_json(const ProblemFile& p);

std::vector<std::string> example_names();
ProblemFile builtin_example(const std::string& name, const std::vector<std::string>& args);
ProblemFile tangent_p2();
ProblemFile split_p1(Int a, Int b);
ProblemFile hirzebruch(Int e);
ProblemFile pn_sum(std::size_t n);
Fan projective_space_fan(std::size_t n);

// "m_{n+1},...,m_d;w"
DivisorClass parse_class(const std::string& text, std::size_t expected_coeffs);
DivisorClass resolve_class(const ClassSpec& spec, const Fan& f, const FlagBasis& b);

std::string rational_string(const Rational& q);
Json flag_json(const FlagBasis& b);
Json context_json(const FlagContext& ctx);
Json cone_json(const GlobalCone& gc);
Json report_json(const ValidationReport& r);

}  // namespace okb::cli
