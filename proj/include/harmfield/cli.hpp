#pragma once

// Spec parsing and report generation behind the command-line tool.

#include <json.hpp>

#include <optional>
#include <string>

#include "harmfield/cgmetric.hpp"
#include "harmfield/fields.hpp"
#include "harmfield/quadric.hpp"
#include "harmfield/rational.hpp"

namespace harmfield::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "1.0.0";
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInput = 2;

struct Tolerances {
  double harmonic = 1e-9;
  double identity = 1e-8;
};

struct FieldSpec {
  Quadric quadric = Quadric::sphere(2, 0);
  std::optional<VectorField> field;
  std::optional<MetricParams> params;
  Tolerances tolerances;
  SamplingOptions sampling;
  Json raw;
};

/// Command-line overrides; unset members defer to the spec.
struct Overrides {
  std::optional<double> p;
  std::optional<double> q;
  std::optional<int> samples;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<std::string> target;
};

/// Throws SchemaError on malformed input. `require_field` rejects specs
/// without a field block.
FieldSpec parse_spec(const Json& spec, bool require_field = true);

Json quadric_to_json(const Quadric& m);
/// The field in spec form, so a report can be fed back as input.
Json field_to_json(const VectorField& field);

struct CommandResult {
  Json report;
  int exit_code = kExitPass;
};

/// Runs one subcommand. Library errors become structured report entries;
/// the exit code follows kExit*.
CommandResult run_command(const std::string& command, const Json& spec, const Overrides& overrides);

/// Seed precedence: flag, spec, HARMFIELD_SEED, built-in default.
std::uint64_t resolve_seed(const Overrides& overrides, const Json& spec);

/// Human-readable rendering of a report.
std::string render_text(const Json& report);

Json rational_to_json(const Rational& r);

}  // namespace harmfield::cli
