// harmfield: verify harmonicity of vector fields on hyperquadrics.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "harmfield/cli.hpp"

namespace cli = harmfield::cli;

int main(int argc, char** argv) {
  CLI::App app{"Harmonic vector fields on pseudo-Riemannian hyperquadrics"};
  app.require_subcommand(1);

  std::string spec_path;
  std::string format = "json";
  cli::Overrides overrides;
  std::optional<double> p, q, tol;
  std::optional<int> samples;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> target;

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"verify", "check (p,q)-harmonicity and the Weitzenboeck identity"},
      {"params", "solve for the metric parameters making a field harmonic"},
      {"twist", "apply the para-Kaehler twist and/or the canonical anti-isometry"},
      {"fixed-points", "fixed points of a Killing field on H^2_1"},
      {"normal-form", "congruence normal form of a Killing field on H^2_1"},
      {"first-variation", "compare the numerical first variation with the Euler-Lagrange integral"},
      {"energy", "energy densities at sample points"},
      {"catalog", "harmonic Killing representatives on the 2-dimensional quadrics"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--spec", spec_path, "JSON spec file")->check(CLI::ExistingFile);
    sub->add_option("--p", p, "metric parameter p");
    sub->add_option("--q", q, "metric parameter q");
    sub->add_option("--samples", samples, "number of sample points");
    sub->add_option("--seed", seed, "sampling seed");
    sub->add_option("--tol", tol, "verification tolerance");
    sub->add_option("--format", format, "report format")->check(CLI::IsMember({"json", "text"}));
    if (name == "twist") sub->add_option("--target", target, "j, anti or j+anti");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitInput;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  overrides.p = p;
  overrides.q = q;
  overrides.samples = samples;
  overrides.seed = seed;
  overrides.tol = tol;
  overrides.target = target;

  cli::Json spec = cli::Json::object();
  if (!spec_path.empty()) {
    std::ifstream in(spec_path);
    try {
      spec = cli::Json::parse(in);
    } catch (const cli::Json::parse_error& e) {
      cli::Json report{{"command", command},
                       {"error", {{"kind", "SchemaError"}, {"message", e.what()}}},
                       {"pass", false}};
      std::cout << (format == "json" ? report.dump(2) + "\n" : cli::render_text(report));
      return cli::kExitInput;
    }
  } else if (command != "catalog") {
    std::cerr << "--spec is required for " << command << "\n";
    return cli::kExitInput;
  }

  const cli::CommandResult result = cli::run_command(command, spec, overrides);
  std::cout << (format == "json" ? result.report.dump(2) + "\n" : cli::render_text(result.report));
  return result.exit_code;
}
