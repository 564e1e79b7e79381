#include "redukit/commands.hpp"
#include "redukit/error.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

namespace {

struct Args {
  std::string scenario;
  std::optional<std::uint64_t> seed;
  std::string out;
  bool quiet = false;
  std::optional<long> samples;
  std::string element;
  std::string v;
  int threads = 0;
};

void add_common(CLI::App* cmd, Args& a) {
  cmd->add_option("--scenario", a.scenario, "Scenario JSON file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--seed", a.seed, "Seed (overrides the scenario)");
  cmd->add_option("--out", a.out, "Write the report JSON here");
  cmd->add_flag("--quiet", a.quiet, "Do not print the report");
}

std::optional<double> env_tolerance() {
  const char* raw = std::getenv("REDUKIT_TOL");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(raw, &end);
  if (end == raw || *end != '\0' || !(v > 0.0)) {
    throw redukit::Error(redukit::ErrorCode::InvalidArgument, "REDUKIT_TOL must be a positive number");
  }
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reductive-pair toolkit: structure checks, non-contraction constants, Mostow factorization"};
  app.require_subcommand(1);
  Args args;

  auto* check = app.add_subcommand("check", "Structural validations and the compatibility suite");
  auto* constant = app.add_subcommand("constant", "Certified non-contraction constant");
  auto* verify = app.add_subcommand("verify", "Sampled verification of the lower bound");
  auto* mostow = app.add_subcommand("mostow", "Mostow factorization g = k exp(P) exp(Z)");
  auto* focusing = app.add_subcommand("focusing", "Boundedness tests on one-parameter families");
  for (auto* c : {check, constant, verify, mostow, focusing}) add_common(c, args);
  verify->add_option("--samples", args.samples, "Number of (y, v) samples");
  verify->add_option("--threads", args.threads, "Worker threads (0: hardware)");
  mostow->add_option("--element", args.element, "Matrix to factor, as a JSON array of rows");
  focusing->add_option("--v", args.v, "Base vector, as a JSON array");

  CLI11_PARSE(app, argc, argv);

  try {
    const std::string name = app.get_subcommands().front()->get_name();
    const redukit::Scenario sc = redukit::load_scenario(args.scenario);
    redukit::CommandOptions opts;
    opts.seed = args.seed;
    opts.rank_tol = env_tolerance();
    opts.samples = args.samples;
    opts.threads = args.threads;
    try {
      if (!args.element.empty()) opts.element = redukit::matrix_from_json(nlohmann::json::parse(args.element));
      if (!args.v.empty()) opts.v = redukit::vector_from_json(nlohmann::json::parse(args.v));
    } catch (const nlohmann::json::exception& e) {
      throw redukit::Error(redukit::ErrorCode::InvalidArgument, e.what());
    }
    const redukit::Report report = redukit::run_command(name, sc, opts);
    if (!args.out.empty()) redukit::write_report(report, args.out);
    if (!args.quiet) std::cout << redukit::to_json(report).dump(2) << '\n';
    return report.exit_code;
  } catch (const redukit::Error& e) {
    std::cerr << "redukit: " << e.what() << '\n';
    return redukit::exit_code_for(e.code());
  }
}
