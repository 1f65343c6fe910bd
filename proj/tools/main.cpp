#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "contracts/errors.hpp"
#include "contracts/real.hpp"

namespace {

constexpr const char* kPrecisionEnv = "CONTRACTS_PRECISION_BITS";

int env_precision() {
  const char* v = std::getenv(kPrecisionEnv);
  if (v == nullptr || *v == '\0') return 0;
  char* end = nullptr;
  long bits = std::strtol(v, &end, 10);
  if (*end != '\0' || bits < 2 || bits > 1 << 20) {
    throw contracts::cli::UsageError(std::string(kPrecisionEnv) + " must be an integer bit count");
  }
  return static_cast<int>(bits);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace contracts::cli;
  CLI::App app{"Linear contract solver, constructions and experiment harness"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOptions g;
  int precision_flag = 0;
  app.add_option("--precision-bits", precision_flag,
                 std::string("Working mantissa bits (default: ") + kPrecisionEnv + ", else per construction)")
      ->check(CLI::Range(2, 1 << 20));
  app.add_option("--seed", g.seed, "Seed for every random draw")->capture_default_str();
  app.add_option("--out", g.out, "Output file (default: stdout)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

  std::string name;
  std::vector<std::string> params;

  auto* construct = app.add_subcommand("construct", "Build a named instance and write its full tables");
  construct->add_option("name", name,
                        "equal_revenue_submod_f | equal_revenue_supmod_c | rounded | perturbed | cc_augmented | "
                        "inapprox | random_monotone | additive")
      ->required();
  construct->add_option("params", params, "key=value parameters (n=3, kappa=60, k=5, variant=sub-sub, ...)");

  std::string instance, fptas_eps, method = "envelope", table_path;
  auto* solve = app.add_subcommand("solve", "Optimal contract, breakpoints and optionally the FPTAS");
  solve->add_option("--instance", instance, "Instance file or inline JSON")->required();
  solve->add_option("--fptas", fptas_eps, "Also run the FPTAS with this epsilon");
  solve->add_option("--method", method, "Breakpoint enumeration")
      ->check(CLI::IsMember({"envelope", "scan"}))
      ->capture_default_str();
  solve->add_option("--table", table_path, "Write the breakpoint table as CSV here");

  std::vector<std::string> checks;
  auto* verify = app.add_subcommand("verify", "Run verification suites; nonzero exit on any failure");
  verify->add_option("--instance", instance, "Instance file or inline JSON")->required();
  verify->add_option("--check", checks, "structure | equal-revenue | gap-bounds | sparse-demand | cc-invariants")
      ->required()
      ->check(CLI::IsMember({"structure", "equal-revenue", "gap-bounds", "sparse-demand", "cc-invariants"}));
  verify->add_option("params", params, "key=value parameters (tolerance=, trials=, sigma=, side=, grid=)");

  auto* experiment = app.add_subcommand("experiment", "Run an experiment sweep");
  experiment->add_option("name", name, "value-query | demand-sim | supply-sim | cc-sweep | protocol-bench")
      ->required();
  experiment->add_option("params", params, "key=value parameters (n=8, trials=10000, variant=sub-sub, pairs=1000, ...)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    g.precision_bits = precision_flag > 0 ? precision_flag : env_precision();
    if (g.precision_bits > 0) contracts::set_working_precision(g.precision_bits);
    if (*construct) return cmd_construct(g, name, Params(params));
    if (*solve) return cmd_solve(g, instance, fptas_eps, method, table_path);
    if (*verify) return cmd_verify(g, instance, checks, Params(params));
    if (*experiment) return cmd_experiment(g, name, Params(params));
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const contracts::ParameterError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntime;
  }
  return kUsage;
}
