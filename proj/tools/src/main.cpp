#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <map>

#include "pilotwave/app/runners.hpp"
#include "pilotwave/errors.hpp"

using namespace pilotwave;

namespace {

using Runner = std::function<int(const app::Scenario&, std::ostream&, std::ostream&)>;

int dispatch(const Runner& run, const std::string& config, const std::string& out_path, const std::string& policy) {
  app::Scenario s;
  try {
    s = app::load_scenario(config);
    if (!policy.empty()) s.policy = app::parse_policy(policy);
    if (!out_path.empty()) s.output.path = out_path;
  } catch (const app::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return app::kInputError;
  } catch (const app::ValidationError& e) {
    std::cerr << "invalid scenario: " << e.what() << '\n';
    return app::kInputError;
  }

  try {
    if (s.output.path.empty()) return run(s, std::cout, std::cerr);
    std::ofstream file(s.output.path, std::ios::binary);
    if (!file) {
      std::cerr << "cannot write " << s.output.path << '\n';
      return app::kInputError;
    }
    const int code = run(s, file, std::cerr);
    file.flush();
    if (!file) {
      std::cerr << "write failed: " << s.output.path << '\n';
      return app::kInputError;
    }
    return code;
  } catch (const app::ValidationError& e) {
    std::cerr << "invalid scenario: " << e.what() << '\n';
    return app::kInputError;
  } catch (const InvalidParams& e) {
    std::cerr << "invalid parameters: " << e.what() << '\n';
    return app::kInputError;
  } catch (const GridTooCoarse& e) {
    std::cerr << "GridTooCoarse: " << e.what() << "; raise residual.grid_rho / residual.grid_phi\n";
    return app::kNumericalError;
  } catch (const Error& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return app::kNumericalError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Landau orbits, field modes and particle/field consistency checks"};
  cli.require_subcommand(1);

  std::string config;
  std::string out_path;
  std::string policy;
  const std::map<std::string, std::pair<std::string, Runner>> commands{
      {"orbit", {"closed-form orbits per n", app::run_orbit}},
      {"spectrum", {"pair frequencies against the Landau levels", app::run_spectrum}},
      {"pairs", {"every selection-rule pair, ranked", app::run_pairs}},
      {"check", {"JSON consistency report; exit 1 on failure", app::run_check}},
      {"residual", {"finite-difference field-equation residuals", app::run_residual}},
  };
  for (const auto& [name, entry] : commands) {
    auto* sub = cli.add_subcommand(name, entry.first);
    sub->add_option("--config", config, "scenario file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_path, "output file (default: standard output)");
    sub->add_option("--policy", policy, "pair policy")->check(CLI::IsMember({"strict", "permissive"}));
  }

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? app::kOk : app::kInputError;
  }
  for (const auto& [name, entry] : commands) {
    if (cli.got_subcommand(name)) return dispatch(entry.second, config, out_path, policy);
  }
  return app::kInputError;
}
