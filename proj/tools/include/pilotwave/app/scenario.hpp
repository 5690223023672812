#pragma once

// Flat `key = value` scenario files.
//
//   # comment
//   charge = -1
//   field_b = 1e-3
//   m_eff = 1
//   omega0 = 1
//   n_list = 1, 2, 3

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pilotwave/medium.hpp"
#include "pilotwave/modes.hpp"
#include "pilotwave/transparency.hpp"

namespace pilotwave::app {

/// Malformed document. line is 1-based, 0 when the problem is not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, std::string key, const std::string& what);
  [[nodiscard]] int line() const { return line_; }
  [[nodiscard]] const std::string& key() const { return key_; }

 private:
  int line_;
  std::string key_;
};

/// Well-formed document describing an invalid scenario.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { csv, json };

struct OutputSpec {
  std::string path;  // empty: standard output
  OutputFormat format = OutputFormat::csv;
};

/// Knobs for the residual subcommand. Zero grid sizes mean the default grid.
struct ResidualSpec {
  int grid_rho = 0;
  int grid_phi = 0;
  double omega_perturbation = 0.0;  // relative shift applied to each mode frequency
};

struct Scenario {
  MediumParams params;
  std::vector<int> n_list;
  modes::PairPolicy policy = modes::PairPolicy::strict;
  transparency::Tolerances tolerances;
  double u0 = 1.0;
  OutputSpec output;
  ResidualSpec residual;
};

[[nodiscard]] Scenario parse_scenario(std::string_view text);
[[nodiscard]] Scenario load_scenario(const std::filesystem::path& path);

/// Nonempty n_list with every entry >= min_n.
void require_levels(const Scenario& s, int min_n);

[[nodiscard]] modes::PairPolicy parse_policy(std::string_view text);
[[nodiscard]] std::string_view policy_name(modes::PairPolicy policy);

}  // namespace pilotwave::app
