#pragma once

// One function per subcommand. Each writes its document to `out` and
// returns the process exit status (see ExitCode).

#include <ostream>

#include "pilotwave/app/scenario.hpp"
#include "pilotwave/app/table.hpp"

namespace pilotwave::app {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kInputError = 2,
  kNumericalError = 3,
};

[[nodiscard]] Table orbit_table(const Scenario& s);
/// Per-n rows and the enumerated pairs, in that order.
[[nodiscard]] std::pair<Table, Table> spectrum_tables(const Scenario& s);
[[nodiscard]] Table pairs_table(const Scenario& s);
[[nodiscard]] nlohmann::ordered_json check_document(const Scenario& s);
[[nodiscard]] Table residual_table(const Scenario& s);

/// `warn` receives human-readable diagnostics (weak-field range, advice).
int run_orbit(const Scenario& s, std::ostream& out, std::ostream& warn);
int run_spectrum(const Scenario& s, std::ostream& out, std::ostream& warn);
int run_pairs(const Scenario& s, std::ostream& out, std::ostream& warn);
int run_check(const Scenario& s, std::ostream& out, std::ostream& warn);
int run_residual(const Scenario& s, std::ostream& out, std::ostream& warn);

}  // namespace pilotwave::app
