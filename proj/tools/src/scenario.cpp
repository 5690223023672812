#include "pilotwave/app/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "pilotwave/errors.hpp"

namespace pilotwave::app {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

struct Entry {
  int line;
  std::string value;
};

double to_real(const std::string& key, const Entry& e) {
  const std::string_view v = trim(e.value);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
    throw ParseError(e.line, key, "expected a finite number, got '" + std::string(v) + "'");
  }
  return out;
}

int to_int(const std::string& key, std::string_view text, int line) {
  const std::string_view v = trim(text);
  int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc() || ptr != v.data() + v.size()) {
    throw ParseError(line, key, "expected an integer, got '" + std::string(v) + "'");
  }
  return out;
}

std::vector<int> to_int_list(const std::string& key, const Entry& e) {
  std::vector<int> out;
  const std::string_view v = trim(e.value);
  if (v.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = v.find(',', start);
    const auto item = v.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    out.push_back(to_int(key, item, e.line));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

const std::set<std::string, std::less<>> kPlainKeys{
    "charge",   "field_b", "mass_p",      "sigma",       "omega_p_clock",   "z0_abs",
    "omega0",   "m_eff",   "n_list",      "policy",      "u0",              "output.path",
    "output.format", "residual.grid_rho", "residual.grid_phi", "residual.omega_perturbation"};

constexpr std::string_view kTolerancePrefix = "tolerances.";

}  // namespace

ParseError::ParseError(int line, std::string key, const std::string& what)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + (key.empty() ? "" : " (" + key + ")") + ": " + what
                                  : (key.empty() ? what : key + ": " + what)),
      line_(line),
      key_(std::move(key)) {}

modes::PairPolicy parse_policy(std::string_view text) {
  if (text == "strict") return modes::PairPolicy::strict;
  if (text == "permissive") return modes::PairPolicy::permissive;
  throw ValidationError("policy must be strict or permissive, got '" + std::string(text) + "'");
}

std::string_view policy_name(modes::PairPolicy policy) {
  return policy == modes::PairPolicy::strict ? "strict" : "permissive";
}

Scenario parse_scenario(std::string_view text) {
  std::map<std::string, Entry, std::less<>> entries;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "", "expected 'key = value'");
    const std::string key{trim(line.substr(0, eq))};
    if (key.empty()) throw ParseError(line_no, "", "missing key");
    const bool tolerance = key.starts_with(kTolerancePrefix);
    if (!tolerance && !kPlainKeys.contains(key)) throw ParseError(line_no, key, "unknown key");
    if (entries.contains(key)) {
      throw ParseError(line_no, key, "duplicate key (first set on line " + std::to_string(entries.at(key).line) + ")");
    }
    entries.emplace(key, Entry{line_no, std::string(trim(line.substr(eq + 1)))});
  }

  auto real = [&](const std::string& key) -> std::optional<double> {
    const auto it = entries.find(key);
    if (it == entries.end()) return std::nullopt;
    return to_real(key, it->second);
  };
  auto required = [&](const std::string& key) {
    const auto v = real(key);
    if (!v) throw ParseError(0, key, "required key is missing");
    return *v;
  };

  Scenario s;
  const double e = required("charge");
  const double B = required("field_b");
  const double omega0 = required("omega0");
  const auto m_eff = real("m_eff");
  const auto mass_p = real("mass_p");
  const auto sigma = real("sigma");
  const auto clock = real("omega_p_clock");
  const auto z0 = real("z0_abs");
  const bool triple = mass_p || sigma || clock || z0;

  if (!m_eff && !mass_p) throw ParseError(0, "m_eff", "either m_eff or mass_p is required");
  if (triple) {
    s.params.e = e;
    s.params.B = B;
    s.params.omega0 = omega0;
    s.params.m_p = mass_p.value_or(m_eff.value_or(1.0));
    s.params.sigma = sigma.value_or(0.0);
    s.params.Omega_p = clock.value_or(1.0);
    s.params.z0_abs = z0.value_or(0.0);
  } else {
    s.params = MediumParams::with_effective_mass(e, B, *m_eff, omega0);
  }
  try {
    s.params.validate();
  } catch (const InvalidParams& err) {
    throw ValidationError(err.what());
  }
  if (triple && m_eff) {
    const double derived = effective_mass(s.params);
    if (!mass_p) {
      throw ValidationError("m_eff given together with sigma/omega_p_clock/z0_abs needs mass_p");
    }
    if (std::fabs(derived - *m_eff) > 1e-12 * std::fabs(*m_eff)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "m_eff = " << *m_eff << " is inconsistent with mass_p (1 + sigma omega_p_clock^2 z0_abs^2) = "
          << derived;
      throw ValidationError(msg.str());
    }
  }

  if (const auto it = entries.find("n_list"); it != entries.end()) {
    s.n_list = to_int_list("n_list", it->second);
    for (int n : s.n_list) {
      if (n < 0) throw ValidationError("n_list entries must be nonnegative");
    }
  }
  if (const auto it = entries.find("policy"); it != entries.end()) s.policy = parse_policy(it->second.value);
  if (const auto v = real("u0")) {
    if (!(*v >= 0.0)) throw ValidationError("u0 must be nonnegative");
    s.u0 = *v;
  }

  if (const auto it = entries.find("output.path"); it != entries.end()) s.output.path = it->second.value;
  if (const auto it = entries.find("output.format"); it != entries.end()) {
    if (it->second.value == "csv") s.output.format = OutputFormat::csv;
    else if (it->second.value == "json") s.output.format = OutputFormat::json;
    else throw ParseError(it->second.line, "output.format", "expected csv or json");
  }

  if (const auto it = entries.find("residual.grid_rho"); it != entries.end()) {
    s.residual.grid_rho = to_int("residual.grid_rho", it->second.value, it->second.line);
    if (s.residual.grid_rho < 8) throw ValidationError("residual.grid_rho must be >= 8");
  }
  if (const auto it = entries.find("residual.grid_phi"); it != entries.end()) {
    s.residual.grid_phi = to_int("residual.grid_phi", it->second.value, it->second.line);
    if (s.residual.grid_phi < 8) throw ValidationError("residual.grid_phi must be >= 8");
  }
  if (const auto v = real("residual.omega_perturbation")) s.residual.omega_perturbation = *v;

  for (const auto& [key, entry] : entries) {
    if (!key.starts_with(kTolerancePrefix)) continue;
    const std::string name = key.substr(kTolerancePrefix.size());
    const double value = to_real(key, entry);
    if (!s.tolerances.set(name, value)) throw ParseError(entry.line, key, "unknown key");
    if (!(value > 0.0)) throw ValidationError(key + " must be positive");
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "", "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

void require_levels(const Scenario& s, int min_n) {
  if (s.n_list.empty()) throw ValidationError("n_list must not be empty");
  for (int n : s.n_list) {
    if (n < min_n) throw ValidationError("n_list entries must be >= " + std::to_string(min_n));
  }
}

}  // namespace pilotwave::app
