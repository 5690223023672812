#include "pilotwave/app/runners.hpp"

#include <cmath>
#include <limits>
#include <map>

#include "pilotwave/dynamics.hpp"
#include "pilotwave/field_residual.hpp"

namespace pilotwave::app {

namespace {

using std::int64_t;

void warn_weak_field(const Scenario& s, std::ostream& warn) {
  const double ratio = modes::weak_field_ratio(s.params);
  if (ratio > modes::kWeakFieldThreshold) {
    warn << "warning: -e B / omega0^2 = " << format_real(ratio) << " exceeds " << modes::kWeakFieldThreshold
         << "; the weak-field column is outside its range of validity\n";
  }
}

void require_field(const Scenario& s, const char* command) {
  if (!(s.params.B > 0.0)) throw ValidationError(std::string(command) + " requires field_b > 0");
}

int emit(const Scenario& s, const Table& t, std::ostream& out) {
  if (s.output.format == OutputFormat::json) out << to_json(t).dump(2) << '\n';
  else write_csv(out, t);
  return kOk;
}

// Below this the refinement has stopped paying off: the field is not a solution.
constexpr double kPlateauSlope = 0.5;
constexpr double kMinimumSlope = 1.5;
constexpr double kTargetSlope = 1.9;

std::string residual_status(const numerics::ConvergenceStudy& study) {
  if (study.norms.front().max_residual == 0.0) return "zero_field";
  const double slope = study.slope_max;
  if (slope < kPlateauSlope) return "plateau";
  if (slope < kMinimumSlope) return "grid_too_coarse";
  if (slope < kTargetSlope) return "preasymptotic";
  return "ok";
}

}  // namespace

Table orbit_table(const Scenario& s) {
  require_levels(s, 0);
  Table t{{"n", "rho", "v", "gamma", "energy", "energy_nonrel", "bohr_sommerfeld_roundtrip"}, {}};
  for (int n : s.n_list) {
    const dynamics::Orbit o = dynamics::orbit_from_n(n, s.params);
    t.add({int64_t{n}, o.rho, o.v, o.gamma, o.energy, dynamics::nonrel_energy(n, s.params),
           dynamics::bohr_sommerfeld(o, s.params)});
  }
  return t;
}

std::pair<Table, Table> spectrum_tables(const Scenario& s) {
  require_levels(s, 1);
  Table levels{{"n", "pair_frequency", "weak_field", "particle_energy", "particle_landau", "landau_gap",
                "particle_landau_gap", "field_particle_gap", "m_plus", "m_minus", "n_rho_plus", "n_rho_minus",
                "pairs_considered", "pair_frequency_spread"},
               {}};
  Table pairs{{"n", "m_plus", "m_minus", "n_rho_plus", "n_rho_minus", "omega_plus", "omega_minus",
               "pair_frequency"},
              {}};
  const auto reports = transparency::landau_match_report(s.n_list, s.params, s.tolerances, s.policy);
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    levels.add({int64_t{r.n}, r.pair_frequency, r.weak_field, r.particle_energy, r.particle_landau, r.landau_gap,
                r.particle_landau_gap, std::fabs(r.pair_frequency - r.particle_energy), int64_t{r.plus.m},
                int64_t{r.minus.m}, int64_t{r.plus.n_rho}, int64_t{r.minus.n_rho}, int64_t{r.pairs_considered},
                r.pair_frequency_spread});
    for (const auto& p : modes::enumerate_mode_pairs(s.n_list[i], s.params, s.policy, s.u0)) {
      pairs.add({int64_t{s.n_list[i]}, int64_t{p.plus.index.m}, int64_t{p.minus.index.m},
                 int64_t{p.plus.index.n_rho}, int64_t{p.minus.index.n_rho}, p.plus.omega, p.minus.omega,
                 modes::pair_frequency(p)});
    }
  }
  return {std::move(levels), std::move(pairs)};
}

Table pairs_table(const Scenario& s) {
  require_levels(s, 1);
  Table t{{"n", "rank", "m_plus", "m_minus", "n_rho_plus", "n_rho_minus", "omega_plus", "omega_minus",
           "pair_frequency", "debroglie_omega_residual", "guidance_field_residual", "node_on_orbit", "pass"},
          {}};
  for (int n : s.n_list) {
    const auto ranked = transparency::rank_pairs(n, s.params, s.policy, s.tolerances);
    int64_t rank = 1;
    for (const auto& r : ranked) {
      t.add({int64_t{n}, rank++, int64_t{r.plus.m}, int64_t{r.minus.m}, int64_t{r.plus.n_rho},
             int64_t{r.minus.n_rho}, modes::mode_frequency(r.plus, s.params),
             modes::mode_frequency(r.minus, s.params), r.pair_frequency, r.debroglie_omega_residual,
             r.guidance_field_residual, r.node_on_orbit, r.pass});
    }
  }
  return t;
}

nlohmann::ordered_json check_document(const Scenario& s) {
  require_field(s, "check");
  require_levels(s, 1);
  using nlohmann::ordered_json;
  const MediumParams& p = s.params;

  ordered_json doc;
  doc["scenario"] = {{"charge", p.e},
                     {"field_b", p.B},
                     {"mass_p", p.m_p},
                     {"sigma", p.sigma},
                     {"omega_p_clock", p.Omega_p},
                     {"z0_abs", p.z0_abs},
                     {"m_eff", effective_mass(p)},
                     {"omega0", p.omega0},
                     {"policy", policy_name(s.policy)},
                     {"n_list", s.n_list}};

  ordered_json overrides = ordered_json::object();
  const auto& t = s.tolerances;
  const std::pair<const char*, const std::optional<double>*> named[] = {
      {"guidance", &t.guidance},           {"guidance_epsilon", &t.guidance_epsilon},
      {"guidance_eta", &t.guidance_eta},   {"debroglie_omega", &t.debroglie_omega},
      {"debroglie_k", &t.debroglie_k},     {"landau_field", &t.landau_field},
      {"landau_particle", &t.landau_particle}, {"mass_match", &t.mass_match}};
  for (const auto& [name, slot] : named) {
    if (slot->has_value()) overrides[name] = **slot;
  }
  doc["tolerance_overrides"] = overrides;

  ordered_json reports = ordered_json::array();
  ordered_json failing = ordered_json::array();
  bool pass = true;
  for (const auto& r : transparency::landau_match_report(s.n_list, p, s.tolerances, s.policy)) {
    ordered_json checks = ordered_json::array();
    for (const auto& c : r.checks) {
      checks.push_back({{"name", c.name}, {"value", json_real(c.value)}, {"tolerance", json_real(c.tolerance)},
                        {"pass", c.pass}});
      if (!c.pass) failing.push_back("n=" + std::to_string(r.n) + " " + c.name);
    }
    pass = pass && r.pass;
    reports.push_back({{"n", r.n},
                       {"pair",
                        {{"m_plus", r.plus.m}, {"m_minus", r.minus.m}, {"n_rho_plus", r.plus.n_rho},
                         {"n_rho_minus", r.minus.n_rho}}},
                       {"pairs_considered", r.pairs_considered},
                       {"particle_energy", json_real(r.particle_energy)},
                       {"particle_landau", json_real(r.particle_landau)},
                       {"pair_frequency", json_real(r.pair_frequency)},
                       {"pair_frequency_spread", json_real(r.pair_frequency_spread)},
                       {"weak_field", json_real(r.weak_field)},
                       {"guidance_residual", json_real(r.guidance_residual)},
                       {"guidance_field_residual", json_real(r.guidance_field_residual)},
                       {"epsilon", json_real(r.epsilon)},
                       {"eta", json_real(r.eta)},
                       {"eta_gap", json_real(r.eta_gap)},
                       {"debroglie_omega_residual", json_real(r.debroglie_omega_residual)},
                       {"debroglie_k_residual", json_real(r.debroglie_k_residual)},
                       {"holonomic_residual", json_real(r.holonomic_residual)},
                       {"holonomic_residual_lorentz", json_real(r.holonomic_residual_lorentz)},
                       {"landau_gap", json_real(r.landau_gap)},
                       {"particle_landau_gap", json_real(r.particle_landau_gap)},
                       {"mass_match_gap", json_real(r.mass_match_gap)},
                       {"node_on_orbit", r.node_on_orbit},
                       {"checks", checks},
                       {"pass", r.pass}});
  }
  doc["reports"] = reports;
  doc["failing"] = failing;
  doc["pass"] = pass;
  return doc;
}

Table residual_table(const Scenario& s) {
  require_field(s, "residual");
  require_levels(s, 1);
  Table t{{"n", "pair", "member", "m", "n_rho", "weight", "rho_min", "rho_max", "n_rho_pts", "n_phi_pts", "max_h",
           "max_h2", "max_h4", "l2_h", "l2_h2", "l2_h4", "slope_max", "slope_l2", "status"},
          {}};
  for (int n : s.n_list) {
    std::map<std::tuple<int, int, bool>, numerics::ConvergenceStudy> cache;
    const auto pairs = modes::enumerate_mode_pairs(n, s.params, s.policy, s.u0);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      for (const bool plus : {true, false}) {
        modes::FieldMode mode = plus ? pairs[i].plus : pairs[i].minus;
        const double weight = plus ? pairs[i].c_plus : pairs[i].c_minus;
        mode.omega *= 1.0 + s.residual.omega_perturbation;
        numerics::Grid2D grid = numerics::default_grid(mode);
        if (s.residual.grid_rho > 0) grid.n_rho_pts = s.residual.grid_rho;
        if (s.residual.grid_phi > 0) grid.n_phi_pts = s.residual.grid_phi;
        const auto key = std::make_tuple(mode.index.m, mode.index.n_rho, weight == 0.0);
        auto it = cache.find(key);
        if (it == cache.end()) {
          numerics::Field field = [mode, weight](const modes::SpacetimePoint& q) {
            return weight * modes::evaluate_mode(mode, q);
          };
          it = cache.emplace(key, numerics::kg_convergence(field, s.params, grid, 0.0)).first;
        }
        const auto& st = it->second;
        t.add({int64_t{n}, static_cast<int64_t>(i + 1), std::string(plus ? "plus" : "minus"),
               int64_t{mode.index.m}, int64_t{mode.index.n_rho}, weight, grid.rho_min, grid.rho_max,
               int64_t{grid.n_rho_pts}, int64_t{grid.n_phi_pts}, st.norms[0].max_residual, st.norms[1].max_residual,
               st.norms[2].max_residual, st.norms[0].l2_residual, st.norms[1].l2_residual, st.norms[2].l2_residual,
               st.slope_max, st.slope_l2, residual_status(st)});
      }
    }
  }
  return t;
}

int run_orbit(const Scenario& s, std::ostream& out, std::ostream&) { return emit(s, orbit_table(s), out); }

int run_spectrum(const Scenario& s, std::ostream& out, std::ostream& warn) {
  warn_weak_field(s, warn);
  const auto [levels, pairs] = spectrum_tables(s);
  if (s.output.format == OutputFormat::json) {
    nlohmann::ordered_json doc;
    doc["levels"] = to_json(levels);
    doc["pairs"] = to_json(pairs);
    out << doc.dump(2) << '\n';
  } else {
    write_csv(out, levels);
    out << '\n';
    write_csv(out, pairs);
  }
  return kOk;
}

int run_pairs(const Scenario& s, std::ostream& out, std::ostream& warn) {
  warn_weak_field(s, warn);
  return emit(s, pairs_table(s), out);
}

int run_check(const Scenario& s, std::ostream& out, std::ostream& warn) {
  warn_weak_field(s, warn);
  const auto doc = check_document(s);
  out << doc.dump(2) << '\n';
  if (doc["pass"].get<bool>()) return kOk;
  for (const auto& f : doc["failing"]) warn << "check failed: " << f.get<std::string>() << '\n';
  return kCheckFailed;
}

int run_residual(const Scenario& s, std::ostream& out, std::ostream& warn) {
  const Table t = residual_table(s);
  emit(s, t, out);
  const std::size_t status = t.columns.size() - 1;
  bool coarse = false;
  bool plateau = false;
  for (const auto& row : t.rows) {
    const auto& st = std::get<std::string>(row[status]);
    coarse = coarse || st == "grid_too_coarse";
    plateau = plateau || st == "plateau";
  }
  if (coarse) {
    warn << "GridTooCoarse: Richardson order below " << kMinimumSlope
         << " for some modes; raise residual.grid_rho / residual.grid_phi\n";
    return kNumericalError;
  }
  if (plateau) {
    warn << "residual plateau: refinement does not reduce the residual, the field does not solve the equation\n";
    return kCheckFailed;
  }
  return kOk;
}

}  // namespace pilotwave::app
