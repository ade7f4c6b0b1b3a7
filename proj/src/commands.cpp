#include "localitylab/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <json.hpp>

#include "localitylab/error.hpp"
#include "localitylab/estimators.hpp"
#include "localitylab/fcidump.hpp"
#include "localitylab/simulate.hpp"

namespace localitylab {

namespace {

std::string num(double v) { return fmt::format("{:.17g}", v); }

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw DomainError("'" + s + "' is not a number");
  }
  if (used != s.size()) throw DomainError("'" + s + "' is not a number");
  return v;
}

int parse_int(const std::string& s) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    throw DomainError("'" + s + "' is not an integer");
  }
  if (used != s.size()) throw DomainError("'" + s + "' is not an integer");
  return v;
}

double sector_ground_energy(const SecondQuantizedHamiltonian& h, Encoding enc, int n_electrons) {
  const auto p = transform(enc, h);
  const auto sector = electron_sector(enc, h.n_spin_orbitals, n_electrons);
  return ground_state(p, sector).energy;
}

nlohmann::json to_json(const CostReport& r) {
  nlohmann::json j;
  j["method"] = r.method;
  for (const auto& [k, v] : r.inputs) j["inputs"][k] = v;
  for (const auto& [k, v] : r.outputs) {
    if (std::isfinite(v))
      j["outputs"][k] = v;
    else
      j["outputs"][k] = nullptr;
  }
  j["assumptions"] = r.assumptions;
  return j;
}

}  // namespace

std::uint64_t seed_from_environment() {
  const char* env = std::getenv("LOCALITYLAB_SEED");
  if (env == nullptr || *env == '\0') return kDefaultSeed;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(env, &used);
    if (used == std::string(env).size()) return v;
  } catch (const std::exception&) {
  }
  return kDefaultSeed;
}

SystemModel build_system(const Molecule& molecule, const BasisLibrary& library,
                         OrbitalBasis orbitals, const ScfOptions& scf) {
  if (orbitals == OrbitalBasis::AO)
    throw NonOrthogonalBasis("the spin-orbital Hamiltonian needs OAO or MO orbitals");
  BasisSet basis = load_basis(molecule, library);
  IntegralSet ao = compute_integral_set(molecule, basis);
  OrbitalTransform t = orbitals == OrbitalBasis::MO ? run_rhf(ao, molecule.n_electrons(), scf)
                                                    : lowdin_orthogonalize(ao.overlap);
  IntegralSet orth = transform_integrals(ao, t);
  SecondQuantizedHamiltonian h = build_spin_orbital_hamiltonian(orth);
  return {molecule, std::move(basis), std::move(ao), std::move(orth), std::move(t), std::move(h)};
}

Molecule MoleculeSource::load() const {
  if (!xyz_path.empty()) return read_geometry_file(xyz_path, xyz_in_bohr, charge);
  return build_hydrogen_chain(chain_atoms, chain_spacing);
}

std::vector<double> parse_value_list(const std::string& text) {
  std::vector<double> out;
  if (std::count(text.begin(), text.end(), ':') == 2) {
    const auto a = text.find(':'), b = text.rfind(':');
    const double from = parse_double(text.substr(0, a));
    const double to = parse_double(text.substr(a + 1, b - a - 1));
    const double factor = parse_double(text.substr(b + 1));
    if (!(from > 0.0) || !(factor > 1.0) || to < from)
      throw DomainError("geometric list needs 0 < from <= to and factor > 1");
    for (double v = from; v <= to * (1.0 + 1e-9); v *= factor) out.push_back(v);
    return out;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto item = text.substr(start, comma == std::string::npos ? std::string::npos
                                                                    : comma - start);
    if (!item.empty()) out.push_back(parse_double(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.empty()) throw DomainError("empty value list");
  return out;
}

void parse_chain_range(const std::string& text, CensusConfig& config) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw DomainError("chain range must look like N1..N2[:STEP]");
  const auto colon = text.find(':', dots);
  config.first_atoms = parse_int(text.substr(0, dots));
  config.last_atoms = parse_int(text.substr(dots + 2, colon == std::string::npos
                                                          ? std::string::npos
                                                          : colon - dots - 2));
  if (colon != std::string::npos) config.step = parse_int(text.substr(colon + 1));
  if (config.first_atoms < 1 || config.last_atoms < config.first_atoms || config.step < 1)
    throw DomainError("chain range needs 1 <= N1 <= N2 and STEP >= 1");
}

std::vector<CensusRow> run_census(const CensusConfig& config, std::ostream& log) {
  const auto library = BasisLibrary::from_file(config.basis_file);
  auto deltas = config.deltas;
  std::sort(deltas.begin(), deltas.end(), std::greater<>());
  std::vector<OrbitalBasis> kinds;
  if (config.oao) kinds.push_back(OrbitalBasis::OAO);
  if (config.mo) kinds.push_back(OrbitalBasis::MO);

  std::vector<CensusRow> rows;
  for (int n = config.first_atoms; n <= config.last_atoms; n += config.step) {
    const Molecule mol = build_hydrogen_chain(n, config.spacing);
    const BasisSet basis = load_basis(mol, library);
    const IntegralSet ao = compute_integral_set(mol, basis);
    for (const auto kind : kinds) {
      std::optional<SecondQuantizedHamiltonian> h;
      try {
        const auto t = kind == OrbitalBasis::MO ? run_rhf(ao, mol.n_electrons())
                                                : lowdin_orthogonalize(ao.overlap);
        h = build_spin_orbital_hamiltonian(transform_integrals(ao, t));
      } catch (const Error& e) {
        fmt::print(log, "n={} {}: {}\n", n, to_string(kind), e.what());
      }
      for (const double delta : deltas) {
        CensusRow row;
        row.n_atoms = n;
        row.n_spin_orbitals = basis.n_spin_orbitals();
        row.basis_label = std::string(to_string(kind));
        row.delta = delta;
        if (h) {
          const auto c = census(*h, delta);
          row.n_oei = c.n_oei_significant;
          row.n_tei = c.n_tei_significant;
          row.h_max_oei = c.h_max_oei;
          row.h_max_tei = c.h_max_tei;
        } else {
          row.failed = true;
        }
        rows.push_back(row);
      }
    }
  }
  return rows;
}

void write_census_csv(std::ostream& out, const std::vector<CensusRow>& rows) {
  fmt::print(out, "n_atoms,M,basis_label,delta,N_OEI,N_TEI,h_max_OEI,h_max_TEI,status\n");
  for (const auto& r : rows) {
    if (r.failed) {
      fmt::print(out, "{},{},{},{},,,,,failed\n", r.n_atoms, r.n_spin_orbitals, r.basis_label,
                 num(r.delta));
      continue;
    }
    fmt::print(out, "{},{},{},{},{},{},{},{},ok\n", r.n_atoms, r.n_spin_orbitals, r.basis_label,
               num(r.delta), r.n_oei, r.n_tei, num(r.h_max_oei), num(r.h_max_tei));
  }
}

int cmd_census(const CensusConfig& config, std::ostream& out, std::ostream& log) {
  const auto rows = run_census(config, log);
  write_census_csv(out, rows);
  const bool any_failed =
      std::any_of(rows.begin(), rows.end(), [](const CensusRow& r) { return r.failed; });
  return any_failed ? kExitOperational : kExitOk;
}

std::vector<TruncateRow> run_truncate_validate(const TruncateConfig& config) {
  const auto library = BasisLibrary::from_file(config.basis_file);
  const Molecule mol = config.molecule.load();
  const auto sys = build_system(mol, library, config.orbitals);
  const auto& h = sys.hamiltonian;
  if (h.n_spin_orbitals > kMaxDenseQubits)
    throw TooLarge(fmt::format("{} spin orbitals exceeds the simulation limit of {}",
                               h.n_spin_orbitals, kMaxDenseQubits));
  const double exact = sector_ground_energy(h, config.encoding, mol.n_electrons());

  auto row_for = [&](const TruncationResult& t, const char* mode, double parameter) {
    TruncateRow r;
    r.mode = mode;
    r.delta = parameter;
    r.n_removed = t.n_removed;
    r.removed_weight = t.removed_weight;
    r.exact_energy = exact;
    r.truncated_energy =
        t.n_removed == 0 ? exact
                         : sector_ground_energy(t.hamiltonian, config.encoding, mol.n_electrons());
    r.energy_change = std::abs(r.truncated_energy - exact);
    r.bound = t.removed_weight;
    r.bound_satisfied = r.energy_change <= r.bound + kBoundSlack;
    return r;
  };

  auto deltas = config.deltas;
  std::sort(deltas.begin(), deltas.end());
  std::vector<TruncateRow> rows;
  for (const double d : deltas) rows.push_back(row_for(truncate_by_threshold(h, d), "threshold", d));
  if (config.epsilon)
    rows.push_back(row_for(truncate_by_total_weight(h, *config.epsilon), "total_weight",
                           *config.epsilon));
  return rows;
}

void write_truncate_csv(std::ostream& out, const std::vector<TruncateRow>& rows) {
  fmt::print(out,
             "delta,N_r,removed_weight,E0_exact,E0_trunc,abs_dE,bound,bound_satisfied,mode\n");
  for (const auto& r : rows)
    fmt::print(out, "{},{},{},{},{},{},{},{},{}\n", num(r.delta), r.n_removed,
               num(r.removed_weight), num(r.exact_energy), num(r.truncated_energy),
               num(r.energy_change), num(r.bound), r.bound_satisfied ? "true" : "false", r.mode);
}

int cmd_truncate_validate(const TruncateConfig& config, std::ostream& out, std::ostream& log) {
  const auto rows = run_truncate_validate(config);
  write_truncate_csv(out, rows);
  for (const auto& r : rows)
    if (!r.bound_satisfied) {
      fmt::print(log, "truncation bound violated at {} = {}\n", r.mode, num(r.delta));
      return kExitInvariant;
    }
  return kExitOk;
}

int cmd_estimate(const EstimateConfig& config, std::ostream& out, std::ostream& log) {
  if (!(config.epsilon > 0.0)) throw DomainError("epsilon must be positive");
  nlohmann::json doc;
  doc["schema_version"] = 1;
  doc["epsilon"] = config.epsilon;

  if (config.synthetic_m) {
    const double m_max = *config.synthetic_m;
    if (m_max < 32) throw DomainError("synthetic M must be at least 32");
    std::vector<double> ms, nc, nc_fixed, nm, gap;
    for (double m = 32; m <= m_max * (1 + 1e-12); m *= 2) ms.push_back(m);
    if (ms.size() < 2) ms.push_back(m_max);
    const double fixed_t = config.fixed_time.value_or(1.0);
    nlohmann::json table = nlohmann::json::array();
    for (const double m : ms) {
      const auto s = synthetic_stats(m);
      const auto q = qpe_cost(s, config.epsilon, config.gates_per_term);
      const auto qf = qpe_cost(s, config.epsilon, config.gates_per_term, fixed_t);
      const auto a = averaging_cost(s, config.epsilon);
      const auto ad = adiabatic_resources(m, config.epsilon, s.beta_max_oei);
      nc.push_back(q.gate_count_no_log);
      nc_fixed.push_back(qf.gate_count_no_log);
      nm.push_back(a.measurements);
      gap.push_back(ad.log10_gap_scale);
      table.push_back({{"M", m},
                       {"gate_count", q.gate_count},
                       {"gate_count_no_log", q.gate_count_no_log},
                       {"gate_count_fixed_T", qf.gate_count},
                       {"samples", a.samples},
                       {"measurements", a.measurements},
                       {"qubits", ad.qubits},
                       {"couplers", ad.couplers},
                       {"log10_gap_scale", ad.log10_gap_scale}});
    }
    doc["mode"] = "synthetic";
    doc["table"] = table;
    doc["slopes"] = {{"gate_count_no_log", log_log_slope(ms, nc)},
                     {"gate_count_no_log_fixed_T", log_log_slope(ms, nc_fixed)},
                     {"measurements", log_log_slope(ms, nm)},
                     {"log10_gap_scale", log_log_slope(ms, gap)}};
    doc["fixed_T"] = fixed_t;
    out << doc.dump(2) << '\n';
    return kExitOk;
  }

  const auto library = BasisLibrary::from_file(config.basis_file);
  const Molecule mol = config.molecule.load();
  const auto sys = build_system(mol, library, config.orbitals);
  const auto c = census(sys.hamiltonian, config.delta);
  const auto oei = max_oei_bound(mol, sys.basis, default_max_nuclear_density(mol), mol.max_charge());
  const auto stats = stats_from_census(c, sys.hamiltonian.n_spin_orbitals, oei.beta_max_oei);

  doc["mode"] = "molecule";
  doc["system"] = {{"atoms", mol.size()},
                   {"electrons", mol.n_electrons()},
                   {"spin_orbitals", sys.hamiltonian.n_spin_orbitals},
                   {"orbitals", std::string(to_string(config.orbitals))},
                   {"delta", config.delta}};
  nlohmann::json reports = nlohmann::json::array();
  reports.push_back(to_json(qpe_report(stats, config.epsilon, config.gates_per_term, std::nullopt)));
  if (config.fixed_time)
    reports.push_back(
        to_json(qpe_report(stats, config.epsilon, config.gates_per_term, config.fixed_time)));
  reports.push_back(to_json(averaging_report(stats, config.epsilon)));
  reports.push_back(to_json(adiabatic_report(stats, config.epsilon)));
  doc["reports"] = reports;

  if (sys.hamiltonian.n_spin_orbitals <= 8) {
    const auto p = jordan_wigner(sys.hamiltonian);
    const auto sector =
        electron_sector(Encoding::JordanWigner, sys.hamiltonian.n_spin_orbitals, mol.n_electrons());
    nlohmann::json emp;
    try {
      const double dt = qpe_timestep_bound(stats, config.epsilon);
      const auto t = trotter_eigenvalue_error(p, dt, 1.0 / config.epsilon, sector);
      emp["trotter_error_at_bound_timestep"] = t.empirical_error;
      const auto g = ground_state(p, sector);
      const auto n_s = averaging_cost(stats, config.epsilon).samples;
      const auto samples = static_cast<std::uint64_t>(std::min(std::ceil(n_s), 1e15));
      const auto a = averaging_simulation(p, g.vector, samples, config.seed);
      emp["averaging_error"] = std::abs(a.estimate - g.energy);
      emp["seed"] = config.seed;
      emp["ground_energy"] = g.energy;
    } catch (const Error& e) {
      fmt::print(log, "empirical check skipped: {}\n", e.what());
    }
    doc["empirical"] = emp;
  }
  out << doc.dump(2) << '\n';
  return kExitOk;
}

int cmd_vanvleck(const VanVleckConfig& config, std::ostream& out, std::ostream&) {
  fmt::print(out, "Delta,M,P_exact,P_erf,cost\n");
  for (const double d : config.overlaps) {
    VanVleckModel m{config.n_subsystems, d, config.gap, 0.0};
    m.validate();
    for (int k = 1; k <= config.n_subsystems; ++k) {
      const auto r = vanvleck_cumulative_and_cost(m, k);
      fmt::print(out, "{},{},{},{},{}\n", num(d), k, num(r.p_exact), num(r.p_erf),
                 std::isinf(r.cost) ? std::string("inf") : num(r.cost));
    }
  }
  return kExitOk;
}

int cmd_fcidump(const FcidumpConfig& config, std::ostream& out, std::ostream& log) {
  if (config.import) {
    const auto d = read_fcidump_file(config.path);
    const auto h = build_spin_orbital_hamiltonian(d.integrals);
    fmt::print(out, "norb,nelec,ms2,n_one_body,n_two_body");
    const bool small = h.n_spin_orbitals <= kMaxDenseQubits;
    fmt::print(out, small ? ",fci_energy\n" : "\n");
    fmt::print(out, "{},{},{},{},{}", d.integrals.n_spatial(), d.n_electrons, d.ms2,
               h.one_body.size(), h.two_body.size());
    if (small) fmt::print(out, ",{}", num(fci_ground_state(h, d.n_electrons, d.ms2 == 0).energy));
    fmt::print(out, "\n");
    if (!small) fmt::print(log, "FCI skipped: {} spin orbitals\n", h.n_spin_orbitals);
    return kExitOk;
  }
  const auto library = BasisLibrary::from_file(config.basis_file);
  const Molecule mol = config.molecule.load();
  const auto sys = build_system(mol, library, config.orbitals);
  write_fcidump_file(config.path, sys.orthonormal, mol.n_electrons(), 0);
  fmt::print(log, "wrote {} orbitals to {}\n", sys.orthonormal.n_spatial(), config.path);
  return kExitOk;
}

}  // namespace localitylab
