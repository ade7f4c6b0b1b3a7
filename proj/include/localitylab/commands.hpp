#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "localitylab/hamiltonian.hpp"
#include "localitylab/molecule.hpp"
#include "localitylab/pauli.hpp"
#include "localitylab/scf.hpp"

namespace localitylab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitOperational = 1;
inline constexpr int kExitInvariant = 2;
inline constexpr std::uint64_t kDefaultSeed = 42;

/// LOCALITYLAB_SEED when set and parseable, else 42.
std::uint64_t seed_from_environment();

/// Molecule, basis, integrals and spin-orbital Hamiltonian in one orbital basis.
struct SystemModel {
  Molecule molecule;
  BasisSet basis;
  IntegralSet ao;
  IntegralSet orthonormal;
  OrbitalTransform transform;
  SecondQuantizedHamiltonian hamiltonian;
};

SystemModel build_system(const Molecule& molecule, const BasisLibrary& library,
                         OrbitalBasis orbitals, const ScfOptions& scf = {});

/// Where a command gets its molecule: an XYZ file, or a hydrogen chain.
struct MoleculeSource {
  std::string xyz_path;      // used when non-empty
  bool xyz_in_bohr = false;
  int charge = 0;
  int chain_atoms = 2;
  double chain_spacing = 1.4;  // Bohr

  Molecule load() const;
};

/// "0.7" / "1e-7,1e-3" / "1e-12:1e-2:100" (geometric from:to:factor).
std::vector<double> parse_value_list(const std::string& text);

struct CensusConfig {
  int first_atoms = 2;
  int last_atoms = 12;
  int step = 2;
  double spacing = 1.4;
  std::string basis_file;
  std::vector<double> deltas = {1e-15};
  bool oao = true;
  bool mo = true;
};

struct CensusRow {
  int n_atoms = 0;
  std::size_t n_spin_orbitals = 0;
  std::string basis_label;
  double delta = 0.0;
  std::size_t n_oei = 0;
  std::size_t n_tei = 0;
  double h_max_oei = 0.0;
  double h_max_tei = 0.0;
  bool failed = false;
};

/// "N1..N2" or "N1..N2:STEP".
void parse_chain_range(const std::string& text, CensusConfig& config);

std::vector<CensusRow> run_census(const CensusConfig& config, std::ostream& log);
void write_census_csv(std::ostream& out, const std::vector<CensusRow>& rows);
int cmd_census(const CensusConfig& config, std::ostream& out, std::ostream& log);

struct TruncateConfig {
  MoleculeSource molecule;
  std::string basis_file;
  OrbitalBasis orbitals = OrbitalBasis::OAO;
  Encoding encoding = Encoding::JordanWigner;
  std::vector<double> deltas = {1e-12, 1e-10, 1e-8, 1e-6, 1e-4, 1e-2};
  std::optional<double> epsilon;
};

struct TruncateRow {
  std::string mode;  // threshold or total_weight
  double delta = 0.0;  // epsilon for total_weight rows
  std::size_t n_removed = 0;
  double removed_weight = 0.0;
  double exact_energy = 0.0;
  double truncated_energy = 0.0;
  double energy_change = 0.0;
  double bound = 0.0;
  bool bound_satisfied = true;
};

/// |dE| <= removed weight + this slack counts as satisfied.
inline constexpr double kBoundSlack = 1e-11;

std::vector<TruncateRow> run_truncate_validate(const TruncateConfig& config);
void write_truncate_csv(std::ostream& out, const std::vector<TruncateRow>& rows);
int cmd_truncate_validate(const TruncateConfig& config, std::ostream& out, std::ostream& log);

struct EstimateConfig {
  MoleculeSource molecule;
  std::string basis_file;
  OrbitalBasis orbitals = OrbitalBasis::OAO;
  double epsilon = 1e-3;
  double delta = 0.0;  // census threshold applied before counting
  std::optional<double> synthetic_m;
  std::optional<double> fixed_time;
  double gates_per_term = 1.0;
  std::uint64_t seed = kDefaultSeed;
};

int cmd_estimate(const EstimateConfig& config, std::ostream& out, std::ostream& log);

struct VanVleckConfig {
  int n_subsystems = 100;
  std::vector<double> overlaps = {0.9, 0.95, 0.99, 0.999};
  double gap = 1.0;
};

int cmd_vanvleck(const VanVleckConfig& config, std::ostream& out, std::ostream& log);

struct FcidumpConfig {
  bool import = true;
  std::string path;
  MoleculeSource molecule;
  std::string basis_file;
  OrbitalBasis orbitals = OrbitalBasis::MO;
};

int cmd_fcidump(const FcidumpConfig& config, std::ostream& out, std::ostream& log);

}  // namespace localitylab
