#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>
#include <fmt/core.h>

#include "localitylab/commands.hpp"
#include "localitylab/error.hpp"

using namespace localitylab;

namespace {

OrbitalBasis parse_orbitals(const std::string& s) {
  if (s == "oao") return OrbitalBasis::OAO;
  if (s == "mo") return OrbitalBasis::MO;
  throw DomainError("orbitals must be oao or mo");
}

void add_molecule_options(CLI::App* cmd, MoleculeSource& m) {
  cmd->add_option("--molecule", m.xyz_path, "XYZ geometry file (default: hydrogen chain)");
  cmd->add_flag("--bohr", m.xyz_in_bohr, "geometry coordinates are in Bohr");
  cmd->add_option("--charge", m.charge, "total molecular charge");
  cmd->add_option("--chain-atoms", m.chain_atoms, "hydrogen chain length when no XYZ is given")
      ->capture_default_str();
  cmd->add_option("--spacing", m.chain_spacing, "hydrogen chain spacing in Bohr")
      ->capture_default_str();
}

// Runs `body` with its output going to `path`, or stdout when empty.
int with_output(const std::string& path, const std::function<int(std::ostream&)>& body) {
  if (path.empty() || path == "-") return body(std::cout);
  std::ofstream file(path);
  if (!file) throw Error("cannot write " + path);
  return body(file);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Molecular Hamiltonian locality, truncation and quantum cost analysis"};
  app.set_config("--config", "", "key-value config file; command-line flags take precedence");
  app.require_subcommand(1);

  const std::string default_basis = LOCALITYLAB_DEFAULT_BASIS;
  const std::uint64_t seed = seed_from_environment();
  std::function<int()> run;

  // census
  CensusConfig census_cfg;
  census_cfg.basis_file = default_basis;
  std::string chain = "2..12:2", census_deltas = "1e-15,1e-7", census_orbitals = "both",
              census_out;
  int census_step = 0;
  auto* census = app.add_subcommand("census", "significant integral counts along hydrogen chains");
  census->add_option("--chain", chain, "chain lengths N1..N2[:STEP]")->capture_default_str();
  census->add_option("--step", census_step, "chain length step (overrides :STEP)");
  census->add_option("--spacing", census_cfg.spacing, "atom spacing in Bohr")
      ->capture_default_str();
  census->add_option("--basis-file", census_cfg.basis_file, "basis set file")
      ->capture_default_str();
  census->add_option("--delta", census_deltas, "significance thresholds, comma separated")
      ->capture_default_str();
  census->add_option("--orbitals", census_orbitals, "oao, mo or both")
      ->check(CLI::IsMember({"oao", "mo", "both"}))
      ->capture_default_str();
  census->add_option("--out", census_out, "output CSV path (default stdout)");
  census->callback([&] {
    run = [&] {
      parse_chain_range(chain, census_cfg);
      if (census_step > 0) census_cfg.step = census_step;
      census_cfg.deltas = parse_value_list(census_deltas);
      census_cfg.oao = census_orbitals != "mo";
      census_cfg.mo = census_orbitals != "oao";
      return with_output(census_out,
                         [&](std::ostream& o) { return cmd_census(census_cfg, o, std::cerr); });
    };
  });

  // truncate-validate
  TruncateConfig trunc_cfg;
  trunc_cfg.basis_file = default_basis;
  std::string trunc_deltas = "1e-12,1e-10,1e-8,1e-6,1e-4,1e-2", trunc_orbitals = "oao",
              trunc_encoding = "jw", trunc_out;
  double trunc_epsilon = 0.0;
  auto* trunc = app.add_subcommand("truncate-validate",
                                   "check |dE0| against the removed integral weight");
  add_molecule_options(trunc, trunc_cfg.molecule);
  trunc->add_option("--basis-file", trunc_cfg.basis_file, "basis set file")
      ->capture_default_str();
  trunc->add_option("--delta", trunc_deltas, "truncation thresholds")->capture_default_str();
  auto* eps_opt = trunc->add_option("--epsilon", trunc_epsilon,
                                    "also truncate by total removed weight below epsilon");
  trunc->add_option("--orbitals", trunc_orbitals, "oao or mo")
      ->check(CLI::IsMember({"oao", "mo"}))
      ->capture_default_str();
  trunc->add_option("--encoding", trunc_encoding, "jw or bk")
      ->check(CLI::IsMember({"jw", "bk"}))
      ->capture_default_str();
  trunc->add_option("--out", trunc_out, "output CSV path (default stdout)");
  trunc->callback([&] {
    run = [&] {
      trunc_cfg.deltas = parse_value_list(trunc_deltas);
      if (eps_opt->count() > 0) trunc_cfg.epsilon = trunc_epsilon;
      trunc_cfg.orbitals = parse_orbitals(trunc_orbitals);
      trunc_cfg.encoding =
          trunc_encoding == "bk" ? Encoding::BravyiKitaev : Encoding::JordanWigner;
      return with_output(trunc_out, [&](std::ostream& o) {
        return cmd_truncate_validate(trunc_cfg, o, std::cerr);
      });
    };
  });

  // estimate
  EstimateConfig est_cfg;
  est_cfg.basis_file = default_basis;
  est_cfg.seed = seed;
  std::string est_orbitals = "oao", est_out;
  double synthetic = 0.0, fixed_t = 0.0;
  auto* est = app.add_subcommand("estimate", "QPE, averaging and adiabatic cost reports (JSON)");
  add_molecule_options(est, est_cfg.molecule);
  est->add_option("--basis-file", est_cfg.basis_file, "basis set file")->capture_default_str();
  est->add_option("--epsilon", est_cfg.epsilon, "target precision in Hartree")
      ->capture_default_str();
  auto* syn_opt = est->add_option("--synthetic", synthetic,
                                  "largest M of a synthetic quadratic-regime slope table");
  auto* fixed_opt = est->add_option("--fixed-T", fixed_t, "fixed total evolution time");
  est->add_option("--delta", est_cfg.delta, "significance threshold for integral counts")
      ->capture_default_str();
  est->add_option("--gates-per-term", est_cfg.gates_per_term, "gates per exponentiated term")
      ->capture_default_str();
  est->add_option("--orbitals", est_orbitals, "oao or mo")
      ->check(CLI::IsMember({"oao", "mo"}))
      ->capture_default_str();
  est->add_option("--out", est_out, "output JSON path (default stdout)");
  est->callback([&] {
    run = [&] {
      if (syn_opt->count() > 0) est_cfg.synthetic_m = synthetic;
      if (fixed_opt->count() > 0) est_cfg.fixed_time = fixed_t;
      est_cfg.orbitals = parse_orbitals(est_orbitals);
      return with_output(est_out,
                         [&](std::ostream& o) { return cmd_estimate(est_cfg, o, std::cerr); });
    };
  });

  // vanvleck
  VanVleckConfig vv_cfg;
  std::string vv_deltas = "0.9,0.95,0.99,0.999", vv_out;
  auto* vv = app.add_subcommand("vanvleck", "repetition cost of imperfect product trial states");
  vv->add_option("--N", vv_cfg.n_subsystems, "number of subsystems")->capture_default_str();
  vv->add_option("--delta", vv_deltas, "per-subsystem overlaps")->capture_default_str();
  vv->add_option("--omega", vv_cfg.gap, "subsystem gap")->capture_default_str();
  vv->add_option("--out", vv_out, "output CSV path (default stdout)");
  vv->callback([&] {
    run = [&] {
      vv_cfg.overlaps = parse_value_list(vv_deltas);
      return with_output(vv_out,
                         [&](std::ostream& o) { return cmd_vanvleck(vv_cfg, o, std::cerr); });
    };
  });

  // fcidump
  FcidumpConfig fd_cfg;
  fd_cfg.basis_file = default_basis;
  std::string fd_mode, fd_orbitals = "mo";
  auto* fd = app.add_subcommand("fcidump", "import or export FCIDUMP integral files");
  fd->add_option("mode", fd_mode, "import or export")
      ->required()
      ->check(CLI::IsMember({"import", "export"}));
  fd->add_option("path", fd_cfg.path, "FCIDUMP file")->required();
  add_molecule_options(fd, fd_cfg.molecule);
  fd->add_option("--basis-file", fd_cfg.basis_file, "basis set file")->capture_default_str();
  fd->add_option("--orbitals", fd_orbitals, "oao or mo")
      ->check(CLI::IsMember({"oao", "mo"}))
      ->capture_default_str();
  fd->callback([&] {
    run = [&] {
      fd_cfg.import = fd_mode == "import";
      fd_cfg.orbitals = parse_orbitals(fd_orbitals);
      return cmd_fcidump(fd_cfg, std::cout, std::cerr);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  try {
    return run();
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitOperational;
  }
}
