#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "localitylab/hamiltonian.hpp"
#include "localitylab/pauli.hpp"

namespace localitylab {

/// Integral statistics entering the cost formulas. Counts are real so that
/// synthetic scaling studies can go beyond what fits in memory.
struct HamiltonianStats {
  double n_spin_orbitals = 0.0;  // M
  double n_oei = 0.0;
  double n_tei = 0.0;
  double h_max_oei = 0.0;
  double h_max_tei = 0.0;
  double beta_max_oei = 0.0;

  double n_int() const { return n_oei + n_tei; }
};

HamiltonianStats stats_from_census(const SparsityCensus& c, std::size_t n_spin_orbitals,
                                   double beta_max_oei);

/// Quadratic regime: N_oei = M, N_tei = M^2, unit magnitudes and beta.
HamiltonianStats synthetic_stats(double n_spin_orbitals);

/// beta M^{2/3} N_oei + h_tei N_tei.
double interaction_scale(const HamiltonianStats& s);
/// h_oei N_oei + h_tei N_tei.
double interaction_scale_measured(const HamiltonianStats& s);

/// Worst-case first-order eigenvalue shift scale^3 dt^2, using either the
/// beta form or the measured h_max^OEI.
double trotter_error_bound(const HamiltonianStats& s, double dt, bool beta_form = true);

/// dt = [eps / scale^3]^{1/2}.
double qpe_timestep_bound(const HamiltonianStats& s, double epsilon);

struct QpeCost {
  double timestep = 0.0;
  double total_time = 0.0;
  bool fourier_limit = true;        // total_time = 1/eps
  double steps = 0.0;               // ceil(T / dt)
  double log_factor = 0.0;          // ceil(log2 M)
  double gates_per_step = 0.0;      // N_g
  double gate_count = 0.0;          // N_c
  double gate_count_no_log = 0.0;   // N_c with the log factor set to 1
};

/// N_g = gates_per_term (N_oei + N_tei) ceil(log2 M), N_c = N_g ceil(T / dt).
/// T defaults to 1/eps.
QpeCost qpe_cost(const HamiltonianStats& s, double epsilon, double gates_per_term = 1.0,
                 std::optional<double> total_time = std::nullopt);

struct AveragingCost {
  double samples = 0.0;       // N_s = scale^2 / eps^2
  double measurements = 0.0;  // N_m = (N_oei + N_tei) N_s
};
AveragingCost averaging_cost(const HamiltonianStats& s, double epsilon);

struct AdiabaticResources {
  double qubits = 0.0;    // M^2 ceil(log2 M)
  double couplers = 0.0;  // M^2 ceil(log2 M)^2
  double gap_scale = 0.0;        // (beta M^{2/3} / eps)^{log2 M}; may overflow to inf
  double log10_gap_scale = 0.0;
};
AdiabaticResources adiabatic_resources(double n_spin_orbitals, double epsilon, double beta = 1.0);

struct CouplerCensus {
  std::size_t couplers = 0;       // nonzero weight-2 terms
  std::size_t coupled_pairs = 0;  // distinct qubit pairs among them
  std::size_t local_fields = 0;   // weight-1 terms
  std::size_t higher_weight = 0;  // weight > 2, need gadgets
};
CouplerCensus two_local_coupler_count(const PauliSum& p);

/// Least-squares slope of log y against log x.
double log_log_slope(std::span<const double> x, std::span<const double> y);

struct CostReport {
  std::string method;
  std::vector<std::pair<std::string, double>> inputs;
  std::vector<std::pair<std::string, double>> outputs;
  std::vector<std::string> assumptions;
};

CostReport qpe_report(const HamiltonianStats& s, double epsilon, double gates_per_term,
                      std::optional<double> total_time);
CostReport averaging_report(const HamiltonianStats& s, double epsilon);
CostReport adiabatic_report(const HamiltonianStats& s, double epsilon);

}  // namespace localitylab
