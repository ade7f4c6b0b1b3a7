#include "localitylab/estimators.hpp"

#include <cmath>
#include <set>

#include "localitylab/error.hpp"

namespace localitylab {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(name) + " must be positive");
}

double ceil_log2(double m) { return std::max(1.0, std::ceil(std::log2(m) - 1e-12)); }

std::vector<std::pair<std::string, double>> echo(const HamiltonianStats& s, double epsilon) {
  return {{"M", s.n_spin_orbitals},       {"n_oei", s.n_oei},
          {"n_tei", s.n_tei},             {"h_max_oei", s.h_max_oei},
          {"h_max_tei", s.h_max_tei},     {"beta_max_oei", s.beta_max_oei},
          {"epsilon", epsilon}};
}

}  // namespace

HamiltonianStats stats_from_census(const SparsityCensus& c, std::size_t n_spin_orbitals,
                                   double beta_max_oei) {
  HamiltonianStats s;
  s.n_spin_orbitals = static_cast<double>(n_spin_orbitals);
  s.n_oei = static_cast<double>(c.n_oei_significant);
  s.n_tei = static_cast<double>(c.n_tei_significant);
  s.h_max_oei = c.h_max_oei;
  s.h_max_tei = c.h_max_tei;
  s.beta_max_oei = beta_max_oei;
  return s;
}

HamiltonianStats synthetic_stats(double m) {
  require_positive(m, "M");
  return {m, m, m * m, 1.0, 1.0, 1.0};
}

double interaction_scale(const HamiltonianStats& s) {
  return s.beta_max_oei * std::pow(s.n_spin_orbitals, 2.0 / 3.0) * s.n_oei +
         s.h_max_tei * s.n_tei;
}

double interaction_scale_measured(const HamiltonianStats& s) {
  return s.h_max_oei * s.n_oei + s.h_max_tei * s.n_tei;
}

double trotter_error_bound(const HamiltonianStats& s, double dt, bool beta_form) {
  const double a = beta_form ? interaction_scale(s) : interaction_scale_measured(s);
  return a * a * a * dt * dt;
}

double qpe_timestep_bound(const HamiltonianStats& s, double epsilon) {
  require_positive(epsilon, "epsilon");
  const double a = interaction_scale(s);
  require_positive(a, "interaction scale");
  return std::sqrt(epsilon / (a * a * a));
}

QpeCost qpe_cost(const HamiltonianStats& s, double epsilon, double gates_per_term,
                 std::optional<double> total_time) {
  require_positive(gates_per_term, "gates per term");
  QpeCost c;
  c.timestep = qpe_timestep_bound(s, epsilon);
  c.fourier_limit = !total_time.has_value();
  c.total_time = total_time.value_or(1.0 / epsilon);
  require_positive(c.total_time, "total time");
  c.steps = std::ceil(c.total_time / c.timestep);
  c.log_factor = ceil_log2(s.n_spin_orbitals);
  c.gates_per_step = gates_per_term * s.n_int() * c.log_factor;
  c.gate_count = c.gates_per_step * c.steps;
  c.gate_count_no_log = gates_per_term * s.n_int() * c.steps;
  return c;
}

AveragingCost averaging_cost(const HamiltonianStats& s, double epsilon) {
  require_positive(epsilon, "epsilon");
  const double a = interaction_scale(s);
  AveragingCost c;
  c.samples = a * a / (epsilon * epsilon);
  c.measurements = s.n_int() * c.samples;
  return c;
}

AdiabaticResources adiabatic_resources(double m, double epsilon, double beta) {
  if (!(m >= 2.0)) throw DomainError("adiabatic resources need M >= 2");
  require_positive(epsilon, "epsilon");
  require_positive(beta, "beta");
  AdiabaticResources r;
  const double l = ceil_log2(m);
  r.qubits = m * m * l;
  r.couplers = m * m * l * l;
  const double base = beta * std::pow(m, 2.0 / 3.0) / epsilon;
  r.log10_gap_scale = std::log2(m) * std::log10(base);
  r.gap_scale = std::pow(base, std::log2(m));
  return r;
}

CouplerCensus two_local_coupler_count(const PauliSum& p) {
  CouplerCensus c;
  std::set<std::uint64_t> pairs;
  for (const auto& [s, coeff] : p.terms()) {
    if (coeff == Complex{0.0, 0.0}) continue;
    const auto w = s.weight();
    if (w == 1) {
      ++c.local_fields;
    } else if (w == 2) {
      ++c.couplers;
      pairs.insert(s.x_mask() | s.z_mask());
    } else if (w > 2) {
      ++c.higher_weight;
    }
  }
  c.coupled_pairs = pairs.size();
  return c;
}

double log_log_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw SizeMismatch("slope fit needs matching points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw DomainError("log-log fit needs positive data");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw DomainError("slope fit needs distinct x values");
  return (n * sxy - sx * sy) / denom;
}

CostReport qpe_report(const HamiltonianStats& s, double epsilon, double gates_per_term,
                      std::optional<double> total_time) {
  const auto c = qpe_cost(s, epsilon, gates_per_term, total_time);
  CostReport r{"QPE", echo(s, epsilon), {}, {}};
  r.inputs.emplace_back("gates_per_term", gates_per_term);
  r.inputs.emplace_back("T", c.total_time);
  r.outputs = {{"timestep", c.timestep},
               {"steps", c.steps},
               {"log_factor", c.log_factor},
               {"gates_per_step", c.gates_per_step},
               {"gate_count", c.gate_count},
               {"gate_count_no_log", c.gate_count_no_log}};
  r.assumptions = {c.fourier_limit ? "T = 1/epsilon (Fourier limit)" : "T fixed by caller",
                   "log base 2", "kappa = 1"};
  return r;
}

CostReport averaging_report(const HamiltonianStats& s, double epsilon) {
  const auto c = averaging_cost(s, epsilon);
  CostReport r{"Averaging", echo(s, epsilon), {}, {}};
  r.outputs = {{"samples", c.samples}, {"measurements", c.measurements}};
  r.assumptions = {"N_int = N_oei + N_tei", "kappa = 1"};
  return r;
}

CostReport adiabatic_report(const HamiltonianStats& s, double epsilon) {
  const auto a = adiabatic_resources(s.n_spin_orbitals, epsilon, s.beta_max_oei);
  CostReport r{"Adiabatic", echo(s, epsilon), {}, {}};
  r.outputs = {{"qubits", a.qubits},
               {"couplers", a.couplers},
               {"gap_scale", a.gap_scale},
               {"log10_gap_scale", a.log10_gap_scale}};
  r.assumptions = {"poly(M) prefactor = 1", "gap_scale is a lower-bound scale, not a value",
                   "log base 2"};
  return r;
}

}  // namespace localitylab
