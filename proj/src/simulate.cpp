#include "localitylab/simulate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <unordered_map>

#include <Eigen/Eigenvalues>
#include <fmt/core.h>

#include "localitylab/error.hpp"
#include "localitylab/random.hpp"

namespace localitylab {

namespace {

constexpr Complex kI{0.0, 1.0};

void check_dense(std::size_t n) {
  if (n > kMaxDenseQubits)
    throw TooLarge(fmt::format("{} qubits exceeds the dense simulation limit of {}", n,
                               kMaxDenseQubits));
}

// <b ^ x| P |b> for P = i^{#Y} X^x Z^z.
Complex string_phase(const PauliString& s, std::uint64_t b) {
  static constexpr Complex kPowers[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const int ipow = static_cast<int>(s.y_count() % 4);
  const bool minus = std::popcount(b & s.z_mask()) % 2 == 1;
  return minus ? -kPowers[ipow] : kPowers[ipow];
}

Eigen::MatrixXcd restricted_matrix(const PauliSum& p, const std::vector<std::uint64_t>& basis) {
  const std::size_t dim = std::size_t{1} << p.n_qubits();
  std::vector<std::int64_t> position(dim, -1);
  for (std::size_t i = 0; i < basis.size(); ++i) position[basis[i]] = static_cast<std::int64_t>(i);
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& [s, c] : p.terms())
    for (Eigen::Index col = 0; col < n; ++col) {
      const std::uint64_t b = basis[col];
      const auto row = position[b ^ s.x_mask()];
      if (row < 0) continue;
      m(row, col) += c * string_phase(s, b);
    }
  return m;
}

std::vector<std::uint64_t> all_states(std::size_t n_qubits) {
  std::vector<std::uint64_t> out(std::size_t{1} << n_qubits);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
  return out;
}

// Fermionic sign of moving an operator on `mode` past occupied modes below it.
int parity_below(std::uint64_t det, std::size_t mode) {
  return std::popcount(det & ((std::uint64_t{1} << mode) - 1)) % 2 ? -1 : 1;
}

// Applies a_mode (creation=false) or a+_mode to |det>; returns false on zero.
bool apply_ladder(std::uint64_t& det, int& sign, std::size_t mode, bool creation) {
  const std::uint64_t b = std::uint64_t{1} << mode;
  const bool occupied = det & b;
  if (occupied == creation) return false;
  sign *= parity_below(det, mode);
  det ^= b;
  return true;
}

std::vector<std::uint64_t> determinants(std::size_t n_modes, int n_electrons, bool singlet_sz) {
  std::vector<std::uint64_t> out;
  const std::uint64_t even = 0x5555555555555555ULL;
  for (std::uint64_t d = 0; d < (std::uint64_t{1} << n_modes); ++d) {
    if (std::popcount(d) != n_electrons) continue;
    if (singlet_sz && std::popcount(d & even) * 2 != n_electrons) continue;
    out.push_back(d);
  }
  return out;
}

}  // namespace

DenseOperator to_dense(const PauliSum& p) {
  check_dense(p.n_qubits());
  DenseOperator d;
  d.n_qubits = p.n_qubits();
  d.matrix = restricted_matrix(p, all_states(p.n_qubits()));
  d.hermitian = p.is_hermitian();
  return d;
}

std::vector<std::uint64_t> sector_basis(std::size_t n_qubits,
                                        std::span<const SectorConstraint> constraints) {
  check_dense(n_qubits);
  for (const auto& c : constraints)
    for (const auto& [s, coeff] : c.observable.terms())
      if (s.x_mask() != 0) throw DomainError("sector observable is not diagonal");
  std::vector<std::uint64_t> out;
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << n_qubits); ++b) {
    bool keep = true;
    for (const auto& c : constraints) {
      double v = 0.0;
      for (const auto& [s, coeff] : c.observable.terms())
        v += (string_phase(s, b) * coeff).real();
      if (std::abs(v - c.value) > 1e-9) {
        keep = false;
        break;
      }
    }
    if (keep) out.push_back(b);
  }
  return out;
}

GroundState ground_state(const PauliSum& p, std::span<const SectorConstraint> constraints) {
  check_dense(p.n_qubits());
  if (!p.is_hermitian(1e-10)) throw DomainError("ground_state needs a Hermitian operator");
  const auto basis = constraints.empty() ? all_states(p.n_qubits())
                                         : sector_basis(p.n_qubits(), constraints);
  if (basis.empty()) throw DomainError("symmetry sector is empty");
  const Eigen::MatrixXcd m = restricted_matrix(p, basis);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  GroundState g;
  g.spectrum = es.eigenvalues();
  g.energy = g.spectrum(0);
  g.degenerate = g.spectrum.size() > 1 && g.spectrum(1) - g.spectrum(0) < 1e-8;
  const Eigen::VectorXcd v = es.eigenvectors().col(0);
  g.residual = (m * v - g.energy * v).norm();
  g.vector = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(std::size_t{1} << p.n_qubits()));
  for (std::size_t i = 0; i < basis.size(); ++i) g.vector(basis[i]) = v(i);
  return g;
}

std::vector<SectorConstraint> electron_sector(Encoding encoding, std::size_t n_modes,
                                              int n_electrons, bool singlet_sz) {
  std::vector<SectorConstraint> out;
  out.push_back({number_operator(encoding, n_modes), static_cast<double>(n_electrons)});
  if (singlet_sz) out.push_back({spin_z_operator(encoding, n_modes), 0.0});
  return out;
}

Eigen::MatrixXd fci_matrix(const SecondQuantizedHamiltonian& h,
                           std::span<const std::uint64_t> dets) {
  check_dense(h.n_spin_orbitals);
  std::unordered_map<std::uint64_t, Eigen::Index> index;
  for (std::size_t i = 0; i < dets.size(); ++i) index[dets[i]] = static_cast<Eigen::Index>(i);
  const auto n = static_cast<Eigen::Index>(dets.size());
  Eigen::MatrixXd m = h.scalar * Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index col = 0; col < n; ++col) {
    for (const auto& t : h.one_body) {
      std::uint64_t d = dets[col];
      int sign = 1;
      if (!apply_ladder(d, sign, t.q, false) || !apply_ladder(d, sign, t.p, true)) continue;
      auto it = index.find(d);
      if (it != index.end()) m(it->second, col) += sign * t.value;
    }
    for (const auto& t : h.two_body) {
      const auto [p, q, r, s] = t.index;
      std::uint64_t d = dets[col];
      int sign = 1;
      if (!apply_ladder(d, sign, s, false) || !apply_ladder(d, sign, r, false) ||
          !apply_ladder(d, sign, q, true) || !apply_ladder(d, sign, p, true))
        continue;
      auto it = index.find(d);
      if (it != index.end()) m(it->second, col) += 0.5 * sign * t.value;
    }
  }
  return m;
}

FciResult fci_ground_state(const SecondQuantizedHamiltonian& h, int n_electrons,
                           bool singlet_sz) {
  FciResult r;
  r.determinants = determinants(h.n_spin_orbitals, n_electrons, singlet_sz);
  if (r.determinants.empty()) throw DomainError("no determinants in the requested sector");
  const Eigen::MatrixXd m = fci_matrix(h, r.determinants);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  r.spectrum = es.eigenvalues();
  r.energy = r.spectrum(0);
  r.vector = es.eigenvectors().col(0);
  return r;
}

double fci_expectation(const SecondQuantizedHamiltonian& h,
                       std::span<const std::uint64_t> dets, const Eigen::VectorXd& psi) {
  return psi.dot(fci_matrix(h, dets) * psi);
}

double expectation(const PauliString& s, const Eigen::VectorXcd& state) {
  Complex acc = 0.0;
  for (Eigen::Index b = 0; b < state.size(); ++b) {
    const auto ub = static_cast<std::uint64_t>(b);
    acc += std::conj(state(static_cast<Eigen::Index>(ub ^ s.x_mask()))) * string_phase(s, ub) *
           state(b);
  }
  return acc.real();
}

double expectation(const PauliSum& p, const Eigen::VectorXcd& state) {
  double e = 0.0;
  for (const auto& [s, c] : p.terms()) e += (c * expectation(s, state)).real();
  return e;
}

TrotterResult trotter_eigenvalue_error(const PauliSum& p, double dt, double total_time,
                                       std::span<const SectorConstraint> constraints,
                                       int order) {
  if (order != 1) throw DomainError("only the first-order product formula is implemented");
  if (!(dt > 0.0) || !(total_time > 0.0)) throw DomainError("dt and T must be positive");
  check_dense(p.n_qubits());
  if (!p.is_hermitian(1e-12)) throw DomainError("Trotter evolution needs real coefficients");

  const auto exact = ground_state(p, constraints);
  if (std::abs(exact.energy) * dt >= std::numbers::pi)
    throw PhaseWrap(fmt::format("|E0| dt = {:.3g} >= pi", std::abs(exact.energy) * dt));

  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << p.n_qubits());
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
  for (const auto& term : ordered_terms(p)) {
    const double theta = term.coefficient.real() * dt;
    const double cs = std::cos(theta), sn = std::sin(theta);
    // u <- u * (cos I - i sin P), column by column.
    Eigen::MatrixXcd next(dim, dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
      const auto ub = static_cast<std::uint64_t>(b);
      const auto src = static_cast<Eigen::Index>(ub ^ term.string.x_mask());
      // P has a single nonzero in column b, at row b ^ x.
      next.col(b) = cs * u.col(b) - kI * sn * string_phase(term.string, ub) * u.col(src);
    }
    u.swap(next);
  }

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(u);
  Eigen::Index best = 0;
  double best_overlap = -1.0;
  for (Eigen::Index k = 0; k < dim; ++k) {
    const auto v = es.eigenvectors().col(k);
    const double ov = std::abs(v.dot(exact.vector)) / v.norm();
    if (ov > best_overlap) {
      best_overlap = ov;
      best = k;
    }
  }
  TrotterResult r;
  r.exact_energy = exact.energy;
  r.trotter_energy = -std::arg(es.eigenvalues()(best)) / dt;
  r.empirical_error = std::abs(r.trotter_energy - r.exact_energy);
  r.steps = static_cast<std::size_t>(std::ceil(total_time / dt - 1e-12));
  r.ground_overlap = best_overlap;
  return r;
}

AveragingResult averaging_simulation(const PauliSum& p, const Eigen::VectorXcd& state,
                                     std::uint64_t samples_per_term, std::uint64_t seed) {
  if (samples_per_term < 1) throw DomainError("need at least one sample per term");
  if (std::abs(state.norm() - 1.0) > 1e-8) throw DomainError("state must be normalized");
  CounterRng rng(seed);
  AveragingResult r;
  const double n = static_cast<double>(samples_per_term);
  for (const auto& [s, c] : p.terms()) {
    const double coeff = c.real();
    const double mean_exact = expectation(s, state);
    r.exact += coeff * mean_exact;
    if (s.is_identity()) {
      r.estimate += coeff;
      continue;
    }
    const double p_plus = std::clamp(0.5 * (1.0 + mean_exact), 0.0, 1.0);
    std::binomial_distribution<std::uint64_t> draw(samples_per_term, p_plus);
    const double plus = static_cast<double>(draw(rng));
    const double mean = (2.0 * plus - n) / n;
    r.estimate += coeff * mean;
    const double sample_var = samples_per_term > 1 ? (1.0 - mean * mean) * n / (n - 1.0) : 0.0;
    r.variance += coeff * coeff * sample_var / n;
  }
  return r;
}

void VanVleckModel::validate() const {
  if (n_subsystems < 1) throw DomainError("Van Vleck model needs N >= 1");
  if (!(overlap > 0.0 && overlap <= 1.0)) throw DomainError("Delta must lie in (0, 1]");
  if (!(gap > 0.0)) throw DomainError("subsystem gap must be positive");
}

double vanvleck_bias(const VanVleckModel& m) {
  m.validate();
  return m.n_subsystems * (1.0 - m.overlap * m.overlap) * m.gap;
}

double vanvleck_success_probability(const VanVleckModel& m, int excited) {
  m.validate();
  const int n = m.n_subsystems;
  if (excited < 0 || excited > n) throw DomainError("excited count must lie in [0, N]");
  const double d2 = m.overlap * m.overlap;
  const double q = 1.0 - d2;
  if (q == 0.0) return excited == 0 ? 1.0 : 0.0;
  const double log_p = std::lgamma(n + 1.0) - std::lgamma(excited + 1.0) -
                       std::lgamma(n - excited + 1.0) + (n - excited) * std::log(d2) +
                       excited * std::log(q);
  return std::exp(log_p);
}

VanVleckCumulative vanvleck_cumulative_and_cost(const VanVleckModel& m, int excited) {
  m.validate();
  if (excited < 0 || excited > m.n_subsystems)
    throw DomainError("excited count must lie in [0, N]");
  VanVleckCumulative r;
  for (int k = 0; k <= excited; ++k) r.p_exact += vanvleck_success_probability(m, k);
  r.p_exact = std::min(r.p_exact, 1.0);

  const double d2 = m.overlap * m.overlap;
  const double mean = m.n_subsystems * (1.0 - d2);
  const double var = m.n_subsystems * d2 * (1.0 - d2);
  if (var == 0.0) {
    r.p_erf = excited > mean ? 1.0 : 0.5;
  } else {
    const double s = std::sqrt(2.0 * var);
    r.p_erf = 0.5 * (std::erf((excited - mean) / s) + std::erf(mean / s));
  }
  r.gaussian_valid = var >= 9.0;
  r.selected = r.gaussian_valid ? r.p_erf : r.p_exact;
  r.cost = r.selected < 1e-300 ? std::numeric_limits<double>::infinity() : 1.0 / r.selected;
  return r;
}

}  // namespace localitylab
