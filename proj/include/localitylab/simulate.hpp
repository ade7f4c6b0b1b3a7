#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "localitylab/hamiltonian.hpp"
#include "localitylab/pauli.hpp"

namespace localitylab {

inline constexpr std::size_t kMaxDenseQubits = 14;

struct DenseOperator {
  std::size_t n_qubits = 0;
  Eigen::MatrixXcd matrix;
  bool hermitian = false;
};

/// Throws TooLarge above kMaxDenseQubits.
DenseOperator to_dense(const PauliSum& p);

/// Restriction to the computational basis states on which every diagonal
/// observable takes its target value (e.g. particle number, S_z). Throws
/// DomainError if an observable has off-diagonal strings.
struct SectorConstraint {
  PauliSum observable;
  double value;
};

std::vector<std::uint64_t> sector_basis(std::size_t n_qubits,
                                        std::span<const SectorConstraint> constraints);

struct GroundState {
  double energy = 0.0;
  Eigen::VectorXcd vector;       // full 2^n amplitudes
  Eigen::VectorXd spectrum;      // ascending eigenvalues within the sector
  bool degenerate = false;       // second eigenvalue within 1e-8
  double residual = 0.0;         // ||H v - E v||
};

/// Lowest eigenpair of a Hermitian PauliSum, optionally restricted to a
/// symmetry sector. Throws TooLarge above kMaxDenseQubits.
GroundState ground_state(const PauliSum& p, std::span<const SectorConstraint> constraints = {});

/// Particle-number (and optionally S_z = 0) sector of a fermionic encoding.
std::vector<SectorConstraint> electron_sector(Encoding encoding, std::size_t n_modes,
                                              int n_electrons, bool singlet_sz = true);

/// Exact ground energy by diagonalizing H in the basis of determinants with
/// `n_electrons` electrons (and S_z = 0 when requested).
struct FciResult {
  double energy = 0.0;
  Eigen::VectorXd spectrum;
  std::vector<std::uint64_t> determinants;
  Eigen::VectorXd vector;
};
FciResult fci_ground_state(const SecondQuantizedHamiltonian& h, int n_electrons,
                           bool singlet_sz = true);

/// <Psi|H|Psi> for a determinant-basis vector.
double fci_expectation(const SecondQuantizedHamiltonian& h,
                       std::span<const std::uint64_t> determinants, const Eigen::VectorXd& psi);

/// Dense matrix of H on the given determinants.
Eigen::MatrixXd fci_matrix(const SecondQuantizedHamiltonian& h,
                           std::span<const std::uint64_t> determinants);

/// <v|P|v> for a state on the full 2^n space.
double expectation(const PauliSum& p, const Eigen::VectorXcd& state);
double expectation(const PauliString& s, const Eigen::VectorXcd& state);

struct TrotterResult {
  double empirical_error = 0.0;  // |E_trotter - E_0|
  double exact_energy = 0.0;
  double trotter_energy = 0.0;
  std::size_t steps = 0;         // ceil(T_total / dt)
  double ground_overlap = 0.0;   // |<v|psi_0>| of the selected eigenvector
};

/// First-order product formula U = prod_j exp(-i H_j dt) in lexicographic term
/// order. The effective eigenvalue is -arg(lambda)/dt for the eigenvector of U
/// with the largest overlap with the exact ground state. Throws PhaseWrap when
/// |E_0| dt >= pi.
TrotterResult trotter_eigenvalue_error(const PauliSum& p, double dt, double total_time,
                                       std::span<const SectorConstraint> constraints = {},
                                       int order = 1);

struct AveragingResult {
  double estimate = 0.0;
  double variance = 0.0;  // estimated variance of `estimate`
  double exact = 0.0;     // <state|P|state>
};

/// Simulates `samples_per_term` independent +-1 measurements of each
/// non-identity term; the identity coefficient is added exactly.
AveragingResult averaging_simulation(const PauliSum& p, const Eigen::VectorXcd& state,
                                     std::uint64_t samples_per_term, std::uint64_t seed);

/// N non-interacting two-level subsystems probed with a product trial state of
/// per-subsystem ground amplitude `overlap`.
struct VanVleckModel {
  int n_subsystems = 1;
  double overlap = 1.0;  // Delta in (0, 1]
  double gap = 1.0;      // omega = E_e - E_g > 0
  double ground_energy = 0.0;

  void validate() const;
};

/// N (1 - Delta^2) omega.
double vanvleck_bias(const VanVleckModel& m);
/// Binomial mass of exactly M excited subsystems.
double vanvleck_success_probability(const VanVleckModel& m, int excited);

struct VanVleckCumulative {
  double p_exact = 0.0;     // sum_{M' <= M} binomial mass
  double p_erf = 0.0;       // Gaussian/erf closed form
  bool gaussian_valid = false;  // sigma^2 >= 9
  double selected = 0.0;    // p_erf when gaussian_valid, else p_exact
  double cost = 0.0;        // 1 / selected, +inf when selected < 1e-300
};
VanVleckCumulative vanvleck_cumulative_and_cost(const VanVleckModel& m, int excited);

}  // namespace localitylab
