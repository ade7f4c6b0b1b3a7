#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "localitylab/integrals.hpp"

namespace localitylab {

struct OneBodyTerm {
  std::uint32_t p, q;
  double value;
};

struct TwoBodyTerm {
  std::array<std::uint32_t, 4> index;  // p, q, r, s
  double value;
};

/// H = scalar + sum h_pq a+_p a_q + 1/2 sum h_pqrs a+_p a+_q a_r a_s.
///
/// Two-body coefficients are stored as printed (the 1/2 is applied by
/// consumers). For real spatial orbitals h_pqrs = (ps|qr), so spins must
/// match on (p,s) and on (q,r). Spin orbital 2i is spatial i with spin up,
/// 2i+1 spin down. Entries below 1e-16 in magnitude are never stored; both
/// term lists are sorted lexicographically by index.
struct SecondQuantizedHamiltonian {
  std::size_t n_spin_orbitals = 0;
  double scalar = 0.0;
  std::vector<OneBodyTerm> one_body;
  std::vector<TwoBodyTerm> two_body;
  OrbitalBasis basis_label = OrbitalBasis::OAO;

  double one_body_at(std::size_t p, std::size_t q) const;
  double two_body_at(std::size_t p, std::size_t q, std::size_t r, std::size_t s) const;
  /// Sorts and drops entries below the storage floor.
  void normalize();
};

inline constexpr double kStorageFloor = 1e-16;

/// Throws NonOrthogonalBasis for AO-labelled integrals.
SecondQuantizedHamiltonian build_spin_orbital_hamiltonian(const IntegralSet& integrals);

struct SparsityCensus {
  double threshold = 0.0;
  std::size_t n_oei_significant = 0;
  std::size_t n_tei_significant = 0;
  std::size_t n_oei_total = 0;
  std::size_t n_tei_total = 0;
  double h_max_oei = 0.0;
  double h_max_tei = 0.0;
  /// Sum of |h| over stored entries that are not significant.
  double total_removed_weight = 0.0;
};

/// Counts stored entries with |h| > threshold in each class.
SparsityCensus census(const SecondQuantizedHamiltonian& h, double threshold);

struct TruncationResult {
  SecondQuantizedHamiltonian hamiltonian;
  double removed_weight = 0.0;   // sum of |h| over removed entries
  std::size_t n_removed = 0;     // N_r, counted per stored entry
  double threshold = 0.0;        // delta for threshold truncation, else 0
  double implied_epsilon = 0.0;  // N_r * delta (threshold truncation)
  double coarse_epsilon = 0.0;   // delta * M^4, the epsilon for which delta = eps / M^4
};

/// Removes whole symmetry classes ({pq, qp}; {pqrs, srqp, qpsr, rspq}) in
/// ascending magnitude while the cumulative removed weight stays below
/// epsilon. Ties are broken by (one-body before two-body, canonical index).
TruncationResult truncate_by_total_weight(const SecondQuantizedHamiltonian& h, double epsilon);

/// Removes every symmetry class whose entries have |h| < delta.
TruncationResult truncate_by_threshold(const SecondQuantizedHamiltonian& h, double delta);

}  // namespace localitylab
