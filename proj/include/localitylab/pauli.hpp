#pragma once

#include <complex>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "localitylab/hamiltonian.hpp"

namespace localitylab {

using Complex = std::complex<double>;

/// Tensor product of single-qubit Paulis stored as X/Z bit masks (Y sets
/// both), so at most 64 qubits.
class PauliString {
 public:
  static constexpr std::size_t kMaxQubits = 64;

  PauliString() = default;
  explicit PauliString(std::size_t n_qubits);
  PauliString(std::size_t n_qubits, std::uint64_t x_mask, std::uint64_t z_mask);

  /// Parses "X0 Z3 Y7"; empty text is the identity.
  static PauliString parse(std::size_t n_qubits, const std::string& text);

  std::size_t n_qubits() const { return n_; }
  std::uint64_t x_mask() const { return x_; }
  std::uint64_t z_mask() const { return z_; }

  /// 'I', 'X', 'Y' or 'Z'.
  char letter(std::size_t qubit) const;
  void set(std::size_t qubit, char letter);
  std::size_t weight() const;
  bool is_identity() const { return (x_ | z_) == 0; }
  bool commutes_with(const PauliString& other) const;
  /// Number of Y letters; the dense matrix is real iff this is even.
  std::size_t y_count() const;

  /// "X0 Z3 Y7" (qubits ascending, identity letters omitted).
  std::string to_string() const;

  /// Lexicographic on the letter sequence from qubit 0 with I < X < Y < Z.
  friend bool operator<(const PauliString& a, const PauliString& b);
  friend bool operator==(const PauliString& a, const PauliString& b) = default;

 private:
  std::size_t n_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

struct PauliProduct {
  int i_power;  // phase = i^i_power
  PauliString string;
  Complex phase() const;
};

/// Site-wise product with accumulated phase. Throws SizeMismatch.
PauliProduct pauli_multiply(const PauliString& a, const PauliString& b);

/// Weighted sum of Pauli strings. Coefficients with |c| < 1e-14 are pruned
/// by prune(), which every arithmetic operator applies to its result.
class PauliSum {
 public:
  static constexpr double kPruneThreshold = 1e-14;
  using Terms = std::map<PauliString, Complex>;

  PauliSum() = default;
  explicit PauliSum(std::size_t n_qubits) : n_(n_qubits) {}
  PauliSum(const PauliString& s, Complex c);

  static PauliSum identity(std::size_t n_qubits, Complex c = 1.0);

  std::size_t n_qubits() const { return n_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  Complex coefficient(const PauliString& s) const;

  /// Accumulates without pruning.
  void add(const PauliString& s, Complex c);
  void prune(double threshold = kPruneThreshold);

  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator-=(const PauliSum& other);
  PauliSum& operator*=(Complex c);
  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
  friend PauliSum operator-(PauliSum a, const PauliSum& b) { return a -= b; }
  friend PauliSum operator*(PauliSum a, Complex c) { return a *= c; }
  friend PauliSum operator*(Complex c, PauliSum a) { return a *= c; }
  friend PauliSum operator*(const PauliSum& a, const PauliSum& b);

  /// Largest |Im c| over all terms.
  double max_imaginary() const;
  bool is_hermitian(double tol = 1e-12) const { return max_imaginary() <= tol; }
  /// Sum of |c| over all terms.
  double one_norm() const;

 private:
  std::size_t n_ = 0;
  Terms terms_;
};

PauliSum commutator(const PauliSum& a, const PauliSum& b);

/// One line per term, `coefficient  X0 Z3 Y7`, coefficients with 17
/// significant digits; complex coefficients are written `(re,im)`. The first
/// line is `# qubits N`.
void write_pauli_sum(std::ostream& out, const PauliSum& p);
PauliSum read_pauli_sum(std::istream& in);

enum class Encoding { JordanWigner, BravyiKitaev };

struct Ladder {
  std::size_t mode;
  bool creation;
};

/// Qubit image of a single creation/annihilation operator on `n_modes` modes.
/// Jordan-Wigner: a_p = (X_p + iY_p)/2 Z_{p-1}...Z_0, so a+_p a_p = (I - Z_p)/2.
PauliSum ladder_operator(Encoding encoding, std::size_t mode, std::size_t n_modes,
                         bool creation);

/// Qubit image of coefficient * ops[0] ops[1] ... (left to right).
PauliSum fermion_product(Encoding encoding, std::span<const Ladder> ops, std::size_t n_modes,
                         Complex coefficient = 1.0);

PauliSum transform(Encoding encoding, const SecondQuantizedHamiltonian& h);
PauliSum jordan_wigner(const SecondQuantizedHamiltonian& h);
PauliSum bravyi_kitaev(const SecondQuantizedHamiltonian& h);

/// Total particle number sum_p a+_p a_p in the given encoding.
PauliSum number_operator(Encoding encoding, std::size_t n_modes);
/// S_z = (N_up - N_down)/2 with even modes spin up.
PauliSum spin_z_operator(Encoding encoding, std::size_t n_modes);

/// Index sets of the Fenwick tree behind the Bravyi-Kitaev encoding, valid
/// for any number of modes.
class FenwickTree {
 public:
  explicit FenwickTree(std::size_t n);
  std::size_t size() const { return parent_.size(); }
  /// Ancestors of j: qubits whose stored partial sums include mode j.
  std::vector<std::size_t> update_set(std::size_t j) const;
  std::vector<std::size_t> children(std::size_t j) const;
  /// Qubits whose stored sums together give the parity of modes < j.
  std::vector<std::size_t> parity_set(std::size_t j) const;
  /// parity_set(j) minus children(j).
  std::vector<std::size_t> remainder_set(std::size_t j) const;

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> parent_;
  std::vector<std::vector<std::size_t>> children_;
};

struct TransformStats {
  std::size_t term_count = 0;
  std::size_t max_weight = 0;
  double mean_weight = 0.0;
};

TransformStats transform_stats(const PauliSum& p);

/// Single weighted Pauli string, one summand of a Trotter splitting.
struct PauliTerm {
  Complex coefficient;
  PauliString string;
};

/// Terms of p in its lexicographic (map) order.
std::vector<PauliTerm> ordered_terms(const PauliSum& p);

struct BchErrorOperators {
  PauliSum first_order;   // V(0) = (dt/2) sum_{j<k} i[H_j, H_k]
  PauliSum second_order;  // V(1) = (dt^2/12) sum_j sum_{k<j} sum_{i<=j} (1 - d_ij/2)[H_i, [H_j, H_k]]
};

/// Throws ComplexityGuard when terms^3 exceeds `budget` triple products.
BchErrorOperators bch_error_operator(std::span<const PauliTerm> terms, double dt,
                                     double budget = 1e6);

}  // namespace localitylab
