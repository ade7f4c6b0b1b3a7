#pragma once

#include <Eigen/Dense>

#include "localitylab/integrals.hpp"

namespace localitylab {

/// Columns of `coefficients` are the new orbitals expanded in AOs.
struct OrbitalTransform {
  Eigen::MatrixXd coefficients;
  OrbitalBasis label = OrbitalBasis::OAO;
  bool converged = true;
  double scf_energy = 0.0;              // MO only, includes nuclear repulsion
  Eigen::VectorXd orbital_energies;     // MO only, ascending
  int iterations = 0;
};

/// C = S^{-1/2}. Throws SingularOverlap when min eig(S) < 1e-10.
OrbitalTransform lowdin_orthogonalize(const Eigen::MatrixXd& overlap);

struct ScfOptions {
  int max_iterations = 200;
  double commutator_tolerance = 1e-8;
  double energy_tolerance = 1e-10;
  /// Density mixing used when DIIS is off: P <- (1 - damping) P_new + damping P_old.
  double damping = 0.5;
  bool use_diis = true;
  int diis_subspace = 8;
  /// LUMO - HOMO below this raises DegenerateHomo.
  double degeneracy_tolerance = 1e-8;
};

/// Closed-shell Roothaan-Hall SCF from the core-Hamiltonian guess. Returns
/// canonical orbitals (Fock diagonal), sorted by orbital energy with the
/// largest-magnitude AO coefficient of each column made positive.
OrbitalTransform run_rhf(const IntegralSet& ao, int n_electrons, const ScfOptions& options = {});

/// Closed-shell Fock matrix F = h + J - K/2 for AO density P = 2 C_occ C_occ^T.
Eigen::MatrixXd fock_matrix(const IntegralSet& ao, const Eigen::MatrixXd& density);

/// Conjugates one-electron matrices by C and transforms the ERIs with four
/// O(n^5) quarter transformations. Throws NonOrthogonalBasis unless
/// C^T S C = I to 1e-8.
IntegralSet transform_integrals(const IntegralSet& ao, const OrbitalTransform& transform);

/// Symmetric eigendecomposition with ascending eigenvalues and each
/// eigenvector's largest-magnitude component made positive.
struct SortedEigen {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};
SortedEigen symmetric_eigen(const Eigen::MatrixXd& m);

}  // namespace localitylab
