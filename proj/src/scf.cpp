#include "localitylab/scf.hpp"

#include <cmath>
#include <deque>

#include <fmt/core.h>

#include "localitylab/error.hpp"

namespace localitylab {

namespace {

void fix_signs(Eigen::MatrixXd& vectors) {
  for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
    Eigen::Index imax = 0;
    vectors.col(j).cwiseAbs().maxCoeff(&imax);
    if (vectors(imax, j) < 0.0) vectors.col(j) *= -1.0;
  }
}

Eigen::MatrixXd density_from(const Eigen::MatrixXd& c, int n_occupied) {
  const auto occ = c.leftCols(n_occupied);
  return 2.0 * occ * occ.transpose();
}

struct Diis {
  explicit Diis(int size) : size_(size) {}

  Eigen::MatrixXd extrapolate(const Eigen::MatrixXd& fock, const Eigen::MatrixXd& error) {
    focks_.push_back(fock);
    errors_.push_back(error);
    if (static_cast<int>(focks_.size()) > size_) {
      focks_.pop_front();
      errors_.pop_front();
    }
    const auto m = static_cast<Eigen::Index>(focks_.size());
    if (m < 2) return fock;
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(m + 1, m + 1);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < m; ++j)
        b(i, j) = errors_[i].cwiseProduct(errors_[j]).sum();
    b.row(m).head(m).setConstant(-1.0);
    b.col(m).head(m).setConstant(-1.0);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + 1);
    rhs(m) = -1.0;
    const Eigen::VectorXd w = b.colPivHouseholderQr().solve(rhs);
    if (!w.allFinite()) return fock;
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(fock.rows(), fock.cols());
    for (Eigen::Index i = 0; i < m; ++i) out += w(i) * focks_[i];
    return out;
  }

 private:
  int size_;
  std::deque<Eigen::MatrixXd> focks_;
  std::deque<Eigen::MatrixXd> errors_;
};

}  // namespace

SortedEigen symmetric_eigen(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  SortedEigen out{es.eigenvalues(), es.eigenvectors()};
  fix_signs(out.vectors);
  return out;
}

OrbitalTransform lowdin_orthogonalize(const Eigen::MatrixXd& overlap) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(overlap);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < 1e-10)
    throw SingularOverlap(fmt::format("overlap matrix near-singular (min eigenvalue {:.3e})",
                                      min_eig));
  const Eigen::VectorXd inv_sqrt = es.eigenvalues().array().rsqrt();
  OrbitalTransform t;
  t.coefficients = es.eigenvectors() * inv_sqrt.asDiagonal() * es.eigenvectors().transpose();
  t.label = OrbitalBasis::OAO;
  return t;
}

Eigen::MatrixXd fock_matrix(const IntegralSet& ao, const Eigen::MatrixXd& density) {
  const auto n = static_cast<Eigen::Index>(ao.n_spatial());
  Eigen::MatrixXd f = ao.core();
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b <= a; ++b) {
      double g = 0.0;
      for (Eigen::Index c = 0; c < n; ++c)
        for (Eigen::Index d = 0; d < n; ++d)
          g += density(c, d) * (ao.eri(a, b, c, d) - 0.5 * ao.eri(a, c, b, d));
      f(a, b) += g;
      if (a != b) f(b, a) += g;
    }
  return f;
}

OrbitalTransform run_rhf(const IntegralSet& ao, int n_electrons, const ScfOptions& options) {
  const auto n = static_cast<int>(ao.n_spatial());
  if (n_electrons < 0 || n_electrons % 2 != 0)
    throw DomainError("restricted HF needs an even, non-negative electron count");
  if (n_electrons > 2 * n) throw DomainError("more electrons than spin orbitals");
  const int n_occ = n_electrons / 2;

  const Eigen::MatrixXd x = lowdin_orthogonalize(ao.overlap).coefficients;
  const Eigen::MatrixXd h = ao.core();

  auto diagonalize = [&](const Eigen::MatrixXd& f) {
    auto eig = symmetric_eigen(x.transpose() * f * x);
    Eigen::MatrixXd c = x * eig.vectors;
    fix_signs(c);
    return std::pair{eig.values, c};
  };

  auto [eps, c] = diagonalize(h);
  Eigen::MatrixXd density = density_from(c, n_occ);
  Diis diis(options.diis_subspace);

  double energy = 0.0, residual = 0.0;
  bool converged = false;
  int iter = 0;
  Eigen::MatrixXd fock;
  for (iter = 1; iter <= options.max_iterations; ++iter) {
    fock = fock_matrix(ao, density);
    const double e_new = 0.5 * density.cwiseProduct(h + fock).sum() + ao.nuclear_repulsion;
    const Eigen::MatrixXd comm = fock * density * ao.overlap - ao.overlap * density * fock;
    const Eigen::MatrixXd comm_orth = x.transpose() * comm * x;
    residual = comm_orth.cwiseAbs().maxCoeff();
    const double delta_e = std::abs(e_new - energy);
    energy = e_new;
    if (iter > 1 && residual < options.commutator_tolerance &&
        delta_e < options.energy_tolerance) {
      converged = true;
      break;
    }
    const Eigen::MatrixXd f_step =
        options.use_diis ? diis.extrapolate(fock, comm_orth) : fock;
    std::tie(eps, c) = diagonalize(f_step);
    const Eigen::MatrixXd new_density = density_from(c, n_occ);
    density = options.use_diis
                  ? new_density
                  : (1.0 - options.damping) * new_density + options.damping * density;
  }
  if (!converged)
    throw ScfNotConverged(fmt::format("SCF not converged after {} iterations "
                                      "(energy {:.12f}, residual {:.3e})",
                                      options.max_iterations, energy, residual),
                          energy, residual);

  // Canonical orbitals of the converged Fock matrix.
  std::tie(eps, c) = diagonalize(fock);
  if (n_occ > 0 && n_occ < n && eps(n_occ) - eps(n_occ - 1) < options.degeneracy_tolerance)
    throw DegenerateHomo(fmt::format("HOMO/LUMO degenerate (gap {:.3e})",
                                     eps(n_occ) - eps(n_occ - 1)));

  OrbitalTransform t;
  t.coefficients = c;
  t.label = OrbitalBasis::MO;
  t.converged = true;
  t.scf_energy = energy;
  t.orbital_energies = eps;
  t.iterations = iter;
  return t;
}

IntegralSet transform_integrals(const IntegralSet& ao, const OrbitalTransform& transform) {
  const Eigen::MatrixXd& c = transform.coefficients;
  const auto n = static_cast<std::size_t>(ao.n_spatial());
  if (static_cast<std::size_t>(c.rows()) != n)
    throw SizeMismatch("orbital transform does not match integral dimension");
  const auto m = static_cast<std::size_t>(c.cols());
  const Eigen::MatrixXd ctsc = c.transpose() * ao.overlap * c;
  const double dev = (ctsc - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff();
  if (dev > 1e-8)
    throw NonOrthogonalBasis(fmt::format("C^T S C deviates from identity by {:.3e}", dev));

  IntegralSet out;
  out.label = transform.label;
  out.overlap = ctsc;
  out.kinetic = c.transpose() * ao.kinetic * c;
  out.nuclear = c.transpose() * ao.nuclear * c;
  out.nuclear_repulsion = ao.nuclear_repulsion;

  // (ab|cd) -> (ib|cd) -> (ij|cd) -> (ij|kd) -> (ij|kl), each step O(n^5).
  const auto& src = ao.eri.data();
  std::vector<double> t1(m * n * n * n, 0.0), t2(m * m * n * n, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t a = 0; a < n; ++a) {
      const double cai = c(a, i);
      if (cai == 0.0) continue;
      const double* s = &src[a * n * n * n];
      double* d = &t1[i * n * n * n];
      for (std::size_t r = 0; r < n * n * n; ++r) d[r] += cai * s[r];
    }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t b = 0; b < n; ++b) {
        const double cbj = c(b, j);
        if (cbj == 0.0) continue;
        const double* s = &t1[(i * n + b) * n * n];
        double* d = &t2[(i * m + j) * n * n];
        for (std::size_t r = 0; r < n * n; ++r) d[r] += cbj * s[r];
      }
  t1.assign(m * m * m * n, 0.0);
  for (std::size_t ij = 0; ij < m * m; ++ij)
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t cc = 0; cc < n; ++cc) {
        const double cck = c(cc, k);
        if (cck == 0.0) continue;
        const double* s = &t2[(ij * n + cc) * n];
        double* d = &t1[(ij * m + k) * n];
        for (std::size_t r = 0; r < n; ++r) d[r] += cck * s[r];
      }
  out.eri = EriTensor(m);
  auto& dst = out.eri.data();
  for (std::size_t ijk = 0; ijk < m * m * m; ++ijk)
    for (std::size_t l = 0; l < m; ++l) {
      double v = 0.0;
      const double* s = &t1[ijk * n];
      for (std::size_t d = 0; d < n; ++d) v += c(d, l) * s[d];
      dst[ijk * m + l] = v;
    }
  // Make the 8-fold permutational symmetry exact.
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      for (std::size_t k = 0; k <= i; ++k)
        for (std::size_t l = 0; l <= (k == i ? j : k); ++l)
          out.eri.set_symmetric(i, j, k, l, out.eri(i, j, k, l));
  auto symmetrize = [](Eigen::MatrixXd& a) { a = 0.5 * (a + a.transpose()).eval(); };
  symmetrize(out.overlap);
  symmetrize(out.kinetic);
  symmetrize(out.nuclear);
  return out;
}

}  // namespace localitylab
