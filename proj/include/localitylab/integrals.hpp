#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "localitylab/molecule.hpp"

namespace localitylab {

/// Product of two s Gaussians: exp(-a r_A^2) exp(-b r_B^2) = K exp(-p r_P^2).
struct GaussianPair {
  double total_exponent;    // p = a + b
  double reduced_exponent;  // mu = ab / (a + b)
  Vec3 center;              // P = (aA + bB) / p
  double prefactor;         // K = exp(-mu R_AB^2)
  double overlap;           // S_ab = (pi / p)^{3/2} K
};

GaussianPair gaussian_product(const PrimitiveGaussian& a, const PrimitiveGaussian& b);

/// erf(sqrt(alpha) r) / r, continuous through r = 0.
double erf_over_distance(double alpha, double r);

// Primitive integrals over unnormalized s Gaussians exp(-a r_A^2).
double overlap(const PrimitiveGaussian& a, const PrimitiveGaussian& b);
double kinetic(const PrimitiveGaussian& a, const PrimitiveGaussian& b);
double nuclear_attraction(const PrimitiveGaussian& a, const PrimitiveGaussian& b,
                          const Molecule& molecule);
/// Chemist-notation (ab|cd) = S_ab S_cd erf(sqrt(alpha) R_PQ) / R_PQ.
double eri(const PrimitiveGaussian& a, const PrimitiveGaussian& b,
           const PrimitiveGaussian& c, const PrimitiveGaussian& d);
/// min((4 alpha / pi) S_ab S_cd, S_ab S_cd / R_PQ). Whether this dominates
/// |eri| is checked by the test suite rather than assumed.
double eri_bound(const PrimitiveGaussian& a, const PrimitiveGaussian& b,
                 const PrimitiveGaussian& c, const PrimitiveGaussian& d);

/// Separation beyond which overlaps of functions with exponent >= a_min fall
/// below 10^-k. Throws DomainError when the log argument is <= 1.
double screening_distance(double a_min, double k);

enum class OrbitalBasis { AO, OAO, MO };
std::string_view to_string(OrbitalBasis basis);

/// Dense (ab|cd) storage over spatial orbitals.
class EriTensor {
 public:
  EriTensor() = default;
  explicit EriTensor(std::size_t n) : n_(n), data_(n * n * n * n, 0.0) {}

  std::size_t dim() const { return n_; }
  double& operator()(std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
    return data_[((a * n_ + b) * n_ + c) * n_ + d];
  }
  double operator()(std::size_t a, std::size_t b, std::size_t c, std::size_t d) const {
    return data_[((a * n_ + b) * n_ + c) * n_ + d];
  }
  /// Writes v to all eight index permutations of a real-orbital integral.
  void set_symmetric(std::size_t a, std::size_t b, std::size_t c, std::size_t d, double v);

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

struct IntegralSet {
  OrbitalBasis label = OrbitalBasis::AO;
  Eigen::MatrixXd overlap;
  Eigen::MatrixXd kinetic;
  Eigen::MatrixXd nuclear;
  EriTensor eri;
  double nuclear_repulsion = 0.0;

  std::size_t n_spatial() const { return static_cast<std::size_t>(overlap.rows()); }
  Eigen::MatrixXd core() const { return kinetic + nuclear; }
};

struct IntegralOptions {
  /// When set, primitive pairs whose centers are farther apart than
  /// screening_distance(a_min, k) are skipped.
  std::optional<double> screening_k;
};

IntegralSet compute_integral_set(const Molecule& molecule, const BasisSet& basis,
                                 const IntegralOptions& options = {});

/// Uniform-sphere bound on the largest nuclear-attraction element.
struct OeiBound {
  double r_max = 0.0;           // (3 Z_max N_nuc / (4 pi rho_max))^{1/3}
  double s_max = 0.0;           // largest |S_ab| between basis functions
  double bound = 0.0;           // 2 pi rho_max S_max r_max^2
  double beta_nuclear = 0.0;    // bound / N_nuc^{2/3}
  double beta_max_oei = 0.0;    // bound / M^{2/3}, M = spin orbitals
  double actual_max_nuclear = 0.0;  // max |V_nuc| in the AO basis
};

OeiBound max_oei_bound(const Molecule& molecule, const BasisSet& basis, double rho_max,
                       double z_max);

/// Density of close-packed spheres of diameter min_separation(); used when no
/// external density is supplied.
double default_max_nuclear_density(const Molecule& molecule);

}  // namespace localitylab
