#include "localitylab/integrals.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "localitylab/error.hpp"

namespace localitylab {

namespace {

constexpr double kPi = std::numbers::pi;

// Primitive pair with the contraction coefficient product folded in.
struct WeightedPair {
  GaussianPair pair;
  double weight;
};

using PairList = std::vector<WeightedPair>;

std::vector<PairList> build_pair_lists(const BasisSet& basis,
                                       const IntegralOptions& options) {
  const std::size_t n = basis.n_spatial();
  double cutoff2 = std::numeric_limits<double>::infinity();
  if (options.screening_k) {
    const double ds = screening_distance(basis.min_exponent(), *options.screening_k);
    cutoff2 = ds * ds;
  }
  std::vector<PairList> lists(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      auto& list = lists[a * n + b];
      for (const auto& ta : basis.functions[a].terms())
        for (const auto& tb : basis.functions[b].terms()) {
          if (distance_squared(ta.primitive.center, tb.primitive.center) > cutoff2) continue;
          list.push_back({gaussian_product(ta.primitive, tb.primitive),
                          ta.coefficient * tb.coefficient});
        }
    }
  }
  return lists;
}

double pair_eri(const GaussianPair& ab, const GaussianPair& cd) {
  const double alpha = ab.total_exponent * cd.total_exponent /
                       (ab.total_exponent + cd.total_exponent);
  return ab.overlap * cd.overlap * erf_over_distance(alpha, distance(ab.center, cd.center));
}

double pair_nuclear(const GaussianPair& ab, const Molecule& molecule) {
  double v = 0.0;
  for (const auto& nuc : molecule.nuclei())
    v -= nuc.charge * ab.overlap *
         erf_over_distance(ab.total_exponent, distance(ab.center, nuc.position));
  return v;
}

Eigen::MatrixXd nuclear_matrix(const std::vector<PairList>& lists, std::size_t n,
                               const Molecule& molecule) {
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b <= a; ++b) {
      double sum = 0.0;
      for (const auto& wp : lists[a * n + b]) sum += wp.weight * pair_nuclear(wp.pair, molecule);
      v(a, b) = v(b, a) = sum;
    }
  return v;
}

}  // namespace

GaussianPair gaussian_product(const PrimitiveGaussian& a, const PrimitiveGaussian& b) {
  GaussianPair g{};
  g.total_exponent = a.exponent + b.exponent;
  g.reduced_exponent = a.exponent * b.exponent / g.total_exponent;
  for (int k = 0; k < 3; ++k)
    g.center[k] = (a.exponent * a.center[k] + b.exponent * b.center[k]) / g.total_exponent;
  g.prefactor = std::exp(-g.reduced_exponent * distance_squared(a.center, b.center));
  g.overlap = std::pow(kPi / g.total_exponent, 1.5) * g.prefactor;
  return g;
}

double erf_over_distance(double alpha, double r) {
  const double x = std::sqrt(alpha) * r;
  if (x < 1e-4) {
    const double x2 = x * x;
    return 2.0 * std::sqrt(alpha / kPi) * (1.0 - x2 / 3.0 + x2 * x2 / 10.0);
  }
  return std::erf(x) / r;
}

double overlap(const PrimitiveGaussian& a, const PrimitiveGaussian& b) {
  return gaussian_product(a, b).overlap;
}

double kinetic(const PrimitiveGaussian& a, const PrimitiveGaussian& b) {
  const auto g = gaussian_product(a, b);
  const double r2 = distance_squared(a.center, b.center);
  return g.reduced_exponent * (3.0 - 2.0 * g.reduced_exponent * r2) * g.overlap;
}

double nuclear_attraction(const PrimitiveGaussian& a, const PrimitiveGaussian& b,
                          const Molecule& molecule) {
  return pair_nuclear(gaussian_product(a, b), molecule);
}

double eri(const PrimitiveGaussian& a, const PrimitiveGaussian& b, const PrimitiveGaussian& c,
           const PrimitiveGaussian& d) {
  return pair_eri(gaussian_product(a, b), gaussian_product(c, d));
}

double eri_bound(const PrimitiveGaussian& a, const PrimitiveGaussian& b,
                 const PrimitiveGaussian& c, const PrimitiveGaussian& d) {
  const auto ab = gaussian_product(a, b);
  const auto cd = gaussian_product(c, d);
  const double alpha = ab.total_exponent * cd.total_exponent /
                       (ab.total_exponent + cd.total_exponent);
  const double ss = ab.overlap * cd.overlap;
  const double short_range = 4.0 * alpha / kPi * ss;
  const double r = distance(ab.center, cd.center);
  if (r == 0.0) return short_range;
  return std::min(short_range, ss / r);
}

double screening_distance(double a_min, double k) {
  if (!(a_min > 0.0) || !(k > 0.0))
    throw DomainError("screening distance needs a_min > 0 and k > 0");
  // log[(pi / 2a)^3 10^{2k}] evaluated in log space to avoid overflow.
  const double log_arg = 3.0 * std::log(kPi / (2.0 * a_min)) + 2.0 * k * std::log(10.0);
  if (!(log_arg > 0.0))
    throw DomainError("screening distance undefined: log argument <= 1");
  return std::sqrt(log_arg / a_min);
}

std::string_view to_string(OrbitalBasis basis) {
  switch (basis) {
    case OrbitalBasis::AO: return "AO";
    case OrbitalBasis::OAO: return "OAO";
    case OrbitalBasis::MO: return "MO";
  }
  return "?";
}

void EriTensor::set_symmetric(std::size_t a, std::size_t b, std::size_t c, std::size_t d,
                              double v) {
  (*this)(a, b, c, d) = v;
  (*this)(b, a, c, d) = v;
  (*this)(a, b, d, c) = v;
  (*this)(b, a, d, c) = v;
  (*this)(c, d, a, b) = v;
  (*this)(d, c, a, b) = v;
  (*this)(c, d, b, a) = v;
  (*this)(d, c, b, a) = v;
}

IntegralSet compute_integral_set(const Molecule& molecule, const BasisSet& basis,
                                 const IntegralOptions& options) {
  const std::size_t n = basis.n_spatial();
  const auto lists = build_pair_lists(basis, options);

  IntegralSet ints;
  ints.label = OrbitalBasis::AO;
  ints.overlap = Eigen::MatrixXd::Zero(n, n);
  ints.kinetic = Eigen::MatrixXd::Zero(n, n);
  ints.nuclear_repulsion = molecule.nuclear_repulsion();

  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b <= a; ++b) {
      double s = 0.0, t = 0.0;
      for (const auto& ta : basis.functions[a].terms())
        for (const auto& tb : basis.functions[b].terms()) {
          const double w = ta.coefficient * tb.coefficient;
          s += w * overlap(ta.primitive, tb.primitive);
          t += w * kinetic(ta.primitive, tb.primitive);
        }
      ints.overlap(a, b) = ints.overlap(b, a) = s;
      ints.kinetic(a, b) = ints.kinetic(b, a) = t;
    }
  }
  ints.nuclear = nuclear_matrix(lists, n, molecule);

  ints.eri = EriTensor(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b <= a; ++b) {
      const std::size_t ab = a * (a + 1) / 2 + b;
      const auto& lab = lists[a * n + b];
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d <= c; ++d) {
          const std::size_t cd = c * (c + 1) / 2 + d;
          if (cd > ab) continue;
          const auto& lcd = lists[c * n + d];
          double v = 0.0;
          for (const auto& p : lab)
            for (const auto& q : lcd) v += p.weight * q.weight * pair_eri(p.pair, q.pair);
          ints.eri.set_symmetric(a, b, c, d, v);
        }
    }
  return ints;
}

double default_max_nuclear_density(const Molecule& molecule) {
  const double d = molecule.min_separation();
  if (!std::isfinite(d))
    throw DomainError("default nuclear density needs at least two nuclei");
  const double radius = 0.5 * d;
  return 3.0 / (4.0 * kPi * radius * radius * radius);
}

OeiBound max_oei_bound(const Molecule& molecule, const BasisSet& basis, double rho_max,
                       double z_max) {
  if (!(rho_max > 0.0)) throw DomainError("rho_max must be positive");
  const std::size_t n = basis.n_spatial();
  const auto lists = build_pair_lists(basis, {});

  OeiBound out;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      double s = 0.0;
      for (const auto& wp : lists[a * n + b]) s += wp.weight * wp.pair.overlap;
      out.s_max = std::max(out.s_max, std::abs(s));
    }
  const double n_nuc = static_cast<double>(molecule.size());
  out.r_max = std::cbrt(3.0 * z_max * n_nuc / (4.0 * kPi * rho_max));
  out.bound = 2.0 * kPi * rho_max * out.s_max * out.r_max * out.r_max;
  out.beta_nuclear = out.bound / std::pow(n_nuc, 2.0 / 3.0);
  out.beta_max_oei = out.bound / std::pow(static_cast<double>(2 * n), 2.0 / 3.0);
  out.actual_max_nuclear = nuclear_matrix(lists, n, molecule).cwiseAbs().maxCoeff();
  return out;
}

}  // namespace localitylab
