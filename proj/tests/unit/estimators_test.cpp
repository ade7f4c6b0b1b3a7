#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "localitylab/error.hpp"
#include "localitylab/estimators.hpp"
#include "localitylab/scf.hpp"
#include "localitylab/simulate.hpp"

using namespace localitylab;

namespace {

HamiltonianStats single_term() {
  HamiltonianStats s;
  s.n_spin_orbitals = 2;
  s.n_tei = 1;
  s.h_max_tei = 1.0;
  s.beta_max_oei = 1.0;
  return s;
}

struct Molecular {
  SecondQuantizedHamiltonian h;
  double beta;
};

Molecular chain(int n, OrbitalBasis kind = OrbitalBasis::OAO) {
  const auto mol = build_hydrogen_chain(n, 1.4);
  const auto basis = load_basis(mol, BasisLibrary::from_file(LOCALITYLAB_BASIS_FILE));
  const auto ao = compute_integral_set(mol, basis);
  const auto t = kind == OrbitalBasis::MO ? run_rhf(ao, n) : lowdin_orthogonalize(ao.overlap);
  return {build_spin_orbital_hamiltonian(transform_integrals(ao, t)),
          max_oei_bound(mol, basis, default_max_nuclear_density(mol), 1.0).beta_max_oei};
}

}  // namespace

TEST(Timestep, SingleTermSubstitution) {
  EXPECT_NEAR(qpe_timestep_bound(single_term(), 1e-3), std::pow(10.0, -1.5), 1e-15);
}

TEST(Timestep, FourTimesTheIntegralsIsEightTimesSmaller) {
  auto s = synthetic_stats(64);
  const double dt = qpe_timestep_bound(s, 1e-3);
  s.n_oei *= 4;
  s.n_tei *= 4;
  EXPECT_NEAR(qpe_timestep_bound(s, 1e-3), dt / 8, 1e-15 * dt);
}

TEST(Timestep, DominatedByEmpiricalThresholdOnHydrogen) {
  const auto m = chain(2);
  const auto stats = stats_from_census(census(m.h, 0.0), 4, m.beta);
  const double eps = 1e-3;
  const double dt = qpe_timestep_bound(stats, eps);
  // The largest dt at which the measured error stays below eps.
  const auto p = jordan_wigner(m.h);
  double largest_ok = 0.0;
  for (double t = 0.5; t > 1e-3; t *= 0.8)
    if (trotter_eigenvalue_error(p, t, 1.0).empirical_error <= eps) {
      largest_ok = t;
      break;
    }
  EXPECT_GT(largest_ok, 0.0);
  EXPECT_LE(dt, largest_ok);
}

TEST(QpeCost, EpsilonExponents) {
  const auto s = synthetic_stats(128);
  const auto a = qpe_cost(s, 1e-3, 1.0, 10.0), b = qpe_cost(s, 5e-4, 1.0, 10.0);
  EXPECT_NEAR(b.gate_count / a.gate_count, std::pow(2.0, 0.5), 1e-4);
  const auto c = qpe_cost(s, 1e-3), d = qpe_cost(s, 5e-4);
  EXPECT_TRUE(c.fourier_limit);
  EXPECT_NEAR(d.gate_count / c.gate_count, std::pow(2.0, 1.5), 1e-4);
  EXPECT_DOUBLE_EQ(c.total_time, 1e3);
}

TEST(QpeCost, GatesPerStepIncludesLogFactor) {
  const auto c = qpe_cost(synthetic_stats(100), 1e-2, 3.0);
  EXPECT_DOUBLE_EQ(c.log_factor, 7.0);
  EXPECT_DOUBLE_EQ(c.gates_per_step, 3.0 * (100 + 10000) * 7);
  EXPECT_DOUBLE_EQ(c.gate_count, c.gates_per_step * c.steps);
}

TEST(QpeCost, QuadraticRegimeSlopeIsFive) {
  std::vector<double> ms, nc;
  for (double m = 32; m <= 4096; m *= 2) {
    ms.push_back(m);
    nc.push_back(qpe_cost(synthetic_stats(m), 1e-3).gate_count_no_log);
  }
  EXPECT_NEAR(log_log_slope(ms, nc), 5.0, 0.1);
}

TEST(QpeCost, TruncationReducesCost) {
  const auto m = chain(4);
  const auto full = stats_from_census(census(m.h, 0.0), 8, m.beta);
  const auto cut = stats_from_census(census(m.h, 1e-3), 8, m.beta);
  EXPECT_LT(cut.n_tei, full.n_tei);
  EXPECT_LT(qpe_cost(cut, 1e-3).gate_count, qpe_cost(full, 1e-3).gate_count);
}

TEST(AveragingCost, SingleTerm) {
  HamiltonianStats s = single_term();
  const auto c = averaging_cost(s, 0.1);
  EXPECT_NEAR(c.samples, 100.0, 1e-9);
  EXPECT_NEAR(c.measurements, 100.0, 1e-9);
}

TEST(AveragingCost, QuadraticRegimeSlopeIsSix) {
  std::vector<double> ms, nm;
  for (double m = 32; m <= 4096; m *= 2) {
    ms.push_back(m);
    nm.push_back(averaging_cost(synthetic_stats(m), 1e-3).measurements);
  }
  EXPECT_NEAR(log_log_slope(ms, nm), 6.0, 0.1);
}

TEST(Adiabatic, TwoOrbitals) {
  const auto r = adiabatic_resources(2, 1e-3);
  EXPECT_DOUBLE_EQ(r.qubits, 4.0);
  EXPECT_DOUBLE_EQ(r.couplers, 4.0);
}

TEST(Adiabatic, GapScaleValue) {
  const auto r = adiabatic_resources(16, 1e-3, 1.0);
  const double expected = std::pow(std::pow(16.0, 2.0 / 3.0) * 1e3, 4);
  EXPECT_NEAR(r.gap_scale / expected, 1.0, 1e-12);
  EXPECT_NEAR(r.log10_gap_scale, std::log10(expected), 1e-12);
}

TEST(Adiabatic, GapScaleIsSuperPolynomial) {
  std::vector<double> lm, lg;
  for (double m = 4; m <= 4096; m *= 2) {
    lm.push_back(std::log(m));
    lg.push_back(adiabatic_resources(m, 1e-3).log10_gap_scale);
  }
  // log(gap) against log M bends upward: successive slopes increase.
  for (std::size_t i = 2; i < lm.size(); ++i)
    EXPECT_GT((lg[i] - lg[i - 1]) / (lm[i] - lm[i - 1]),
              (lg[i - 1] - lg[i - 2]) / (lm[i - 1] - lm[i - 2]));
  EXPECT_THROW(adiabatic_resources(1, 1e-3), DomainError);
}

TEST(Couplers, Definitions) {
  EXPECT_EQ(two_local_coupler_count(PauliSum(PauliString::parse(2, "Z0 Z1"), 0.5)).couplers, 1u);
  PauliSum p(2);
  p.add(PauliString::parse(2, "X0 X1"), 1.0);
  p.add(PauliString::parse(2, "Y0 Y1"), 1.0);
  const auto c = two_local_coupler_count(p);
  EXPECT_EQ(c.couplers, 2u);
  EXPECT_EQ(c.coupled_pairs, 1u);
}

TEST(Couplers, BravyiKitaevHydrogen) {
  const auto p = bravyi_kitaev(chain(2, OrbitalBasis::MO).h);
  const auto c = two_local_coupler_count(p);
  std::size_t w1 = 0, w2 = 0, wmore = 0;
  for (const auto& [s, coeff] : p.terms()) {
    const auto w = s.weight();
    w1 += w == 1;
    w2 += w == 2;
    wmore += w > 2;
  }
  EXPECT_EQ(c.local_fields, w1);
  EXPECT_EQ(c.couplers, w2);
  EXPECT_EQ(c.higher_weight, wmore);
  EXPECT_GT(c.higher_weight, 0u);
}

TEST(Monotonicity, CountsMagnitudesAndEpsilon) {
  const auto base = synthetic_stats(64);
  const double eps = 1e-3;
  auto check = [&](const HamiltonianStats& bigger) {
    EXPECT_GE(qpe_cost(bigger, eps).gate_count, qpe_cost(base, eps).gate_count);
    EXPECT_GE(averaging_cost(bigger, eps).measurements, averaging_cost(base, eps).measurements);
  };
  auto s = base;
  s.n_oei *= 2;
  check(s);
  s = base;
  s.n_tei *= 2;
  check(s);
  s = base;
  s.h_max_tei *= 2;
  check(s);
  s = base;
  s.beta_max_oei *= 2;
  check(s);
  EXPECT_LE(qpe_cost(base, 2 * eps).gate_count, qpe_cost(base, eps).gate_count);
  EXPECT_LE(averaging_cost(base, 2 * eps).samples, averaging_cost(base, eps).samples);
}

TEST(Reports, AllOutputsPositiveAndFinite) {
  const auto m = chain(2);
  const auto stats = stats_from_census(census(m.h, 0.0), 4, m.beta);
  for (const auto& r : {qpe_report(stats, 1e-3, 1.0, std::nullopt),
                        qpe_report(stats, 1e-3, 1.0, 100.0), averaging_report(stats, 1e-3),
                        adiabatic_report(stats, 1e-3)}) {
    EXPECT_FALSE(r.outputs.empty());
    for (const auto& [k, v] : r.outputs) {
      EXPECT_TRUE(std::isfinite(v)) << r.method << " " << k;
      EXPECT_GT(v, 0.0) << r.method << " " << k;
    }
  }
}

TEST(Slope, ExactPowerLaw) {
  const std::vector<double> x = {1, 2, 4, 8}, y = {3, 24, 192, 1536};
  EXPECT_NEAR(log_log_slope(x, y), 3.0, 1e-12);
  EXPECT_THROW(log_log_slope(std::vector<double>{1.0}, std::vector<double>{1.0}), SizeMismatch);
}
