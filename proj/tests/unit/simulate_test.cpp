#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "dense_pauli.hpp"
#include "localitylab/error.hpp"
#include "localitylab/estimators.hpp"
#include "localitylab/random.hpp"
#include "localitylab/scf.hpp"
#include "localitylab/simulate.hpp"
#include "oracles/product_state.hpp"
#include "oracles/reference_values.hpp"

using namespace localitylab;

namespace {

SecondQuantizedHamiltonian chain_hamiltonian(int n, double spacing) {
  const auto mol = build_hydrogen_chain(n, spacing);
  const auto ao =
      compute_integral_set(mol, load_basis(mol, BasisLibrary::from_file(LOCALITYLAB_BASIS_FILE)));
  return build_spin_orbital_hamiltonian(transform_integrals(ao, lowdin_orthogonalize(ao.overlap)));
}

Eigen::VectorXcd random_state(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(Eigen::Index{1} << n);
  for (auto& x : v) x = {g(rng), g(rng)};
  return v.normalized();
}

}  // namespace

TEST(Dense, SingleZ) {
  const auto d = to_dense(PauliSum(PauliString::parse(1, "Z0"), 1.0));
  Eigen::Matrix2cd expected;
  expected << 1, 0, 0, -1;
  EXPECT_EQ(d.matrix, Eigen::MatrixXcd(expected));
  EXPECT_TRUE(d.hermitian);
}

TEST(Dense, XXIsAntidiagonal) {
  const auto d = to_dense(PauliSum(PauliString::parse(2, "X0 X1"), 1.0));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_EQ(d.matrix(i, j), Complex(i + j == 3 ? 1.0 : 0.0));
}

TEST(Dense, RandomSumMatchesKroneckerAssembly) {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> g;
  PauliSum p(3);
  for (int i = 0; i < 10; ++i) {
    PauliString s(3);
    for (std::size_t q = 0; q < 3; ++q) s.set(q, "IXYZ"[rng() % 4]);
    p.add(s, {g(rng), g(rng)});
  }
  EXPECT_LT((to_dense(p).matrix - testutil::sum_matrix(p)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Dense, SizeGuard) {
  EXPECT_THROW(to_dense(PauliSum(PauliString::parse(15, "Z14"), 1.0)), TooLarge);
}

TEST(GroundState, MinusZ) {
  const auto g = ground_state(PauliSum(PauliString::parse(1, "Z0"), -1.0));
  EXPECT_DOUBLE_EQ(g.energy, -1.0);
  EXPECT_NEAR(std::abs(g.vector(0)), 1.0, 1e-15);
  EXPECT_FALSE(g.degenerate);
}

TEST(GroundState, FlagsDegeneracy) {
  const auto g = ground_state(PauliSum(PauliString::parse(2, "Z0"), -1.0));
  EXPECT_TRUE(g.degenerate);
}

TEST(GroundState, HydrogenMatchesDeterminantCi) {
  const auto h = chain_hamiltonian(2, oracle::kH2Spacing);
  const auto g = ground_state(jordan_wigner(h));
  EXPECT_NEAR(g.energy, fci_ground_state(h, 2).energy, 1e-10);
  EXPECT_NEAR(g.energy, oracle::kH2Fci, 1e-6);
  EXPECT_LT(g.residual, 1e-10);
  for (Eigen::Index i = 1; i < g.spectrum.size(); ++i) EXPECT_LE(g.spectrum(i - 1), g.spectrum(i));
}

TEST(GroundState, AllRoutesAgreeForFourAtoms) {
  const auto h = chain_hamiltonian(4, 1.4);
  const double fci = fci_ground_state(h, 4).energy;
  for (auto enc : {Encoding::JordanWigner, Encoding::BravyiKitaev}) {
    const auto p = transform(enc, h);
    EXPECT_NEAR(ground_state(p, electron_sector(enc, 8, 4)).energy, fci, 1e-8);
  }
  EXPECT_NEAR(fci, oracle::kH4Fci, 1e-6);
}

TEST(GroundState, SectorMustBeDiagonal) {
  const std::vector<SectorConstraint> bad = {{PauliSum(PauliString::parse(2, "X0"), 1.0), 0.0}};
  EXPECT_THROW(sector_basis(2, bad), DomainError);
}

TEST(Trotter, CommutingTermsAreExact) {
  PauliSum p(2);
  p.add(PauliString::parse(2, "Z0"), 0.4);
  p.add(PauliString::parse(2, "Z0 Z1"), -0.9);
  p.add(PauliString::parse(2, "Z1"), 0.3);
  for (double dt : {0.01, 0.3, 1.0})
    EXPECT_LT(trotter_eigenvalue_error(p, dt, 1.0).empirical_error, 1e-12);
}

TEST(Trotter, SecondOrderScalingAndBound) {
  const auto h = chain_hamiltonian(2, 1.4);
  const auto p = jordan_wigner(h);
  const auto c = census(h, 0.0);
  const auto mol = build_hydrogen_chain(2, 1.4);
  const auto basis = load_basis(mol, BasisLibrary::from_file(LOCALITYLAB_BASIS_FILE));
  const auto stats = stats_from_census(
      c, 4, max_oei_bound(mol, basis, default_max_nuclear_density(mol), 1.0).beta_max_oei);
  std::vector<double> dts = {0.1, 0.05, 0.025}, errs;
  for (double dt : dts) {
    const auto r = trotter_eigenvalue_error(p, dt, 1.0);
    errs.push_back(r.empirical_error);
    EXPECT_GT(r.ground_overlap, 0.99);
    EXPECT_LE(r.empirical_error, trotter_error_bound(stats, dt));
    EXPECT_LE(r.empirical_error, trotter_error_bound(stats, dt, false));
  }
  EXPECT_NEAR(log_log_slope(dts, errs), 2.0, 0.2);
}

TEST(Trotter, PhaseWrapGuard) {
  const PauliSum p(PauliString::parse(1, "Z0"), -2.0);
  EXPECT_THROW(trotter_eigenvalue_error(p, 2.0, 10.0), PhaseWrap);
}

TEST(Averaging, EigenstateGivesExactEnergy) {
  PauliSum p(2);
  p.add(PauliString::parse(2, "Z0"), 0.5);
  p.add(PauliString::parse(2, "Z0 Z1"), -0.25);
  p.add(PauliString(2), 1.0);
  Eigen::VectorXcd state = Eigen::VectorXcd::Zero(4);
  state(2) = 1.0;
  const auto r = averaging_simulation(p, state, 1000, 4);
  EXPECT_DOUBLE_EQ(r.estimate, 1.0 + 0.5 + 0.25);
  EXPECT_DOUBLE_EQ(r.variance, 0.0);
  EXPECT_DOUBLE_EQ(r.exact, r.estimate);
}

TEST(Averaging, TermVarianceBoundedBySquaredCoefficient) {
  std::mt19937_64 rng(13);
  PauliSum p(3);
  p.add(PauliString::parse(3, "X0 Z1"), 0.7);
  p.add(PauliString::parse(3, "Y2"), -1.1);
  p.add(PauliString::parse(3, "Z0 Z2"), 0.3);
  for (int t = 0; t < 1000; ++t) {
    const auto state = random_state(3, rng);
    for (const auto& [s, c] : p.terms()) {
      const double mean = expectation(s, state);
      EXPECT_LE(std::norm(c) * (1.0 - mean * mean), std::norm(c) + 1e-15);
    }
    const auto r = averaging_simulation(p, state, 50, static_cast<std::uint64_t>(t));
    double cap = 0.0;
    for (const auto& [s, c] : p.terms()) cap += std::norm(c) / 49.0;
    EXPECT_LE(r.variance, cap + 1e-12);
  }
}

TEST(Averaging, DeterministicPerSeedAndUnbiased) {
  const auto h = chain_hamiltonian(2, 1.4);
  const auto p = jordan_wigner(h);
  const auto g = ground_state(p);
  EXPECT_EQ(averaging_simulation(p, g.vector, 100, 5).estimate,
            averaging_simulation(p, g.vector, 100, 5).estimate);
  const int trials = 1000;
  const std::uint64_t n = 200;
  double sum = 0.0, var = 0.0;
  for (int s = 0; s < trials; ++s) {
    const auto r = averaging_simulation(p, g.vector, n, static_cast<std::uint64_t>(s));
    sum += r.estimate;
    var += r.variance;
  }
  const double sigma = std::sqrt(var / trials);
  EXPECT_LE(std::abs(sum / trials - g.energy), 3.0 * sigma / std::sqrt(double(trials)));
}

TEST(CounterRng, ReproducibleStream) {
  CounterRng a(99), b(99), c(100);
  for (int i = 0; i < 10; ++i) {
    const auto x = a();
    EXPECT_EQ(x, b());
    EXPECT_NE(x, c());
  }
  EXPECT_EQ(CounterRng(99, 5)(), CounterRng(99).at(5));
}

TEST(VanVleck, BiasValues) {
  EXPECT_DOUBLE_EQ(vanvleck_bias({100, 1.0, 1.0, 0.0}), 0.0);
  EXPECT_NEAR(vanvleck_bias({100, std::sqrt(0.99), 1.0, 0.0}), 1.0, 1e-12);
}

TEST(VanVleck, BiasMatchesDenseProductState) {
  for (int n = 1; n <= 10; ++n)
    for (double d : {0.3, 0.8, 0.99}) {
      const double eg = -0.4, ee = 0.9;
      const auto s = oracle::product_state(n, d);
      EXPECT_NEAR(vanvleck_bias({n, d, ee - eg, eg}), oracle::energy(s, eg, ee) - n * eg, 1e-10);
    }
}

TEST(VanVleck, BinomialMassProperties) {
  const VanVleckModel m{40, 0.93, 1.0, 0.0};
  double total = 0.0;
  for (int k = 0; k <= 40; ++k) total += vanvleck_success_probability(m, k);
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_NEAR(vanvleck_success_probability(m, 0), std::pow(0.93, 80), 1e-15);
  const VanVleckModel perfect{12, 1.0, 1.0, 0.0};
  EXPECT_EQ(vanvleck_success_probability(perfect, 0), 1.0);
  EXPECT_EQ(vanvleck_success_probability(perfect, 3), 0.0);
  EXPECT_THROW(vanvleck_success_probability(m, 41), DomainError);
}

TEST(VanVleck, ClosedFormMatchesDenseProjection) {
  for (int n : {4, 10})
    for (double d : {0.5, 0.9}) {
      const auto s = oracle::product_state(n, d);
      for (int k = 0; k <= n; ++k)
        EXPECT_NEAR(vanvleck_success_probability({n, d, 1.0, 0.0}, k),
                    oracle::excitation_probability(s, k), 1e-10);
    }
}

TEST(VanVleck, SampledFrequenciesMatch) {
  const int n = 10;
  const double d = 0.8;
  const auto s = oracle::product_state(n, d);
  std::vector<double> weights;
  for (double a : s.amplitude) weights.push_back(a * a);
  CounterRng rng(17);
  std::discrete_distribution<std::size_t> draw(weights.begin(), weights.end());
  const int shots = 200000;
  std::vector<int> counts(n + 1, 0);
  for (int i = 0; i < shots; ++i) ++counts[std::popcount(draw(rng))];
  for (int k = 0; k <= n; ++k) {
    const double p = vanvleck_success_probability({n, d, 1.0, 0.0}, k);
    EXPECT_NEAR(counts[k] / double(shots), p, 5.0 * std::sqrt(p * (1 - p) / shots) + 1e-9);
  }
}

TEST(VanVleck, CostLimits) {
  for (int m : {1, 5, 50}) {
    const auto r = vanvleck_cumulative_and_cost({100, 1.0, 1.0, 0.0}, m);
    EXPECT_DOUBLE_EQ(r.cost, 1.0);
  }
  const auto r = vanvleck_cumulative_and_cost({100, 0.999, 1.0, 0.0}, 3);
  EXPECT_NEAR(r.cost, 1.0, 1e-3);
  EXPECT_FALSE(r.gaussian_valid);
}

TEST(VanVleck, InfiniteCostSentinel) {
  const auto r = vanvleck_cumulative_and_cost({2000, 0.05, 1.0, 0.0}, 1);
  EXPECT_TRUE(std::isinf(r.cost));
}

TEST(VanVleck, GaussianMomentsByConstruction) {
  const VanVleckModel m{100, 0.9, 1.0, 0.0};
  double mean = 0.0, second = 0.0;
  for (int k = 0; k <= 100; ++k) {
    const double p = vanvleck_success_probability(m, k);
    mean += k * p;
    second += k * k * p;
  }
  EXPECT_NEAR(mean, 100 * (1 - 0.81), 1e-10);
  EXPECT_NEAR(second - mean * mean, 100 * 0.81 * 0.19, 1e-9);
}

TEST(VanVleck, Validation) {
  EXPECT_THROW(vanvleck_bias({0, 0.5, 1.0, 0.0}), DomainError);
  EXPECT_THROW(vanvleck_bias({10, 0.0, 1.0, 0.0}), DomainError);
  EXPECT_THROW(vanvleck_bias({10, 1.2, 1.0, 0.0}), DomainError);
  EXPECT_THROW(vanvleck_bias({10, 0.5, 0.0, 0.0}), DomainError);
}
