#include "localitylab/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "localitylab/error.hpp"

namespace localitylab {

namespace {

bool less_one(const OneBodyTerm& a, const OneBodyTerm& b) {
  return std::tie(a.p, a.q) < std::tie(b.p, b.q);
}

bool less_two(const TwoBodyTerm& a, const TwoBodyTerm& b) { return a.index < b.index; }

using Index4 = std::array<std::uint32_t, 4>;

Index4 canonical_two(const Index4& i) {
  const auto [p, q, r, s] = i;
  return std::min({Index4{p, q, r, s}, Index4{s, r, q, p}, Index4{q, p, s, r},
                   Index4{r, s, p, q}});
}

// A removable unit: all stored members of one symmetry class.
struct SymmetryClass {
  int kind;  // 1 = one-body, 2 = two-body
  Index4 key;
  double magnitude;  // largest member |h|
  double weight;     // sum of member |h|
  std::vector<std::size_t> members;
};

std::vector<SymmetryClass> symmetry_classes(const SecondQuantizedHamiltonian& h) {
  std::map<std::pair<int, Index4>, SymmetryClass> classes;
  auto add = [&](int kind, const Index4& key, std::size_t member, double value) {
    auto [it, inserted] = classes.try_emplace({kind, key});
    auto& c = it->second;
    if (inserted) {
      c.kind = kind;
      c.key = key;
      c.magnitude = 0.0;
      c.weight = 0.0;
    }
    c.magnitude = std::max(c.magnitude, std::abs(value));
    c.weight += std::abs(value);
    c.members.push_back(member);
  };
  for (std::size_t i = 0; i < h.one_body.size(); ++i) {
    const auto& t = h.one_body[i];
    add(1, {std::min(t.p, t.q), std::max(t.p, t.q), 0, 0}, i, t.value);
  }
  for (std::size_t i = 0; i < h.two_body.size(); ++i) {
    const auto& t = h.two_body[i];
    add(2, canonical_two(t.index), i, t.value);
  }
  std::vector<SymmetryClass> out;
  out.reserve(classes.size());
  for (auto& [key, c] : classes) out.push_back(std::move(c));
  return out;
}

TruncationResult remove_classes(const SecondQuantizedHamiltonian& h,
                                const std::vector<SymmetryClass>& classes,
                                const std::vector<bool>& remove) {
  std::vector<bool> drop_one(h.one_body.size(), false), drop_two(h.two_body.size(), false);
  TruncationResult out;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (!remove[c]) continue;
    for (auto m : classes[c].members) (classes[c].kind == 1 ? drop_one : drop_two)[m] = true;
    out.removed_weight += classes[c].weight;
    out.n_removed += classes[c].members.size();
  }
  out.hamiltonian.n_spin_orbitals = h.n_spin_orbitals;
  out.hamiltonian.scalar = h.scalar;
  out.hamiltonian.basis_label = h.basis_label;
  for (std::size_t i = 0; i < h.one_body.size(); ++i)
    if (!drop_one[i]) out.hamiltonian.one_body.push_back(h.one_body[i]);
  for (std::size_t i = 0; i < h.two_body.size(); ++i)
    if (!drop_two[i]) out.hamiltonian.two_body.push_back(h.two_body[i]);
  return out;
}

}  // namespace

double SecondQuantizedHamiltonian::one_body_at(std::size_t p, std::size_t q) const {
  OneBodyTerm key{static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(q), 0.0};
  auto it = std::lower_bound(one_body.begin(), one_body.end(), key, less_one);
  return (it != one_body.end() && it->p == key.p && it->q == key.q) ? it->value : 0.0;
}

double SecondQuantizedHamiltonian::two_body_at(std::size_t p, std::size_t q, std::size_t r,
                                               std::size_t s) const {
  TwoBodyTerm key{{static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(q),
                   static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(s)},
                  0.0};
  auto it = std::lower_bound(two_body.begin(), two_body.end(), key, less_two);
  return (it != two_body.end() && it->index == key.index) ? it->value : 0.0;
}

void SecondQuantizedHamiltonian::normalize() {
  std::erase_if(one_body, [](const auto& t) { return std::abs(t.value) < kStorageFloor; });
  std::erase_if(two_body, [](const auto& t) { return std::abs(t.value) < kStorageFloor; });
  std::sort(one_body.begin(), one_body.end(), less_one);
  std::sort(two_body.begin(), two_body.end(), less_two);
}

SecondQuantizedHamiltonian build_spin_orbital_hamiltonian(const IntegralSet& integrals) {
  if (integrals.label == OrbitalBasis::AO)
    throw NonOrthogonalBasis("spin-orbital Hamiltonian needs an orthonormal (OAO or MO) basis");
  const std::size_t n = integrals.n_spatial();
  const Eigen::MatrixXd core = integrals.core();

  SecondQuantizedHamiltonian h;
  h.n_spin_orbitals = 2 * n;
  h.scalar = integrals.nuclear_repulsion;
  h.basis_label = integrals.label;

  for (std::size_t p = 0; p < 2 * n; ++p)
    for (std::size_t q = 0; q < 2 * n; ++q) {
      if (p % 2 != q % 2) continue;
      const std::size_t i = p / 2, j = q / 2;
      const double v = 0.5 * (core(i, j) + core(j, i));
      if (std::abs(v) >= kStorageFloor)
        h.one_body.push_back({static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(q), v});
    }

  const auto& eri = integrals.eri;
  for (std::size_t p = 0; p < 2 * n; ++p)
    for (std::size_t q = 0; q < 2 * n; ++q)
      for (std::size_t r = 0; r < 2 * n; ++r) {
        if (q % 2 != r % 2) continue;
        for (std::size_t s = p % 2; s < 2 * n; s += 2) {
          const double v = eri(p / 2, s / 2, q / 2, r / 2);
          if (std::abs(v) < kStorageFloor) continue;
          h.two_body.push_back({{static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(q),
                                 static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(s)},
                                v});
        }
      }
  // Loops emit entries in lexicographic order already.
  return h;
}

SparsityCensus census(const SecondQuantizedHamiltonian& h, double threshold) {
  if (threshold < 0.0) throw DomainError("census threshold must be non-negative");
  SparsityCensus c;
  c.threshold = threshold;
  c.n_oei_total = h.one_body.size();
  c.n_tei_total = h.two_body.size();
  for (const auto& t : h.one_body) {
    const double a = std::abs(t.value);
    c.h_max_oei = std::max(c.h_max_oei, a);
    if (a > threshold)
      ++c.n_oei_significant;
    else
      c.total_removed_weight += a;
  }
  for (const auto& t : h.two_body) {
    const double a = std::abs(t.value);
    c.h_max_tei = std::max(c.h_max_tei, a);
    if (a > threshold)
      ++c.n_tei_significant;
    else
      c.total_removed_weight += a;
  }
  return c;
}

TruncationResult truncate_by_total_weight(const SecondQuantizedHamiltonian& h, double epsilon) {
  if (!(epsilon > 0.0)) throw DomainError("truncation epsilon must be positive");
  auto classes = symmetry_classes(h);
  std::vector<std::size_t> order(classes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ca = classes[a];
    const auto& cb = classes[b];
    return std::tie(ca.magnitude, ca.kind, ca.key) < std::tie(cb.magnitude, cb.kind, cb.key);
  });
  std::vector<bool> remove(classes.size(), false);
  double cumulative = 0.0;
  for (auto c : order) {
    if (!(cumulative + classes[c].weight < epsilon)) break;
    cumulative += classes[c].weight;
    remove[c] = true;
  }
  return remove_classes(h, classes, remove);
}

TruncationResult truncate_by_threshold(const SecondQuantizedHamiltonian& h, double delta) {
  if (delta < 0.0) throw DomainError("truncation threshold must be non-negative");
  auto classes = symmetry_classes(h);
  std::vector<bool> remove(classes.size());
  for (std::size_t c = 0; c < classes.size(); ++c) remove[c] = classes[c].magnitude < delta;
  auto out = remove_classes(h, classes, remove);
  out.threshold = delta;
  out.implied_epsilon = static_cast<double>(out.n_removed) * delta;
  const double m = static_cast<double>(h.n_spin_orbitals);
  out.coarse_epsilon = delta * m * m * m * m;
  return out;
}

}  // namespace localitylab
