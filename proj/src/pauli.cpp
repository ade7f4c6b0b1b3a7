#include "localitylab/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include <fmt/core.h>

#include "localitylab/error.hpp"

namespace localitylab {

namespace {

constexpr Complex kI{0.0, 1.0};

int letter_code(std::uint64_t x, std::uint64_t z, std::size_t q) {
  const bool xb = (x >> q) & 1u, zb = (z >> q) & 1u;
  if (xb && zb) return 2;  // Y
  if (xb) return 1;        // X
  if (zb) return 3;        // Z
  return 0;
}

std::uint64_t bit(std::size_t q) { return std::uint64_t{1} << q; }

void check_qubits(std::size_t n) {
  if (n > PauliString::kMaxQubits)
    throw TooLarge(fmt::format("{} qubits exceeds the {}-qubit Pauli string limit", n,
                               PauliString::kMaxQubits));
}

// Products of short term lists, used by the fermion transforms.
using TermList = std::vector<PauliTerm>;

TermList multiply_lists(const TermList& a, const TermList& b) {
  TermList out;
  out.reserve(a.size() * b.size());
  for (const auto& ta : a)
    for (const auto& tb : b) {
      const auto prod = pauli_multiply(ta.string, tb.string);
      out.push_back({ta.coefficient * tb.coefficient * prod.phase(), prod.string});
    }
  return out;
}

TermList to_list(const PauliSum& p) {
  TermList out;
  for (const auto& [s, c] : p.terms()) out.push_back({c, s});
  return out;
}

std::string format_coefficient(Complex c) {
  if (c.imag() == 0.0) return fmt::format("{:.16e}", c.real());
  return fmt::format("({:.16e},{:.16e})", c.real(), c.imag());
}

}  // namespace

PauliString::PauliString(std::size_t n_qubits) : n_(n_qubits) { check_qubits(n_qubits); }

PauliString::PauliString(std::size_t n_qubits, std::uint64_t x_mask, std::uint64_t z_mask)
    : n_(n_qubits), x_(x_mask), z_(z_mask) {
  check_qubits(n_qubits);
  if (n_ < kMaxQubits && ((x_ | z_) >> n_) != 0)
    throw SizeMismatch("Pauli string has letters beyond its qubit count");
}

PauliString PauliString::parse(std::size_t n_qubits, const std::string& text) {
  PauliString s(n_qubits);
  std::istringstream in(text);
  for (std::string tok; in >> tok;) {
    if (tok.size() < 2) throw Error("bad Pauli token '" + tok + "'");
    std::size_t q = 0;
    try {
      q = std::stoul(tok.substr(1));
    } catch (const std::exception&) {
      throw Error("bad Pauli token '" + tok + "'");
    }
    if (q >= n_qubits) throw SizeMismatch("Pauli qubit index out of range: " + tok);
    if (s.letter(q) != 'I') throw Error("repeated qubit in Pauli string: " + tok);
    s.set(q, tok[0]);
  }
  return s;
}

char PauliString::letter(std::size_t qubit) const {
  constexpr char kLetters[] = {'I', 'X', 'Y', 'Z'};
  return kLetters[letter_code(x_, z_, qubit)];
}

void PauliString::set(std::size_t qubit, char letter) {
  if (qubit >= n_) throw SizeMismatch("Pauli qubit index out of range");
  x_ &= ~bit(qubit);
  z_ &= ~bit(qubit);
  switch (letter) {
    case 'I': break;
    case 'X': x_ |= bit(qubit); break;
    case 'Y': x_ |= bit(qubit); z_ |= bit(qubit); break;
    case 'Z': z_ |= bit(qubit); break;
    default: throw Error(fmt::format("unknown Pauli letter '{}'", letter));
  }
}

std::size_t PauliString::weight() const { return std::popcount(x_ | z_); }

std::size_t PauliString::y_count() const { return std::popcount(x_ & z_); }

bool PauliString::commutes_with(const PauliString& other) const {
  // Symplectic product: anticommuting sites are those where exactly one of
  // (x1 z2, z1 x2) is set.
  return std::popcount((x_ & other.z_) ^ (z_ & other.x_)) % 2 == 0;
}

std::string PauliString::to_string() const {
  std::string out;
  for (std::size_t q = 0; q < n_; ++q) {
    const char l = letter(q);
    if (l == 'I') continue;
    if (!out.empty()) out += ' ';
    out += l;
    out += std::to_string(q);
  }
  return out;
}

bool operator<(const PauliString& a, const PauliString& b) {
  if (a.n_ != b.n_) return a.n_ < b.n_;
  const std::uint64_t diff = (a.x_ ^ b.x_) | (a.z_ ^ b.z_);
  if (diff == 0) return false;
  const auto q = static_cast<std::size_t>(std::countr_zero(diff));
  return letter_code(a.x_, a.z_, q) < letter_code(b.x_, b.z_, q);
}

Complex PauliProduct::phase() const {
  switch (((i_power % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

PauliProduct pauli_multiply(const PauliString& a, const PauliString& b) {
  if (a.n_qubits() != b.n_qubits()) throw SizeMismatch("Pauli strings differ in qubit count");
  int power = 0;
  std::uint64_t both = (a.x_mask() | a.z_mask()) & (b.x_mask() | b.z_mask());
  while (both) {
    const auto q = static_cast<std::size_t>(std::countr_zero(both));
    both &= both - 1;
    const int la = letter_code(a.x_mask(), a.z_mask(), q);
    const int lb = letter_code(b.x_mask(), b.z_mask(), q);
    if (la == lb) continue;
    // Cyclic X -> Y -> Z gives +i, anticyclic gives -i.
    const int ca = la - 1, cb = lb - 1;  // X=0, Y=1, Z=2
    power += ((cb - ca + 3) % 3 == 1) ? 1 : 3;
  }
  return {power % 4, PauliString(a.n_qubits(), a.x_mask() ^ b.x_mask(), a.z_mask() ^ b.z_mask())};
}

PauliSum::PauliSum(const PauliString& s, Complex c) : n_(s.n_qubits()) {
  add(s, c);
  prune();
}

PauliSum PauliSum::identity(std::size_t n_qubits, Complex c) {
  return PauliSum(PauliString(n_qubits), c);
}

Complex PauliSum::coefficient(const PauliString& s) const {
  auto it = terms_.find(s);
  return it == terms_.end() ? Complex{} : it->second;
}

void PauliSum::add(const PauliString& s, Complex c) {
  if (n_ == 0 && terms_.empty()) n_ = s.n_qubits();
  if (s.n_qubits() != n_) throw SizeMismatch("Pauli string does not match sum qubit count");
  terms_[s] += c;
}

void PauliSum::prune(double threshold) {
  std::erase_if(terms_, [&](const auto& kv) { return std::abs(kv.second) < threshold; });
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  for (const auto& [s, c] : other.terms_) add(s, c);
  prune();
  return *this;
}

PauliSum& PauliSum::operator-=(const PauliSum& other) {
  for (const auto& [s, c] : other.terms_) add(s, -c);
  prune();
  return *this;
}

PauliSum& PauliSum::operator*=(Complex c) {
  for (auto& [s, v] : terms_) v *= c;
  prune();
  return *this;
}

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  if (a.n_ != b.n_ && !a.empty() && !b.empty())
    throw SizeMismatch("Pauli sums differ in qubit count");
  PauliSum out(std::max(a.n_, b.n_));
  for (const auto& [sa, ca] : a.terms_)
    for (const auto& [sb, cb] : b.terms_) {
      const auto prod = pauli_multiply(sa, sb);
      out.add(prod.string, ca * cb * prod.phase());
    }
  out.prune();
  return out;
}

double PauliSum::max_imaginary() const {
  double m = 0.0;
  for (const auto& [s, c] : terms_) m = std::max(m, std::abs(c.imag()));
  return m;
}

double PauliSum::one_norm() const {
  double n = 0.0;
  for (const auto& [s, c] : terms_) n += std::abs(c);
  return n;
}

PauliSum commutator(const PauliSum& a, const PauliSum& b) {
  PauliSum out(std::max(a.n_qubits(), b.n_qubits()));
  for (const auto& [sa, ca] : a.terms())
    for (const auto& [sb, cb] : b.terms()) {
      if (sa.commutes_with(sb)) continue;
      const auto prod = pauli_multiply(sa, sb);
      out.add(prod.string, 2.0 * ca * cb * prod.phase());
    }
  out.prune();
  return out;
}

void write_pauli_sum(std::ostream& out, const PauliSum& p) {
  out << "# qubits " << p.n_qubits() << '\n';
  for (const auto& [s, c] : p.terms()) {
    out << format_coefficient(c);
    const auto text = s.to_string();
    if (!text.empty()) out << "  " << text;
    out << '\n';
  }
}

PauliSum read_pauli_sum(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::size_t n = 0;
  bool have_header = false;
  PauliSum out;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ss(line);
    if (!have_header) {
      std::string hash, word;
      if (!(ss >> hash >> word >> n) || hash != "#" || word != "qubits")
        throw ParseError("expected '# qubits N' header", lineno);
      have_header = true;
      out = PauliSum(n);
      continue;
    }
    std::string coeff_tok;
    ss >> coeff_tok;
    Complex c;
    try {
      if (!coeff_tok.empty() && coeff_tok.front() == '(') {
        const auto comma = coeff_tok.find(',');
        if (comma == std::string::npos || coeff_tok.back() != ')')
          throw std::invalid_argument(coeff_tok);
        c = {std::stod(coeff_tok.substr(1, comma - 1)),
             std::stod(coeff_tok.substr(comma + 1, coeff_tok.size() - comma - 2))};
      } else {
        c = std::stod(coeff_tok);
      }
    } catch (const std::exception&) {
      throw ParseError("bad coefficient '" + coeff_tok + "'", lineno);
    }
    std::string rest;
    std::getline(ss, rest);
    try {
      out.add(PauliString::parse(n, rest), c);
    } catch (const Error& e) {
      throw ParseError(e.what(), lineno);
    }
  }
  if (!have_header) throw ParseError("empty Pauli sum file", lineno);
  return out;
}

FenwickTree::FenwickTree(std::size_t n) : parent_(n, kNone), children_(n) {
  if (n == 0) return;
  // Node `pivot` of [left, right] hangs under `parent`; the right half
  // [pivot+1, right] keeps the same parent.
  auto build = [&](auto&& self, std::size_t left, std::size_t right, std::size_t parent) -> void {
    while (left < right) {
      const std::size_t pivot = (left + right) / 2;
      parent_[pivot] = parent;
      children_[parent].push_back(pivot);
      self(self, left, pivot, pivot);
      left = pivot + 1;
    }
  };
  build(build, 0, n - 1, n - 1);
}

std::vector<std::size_t> FenwickTree::update_set(std::size_t j) const {
  std::vector<std::size_t> out;
  for (std::size_t a = parent_.at(j); a != kNone; a = parent_[a]) out.push_back(a);
  return out;
}

std::vector<std::size_t> FenwickTree::children(std::size_t j) const { return children_.at(j); }

std::vector<std::size_t> FenwickTree::remainder_set(std::size_t j) const {
  std::vector<std::size_t> out;
  for (auto a : update_set(j))
    for (auto c : children_[a])
      if (c < j) out.push_back(c);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> FenwickTree::parity_set(std::size_t j) const {
  auto out = remainder_set(j);
  for (auto c : children_.at(j)) out.push_back(c);
  std::sort(out.begin(), out.end());
  return out;
}

PauliSum ladder_operator(Encoding encoding, std::size_t mode, std::size_t n_modes,
                         bool creation) {
  if (mode >= n_modes) throw SizeMismatch("mode index out of range");
  PauliString c(n_modes), d(n_modes);
  if (encoding == Encoding::JordanWigner) {
    for (std::size_t k = 0; k < mode; ++k) {
      c.set(k, 'Z');
      d.set(k, 'Z');
    }
  } else {
    const FenwickTree tree(n_modes);
    for (auto k : tree.parity_set(mode)) c.set(k, 'Z');
    for (auto k : tree.remainder_set(mode)) d.set(k, 'Z');
    for (auto k : tree.update_set(mode)) {
      c.set(k, 'X');
      d.set(k, 'X');
    }
  }
  c.set(mode, 'X');
  d.set(mode, 'Y');
  PauliSum out(n_modes);
  out.add(c, 0.5);
  out.add(d, creation ? -0.5 * kI : 0.5 * kI);
  return out;
}

PauliSum fermion_product(Encoding encoding, std::span<const Ladder> ops, std::size_t n_modes,
                         Complex coefficient) {
  TermList acc{{coefficient, PauliString(n_modes)}};
  for (const auto& op : ops)
    acc = multiply_lists(acc, to_list(ladder_operator(encoding, op.mode, n_modes, op.creation)));
  PauliSum out(n_modes);
  for (const auto& t : acc) out.add(t.string, t.coefficient);
  out.prune();
  return out;
}

PauliSum transform(Encoding encoding, const SecondQuantizedHamiltonian& h) {
  const std::size_t n = h.n_spin_orbitals;
  check_qubits(n);
  std::vector<TermList> create(n), annihilate(n);
  for (std::size_t p = 0; p < n; ++p) {
    create[p] = to_list(ladder_operator(encoding, p, n, true));
    annihilate[p] = to_list(ladder_operator(encoding, p, n, false));
  }
  PauliSum out(n);
  out.add(PauliString(n), h.scalar);
  for (const auto& t : h.one_body) {
    for (const auto& term : multiply_lists(create[t.p], annihilate[t.q]))
      out.add(term.string, t.value * term.coefficient);
  }
  for (const auto& t : h.two_body) {
    const auto [p, q, r, s] = t.index;
    if (p == q || r == s) continue;  // a+_p a+_p = a_r a_r = 0
    const auto left = multiply_lists(create[p], create[q]);
    const auto right = multiply_lists(annihilate[r], annihilate[s]);
    for (const auto& term : multiply_lists(left, right))
      out.add(term.string, 0.5 * t.value * term.coefficient);
  }
  out.prune();
  return out;
}

PauliSum jordan_wigner(const SecondQuantizedHamiltonian& h) {
  return transform(Encoding::JordanWigner, h);
}

PauliSum bravyi_kitaev(const SecondQuantizedHamiltonian& h) {
  return transform(Encoding::BravyiKitaev, h);
}

PauliSum number_operator(Encoding encoding, std::size_t n_modes) {
  PauliSum out(n_modes);
  for (std::size_t p = 0; p < n_modes; ++p) {
    const Ladder ops[] = {{p, true}, {p, false}};
    out += fermion_product(encoding, ops, n_modes);
  }
  return out;
}

PauliSum spin_z_operator(Encoding encoding, std::size_t n_modes) {
  PauliSum out(n_modes);
  for (std::size_t p = 0; p < n_modes; ++p) {
    const Ladder ops[] = {{p, true}, {p, false}};
    out += fermion_product(encoding, ops, n_modes, p % 2 == 0 ? 0.5 : -0.5);
  }
  return out;
}

TransformStats transform_stats(const PauliSum& p) {
  TransformStats s;
  s.term_count = p.size();
  std::size_t total = 0;
  for (const auto& [str, c] : p.terms()) {
    s.max_weight = std::max(s.max_weight, str.weight());
    total += str.weight();
  }
  s.mean_weight = s.term_count ? static_cast<double>(total) / s.term_count : 0.0;
  return s;
}

std::vector<PauliTerm> ordered_terms(const PauliSum& p) { return to_list(p); }

BchErrorOperators bch_error_operator(std::span<const PauliTerm> terms, double dt,
                                     double budget) {
  if (!(dt > 0.0)) throw DomainError("time step must be positive");
  const double n_terms = static_cast<double>(terms.size());
  if (n_terms * n_terms * n_terms > budget)
    throw ComplexityGuard(fmt::format(
        "{} terms need {:.3g} triple products, above the budget of {:.3g}", terms.size(),
        n_terms * n_terms * n_terms, budget));
  const std::size_t n = terms.empty() ? 0 : terms.front().string.n_qubits();

  auto bracket = [](const PauliTerm& a, const PauliTerm& b, PauliSum& out, Complex scale) {
    if (a.string.commutes_with(b.string)) return;
    const auto prod = pauli_multiply(a.string, b.string);
    out.add(prod.string, scale * 2.0 * a.coefficient * b.coefficient * prod.phase());
  };

  BchErrorOperators v{PauliSum(n), PauliSum(n)};
  for (std::size_t j = 0; j < terms.size(); ++j) {
    PauliSum inner(n);  // sum_{k<j} [H_j, H_k]
    for (std::size_t k = 0; k < j; ++k) bracket(terms[j], terms[k], inner, 1.0);
    inner.prune();
    if (inner.empty()) continue;
    // V(0) collects i [H_k, H_j] for k < j, i.e. -i [H_j, H_k].
    for (const auto& [s, c] : inner.terms()) v.first_order.add(s, -kI * 0.5 * dt * c);
    for (std::size_t i = 0; i <= j; ++i) {
      const double weight = (i == j) ? 0.5 : 1.0;
      for (const auto& [s, c] : inner.terms())
        bracket(terms[i], PauliTerm{c, s}, v.second_order, weight * dt * dt / 12.0);
    }
  }
  v.first_order.prune();
  v.second_order.prune();
  return v;
}

}  // namespace localitylab
