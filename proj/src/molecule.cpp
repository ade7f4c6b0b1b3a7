#include "localitylab/molecule.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include <fmt/core.h>

#include "localitylab/error.hpp"

namespace localitylab {

namespace {

constexpr std::array<const char*, 37> kSymbols = {
    "X",  "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na", "Mg",
    "Al", "Si", "P",  "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti", "V",  "Cr", "Mn",
    "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As", "Se", "Br", "Kr"};

std::string trim_comment(const std::string& line) {
  auto pos = line.find_first_of("#!");
  return pos == std::string::npos ? line : line.substr(0, pos);
}

std::vector<std::string> split(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  for (std::string tok; ss >> tok;) out.push_back(tok);
  return out;
}

double parse_double(const std::string& tok, std::size_t line) {
  try {
    std::size_t used = 0;
    std::string t = tok;
    std::replace(t.begin(), t.end(), 'D', 'E');
    std::replace(t.begin(), t.end(), 'd', 'e');
    double v = std::stod(t, &used);
    if (used != t.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(fmt::format("expected a number, got '{}'", tok), line);
  }
}

ShellType parse_shell(const std::string& tok, std::size_t line) {
  std::string t = tok;
  std::transform(t.begin(), t.end(), t.begin(), ::toupper);
  if (t == "S") return ShellType::S;
  if (t == "SP" || t == "L") return ShellType::SP;
  if (t == "P") return ShellType::P;
  if (t == "D") return ShellType::D;
  if (t == "F") return ShellType::F;
  throw ParseError(fmt::format("unknown shell type '{}'", tok), line);
}

}  // namespace

double distance_squared(const Vec3& a, const Vec3& b) {
  const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
  return dx * dx + dy * dy + dz * dz;
}

double distance(const Vec3& a, const Vec3& b) {
  return std::sqrt(distance_squared(a, b));
}

Molecule::Molecule(std::vector<Nucleus> nuclei, int n_electrons)
    : nuclei_(std::move(nuclei)), n_electrons_(n_electrons) {
  if (n_electrons_ < 0) throw DomainError("negative electron count");
  for (std::size_t i = 0; i < nuclei_.size(); ++i) {
    if (!(nuclei_[i].charge > 0.0))
      throw DomainError(fmt::format("nucleus {} has non-positive charge", i));
    for (std::size_t j = 0; j < i; ++j) {
      if (distance(nuclei_[i].position, nuclei_[j].position) < 1e-6)
        throw DomainError(fmt::format("nuclei {} and {} coincide", j, i));
    }
  }
}

double Molecule::nuclear_repulsion() const {
  double e = 0.0;
  for (std::size_t i = 0; i < nuclei_.size(); ++i)
    for (std::size_t j = i + 1; j < nuclei_.size(); ++j)
      e += nuclei_[i].charge * nuclei_[j].charge /
           distance(nuclei_[i].position, nuclei_[j].position);
  return e;
}

double Molecule::max_charge() const {
  double z = 0.0;
  for (const auto& n : nuclei_) z = std::max(z, n.charge);
  return z;
}

double Molecule::min_separation() const {
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < nuclei_.size(); ++i)
    for (std::size_t j = i + 1; j < nuclei_.size(); ++j)
      d = std::min(d, distance(nuclei_[i].position, nuclei_[j].position));
  return d;
}

Molecule build_hydrogen_chain(int n_atoms, double spacing) {
  if (n_atoms < 1) throw DomainError("hydrogen chain needs at least one atom");
  if (!(spacing > 0.0)) throw DomainError("chain spacing must be positive");
  std::vector<Nucleus> nuclei;
  nuclei.reserve(n_atoms);
  for (int k = 0; k < n_atoms; ++k)
    nuclei.push_back({1.0, {0.0, 0.0, k * spacing}});
  return Molecule(std::move(nuclei), n_atoms);
}

ContractedGaussian::ContractedGaussian(const Vec3& center,
                                       std::span<const double> exponents,
                                       std::span<const double> coefficients)
    : center_(center) {
  if (exponents.empty() || exponents.size() != coefficients.size())
    throw DomainError("contraction needs matching, non-empty exponent and coefficient lists");
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    const double a = exponents[i];
    if (!(a > 0.0)) throw DomainError("Gaussian exponent must be positive");
    const double primitive_norm = std::pow(2.0 * a / std::numbers::pi, 0.75);
    terms_.push_back({coefficients[i] * primitive_norm, {a, center}});
  }
  double self = 0.0;
  for (const auto& ti : terms_)
    for (const auto& tj : terms_)
      self += ti.coefficient * tj.coefficient *
              std::pow(std::numbers::pi / (ti.primitive.exponent + tj.primitive.exponent), 1.5);
  const double scale = 1.0 / std::sqrt(self);
  for (auto& t : terms_) t.coefficient *= scale;
}

double ContractedGaussian::min_exponent() const {
  double a = std::numeric_limits<double>::infinity();
  for (const auto& t : terms_) a = std::min(a, t.primitive.exponent);
  return a;
}

double BasisSet::min_exponent() const {
  double a = std::numeric_limits<double>::infinity();
  for (const auto& f : functions) a = std::min(a, f.min_exponent());
  return a;
}

BasisLibrary BasisLibrary::parse(std::istream& in) {
  BasisLibrary lib;
  std::string raw;
  std::size_t lineno = 0;
  auto next_data_line = [&](std::vector<std::string>& toks) {
    while (std::getline(in, raw)) {
      ++lineno;
      toks = split(trim_comment(raw));
      if (!toks.empty()) return true;
    }
    return false;
  };

  std::vector<std::string> toks;
  while (next_data_line(toks)) {
    if (toks.size() < 2 || toks.size() > 3)
      throw ParseError("expected 'ELEMENT [SHELL] nprim' header", lineno);
    ShellData shell;
    const std::string element = toks[0];
    if (toks.size() == 3) shell.type = parse_shell(toks[1], lineno);
    const std::string& count_tok = toks.back();
    int nprim = 0;
    try {
      nprim = std::stoi(count_tok);
    } catch (const std::exception&) {
      throw ParseError(fmt::format("bad primitive count '{}'", count_tok), lineno);
    }
    if (nprim < 1) throw ParseError("primitive count must be positive", lineno);
    const std::size_t columns = shell.type == ShellType::SP ? 3 : 2;
    for (int i = 0; i < nprim; ++i) {
      if (!next_data_line(toks))
        throw ParseError("unexpected end of basis file", lineno);
      if (toks.size() != columns)
        throw ParseError(fmt::format("expected {} columns", columns), lineno);
      shell.exponents.push_back(parse_double(toks[0], lineno));
      shell.coefficients.push_back(parse_double(toks[1], lineno));
    }
    lib.shells_[element].push_back(std::move(shell));
  }
  return lib;
}

BasisLibrary BasisLibrary::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open basis file " + path);
  return parse(in);
}

const std::vector<ShellData>* BasisLibrary::find(const std::string& element) const {
  auto it = shells_.find(element);
  return it == shells_.end() ? nullptr : &it->second;
}

BasisSet load_basis(const Molecule& molecule, const BasisLibrary& library) {
  BasisSet basis;
  for (std::size_t atom = 0; atom < molecule.size(); ++atom) {
    const auto& nucleus = molecule.nuclei()[atom];
    const double z = nucleus.charge;
    const int zi = static_cast<int>(std::lround(z));
    if (std::abs(z - zi) > 1e-12 || zi < 1 || zi >= static_cast<int>(kSymbols.size()))
      throw UnknownElement(fmt::format("no element for nuclear charge {}", z));
    const std::string symbol = kSymbols[zi];
    const auto* shells = library.find(symbol);
    if (!shells) throw UnknownElement("no basis functions for element " + symbol);
    for (const auto& shell : *shells) {
      if (shell.type != ShellType::S)
        throw NonSType(fmt::format(
            "element {} has a shell with angular momentum > 0; only s functions are supported",
            symbol));
    }
    for (const auto& shell : *shells) {
      basis.functions.emplace_back(nucleus.position, shell.exponents, shell.coefficients);
      basis.atom_of_function.push_back(atom);
    }
  }
  return basis;
}

std::string element_symbol(int z) {
  if (z < 1 || z >= static_cast<int>(kSymbols.size()))
    throw UnknownElement(fmt::format("no element symbol for Z={}", z));
  return kSymbols[z];
}

int atomic_number(const std::string& symbol) {
  std::string s = symbol;
  if (!s.empty()) {
    s[0] = static_cast<char>(std::toupper(s[0]));
    for (std::size_t i = 1; i < s.size(); ++i) s[i] = static_cast<char>(std::tolower(s[i]));
  }
  for (std::size_t z = 1; z < kSymbols.size(); ++z)
    if (s == kSymbols[z]) return static_cast<int>(z);
  throw UnknownElement("unknown element symbol " + symbol);
}

Molecule read_geometry(std::istream& in, bool in_bohr, int charge) {
  double scale = in_bohr ? 1.0 : kBohrPerAngstrom;
  std::vector<Nucleus> nuclei;
  int electrons = -charge;
  std::string raw;
  std::size_t lineno = 0;
  bool header_allowed = true;
  while (std::getline(in, raw)) {
    ++lineno;
    auto toks = split(trim_comment(raw));
    if (toks.empty()) continue;
    if (header_allowed && toks.size() == 1) {
      // XYZ atom-count line; the following line is a free-form comment.
      header_allowed = false;
      if (std::getline(in, raw)) ++lineno;
      continue;
    }
    header_allowed = false;
    if (toks.size() == 2 && (toks[0] == "units" || toks[0] == "UNITS")) {
      if (toks[1] == "bohr" || toks[1] == "BOHR") {
        scale = 1.0;
      } else if (toks[1] == "angstrom" || toks[1] == "ANGSTROM") {
        scale = kBohrPerAngstrom;
      } else {
        throw ParseError("units must be bohr or angstrom", lineno);
      }
      continue;
    }
    if (toks.size() != 4) throw ParseError("expected 'Symbol x y z'", lineno);
    const int z = atomic_number(toks[0]);
    Vec3 r{parse_double(toks[1], lineno) * scale, parse_double(toks[2], lineno) * scale,
           parse_double(toks[3], lineno) * scale};
    nuclei.push_back({static_cast<double>(z), r});
    electrons += z;
  }
  if (nuclei.empty()) throw ParseError("geometry has no atoms", lineno);
  return Molecule(std::move(nuclei), electrons);
}

Molecule read_geometry_file(const std::string& path, bool in_bohr, int charge) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open geometry file " + path);
  return read_geometry(in, in_bohr, charge);
}

}  // namespace localitylab
