#pragma once

#include <array>
#include <istream>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace localitylab {

using Vec3 = std::array<double, 3>;

inline constexpr double kBohrPerAngstrom = 1.8897259886;

double distance(const Vec3& a, const Vec3& b);
double distance_squared(const Vec3& a, const Vec3& b);

struct Nucleus {
  double charge;
  Vec3 position;  // Bohr
};

/// Fixed point-charge nuclei plus an electron count (closed shell).
class Molecule {
 public:
  /// Throws DomainError on non-positive charges, nuclei closer than 1e-6 Bohr,
  /// or a negative electron count. Odd counts are representable; run_rhf
  /// rejects them.
  Molecule(std::vector<Nucleus> nuclei, int n_electrons);

  std::span<const Nucleus> nuclei() const { return nuclei_; }
  std::size_t size() const { return nuclei_.size(); }
  int n_electrons() const { return n_electrons_; }

  /// Sum over nucleus pairs of Z_i Z_j / R_ij.
  double nuclear_repulsion() const;
  double max_charge() const;
  /// Smallest internuclear distance; +inf for a single nucleus.
  double min_separation() const;

 private:
  std::vector<Nucleus> nuclei_;
  int n_electrons_;
};

/// Linear chain along z with hydrogen nuclei at k * spacing and one electron
/// per atom.
Molecule build_hydrogen_chain(int n_atoms, double spacing);

struct PrimitiveGaussian {
  double exponent;  // Bohr^-2
  Vec3 center;
};

/// Contracted s-type function. Coefficients multiply the *unnormalized*
/// primitives exp(-a r^2); primitive normalization and the overall contraction
/// normalization are already folded in.
class ContractedGaussian {
 public:
  struct Term {
    double coefficient;
    PrimitiveGaussian primitive;
  };

  /// `coefficients` are standard basis-file contraction coefficients that
  /// refer to normalized primitives.
  ContractedGaussian(const Vec3& center, std::span<const double> exponents,
                     std::span<const double> coefficients);

  std::span<const Term> terms() const { return terms_; }
  const Vec3& center() const { return center_; }
  double min_exponent() const;

 private:
  Vec3 center_;
  std::vector<Term> terms_;
};

struct BasisSet {
  std::vector<ContractedGaussian> functions;
  std::vector<std::size_t> atom_of_function;

  std::size_t n_spatial() const { return functions.size(); }
  std::size_t n_spin_orbitals() const { return 2 * functions.size(); }
  double min_exponent() const;
};

enum class ShellType { S, SP, P, D, F };

struct ShellData {
  ShellType type = ShellType::S;
  std::vector<double> exponents;
  std::vector<double> coefficients;  // s coefficients (SP: s part)
};

/// Element symbol -> shells, parsed from the line-oriented basis file.
class BasisLibrary {
 public:
  static BasisLibrary parse(std::istream& in);
  static BasisLibrary from_file(const std::string& path);

  const std::vector<ShellData>* find(const std::string& element) const;

 private:
  std::map<std::string, std::vector<ShellData>> shells_;
};

/// One contracted function per atom per s shell; throws UnknownElement when
/// the library has no entry for a charge and NonSType for any shell with
/// angular momentum above zero.
BasisSet load_basis(const Molecule& molecule, const BasisLibrary& library);

std::string element_symbol(int z);
int atomic_number(const std::string& symbol);

/// XYZ-like geometry: optional count line and comment line are tolerated,
/// then `Symbol x y z` rows. Units are Angstrom unless `in_bohr`; a
/// `units bohr|angstrom` line in the file overrides the default.
Molecule read_geometry(std::istream& in, bool in_bohr, int charge = 0);
Molecule read_geometry_file(const std::string& path, bool in_bohr,
                            int charge = 0);

}  // namespace localitylab
