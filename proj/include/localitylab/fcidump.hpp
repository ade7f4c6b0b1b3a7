#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "localitylab/integrals.hpp"

namespace localitylab {

/// Contents of an FCIDUMP file. The core Hamiltonian is stored in
/// `integrals.kinetic` with `integrals.nuclear` zero, since the file does not
/// separate the two; the overlap is the identity and the label is MO.
struct FcidumpData {
  IntegralSet integrals;
  int n_electrons = 0;
  int ms2 = 0;
  std::vector<int> orbsym;
};

/// Throws ParseError (with line number) on malformed input and
/// ConventionError on an inconsistent or unsupported header.
FcidumpData read_fcidump(std::istream& in);
FcidumpData read_fcidump_file(const std::filesystem::path& path);

/// Writes nonzero values in canonical order (i>=j, k>=l, ij>=kl), then the
/// one-body block, then the core energy, at 17 significant digits. Throws
/// ConventionError for AO integrals.
void write_fcidump(std::ostream& out, const IntegralSet& integrals, int n_electrons, int ms2 = 0);
void write_fcidump_file(const std::filesystem::path& path, const IntegralSet& integrals,
                        int n_electrons, int ms2 = 0);

}  // namespace localitylab
