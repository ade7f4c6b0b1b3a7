#include "localitylab/fcidump.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>
#include <string>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "localitylab/error.hpp"

namespace localitylab {

namespace {

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
  return s;
}

std::vector<std::string> split_values(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

int to_int(const std::string& s, const std::string& key) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ConventionError(fmt::format("header value '{}' for {} is not an integer", s, key));
  return v;
}

double to_double(std::string s, std::size_t line) {
  std::replace(s.begin(), s.end(), 'D', 'E');
  std::replace(s.begin(), s.end(), 'd', 'e');
  double v = 0.0;
  const char* first = s.data();
  if (!s.empty() && s[0] == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ParseError(fmt::format("'{}' is not a number", s), line);
  return v;
}

std::map<std::string, std::vector<std::string>> parse_header(const std::string& text) {
  static const std::regex key_re(R"(([A-Za-z_][A-Za-z0-9_]*)\s*=)");
  std::map<std::string, std::vector<std::string>> out;
  std::vector<std::pair<std::string, std::pair<std::size_t, std::size_t>>> keys;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), key_re);
       it != std::sregex_iterator(); ++it)
    keys.push_back({upper((*it)[1].str()),
                    {static_cast<std::size_t>(it->position()),
                     static_cast<std::size_t>(it->position() + it->length())}});
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const auto begin = keys[i].second.second;
    const auto end = i + 1 < keys.size() ? keys[i + 1].second.first : text.size();
    out[keys[i].first] = split_values(text.substr(begin, end - begin));
  }
  return out;
}

}  // namespace

FcidumpData read_fcidump(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::string header;
  bool started = false, ended = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string u = upper(line);
    if (!started) {
      const auto pos = u.find("&FCI");
      if (pos == std::string::npos) {
        if (u.find_first_not_of(" \t\r") == std::string::npos) continue;
        throw ParseError("expected &FCI header", line_no);
      }
      started = true;
      u = u.substr(pos + 4);
    }
    auto end = u.find("&END");
    if (end == std::string::npos) end = u.find('/');
    header += ' ' + u.substr(0, end);
    if (end != std::string::npos) {
      ended = true;
      break;
    }
  }
  if (!ended) throw ParseError("unterminated FCIDUMP header", line_no);

  const auto fields = parse_header(header);
  auto scalar = [&](const std::string& key, std::optional<int> fallback) {
    auto it = fields.find(key);
    if (it == fields.end() || it->second.empty()) {
      if (fallback) return *fallback;
      throw ConventionError("FCIDUMP header lacks " + key);
    }
    if (it->second.size() != 1) throw ConventionError(key + " must be a single value");
    return to_int(it->second.front(), key);
  };
  const int norb = scalar("NORB", std::nullopt);
  FcidumpData d;
  d.n_electrons = scalar("NELEC", std::nullopt);
  d.ms2 = scalar("MS2", 0);
  if (scalar("UHF", 0) != 0 || scalar("IUHF", 0) != 0)
    throw ConventionError("unrestricted FCIDUMP files are not supported");
  if (norb <= 0) throw ConventionError("NORB must be positive");
  if (d.n_electrons < 0 || d.n_electrons > 2 * norb)
    throw ConventionError("NELEC is inconsistent with NORB");
  if (std::abs(d.ms2) > d.n_electrons || (d.n_electrons - d.ms2) % 2 != 0)
    throw ConventionError("MS2 is inconsistent with NELEC");
  if (auto it = fields.find("ORBSYM"); it != fields.end()) {
    for (const auto& v : it->second) d.orbsym.push_back(to_int(v, "ORBSYM"));
    if (d.orbsym.size() != static_cast<std::size_t>(norb))
      throw ConventionError("ORBSYM length differs from NORB");
  } else {
    d.orbsym.assign(static_cast<std::size_t>(norb), 1);
  }

  const auto n = static_cast<std::size_t>(norb);
  auto& s = d.integrals;
  s.label = OrbitalBasis::MO;
  s.overlap = Eigen::MatrixXd::Identity(norb, norb);
  s.kinetic = Eigen::MatrixXd::Zero(norb, norb);
  s.nuclear = Eigen::MatrixXd::Zero(norb, norb);
  s.eri = EriTensor(n);

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream row(line);
    std::string value_text;
    if (!(row >> value_text)) continue;
    const double v = to_double(value_text, line_no);
    long idx[4];
    for (auto& k : idx)
      if (!(row >> k)) throw ParseError("expected four orbital indices", line_no);
    std::string extra;
    if (row >> extra) throw ParseError("unexpected trailing text", line_no);
    for (long k : idx)
      if (k < 0 || k > norb)
        throw ConventionError(fmt::format("line {}: orbital index {} outside 0..{}", line_no, k,
                                          norb));
    const auto [i, j, k, l] = idx;
    if (i > 0 && j > 0 && k > 0 && l > 0) {
      s.eri.set_symmetric(i - 1, j - 1, k - 1, l - 1, v);
    } else if (i > 0 && j > 0 && k == 0 && l == 0) {
      s.kinetic(i - 1, j - 1) = v;
      s.kinetic(j - 1, i - 1) = v;
    } else if (i == 0 && j == 0 && k == 0 && l == 0) {
      s.nuclear_repulsion = v;
    } else if (i > 0 && j == 0 && k == 0 && l == 0) {
      // orbital energy line; not part of the Hamiltonian
    } else {
      throw ParseError("unrecognized index pattern", line_no);
    }
  }
  return d;
}

FcidumpData read_fcidump_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return read_fcidump(in);
}

void write_fcidump(std::ostream& out, const IntegralSet& s, int n_electrons, int ms2) {
  if (s.label == OrbitalBasis::AO)
    throw ConventionError("FCIDUMP requires orthonormal orbitals, got AO integrals");
  const auto n = s.n_spatial();
  if (n_electrons < 0 || n_electrons > static_cast<int>(2 * n) ||
      std::abs(ms2) > n_electrons || (n_electrons - ms2) % 2 != 0)
    throw ConventionError("electron count or MS2 inconsistent with the orbital count");
  fmt::print(out, " &FCI NORB={},NELEC={},MS2={},\n  ORBSYM=", n, n_electrons, ms2);
  for (std::size_t i = 0; i < n; ++i) fmt::print(out, "1,");
  fmt::print(out, "\n  ISYM=1,\n &END\n");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      for (std::size_t k = 0; k <= i; ++k)
        for (std::size_t l = 0; l <= (k == i ? j : k); ++l) {
          const double v = s.eri(i, j, k, l);
          if (v != 0.0) fmt::print(out, "{:.16e} {} {} {} {}\n", v, i + 1, j + 1, k + 1, l + 1);
        }
  const Eigen::MatrixXd h = s.core();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const double v = h(i, j);
      if (v != 0.0) fmt::print(out, "{:.16e} {} {} 0 0\n", v, i + 1, j + 1);
    }
  fmt::print(out, "{:.16e} 0 0 0 0\n", s.nuclear_repulsion);
}

void write_fcidump_file(const std::filesystem::path& path, const IntegralSet& s, int n_electrons,
                        int ms2) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  write_fcidump(out, s, n_electrons, ms2);
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace localitylab
