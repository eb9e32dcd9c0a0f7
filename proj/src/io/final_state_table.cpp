#include "attopmm/io/final_state_table.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "attopmm/error.hpp"
#include "attopmm/orbital.hpp"
#include "attopmm/units.hpp"

namespace attopmm::io {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream ss(s);
  while (std::getline(ss, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double parse_number(const std::string& text, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::Parse, fmt::format("bad {} '{}'", what, text));
  }
}

int orbital_index(const std::string& label, int n_occupied, int basis_size) {
  const int idx = OrbitalLabel::parse(trim(label)).index(n_occupied);
  if (idx < 0 || idx >= basis_size) throw Error(ErrorKind::Parse, fmt::format("orbital '{}' outside basis", label));
  return idx;
}

}  // namespace

CsfTerm parse_csf_term(const std::string& text, int n_occupied, int basis_size) {
  const std::string t = trim(text);
  const auto space = t.find_first_of(" \t");
  if (space == std::string::npos) throw Error(ErrorKind::Parse, fmt::format("CSF term '{}' lacks a coefficient", t));
  CsfTerm term;
  term.coefficient = parse_number(t.substr(0, space), "CSF coefficient");
  std::string body = trim(t.substr(space));

  SpinCoupling coupling = SpinCoupling::None;
  if (const auto colon = body.find(':'); colon != std::string::npos) {
    const std::string tag = trim(body.substr(colon + 1));
    if (tag == "udu") coupling = SpinCoupling::Udu;
    else if (tag == "uud") coupling = SpinCoupling::Uud;
    else throw Error(ErrorKind::Parse, fmt::format("unknown coupling tag '{}'", tag));
    body = trim(body.substr(0, colon));
  }
  std::string holes_text = body, particle_text;
  if (const auto slash = body.find('/'); slash != std::string::npos) {
    holes_text = body.substr(0, slash);
    particle_text = trim(body.substr(slash + 1));
  }
  std::vector<int> holes;
  for (const auto& h : split(holes_text, ',')) holes.push_back(orbital_index(h, n_occupied, basis_size));

  if (particle_text.empty()) {
    if (holes.size() != 1 || coupling != SpinCoupling::None) {
      throw Error(ErrorKind::Parse, fmt::format("CSF term '{}': expected one hole without a particle", t));
    }
    term.csf = doublet_hole(n_occupied, basis_size, holes[0]);
    return term;
  }
  const int particle = orbital_index(particle_text, n_occupied, basis_size);
  if (holes.size() != 2) throw Error(ErrorKind::Parse, fmt::format("CSF term '{}': expected two holes", t));
  if (holes[0] == holes[1] && coupling != SpinCoupling::None) {
    throw Error(ErrorKind::Parse, fmt::format("CSF term '{}': coupling tag needs two distinct holes", t));
  }
  if (holes[0] != holes[1] && coupling == SpinCoupling::None) {
    throw Error(ErrorKind::Parse, fmt::format("CSF term '{}': distinct holes need a udu or uud tag", t));
  }
  term.csf = doublet_two_hole_particle(n_occupied, basis_size, holes[0], holes[1], particle, coupling);
  return term;
}

FinalStateTable parse_final_state_table(const std::string& text, int n_occupied, int basis_size,
                                        CiNormalization normalization, std::optional<OmegaCheck> check,
                                        std::vector<std::string>* warnings) {
  FinalStateTable table;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    try {
      const auto cols = split(line, '\t');
      if (cols.size() < 4) throw Error(ErrorKind::Parse, "expected F, E_F, Omega and at least one CSF term");
      FinalState row;
      row.index = static_cast<int>(parse_number(trim(cols[0]), "final-state index"));
      row.state.energy = units::ev_to_hartree(parse_number(trim(cols[1]), "final-state energy"));
      const std::string omega = trim(cols[2]);
      if (omega != "-") row.tabulated_omega = units::ev_to_hartree(parse_number(omega, "Omega"));
      for (std::size_t c = 3; c < cols.size(); ++c) {
        if (trim(cols[c]).empty()) continue;
        row.state.expansion.push_back(parse_csf_term(cols[c], n_occupied, basis_size));
      }
      if (row.state.expansion.empty()) throw Error(ErrorKind::Parse, "final state without CSF terms");
      if (row.state.weight() > 1.0 + 1e-6) {
        throw Error(ErrorKind::InvalidArgument,
                    fmt::format("final state {}: coefficient norm {:.6f} exceeds 1", row.index,
                                std::sqrt(row.state.weight())));
      }
      if (normalization == CiNormalization::Renormalize) row.state = row.state.renormalized();
      validate(row.state);
      for (const auto& r : table.rows) {
        if (r.index == row.index) throw Error(ErrorKind::Parse, fmt::format("duplicate final state {}", row.index));
      }
      if (check && row.tabulated_omega) {
        const double expected = check->photon_energy + check->mean_energy - row.state.energy;
        if (std::abs(expected - *row.tabulated_omega) > check->tolerance && warnings) {
          warnings->push_back(fmt::format("final state {}: tabulated Omega {:.3f} eV differs from {:.3f} eV",
                                          row.index, units::hartree_to_ev(*row.tabulated_omega),
                                          units::hartree_to_ev(expected)));
        }
      }
      table.rows.push_back(std::move(row));
    } catch (const Error& e) {
      throw Error(e.kind(), fmt::format("final-state table line {}: {}", line_no, e.what()), line_no);
    }
  }
  if (table.rows.empty()) throw Error(ErrorKind::Parse, "final-state table contains no rows", line_no);
  return table;
}

FinalStateTable read_final_state_table(const std::filesystem::path& path, int n_occupied, int basis_size,
                                       CiNormalization normalization, std::optional<OmegaCheck> check,
                                       std::vector<std::string>* warnings) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::Io, fmt::format("cannot open '{}'", path.string()));
  std::ostringstream ss;
  ss << f.rdbuf();
  try {
    return parse_final_state_table(ss.str(), n_occupied, basis_size, normalization, check, warnings);
  } catch (const Error& e) {
    throw Error(e.kind(), fmt::format("{}: {}", path.string(), e.what()), e.line());
  }
}

}  // namespace attopmm::io
