#include "attopmm/io/export.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "attopmm/error.hpp"
#include "attopmm/units.hpp"

namespace attopmm::io {

namespace {

std::string header(const Metadata& metadata) {
  std::string out;
  for (const auto& [k, v] : metadata) out += fmt::format("# {}: {}\n", k, v);
  return out;
}

}  // namespace

std::string format_pmm(const PMM& pmm, const Metadata& metadata) {
  std::string out = header(metadata);
  out += fmt::format("# energy_ev: {:.17g}\n", units::hartree_to_ev(pmm.energy));
  out += fmt::format("# probe_time_fs: {:.17g}\n", units::au_to_fs(pmm.probe_time));
  out += fmt::format("# duration_fs: {:.17g}\n", units::au_to_fs(pmm.duration));
  out += fmt::format("# formula: {}\n", pmm.formula == Formula::ShortPulse ? "short-pulse" : "finite-duration");
  out += fmt::format("# raster: {} x {}, q_max {:.17g} 1/angstrom\n", pmm.nx, pmm.ny,
                     units::inv_bohr_to_inv_angstrom(pmm.q_max));
  out += fmt::format("# energy_average: {} samples over {:.17g} eV\n", pmm.averaged_energies,
                     units::hartree_to_ev(pmm.averaging_width));
  out += "# channels:";
  for (int f : pmm.channels) out += fmt::format(" {}", f);
  out += "\n# columns: q_x[1/angstrom] q_y[1/angstrom] probability[relative]\n";
  for (int i = 0; i < pmm.nx; ++i) {
    for (int j = 0; j < pmm.ny; ++j) {
      const std::size_t k = static_cast<std::size_t>(i) * pmm.ny + j;
      if (!pmm.valid[k]) continue;
      out += fmt::format("{:.17g} {:.17g} {:.17g}\n", units::inv_bohr_to_inv_angstrom(pmm.qx(i)),
                         units::inv_bohr_to_inv_angstrom(pmm.qy(j)), pmm.values[k]);
    }
  }
  return out;
}

void export_pmm(const std::filesystem::path& path, const PMM& pmm, const Metadata& metadata) {
  write_text(path, format_pmm(pmm, metadata));
}

std::string format_spectra(const std::vector<Spectrum>& spectra, const Metadata& metadata) {
  std::string out = header(metadata);
  out += "# curves:";
  for (const auto& s : spectra) out += " " + s.tag;
  out += "\n# columns: energy[eV] intensity[relative]\n";
  for (const auto& s : spectra) {
    out += fmt::format("# curve: {}\n", s.tag);
    out += fmt::format("# probe_time_fs: {:.17g}\n", units::au_to_fs(s.probe_time));
    out += fmt::format("# quadrature_order: {}\n", s.quadrature_order);
    for (std::size_t i = 0; i < s.energies.size(); ++i) {
      out += fmt::format("{:.17g} {:.17g}\n", units::hartree_to_ev(s.energies[i]), s.values[i]);
    }
  }
  return out;
}

void export_spectrum(const std::filesystem::path& path, const std::vector<Spectrum>& spectra,
                     const Metadata& metadata) {
  write_text(path, format_spectra(spectra, metadata));
}

TableFile parse_table(const std::string& text) {
  TableFile t;
  std::istringstream in(text);
  std::string line, tag;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto colon = line.find(": ");
      if (colon == std::string::npos || colon < 2) continue;
      const std::string key = line.substr(2, colon - 2);
      const std::string value = line.substr(colon + 2);
      if (key == "curve") {
        tag = value;
      } else if (tag.empty()) {
        t.metadata[key] = value;
      } else {
        t.metadata[tag + "." + key] = value;
      }
      continue;
    }
    std::istringstream ss(line);
    std::vector<double> row;
    std::string tok;
    while (ss >> tok) {
      try {
        row.push_back(std::stod(tok));
      } catch (const std::exception&) {
        throw Error(ErrorKind::Parse, fmt::format("non-numeric value '{}'", tok), line_no);
      }
    }
    t.blocks[tag].push_back(std::move(row));
  }
  return t;
}

TableFile read_table(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::Io, fmt::format("cannot open '{}'", path.string()));
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_table(ss.str());
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::Io, fmt::format("cannot open '{}' for writing", path.string()));
  f << text;
  if (!f) throw Error(ErrorKind::Io, fmt::format("failed writing '{}'", path.string()));
}

}  // namespace attopmm::io
