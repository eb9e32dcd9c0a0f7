#include "attopmm/io/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include "json.hpp"

#include "attopmm/error.hpp"
#include "attopmm/orbital.hpp"

namespace attopmm::io {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorKind::Config, what); }

void check_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) fail(fmt::format("{}: expected an object", where));
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items()) {
    if (!ok.count(key)) fail(fmt::format("{}: unknown key '{}'", where, key));
  }
}

template <typename T>
void read(const json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(fmt::format("{}.{}: {}", where, key, e.what()));
  }
}

std::complex<double> read_complex(const json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  fail(fmt::format("{}: expected a number or [re, im]", where));
}

std::string normalization_name(CiNormalization n) {
  return n == CiNormalization::AsPrinted ? "as-printed" : "renormalize";
}

json to_json(const ScenarioConfig& c) {
  json j;
  json o;
  o["source"] = c.orbitals.kind;
  if (c.orbitals.kind == "builtin-huckel") {
    o["exponent"] = c.orbitals.exponent;
    o["cc_bond_angstrom"] = c.orbitals.cc_bond_angstrom;
  } else if (c.orbitals.kind == "cube-files") {
    o["files"] = c.orbitals.cube_files;
    o["n_occupied"] = c.orbitals.n_occupied;
    o["basis_size"] = c.orbitals.basis_size;
  } else {
    o["path"] = c.orbitals.lcao_file;
  }
  j["orbitals"] = o;

  json members = json::array();
  for (const auto& m : c.wave_packet.members) {
    json csfs = json::array();
    for (const auto& s : m.csfs) csfs.push_back({{"coefficient", s.coefficient}, {"hole", s.hole}, {"particle", s.particle}});
    members.push_back({{"coefficient", {m.coefficient.real(), m.coefficient.imag()}},
                       {"energy_ev", m.energy_ev},
                       {"csfs", csfs}});
  }
  j["wave_packet"] = {{"t0_fs", c.wave_packet.t0_fs}, {"members", members}};
  j["final_states"] = c.final_states;
  j["normalization"] = normalization_name(c.normalization);
  j["pulse"] = {{"photon_energy_ev", c.pulse.photon_energy_ev},
                {"polarization", c.pulse.polarization},
                {"duration_fs", c.pulse.duration_fs},
                {"peak_intensity", c.pulse.peak_intensity},
                {"probe_times_fs", c.pulse.probe_times_fs}};
  j["ground_state"] = {{"binding_energies_ev", c.binding_energies_ev}};
  const auto& u = c.outputs;
  j["outputs"] = {{"energies_ev", u.energies_ev},
                  {"pmm_grid", u.pmm_grid},
                  {"spectrum_min_ev", u.spectrum_min_ev},
                  {"spectrum_max_ev", u.spectrum_max_ev},
                  {"spectrum_step_ev", u.spectrum_step_ev},
                  {"quadrature_order", u.quadrature_order},
                  {"density_spacing_angstrom", u.density_spacing_angstrom},
                  {"density_padding_angstrom", u.density_padding_angstrom},
                  {"averaging_width_ev", u.averaging_width_ev},
                  {"averaging_samples", u.averaging_samples},
                  {"durations_fs", u.durations_fs}};
  j["prefactor"] = c.prefactor;
  j["threads"] = c.threads;
  return j;
}

}  // namespace

bool ScenarioConfig::operator==(const ScenarioConfig& o) const {
  return orbitals == o.orbitals && wave_packet == o.wave_packet && final_states == o.final_states &&
         normalization == o.normalization && pulse == o.pulse && binding_energies_ev == o.binding_energies_ev &&
         outputs == o.outputs && prefactor == o.prefactor && threads == o.threads;
}

void validate_config(const ScenarioConfig& c) {
  const auto& o = c.orbitals;
  if (o.kind == "builtin-huckel") {
    if (!(o.exponent > 0.0)) fail("orbitals.exponent must be positive");
    if (!(o.cc_bond_angstrom > 0.5 && o.cc_bond_angstrom < 3.0)) fail("orbitals.cc_bond_angstrom out of range");
  } else if (o.kind == "cube-files") {
    if (o.cube_files.empty()) fail("orbitals.files must list at least one cube");
    if (o.n_occupied < 1 || o.basis_size < o.n_occupied || o.basis_size > 32) {
      fail("orbitals.n_occupied/basis_size out of range");
    }
    for (const auto& [label, path] : o.cube_files) {
      try {
        OrbitalLabel::parse(label);
      } catch (const Error&) {
        fail(fmt::format("orbitals.files: bad orbital label '{}'", label));
      }
    }
  } else if (o.kind == "lcao-file") {
    if (o.lcao_file.empty()) fail("orbitals.path is required for lcao-file");
  } else {
    fail(fmt::format("orbitals.source: unknown source '{}'", o.kind));
  }

  if (c.wave_packet.members.empty()) fail("wave_packet.members must not be empty");
  double norm = 0.0;
  for (const auto& m : c.wave_packet.members) {
    if (m.csfs.empty()) fail("wave_packet member without CSFs");
    if (!std::isfinite(m.energy_ev) || m.energy_ev < 0.0 || m.energy_ev > 100.0) {
      fail("wave_packet member energy_ev out of range [0, 100]");
    }
    norm += std::norm(m.coefficient);
    for (const auto& s : m.csfs) {
      try {
        OrbitalLabel::parse(s.hole);
        OrbitalLabel::parse(s.particle);
      } catch (const Error&) {
        fail(fmt::format("wave_packet: bad orbital label in '{}'/'{}'", s.hole, s.particle));
      }
    }
  }
  if (std::abs(norm - 1.0) > 1e-10) fail(fmt::format("wave_packet: populations sum to {}, not 1", norm));
  if (c.final_states.empty()) fail("final_states path is required");

  const auto& p = c.pulse;
  if (!(p.photon_energy_ev > 0.0 && p.photon_energy_ev <= 1e4)) fail("pulse.photon_energy_ev out of range");
  if (!(p.duration_fs > 0.0 && p.duration_fs <= 100.0)) fail("pulse.duration_fs out of range");
  if (!(p.peak_intensity > 0.0)) fail("pulse.peak_intensity must be positive");
  const double pn = std::sqrt(p.polarization[0] * p.polarization[0] + p.polarization[1] * p.polarization[1] +
                              p.polarization[2] * p.polarization[2]);
  if (!(pn > 0.0)) fail("pulse.polarization must be nonzero");
  for (double t : p.probe_times_fs) {
    if (!std::isfinite(t)) fail("pulse.probe_times_fs must be finite");
  }
  for (const auto& [label, e] : c.binding_energies_ev) {
    try {
      OrbitalLabel::parse(label);
    } catch (const Error&) {
      fail(fmt::format("ground_state.binding_energies_ev: bad orbital label '{}'", label));
    }
    if (!(e > 0.0 && e < p.photon_energy_ev)) fail("ground_state binding energies must lie in (0, photon energy)");
  }

  const auto& u = c.outputs;
  for (double e : u.energies_ev) {
    if (!(e > 0.0)) fail("outputs.energies_ev must be positive");
  }
  if (u.pmm_grid < 2 || u.pmm_grid > 4001) fail("outputs.pmm_grid out of range [2, 4001]");
  if (!(u.spectrum_min_ev > 0.0 && u.spectrum_max_ev > u.spectrum_min_ev && u.spectrum_step_ev > 0.0)) {
    fail("outputs spectrum window invalid");
  }
  if (u.quadrature_order < 2 || u.quadrature_order > 1024) fail("outputs.quadrature_order out of range [2, 1024]");
  if (!(u.density_spacing_angstrom > 0.0) || u.density_padding_angstrom < 0.0) fail("outputs density grid invalid");
  if (u.averaging_width_ev < 0.0 || u.averaging_samples < 1) fail("outputs energy averaging invalid");
  for (double d : u.durations_fs) {
    if (!(d > 0.0)) fail("outputs.durations_fs must be positive");
  }
  if (c.prefactor != "relative" && c.prefactor != "absolute") fail("prefactor must be 'relative' or 'absolute'");
  if (c.threads < 1 || c.threads > 1024) fail("threads out of range [1, 1024]");
}

ScenarioConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Config, fmt::format("config: {}", e.what()));
  }
  ScenarioConfig c;
  c.base_dir = base_dir;
  check_keys(j, "config",
             {"orbitals", "wave_packet", "final_states", "normalization", "pulse", "ground_state", "outputs",
              "prefactor", "threads"});

  if (j.contains("orbitals")) {
    const auto& o = j["orbitals"];
    check_keys(o, "orbitals", {"source", "exponent", "cc_bond_angstrom", "files", "n_occupied", "basis_size", "path"});
    read(o, "source", c.orbitals.kind, "orbitals");
    read(o, "exponent", c.orbitals.exponent, "orbitals");
    read(o, "cc_bond_angstrom", c.orbitals.cc_bond_angstrom, "orbitals");
    read(o, "files", c.orbitals.cube_files, "orbitals");
    read(o, "n_occupied", c.orbitals.n_occupied, "orbitals");
    read(o, "basis_size", c.orbitals.basis_size, "orbitals");
    read(o, "path", c.orbitals.lcao_file, "orbitals");
  }
  if (!j.contains("wave_packet")) fail("config: wave_packet is required");
  {
    const auto& w = j["wave_packet"];
    check_keys(w, "wave_packet", {"t0_fs", "members"});
    read(w, "t0_fs", c.wave_packet.t0_fs, "wave_packet");
    if (!w.contains("members") || !w["members"].is_array()) fail("wave_packet.members must be an array");
    for (const auto& m : w["members"]) {
      check_keys(m, "wave_packet.members[]", {"coefficient", "energy_ev", "csfs"});
      MemberSpec spec;
      if (!m.contains("coefficient") || !m.contains("energy_ev")) {
        fail("wave_packet.members[]: coefficient and energy_ev are required");
      }
      spec.coefficient = read_complex(m["coefficient"], "wave_packet.members[].coefficient");
      read(m, "energy_ev", spec.energy_ev, "wave_packet.members[]");
      if (!m.contains("csfs") || !m["csfs"].is_array()) fail("wave_packet.members[].csfs must be an array");
      for (const auto& s : m["csfs"]) {
        check_keys(s, "wave_packet.members[].csfs[]", {"coefficient", "hole", "particle"});
        CsfSpec cs;
        read(s, "coefficient", cs.coefficient, "csfs[]");
        read(s, "hole", cs.hole, "csfs[]");
        read(s, "particle", cs.particle, "csfs[]");
        spec.csfs.push_back(cs);
      }
      c.wave_packet.members.push_back(spec);
    }
  }
  read(j, "final_states", c.final_states, "config");
  if (j.contains("normalization")) {
    std::string n;
    read(j, "normalization", n, "config");
    if (n == "as-printed") c.normalization = CiNormalization::AsPrinted;
    else if (n == "renormalize") c.normalization = CiNormalization::Renormalize;
    else fail(fmt::format("normalization: unknown mode '{}'", n));
  }
  if (j.contains("pulse")) {
    const auto& p = j["pulse"];
    check_keys(p, "pulse", {"photon_energy_ev", "polarization", "duration_fs", "peak_intensity", "probe_times_fs"});
    read(p, "photon_energy_ev", c.pulse.photon_energy_ev, "pulse");
    read(p, "polarization", c.pulse.polarization, "pulse");
    read(p, "duration_fs", c.pulse.duration_fs, "pulse");
    read(p, "peak_intensity", c.pulse.peak_intensity, "pulse");
    read(p, "probe_times_fs", c.pulse.probe_times_fs, "pulse");
  }
  if (j.contains("ground_state")) {
    const auto& g = j["ground_state"];
    check_keys(g, "ground_state", {"binding_energies_ev"});
    read(g, "binding_energies_ev", c.binding_energies_ev, "ground_state");
  }
  if (j.contains("outputs")) {
    const auto& u = j["outputs"];
    check_keys(u, "outputs",
               {"energies_ev", "pmm_grid", "spectrum_min_ev", "spectrum_max_ev", "spectrum_step_ev",
                "quadrature_order", "density_spacing_angstrom", "density_padding_angstrom", "averaging_width_ev",
                "averaging_samples", "durations_fs"});
    auto& o = c.outputs;
    read(u, "energies_ev", o.energies_ev, "outputs");
    read(u, "pmm_grid", o.pmm_grid, "outputs");
    read(u, "spectrum_min_ev", o.spectrum_min_ev, "outputs");
    read(u, "spectrum_max_ev", o.spectrum_max_ev, "outputs");
    read(u, "spectrum_step_ev", o.spectrum_step_ev, "outputs");
    read(u, "quadrature_order", o.quadrature_order, "outputs");
    read(u, "density_spacing_angstrom", o.density_spacing_angstrom, "outputs");
    read(u, "density_padding_angstrom", o.density_padding_angstrom, "outputs");
    read(u, "averaging_width_ev", o.averaging_width_ev, "outputs");
    read(u, "averaging_samples", o.averaging_samples, "outputs");
    read(u, "durations_fs", o.durations_fs, "outputs");
  }
  read(j, "prefactor", c.prefactor, "config");
  read(j, "threads", c.threads, "config");
  validate_config(c);
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::Io, fmt::format("cannot open config '{}'", path.string()));
  std::ostringstream ss;
  ss << f.rdbuf();
  try {
    return parse_config(ss.str(), path.parent_path());
  } catch (const Error& e) {
    throw Error(e.kind(), fmt::format("{}: {}", path.string(), e.what()), e.line());
  }
}

std::string serialize_config(const ScenarioConfig& config) { return to_json(config).dump(2) + "\n"; }

std::string config_digest(const ScenarioConfig& config) {
  // The thread count does not change results, so it stays out of the digest.
  json j = to_json(config);
  j.erase("threads");
  const std::string s = j.dump();
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return fmt::format("{:016x}", h);
}

std::filesystem::path resolve_path(const ScenarioConfig& config, const std::string& path) {
  const std::filesystem::path p(path);
  if (p.is_absolute() || config.base_dir.empty()) return p;
  return config.base_dir / p;
}

}  // namespace attopmm::io
