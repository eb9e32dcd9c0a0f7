#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "attopmm/io/final_state_table.hpp"

namespace attopmm::io {

struct OrbitalSourceConfig {
  std::string kind = "builtin-huckel";  // builtin-huckel | cube-files | lcao-file
  double exponent = 1.0;                // bohr^-2, builtin-huckel
  double cc_bond_angstrom = 1.40;
  std::map<std::string, std::string> cube_files;  // label -> path, cube-files
  int n_occupied = 0;                             // cube-files
  int basis_size = 0;                             // cube-files
  std::string lcao_file;                          // lcao-file

  friend bool operator==(const OrbitalSourceConfig&, const OrbitalSourceConfig&) = default;
};

struct CsfSpec {
  double coefficient = 1.0;
  std::string hole;
  std::string particle;

  friend bool operator==(const CsfSpec&, const CsfSpec&) = default;
};

struct MemberSpec {
  std::complex<double> coefficient;
  double energy_ev = 0.0;
  std::vector<CsfSpec> csfs;

  friend bool operator==(const MemberSpec&, const MemberSpec&) = default;
};

struct WavePacketSpec {
  double t0_fs = 0.0;
  std::vector<MemberSpec> members;

  friend bool operator==(const WavePacketSpec&, const WavePacketSpec&) = default;
};

struct PulseSpec {
  double photon_energy_ev = 100.0;
  std::array<double, 3> polarization{0.0, 1.0, 0.0};
  double duration_fs = 0.5;
  double peak_intensity = 1.0;
  std::vector<double> probe_times_fs;  // empty: 0, T/4, T/2, 3T/4

  friend bool operator==(const PulseSpec&, const PulseSpec&) = default;
};

struct OutputSpec {
  std::vector<double> energies_ev{99.0};
  int pmm_grid = 201;
  double spectrum_min_ev = 88.0;
  double spectrum_max_ev = 100.0;
  double spectrum_step_ev = 0.1;
  int quadrature_order = 64;
  double density_spacing_angstrom = 0.15;
  double density_padding_angstrom = 4.0;
  double averaging_width_ev = 1.0;
  int averaging_samples = 11;
  std::vector<double> durations_fs;  // empty: 0.5 fs, T/4, T/2

  friend bool operator==(const OutputSpec&, const OutputSpec&) = default;
};

struct ScenarioConfig {
  OrbitalSourceConfig orbitals;
  WavePacketSpec wave_packet;
  std::string final_states;
  CiNormalization normalization = CiNormalization::AsPrinted;
  PulseSpec pulse;
  std::map<std::string, double> binding_energies_ev;  // orbital label -> binding energy
  OutputSpec outputs;
  std::string prefactor = "relative";  // relative | absolute
  int threads = 1;
  /// Directory relative paths resolve against; not serialized.
  std::filesystem::path base_dir;

  bool operator==(const ScenarioConfig& o) const;
};

/// Strict JSON schema: unknown keys and out-of-range values raise Config errors.
ScenarioConfig parse_config(const std::string& text, const std::filesystem::path& base_dir = {});
ScenarioConfig load_config(const std::filesystem::path& path);
/// Canonical JSON (sorted keys, fixed indentation).
std::string serialize_config(const ScenarioConfig& config);
/// FNV-1a hash of the canonical serialization without `threads`, 16 hex digits.
std::string config_digest(const ScenarioConfig& config);

/// Range checks shared by parsing and command-line overrides.
void validate_config(const ScenarioConfig& config);

std::filesystem::path resolve_path(const ScenarioConfig& config, const std::string& path);

}  // namespace attopmm::io
