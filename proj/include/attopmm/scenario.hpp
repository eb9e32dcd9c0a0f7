#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "attopmm/io/config.hpp"
#include "attopmm/orbital.hpp"
#include "attopmm/signal.hpp"

namespace attopmm {

/// Everything a configuration resolves to, in atomic units.
struct Scenario {
  io::ScenarioConfig config;
  std::shared_ptr<const OrbitalSet> orbitals;
  SpectralModel model;
  std::optional<SpectralModel> ground;  // present when binding energies are configured
  std::vector<std::string> warnings;

  /// Beat period 2π/ΔE; throws for a single-member packet.
  double period() const;
  /// Configured probe times, or 0, T/4, T/2, 3T/4.
  std::vector<double> probe_times() const;
  /// Configured probe durations for the duration scan, or τ_p, T/4, T/2.
  std::vector<double> durations() const;
  std::vector<double> pmm_energies() const;
  std::vector<double> spectrum_energies() const;
};

Scenario build_scenario(const io::ScenarioConfig& config);

/// Orbitals as configured (builtin Hückel, cube files or an LCAO JSON file).
std::shared_ptr<const OrbitalSet> load_orbitals(const io::ScenarioConfig& config);

/// LCAO JSON: {"n_occupied", "basis_size", "primitives": [{"center_bohr",
/// "exponent", "powers"}], "orbitals": [{"label", "coefficients"}], "atoms":
/// [{"Z", "position_bohr"}]}.
OrbitalSet read_lcao_file(const std::filesystem::path& path);

}  // namespace attopmm
