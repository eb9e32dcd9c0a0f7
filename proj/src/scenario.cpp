#include "attopmm/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "attopmm/error.hpp"
#include "attopmm/huckel.hpp"
#include "attopmm/io/cube.hpp"
#include "attopmm/units.hpp"
#include "json.hpp"

namespace attopmm {

namespace {

WavePacket build_wave_packet(const io::WavePacketSpec& spec, int n_occupied, int basis_size) {
  std::vector<WavePacketMember> members;
  for (const auto& m : spec.members) {
    ElectronicState state;
    state.energy = units::ev_to_hartree(m.energy_ev);
    for (const auto& c : m.csfs) {
      const int h = OrbitalLabel::parse(c.hole).index(n_occupied);
      const int p = OrbitalLabel::parse(c.particle).index(n_occupied);
      if (h < 0 || h >= n_occupied || p < n_occupied || p >= basis_size) {
        throw Error(ErrorKind::Config, fmt::format("excitation {}->{} outside the orbital basis", c.hole, c.particle));
      }
      state.expansion.push_back({c.coefficient, singlet_excitation(n_occupied, basis_size, h, p)});
    }
    members.push_back({m.coefficient, state.energy, std::move(state)});
  }
  return WavePacket(std::move(members), units::fs_to_au(spec.t0_fs));
}

}  // namespace

OrbitalSet read_lcao_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::Io, fmt::format("cannot open '{}'", path.string()));
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(f);
    const int n_occ = j.at("n_occupied").get<int>();
    const int basis = j.at("basis_size").get<int>();
    auto prims = std::make_shared<std::vector<GaussianPrimitive>>();
    for (const auto& p : j.at("primitives")) {
      const auto c = p.at("center_bohr").get<std::array<double, 3>>();
      prims->push_back(GaussianPrimitive::make(Eigen::Vector3d(c[0], c[1], c[2]), p.at("exponent").get<double>(),
                                               p.value("powers", std::array<int, 3>{0, 0, 0})));
    }
    std::shared_ptr<const std::vector<GaussianPrimitive>> shared = prims;
    std::vector<MolecularOrbital> mos;
    for (const auto& o : j.at("orbitals")) {
      const auto coef = o.at("coefficients").get<std::vector<double>>();
      if (coef.size() != prims->size()) {
        throw Error(ErrorKind::MalformedOrbital, "LCAO coefficient count does not match the primitive list");
      }
      mos.emplace_back(OrbitalLabel::parse(o.at("label").get<std::string>()),
                       LcaoExpansion{shared, Eigen::Map<const Eigen::VectorXd>(coef.data(), coef.size())});
    }
    std::vector<Atom> atoms;
    if (j.contains("atoms")) {
      for (const auto& a : j["atoms"]) {
        const auto r = a.at("position_bohr").get<std::array<double, 3>>();
        atoms.push_back({a.at("Z").get<int>(), Eigen::Vector3d(r[0], r[1], r[2])});
      }
    }
    return OrbitalSet(std::move(mos), n_occ, basis, std::move(atoms));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, fmt::format("{}: {}", path.string(), e.what()));
  }
}

std::shared_ptr<const OrbitalSet> load_orbitals(const io::ScenarioConfig& config) {
  const auto& o = config.orbitals;
  if (o.kind == "builtin-huckel") {
    return std::make_shared<const OrbitalSet>(huckel_orbitals(build_pentacene_graph(o.cc_bond_angstrom), o.exponent));
  }
  if (o.kind == "lcao-file") {
    return std::make_shared<const OrbitalSet>(read_lcao_file(io::resolve_path(config, o.lcao_file)));
  }
  std::vector<MolecularOrbital> mos;
  std::vector<Atom> atoms;
  for (const auto& [label, file] : o.cube_files) {
    io::CubeFile cube = io::read_cube(io::resolve_path(config, file));
    if (atoms.empty()) atoms = cube.atoms;
    mos.emplace_back(OrbitalLabel::parse(label), std::move(cube.grid));
  }
  return std::make_shared<const OrbitalSet>(std::move(mos), o.n_occupied, o.basis_size, std::move(atoms));
}

Scenario build_scenario(const io::ScenarioConfig& config) {
  io::validate_config(config);
  auto orbitals = load_orbitals(config);
  const int n_occ = orbitals->n_occupied();
  const int basis = orbitals->basis_size();

  WavePacket wp = build_wave_packet(config.wave_packet, n_occ, basis);

  ProbePulse pulse;
  pulse.photon_energy = units::ev_to_hartree(config.pulse.photon_energy_ev);
  pulse.polarization = Eigen::Vector3d(config.pulse.polarization[0], config.pulse.polarization[1],
                                       config.pulse.polarization[2])
                           .normalized();
  pulse.duration = units::fs_to_au(config.pulse.duration_fs);
  pulse.peak_intensity = config.pulse.peak_intensity;
  pulse.arrival_time = config.pulse.probe_times_fs.empty() ? 0.0 : units::fs_to_au(config.pulse.probe_times_fs[0]);

  std::vector<std::string> warnings;
  io::OmegaCheck check{pulse.photon_energy, wp.mean_energy()};
  FinalStateTable finals = io::read_final_state_table(io::resolve_path(config, config.final_states), n_occ, basis,
                                                      config.normalization, check, &warnings);

  SignalOptions options;
  options.prefactor = config.prefactor == "absolute" ? PrefactorMode::Absolute : PrefactorMode::Relative;
  options.threads = config.threads;

  SpectralModel model(orbitals, wp, finals, pulse, options);

  std::optional<SpectralModel> ground;
  if (!config.binding_energies_ev.empty()) {
    std::map<int, double> binding;
    for (const auto& [label, e] : config.binding_energies_ev) {
      binding[OrbitalLabel::parse(label).index(n_occ)] = units::ev_to_hartree(e);
    }
    auto [gwp, gfinals] = ground_state_scenario(n_occ, basis, binding);
    ground.emplace(orbitals, std::move(gwp), std::move(gfinals), pulse, options);
  }
  return Scenario{config, orbitals, std::move(model), std::move(ground), std::move(warnings)};
}

double Scenario::period() const {
  const auto t = model.wave_packet().beat_period();
  if (!t) throw Error(ErrorKind::InvalidArgument, "wave packet has no beat period");
  return *t;
}

std::vector<double> Scenario::probe_times() const {
  if (!config.pulse.probe_times_fs.empty()) {
    std::vector<double> out;
    for (double t : config.pulse.probe_times_fs) out.push_back(units::fs_to_au(t));
    return out;
  }
  const double T = period();
  return {0.0, T / 4, T / 2, 3 * T / 4};
}

std::vector<double> Scenario::durations() const {
  if (!config.outputs.durations_fs.empty()) {
    std::vector<double> out;
    for (double t : config.outputs.durations_fs) out.push_back(units::fs_to_au(t));
    return out;
  }
  const double T = period();
  return {model.pulse().duration, T / 4, T / 2};
}

std::vector<double> Scenario::pmm_energies() const {
  std::vector<double> out;
  for (double e : config.outputs.energies_ev) out.push_back(units::ev_to_hartree(e));
  return out;
}

std::vector<double> Scenario::spectrum_energies() const {
  const auto& o = config.outputs;
  std::vector<double> out;
  const int n = static_cast<int>(std::floor((o.spectrum_max_ev - o.spectrum_min_ev) / o.spectrum_step_ev + 1e-9));
  for (int k = 0; k <= n; ++k) out.push_back(units::ev_to_hartree(o.spectrum_min_ev + k * o.spectrum_step_ev));
  return out;
}

}  // namespace attopmm
