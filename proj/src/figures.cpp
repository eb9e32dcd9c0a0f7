#include "attopmm/figures.hpp"

#include <fmt/format.h>

#include "attopmm/density.hpp"
#include "attopmm/error.hpp"
#include "attopmm/io/cube.hpp"
#include "attopmm/units.hpp"

namespace attopmm {

namespace {

std::string number_tag(double v) {
  std::string s = fmt::format("{:.3f}", v);
  for (auto& c : s) {
    if (c == '.') c = 'p';
    if (c == '-') c = 'm';
  }
  return s;
}

}  // namespace

io::Metadata base_metadata(const Scenario& scenario, const std::string& what) {
  const auto& p = scenario.model.pulse();
  return {
      {"attopmm", what},
      {"config_digest", io::config_digest(scenario.config)},
      {"units", "momentum 1/angstrom, energy eV, time fs"},
      {"photon_energy_ev", fmt::format("{:.17g}", units::hartree_to_ev(p.photon_energy))},
      {"polarization", fmt::format("{:.17g} {:.17g} {:.17g}", p.polarization[0], p.polarization[1], p.polarization[2])},
      {"mean_energy_ev", fmt::format("{:.17g}", units::hartree_to_ev(scenario.model.wave_packet().mean_energy()))},
  };
}

std::vector<std::filesystem::path> write_pmm_series(const SpectralModel& model, const Scenario& scenario,
                                                    const std::vector<double>& energies,
                                                    const std::vector<double>& times, int grid, Formula formula,
                                                    double averaging_width, int averaging_samples,
                                                    const std::filesystem::path& out_dir, const std::string& prefix) {
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> out;
  AmplitudeCache cache;
  for (double e : energies) {
    for (double t : times) {
      const PMM pmm = averaging_width > 0.0
                          ? energy_average_pmm(model, e, averaging_width, averaging_samples, t, grid, formula, &cache)
                          : pmm_cut(model, e, t, grid, formula, std::nullopt, &cache);
      const auto path = out_dir / fmt::format("{}_e{}_tau{}_t{}.dat", prefix, number_tag(units::hartree_to_ev(e)),
                                              number_tag(units::au_to_fs(model.pulse().duration)),
                                              number_tag(units::au_to_fs(t)));
      io::export_pmm(path, pmm, base_metadata(scenario, "pmm"));
      out.push_back(path);
    }
  }
  return out;
}

std::vector<std::filesystem::path> write_spectra(const Scenario& scenario, const std::vector<double>& times,
                                                 bool include_ground, const std::filesystem::path& out_dir,
                                                 const std::string& prefix) {
  std::filesystem::create_directories(out_dir);
  const auto energies = scenario.spectrum_energies();
  const int order = scenario.config.outputs.quadrature_order;
  std::vector<Spectrum> curves;
  if (include_ground) {
    if (!scenario.ground) throw Error(ErrorKind::Config, "ground-state spectrum needs ground_state.binding_energies_ev");
    curves.push_back(angle_integrated_spectrum(*scenario.ground, energies, 0.0, order, Formula::ShortPulse, "S0"));
  }
  for (double t : times) {
    curves.push_back(angle_integrated_spectrum(scenario.model, energies, t, order, Formula::ShortPulse,
                                               fmt::format("excited_t{}", number_tag(units::au_to_fs(t)))));
  }
  const auto path = out_dir / fmt::format("{}_spectra.dat", prefix);
  io::export_spectrum(path, curves, base_metadata(scenario, "spectrum"));
  return {path};
}

std::vector<std::filesystem::path> write_density_frames(const Scenario& scenario, const std::vector<double>& times,
                                                        const std::filesystem::path& out_dir,
                                                        const std::string& prefix) {
  std::filesystem::create_directories(out_dir);
  const auto& orbitals = *scenario.orbitals;
  const auto spec = default_density_grid(orbitals.atoms(),
                                         units::angstrom_to_bohr(scenario.config.outputs.density_padding_angstrom),
                                         units::angstrom_to_bohr(scenario.config.outputs.density_spacing_angstrom));
  const DensityEvaluator ev(scenario.model.wave_packet(), orbitals, spec, scenario.config.threads);
  std::vector<std::filesystem::path> out;
  for (double t : times) {
    const DensityFrame f = ev.frame(t);
    const auto path = out_dir / fmt::format("{}_density_t{}.cube", prefix, number_tag(units::au_to_fs(t)));
    io::write_cube(path, f.grid, orbitals.atoms(), fmt::format("attopmm density change, t = {:.6f} fs",
                                                               units::au_to_fs(t)),
                   fmt::format("config {} positive {:.8e} negative {:.8e}", io::config_digest(scenario.config),
                               f.positive_charge, f.negative_charge));
    out.push_back(path);
  }
  return out;
}

std::vector<std::filesystem::path> reproduce_figure(const Scenario& scenario, const std::string& name,
                                                    const std::filesystem::path& out_dir,
                                                    const FigureRequest& request) {
  const int grid = request.grid.value_or(scenario.config.outputs.pmm_grid);
  const auto times = request.probe_times.value_or(scenario.probe_times());
  const SpectralModel model = request.duration ? scenario.model.with_duration(*request.duration) : scenario.model;

  if (name == "fig2") return write_density_frames(scenario, times, out_dir, "fig2");
  if (name == "fig3") {
    const auto t = request.probe_times ? *request.probe_times : std::vector<double>{0.0};
    return write_spectra(scenario, t, true, out_dir, "fig3");
  }
  if (name == "fig4") {
    const auto e = request.energies.value_or(std::vector<double>{units::ev_to_hartree(99.0)});
    return write_pmm_series(model, scenario, e, times, grid, Formula::ShortPulse, 0.0, 1, out_dir, "fig4");
  }
  if (name == "fig5") {
    const auto e = request.energies.value_or(std::vector<double>{units::ev_to_hartree(90.0), units::ev_to_hartree(93.0),
                                                                 units::ev_to_hartree(96.0),
                                                                 units::ev_to_hartree(99.0)});
    return write_pmm_series(model, scenario, e, times, grid, Formula::ShortPulse, 0.0, 1, out_dir, "fig5");
  }
  if (name == "fig6") {
    const auto e = request.energies.value_or(std::vector<double>{units::ev_to_hartree(99.0)});
    const auto durations = request.duration ? std::vector<double>{*request.duration} : scenario.durations();
    const double width = units::ev_to_hartree(scenario.config.outputs.averaging_width_ev);
    std::vector<std::filesystem::path> out;
    for (double d : durations) {
      auto files = write_pmm_series(scenario.model.with_duration(d), scenario, e, times, grid,
                                    Formula::FiniteDuration, width, scenario.config.outputs.averaging_samples,
                                    out_dir, "fig6");
      out.insert(out.end(), files.begin(), files.end());
    }
    return out;
  }
  throw Error(ErrorKind::InvalidArgument, fmt::format("unknown figure '{}'", name));
}

}  // namespace attopmm
