#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "attopmm/density.hpp"
#include "attopmm/error.hpp"
#include "attopmm/figures.hpp"
#include "attopmm/io/config.hpp"
#include "attopmm/scenario.hpp"
#include "attopmm/units.hpp"

#ifndef ATTOPMM_DATA_DIR
#define ATTOPMM_DATA_DIR "data"
#endif

namespace {

using namespace attopmm;

struct Options {
  std::string config = std::string(ATTOPMM_DATA_DIR) + "/pentacene.json";
  std::string out = "out";
  std::vector<double> tp;
  std::vector<double> energy;
  std::optional<double> tau;
  std::optional<int> grid;
  std::optional<int> threads;
  bool validate_only = false;
  int final_index = 1;
  std::string figure;
  bool long_pulse = false;
};

void add_common(CLI::App* app, Options& o) {
  app->add_option("--config", o.config, "scenario config (JSON)");
  app->add_option("--out", o.out, "output directory");
  app->add_option("--tp", o.tp, "probe arrival times, fs")->delimiter(',');
  app->add_option("--energy", o.energy, "photoelectron energies, eV")->delimiter(',');
  app->add_option("--tau", o.tau, "probe duration, fs");
  app->add_option("--grid", o.grid, "PMM raster points per axis")->check(CLI::Range(2, 4001));
  app->add_option("--threads", o.threads, "worker threads")->check(CLI::Range(1, 1024));
  app->add_flag("--validate", o.validate_only, "check the configuration and exit");
}

io::ScenarioConfig resolve_config(const Options& o) {
  io::ScenarioConfig c = io::load_config(o.config);
  if (o.threads) c.threads = *o.threads;
  if (o.tau) c.pulse.duration_fs = *o.tau;
  if (o.grid) c.outputs.pmm_grid = *o.grid;
  if (!o.tp.empty()) c.pulse.probe_times_fs = o.tp;
  if (!o.energy.empty()) c.outputs.energies_ev = o.energy;
  io::validate_config(c);
  return c;
}

void log_run(const Scenario& s) {
  const auto& m = s.model;
  std::cerr << fmt::format("mean energy <E> = {:.6f} eV\n", units::hartree_to_ev(m.wave_packet().mean_energy()));
  for (const auto& ch : m.channels()) {
    std::cerr << fmt::format("  F{}: E_F = {:.4f} eV, Omega_F = {:.4f} eV{}\n", ch.final_index,
                             units::hartree_to_ev(ch.final_energy), units::hartree_to_ev(ch.omega),
                             ch.time_dependent ? ", time-dependent" : "");
  }
  for (double e : s.pmm_energies()) {
    const auto active = m.active_channels(e, Formula::ShortPulse);
    std::string skipped;
    for (std::size_t c = 0; c < m.channels().size(); ++c) {
      if (std::find(active.begin(), active.end(), c) == active.end()) {
        skipped += fmt::format(" F{}", m.channels()[c].final_index);
      }
    }
    std::cerr << fmt::format("  truncated at {:.2f} eV:{}\n", units::hartree_to_ev(e), skipped.empty() ? " none" : skipped);
  }
  for (const auto& w : s.warnings) std::cerr << "warning: " << w << "\n";
}

void print_summary(const Scenario& s) {
  const auto& m = s.model;
  std::cout << fmt::format("config ok ({})\n", io::config_digest(s.config));
  if (auto t = m.wave_packet().beat_period()) {
    std::cout << fmt::format("beat period T = {:.4f} fs\n", units::au_to_fs(*t));
  }
  std::cout << fmt::format("mean energy <E> = {:.6f} eV\n", units::hartree_to_ev(m.wave_packet().mean_energy()));
  std::cout << fmt::format("probe: omega = {:.3f} eV, tau = {:.4f} fs, envelope FWHM {:.3f} eV (probability), "
                           "{:.3f} eV (amplitude)\n",
                           units::hartree_to_ev(m.pulse().photon_energy), units::au_to_fs(m.pulse().duration),
                           units::hartree_to_ev(envelope_fwhm_short(m.pulse().duration)),
                           units::hartree_to_ev(envelope_fwhm_long(m.pulse().duration)));
  std::cout << "F\tE_F[eV]\tOmega_F[eV]\tOmega_table[eV]\tmembers\ttime-dependent\n";
  for (std::size_t c = 0; c < m.channels().size(); ++c) {
    const auto& ch = m.channels()[c];
    const auto& row = m.finals().rows[c];
    std::cout << fmt::format("{}\t{:.4f}\t{:.4f}\t{}\t{}\t{}\n", ch.final_index, units::hartree_to_ev(ch.final_energy),
                             units::hartree_to_ev(ch.omega),
                             row.tabulated_omega ? fmt::format("{:.4f}", units::hartree_to_ev(*row.tabulated_omega))
                                                 : std::string("-"),
                             ch.dyson.contributing_members(), ch.time_dependent ? "yes" : "no");
  }
  for (const auto& w : s.warnings) std::cout << "warning: " << w << "\n";
}

int run_dyson(const Scenario& s, const Options& o) {
  const auto& m = s.model;
  const auto times = o.tp.empty() ? std::vector<double>{0.0} : s.probe_times();
  const SpectralChannel* channel = nullptr;
  for (const auto& ch : m.channels()) {
    if (ch.final_index == o.final_index) channel = &ch;
  }
  if (!channel) throw Error(ErrorKind::InvalidArgument, fmt::format("no final state {}", o.final_index));
  const int n_occ = m.orbitals().n_occupied();
  for (double t : times) {
    const DysonOrbital d = assemble_dyson(channel->dyson, m.wave_packet(), t);
    std::cout << fmt::format("F{} at t_p = {:.4f} fs, norm {:.12f}\n", o.final_index, units::au_to_fs(t), d.norm());
    for (std::size_t member = 0; member < channel->dyson.per_member.size(); ++member) {
      const auto phase = wave_packet_phase(m.wave_packet(), member, t);
      for (const auto& c : channel->dyson.per_member[member]) {
        const auto v = phase * c.coefficient;
        std::cout << fmt::format("  member {} {} {}: {:+.12f} {:+.12f}i  |{:.12f}|\n", member + 1,
                                 OrbitalLabel::from_index(c.orbital, n_occ).str(), spin_char(c.spin), v.real(),
                                 v.imag(), std::abs(v));
      }
    }
  }
  return 0;
}

void report(const std::filesystem::path& p) { std::cout << p.string() << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"attosecond photoelectron momentum maps"};
  app.require_subcommand(1);
  Options o;
  auto* pmm = app.add_subcommand("pmm", "constant-energy momentum maps");
  auto* spectrum = app.add_subcommand("spectrum", "angle-integrated spectra");
  auto* density = app.add_subcommand("density", "electron-density change as cube files");
  auto* dyson = app.add_subcommand("dyson", "Dyson-orbital coefficients of one final state");
  auto* validate = app.add_subcommand("validate", "check a configuration and print derived quantities");
  auto* figure = app.add_subcommand("reproduce-figure", "write the data of one figure");
  for (auto* sub : {pmm, spectrum, density, dyson, validate, figure}) add_common(sub, o);
  pmm->add_flag("--long-pulse", o.long_pulse, "member-resolved envelopes");
  dyson->add_option("--final", o.final_index, "final-state index");
  figure->add_option("name", o.figure, "fig2 ... fig6")->required()->check(CLI::IsMember(figure_names()));

  CLI11_PARSE(app, argc, argv);

  try {
    const io::ScenarioConfig config = resolve_config(o);
    const Scenario s = build_scenario(config);
    if (validate->parsed()) {
      print_summary(s);
      return 0;
    }
    if (o.validate_only) {
      std::cout << fmt::format("config ok ({})\n", io::config_digest(s.config));
      return 0;
    }
    if (dyson->parsed()) return run_dyson(s, o);
    log_run(s);
    const std::filesystem::path out(o.out);
    if (pmm->parsed()) {
      const double width = 0.0;
      for (const auto& p : write_pmm_series(s.model, s, s.pmm_energies(), s.probe_times(), config.outputs.pmm_grid,
                                            o.long_pulse ? Formula::FiniteDuration : Formula::ShortPulse, width, 1,
                                            out, "attopmm")) {
        report(p);
      }
    } else if (spectrum->parsed()) {
      const auto times = o.tp.empty() ? std::vector<double>{0.0} : s.probe_times();
      for (const auto& p : write_spectra(s, times, s.ground.has_value(), out, "attopmm")) report(p);
    } else if (density->parsed()) {
      for (const auto& p : write_density_frames(s, s.probe_times(), out, "attopmm")) report(p);
    } else if (figure->parsed()) {
      FigureRequest req;
      if (o.grid) req.grid = *o.grid;
      if (!o.tp.empty()) req.probe_times = s.probe_times();
      if (!o.energy.empty()) req.energies = s.pmm_energies();
      if (o.tau) req.duration = units::fs_to_au(*o.tau);
      for (const auto& p : reproduce_figure(s, o.figure, out, req)) report(p);
    }
    return 0;
  } catch (const Error& e) {
    nlohmann::json rec{{"error", to_string(e.kind())}, {"message", e.what()}};
    if (e.line() > 0) rec["line"] = e.line();
    std::cerr << rec.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    nlohmann::json rec{{"error", "Internal"}, {"message", e.what()}};
    std::cerr << rec.dump() << "\n";
    return 3;
  }
}
