#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "attopmm/io/export.hpp"
#include "attopmm/scenario.hpp"

namespace attopmm {

/// Overrides for a figure run; unset fields fall back to the scenario.
struct FigureRequest {
  std::optional<int> grid;
  std::optional<std::vector<double>> probe_times;  // atomic units
  std::optional<std::vector<double>> energies;     // hartree
  std::optional<double> duration;                  // atomic units
};

inline const std::vector<std::string>& figure_names() {
  static const std::vector<std::string> names{"fig2", "fig3", "fig4", "fig5", "fig6"};
  return names;
}

/// Writes the data files of one figure into `out_dir`; returns their paths.
std::vector<std::filesystem::path> reproduce_figure(const Scenario& scenario, const std::string& name,
                                                    const std::filesystem::path& out_dir,
                                                    const FigureRequest& request = {});

/// Building blocks shared with the command-line subcommands.
io::Metadata base_metadata(const Scenario& scenario, const std::string& what);

std::vector<std::filesystem::path> write_pmm_series(const SpectralModel& model, const Scenario& scenario,
                                                    const std::vector<double>& energies,
                                                    const std::vector<double>& times, int grid, Formula formula,
                                                    double averaging_width, int averaging_samples,
                                                    const std::filesystem::path& out_dir, const std::string& prefix);

std::vector<std::filesystem::path> write_spectra(const Scenario& scenario, const std::vector<double>& times,
                                                 bool include_ground, const std::filesystem::path& out_dir,
                                                 const std::string& prefix);

std::vector<std::filesystem::path> write_density_frames(const Scenario& scenario, const std::vector<double>& times,
                                                        const std::filesystem::path& out_dir,
                                                        const std::string& prefix);

}  // namespace attopmm
