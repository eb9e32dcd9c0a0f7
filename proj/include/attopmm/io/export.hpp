#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "attopmm/signal.hpp"

namespace attopmm::io {

/// Provenance lines written as "# key: value" before the data.
using Metadata = std::vector<std::pair<std::string, std::string>>;

/// Rows "q_x q_y value" (Å⁻¹) for valid samples, q_x outer, q_y inner.
std::string format_pmm(const PMM& pmm, const Metadata& metadata);
void export_pmm(const std::filesystem::path& path, const PMM& pmm, const Metadata& metadata);

/// One block per curve, each introduced by "# curve: <tag>", rows "ε_e value" (eV).
std::string format_spectra(const std::vector<Spectrum>& spectra, const Metadata& metadata);
void export_spectrum(const std::filesystem::path& path, const std::vector<Spectrum>& spectra,
                     const Metadata& metadata);

struct TableFile {
  std::map<std::string, std::string> metadata;
  /// Curve tag -> rows; PMM files use the empty tag.
  std::map<std::string, std::vector<std::vector<double>>> blocks;
};

TableFile read_table(const std::filesystem::path& path);
TableFile parse_table(const std::string& text);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace attopmm::io
