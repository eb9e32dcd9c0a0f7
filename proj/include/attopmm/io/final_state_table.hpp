#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "attopmm/states.hpp"
#include "attopmm/units.hpp"

namespace attopmm::io {

enum class CiNormalization { AsPrinted, Renormalize };

/// Context for checking a table's Ω column.
struct OmegaCheck {
  double photon_energy = 0.0;  // hartree
  double mean_energy = 0.0;    // hartree
  double tolerance = units::ev_to_hartree(0.05);
};

/// Tab-separated final-state table. Columns: F, E_F (eV), Ω_F (eV or "-"),
/// then one column per CSF term "coef holes[/particle][:udu|:uud]", e.g.
/// "-0.95 H", "-0.83 H,H/L", "0.5 H-1,H/L:udu". Lines starting with '#' and
/// blank lines are ignored.
FinalStateTable parse_final_state_table(const std::string& text, int n_occupied, int basis_size,
                                        CiNormalization normalization = CiNormalization::AsPrinted,
                                        std::optional<OmegaCheck> check = std::nullopt,
                                        std::vector<std::string>* warnings = nullptr);

FinalStateTable read_final_state_table(const std::filesystem::path& path, int n_occupied, int basis_size,
                                       CiNormalization normalization = CiNormalization::AsPrinted,
                                       std::optional<OmegaCheck> check = std::nullopt,
                                       std::vector<std::string>* warnings = nullptr);

/// One CSF term in table syntax.
CsfTerm parse_csf_term(const std::string& text, int n_occupied, int basis_size);

}  // namespace attopmm::io
