#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "attopmm/orbital.hpp"
#include "attopmm/volumetric_grid.hpp"

namespace attopmm::io {

struct CubeFile {
  std::string comment1;
  std::string comment2;
  VolumetricGrid<double> grid;  // bohr
  std::vector<Atom> atoms;
  std::vector<double> nuclear_charges;
};

/// Gaussian cube layout: axes always written in bohr, values %13.5E, six per
/// line, a new line after each innermost run.
void write_cube(const std::filesystem::path& path, const VolumetricGrid<double>& grid, const std::vector<Atom>& atoms,
                const std::string& comment1 = "attopmm", const std::string& comment2 = "");
std::string format_cube(const VolumetricGrid<double>& grid, const std::vector<Atom>& atoms,
                        const std::string& comment1 = "attopmm", const std::string& comment2 = "");

/// Reads a cube file; Å-valued axes (negative counts) are converted to bohr.
/// Parse errors carry the 1-based line number.
CubeFile read_cube(const std::filesystem::path& path);
CubeFile parse_cube(const std::string& text);

}  // namespace attopmm::io
