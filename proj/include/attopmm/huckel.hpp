#pragma once

#include <array>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "attopmm/orbital.hpp"

namespace attopmm {

/// Carbon skeleton of a planar π system. Positions in Å; the molecular plane
/// is y = 0.
struct PiSystemGraph {
  std::vector<Eigen::Vector3d> carbons;
  std::vector<Eigen::Vector3d> hydrogens;
  std::vector<std::pair<int, int>> bonds;  // i < j
  double onsite = 0.0;                     // α
  double hopping = -1.0;                   // β

  int size() const { return static_cast<int>(carbons.size()); }
  Eigen::MatrixXd hamiltonian() const;
  bool connected() const;
};

/// Pentacene: five fused hexagons along x, centred at the origin.
PiSystemGraph build_pentacene_graph(double cc_bond = 1.40, double ch_bond = 1.09);

struct HuckelSolution {
  Eigen::VectorXd energies;             // ascending, degeneracies ordered as documented
  Eigen::MatrixXd vectors;              // site amplitudes, one column per level
  std::vector<std::array<int, 2>> parity;  // site-vector signs under x→-x, z→-z (0 if not a symmetry)
};

/// Symmetry-blocked diagonalisation. Inside a degenerate level the orbital
/// odd under x→-x lies nearer the gap, then the one odd under z→-z. Throws
/// Numeric if a degeneracy remains inside one symmetry block.
HuckelSolution solve_huckel(const PiSystemGraph& graph);

/// π orbitals as p_y Gaussians on the carbons, Löwdin-orthogonalised, labelled
/// H-k / L+k with half the levels occupied.
OrbitalSet huckel_orbitals(const PiSystemGraph& graph, double exponent = 1.0);

}  // namespace attopmm
