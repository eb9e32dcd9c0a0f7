#pragma once

#include <array>
#include <vector>

#include <Eigen/Core>

#include "attopmm/orbital.hpp"
#include "attopmm/states.hpp"
#include "attopmm/volumetric_grid.hpp"

namespace attopmm {

/// Axis-aligned sampling box, bohr.
struct DensityGridSpec {
  Eigen::Vector3d origin = Eigen::Vector3d::Zero();
  double spacing = 0.0;
  std::array<int, 3> counts{0, 0, 0};
};

/// Bounding box of the atoms padded on every side, centred on the box centre
/// with an odd number of points per axis (so the centre is a sample).
DensityGridSpec default_density_grid(const std::vector<Atom>& atoms, double padding, double spacing);

struct DensityFrame {
  VolumetricGrid<double> grid;
  double time = 0.0;
  double positive_charge = 0.0;  // ∫ max(ρ, 0)
  double negative_charge = 0.0;  // ∫ min(ρ, 0)

  double net_charge() const { return positive_charge + negative_charge; }
};

/// Orbitals and coefficients of a packet C1|Φ_H^L⟩ + C2(a|Φ_H^{L'}⟩ + b|Φ_{H'}^L⟩)
/// of singlet single excitations.
struct TwoStateExcitation {
  int homo = 0, homo_partner = 0, lumo = 0, lumo_partner = 0;  // basis indices H, H', L, L'
  std::size_t first = 0, second = 1;                          // member positions
  double first_sign = 1.0;                                    // CSF coefficient within the first member
  double a = 0.0, b = 0.0;
};

/// Throws InvalidArgument when the packet has another form.
TwoStateExcitation detect_two_state_excitation(const WavePacket& wp);

/// Evaluates the excited-minus-ground density on a fixed grid. Orbital values
/// are sampled once at construction; frames for any t are then cheap.
class DensityEvaluator {
 public:
  DensityEvaluator(const WavePacket& wp, const OrbitalSet& orbitals, const DensityGridSpec& spec, int threads = 1);

  DensityFrame frame(double t) const;
  const TwoStateExcitation& structure() const { return structure_; }

 private:
  WavePacket wp_;
  TwoStateExcitation structure_;
  DensityGridSpec spec_;
  int threads_;
  std::vector<double> h_, h2_, l_, l2_;
};

DensityFrame density_change(const WavePacket& wp, const OrbitalSet& orbitals, const DensityGridSpec& spec, double t,
                            int threads = 1);

std::vector<DensityFrame> density_timeseries(const WavePacket& wp, const OrbitalSet& orbitals,
                                             const DensityGridSpec& spec, const std::vector<double>& times,
                                             int threads = 1);

}  // namespace attopmm
