#pragma once

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "attopmm/determinant.hpp"

namespace attopmm {

/// Genealogical coupling of three open shells (hole 1, hole 2, particle) to a
/// doublet with M = +1/2: `Udu` couples the two holes to a singlet first,
/// `Uud` to a triplet first.
enum class SpinCoupling { None, Udu, Uud };

std::string to_string(SpinCoupling c);

struct ExpansionTerm {
  double coefficient = 0.0;
  SlaterDeterminant det;
};

/// Spin-adapted configuration stored as an explicit determinant expansion.
/// Orbital indices refer to an energy-ordered basis of `basis_size` orbitals
/// whose lowest `n_occupied` are doubly occupied in the reference.
struct ConfigurationStateFunction {
  std::vector<int> holes;
  std::vector<int> particles;
  double total_spin = 0.0;
  double spin_projection = 0.0;
  SpinCoupling coupling = SpinCoupling::None;
  std::vector<ExpansionTerm> expansion;
  int n_occupied = 0;
  int basis_size = 0;

  int electron_count() const { return expansion.empty() ? 0 : expansion.front().det.electron_count(); }
  std::string name() const;
};

/// Checks normalization (1e-12) and common electron count; throws otherwise.
void validate(const ConfigurationStateFunction& csf);

/// Closed-shell reference determinant.
ConfigurationStateFunction reference_configuration(int n_occupied, int basis_size);
/// Singlet single excitation (a†_{p↑}a_{h↑} + a†_{p↓}a_{h↓})|ref⟩/√2.
ConfigurationStateFunction singlet_excitation(int n_occupied, int basis_size, int hole, int particle);
/// One-hole doublet a_{h,removed}|ref⟩; removing ↓ gives M = +1/2.
ConfigurationStateFunction doublet_hole(int n_occupied, int basis_size, int hole, Spin removed = Spin::Down);
/// Two holes and one particle, doublet M = +1/2. For hole1 == hole2 the
/// state is a†_{p↑}a_{h↓}a_{h↑}|ref⟩ and `coupling` must be None; otherwise
/// the three open shells (hole1, hole2, particle) carry the genealogical
/// spin function selected by `coupling`.
ConfigurationStateFunction doublet_two_hole_particle(int n_occupied, int basis_size, int hole1, int hole2,
                                                     int particle, SpinCoupling coupling);

struct CsfTerm {
  double coefficient = 0.0;
  ConfigurationStateFunction csf;
};

struct ElectronicState {
  double energy = 0.0;  // hartree
  std::vector<CsfTerm> expansion;

  int electron_count() const;
  int basis_size() const;
  int n_occupied() const;
  double weight() const;  // Σ c²
  ElectronicState renormalized() const;
};

/// Checks Σc² ≤ 1 + 1e-6, shared electron count and a common orbital basis.
void validate(const ElectronicState& state);

struct WavePacketMember {
  std::complex<double> coefficient;
  double energy = 0.0;  // hartree
  ElectronicState state;
};

/// Coherent superposition Σ_I C_I e^{-i E_I (t - t0)} |Φ_I⟩. Immutable.
class WavePacket {
 public:
  WavePacket(std::vector<WavePacketMember> members, double t0);

  const std::vector<WavePacketMember>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  double t0() const { return t0_; }
  double mean_energy() const { return mean_energy_; }
  /// 2π/(E_max - E_min) for a two-level beat; nullopt for a single member.
  std::optional<double> beat_period() const;

 private:
  std::vector<WavePacketMember> members_;
  double t0_ = 0.0;
  double mean_energy_ = 0.0;
};

/// C_I exp(-i E_I (t - t0)), atomic units.
std::complex<double> wave_packet_phase(const WavePacket& wp, std::size_t member, double t);

/// Probe pulse, atomic units. `duration` is the FWHM of the intensity profile.
struct ProbePulse {
  double photon_energy = 0.0;
  Eigen::Vector3d polarization = Eigen::Vector3d::UnitY();
  double duration = 0.0;
  double peak_intensity = 1.0;
  double arrival_time = 0.0;
};

void validate(const ProbePulse& pulse);

struct FinalState {
  int index = 0;
  ElectronicState state;
  std::optional<double> tabulated_omega;  // hartree, as listed in the table
};

struct FinalStateTable {
  std::vector<FinalState> rows;

  const FinalState& by_index(int index) const;
};

}  // namespace attopmm
