#pragma once

#include <complex>
#include <vector>

#include "attopmm/determinant.hpp"
#include "attopmm/states.hpp"

namespace attopmm {

// Sign convention: determinants are creation strings in ascending spin-orbital
// order (orbital index, ↑ before ↓); every CSF and final-state sign is
// relative to that order. Overall signs of individual final states are
// therefore arbitrary; only magnitudes and relative phases within one final
// state carry meaning.

inline constexpr double kDysonPruneThreshold = 1e-14;

struct OverlapChannel {
  int orbital = 0;
  Spin spin = Spin::Up;
  double coefficient = 0.0;
};

/// ⟨final| a_{o,σ} |initial⟩ for every spin-orbital channel with a nonzero
/// result, ordered by (orbital, spin).
std::vector<OverlapChannel> csf_overlap_map(const ElectronicState& final_state,
                                            const ConfigurationStateFunction& initial);

/// Same, for a full CI initial state.
std::vector<OverlapChannel> state_overlap_map(const ElectronicState& final_state, const ElectronicState& initial);

struct DysonTerm {
  std::complex<double> coefficient;
  int orbital = 0;
  Spin spin = Spin::Up;
};

/// Dyson orbital as a combination of molecular orbitals times spin states.
struct DysonOrbital {
  std::vector<DysonTerm> terms;
  int final_index = 0;
  double probe_time = 0.0;

  std::complex<double> coefficient(int orbital, Spin spin) const;
  double norm() const;
};

/// Time-independent pieces ⟨Φ_F| a |Φ_I⟩ for each wave-packet member I (no
/// C_I, no phase). The member-resolved Dyson orbital is
/// wave_packet_phase(I, t) times `per_member[I]`.
struct DysonDecomposition {
  int final_index = 0;
  std::vector<std::vector<OverlapChannel>> per_member;

  /// Number of members with at least one nonzero channel.
  int contributing_members() const;
};

DysonDecomposition decompose_dyson(const ElectronicState& final_state, const WavePacket& wp, int final_index = 0);

DysonOrbital assemble_dyson(const DysonDecomposition& decomposition, const WavePacket& wp, double probe_time);
DysonOrbital assemble_dyson(const ElectronicState& final_state, const WavePacket& wp, double probe_time,
                            int final_index = 0);

}  // namespace attopmm
