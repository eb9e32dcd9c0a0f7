#include "attopmm/csf_algebra.hpp"

#include <cmath>
#include <map>

#include "attopmm/error.hpp"

namespace attopmm {

namespace {

using ChannelKey = std::pair<int, int>;  // (orbital, spin)

std::map<SlaterDeterminant, double> flatten(const ElectronicState& state) {
  std::map<SlaterDeterminant, double> out;
  for (const auto& t : state.expansion) {
    for (const auto& e : t.csf.expansion) out[e.det] += t.coefficient * e.coefficient;
  }
  return out;
}

void check_compatible(const ElectronicState& final_state, const ConfigurationStateFunction& initial) {
  if (final_state.expansion.empty()) throw Error(ErrorKind::InvalidArgument, "final state is empty");
  if (final_state.basis_size() != initial.basis_size || final_state.n_occupied() != initial.n_occupied) {
    throw Error(ErrorKind::BasisMismatch, "final and initial states use different orbital bases");
  }
  if (final_state.electron_count() + 1 != initial.electron_count()) {
    throw Error(ErrorKind::InvalidArgument, "final state must have exactly one electron fewer");
  }
}

std::vector<OverlapChannel> to_channels(const std::map<ChannelKey, double>& acc) {
  std::vector<OverlapChannel> out;
  for (const auto& [key, c] : acc) {
    if (std::abs(c) < kDysonPruneThreshold) continue;
    out.push_back({key.first, static_cast<Spin>(key.second), c});
  }
  return out;
}

void accumulate(const std::map<SlaterDeterminant, double>& final_dets, const ConfigurationStateFunction& initial,
                double weight, std::map<ChannelKey, double>& acc) {
  for (const auto& term : initial.expansion) {
    for (const SpinOrbital& so : term.det.spin_orbitals()) {
      auto reduced = annihilate(term.det, so.orbital, so.spin);
      auto it = final_dets.find(reduced->det);
      if (it == final_dets.end()) continue;
      acc[{so.orbital, static_cast<int>(so.spin)}] += weight * term.coefficient * reduced->sign * it->second;
    }
  }
}

}  // namespace

std::vector<OverlapChannel> csf_overlap_map(const ElectronicState& final_state,
                                            const ConfigurationStateFunction& initial) {
  check_compatible(final_state, initial);
  std::map<ChannelKey, double> acc;
  accumulate(flatten(final_state), initial, 1.0, acc);
  return to_channels(acc);
}

std::vector<OverlapChannel> state_overlap_map(const ElectronicState& final_state, const ElectronicState& initial) {
  const auto final_dets = flatten(final_state);
  std::map<ChannelKey, double> acc;
  for (const auto& t : initial.expansion) {
    check_compatible(final_state, t.csf);
    accumulate(final_dets, t.csf, t.coefficient, acc);
  }
  return to_channels(acc);
}

std::complex<double> DysonOrbital::coefficient(int orbital, Spin spin) const {
  for (const auto& t : terms) {
    if (t.orbital == orbital && t.spin == spin) return t.coefficient;
  }
  return {};
}

double DysonOrbital::norm() const {
  double s = 0.0;
  for (const auto& t : terms) s += std::norm(t.coefficient);
  return std::sqrt(s);
}

int DysonDecomposition::contributing_members() const {
  int n = 0;
  for (const auto& m : per_member) n += m.empty() ? 0 : 1;
  return n;
}

DysonDecomposition decompose_dyson(const ElectronicState& final_state, const WavePacket& wp, int final_index) {
  DysonDecomposition d;
  d.final_index = final_index;
  for (const auto& m : wp.members()) d.per_member.push_back(state_overlap_map(final_state, m.state));
  return d;
}

DysonOrbital assemble_dyson(const DysonDecomposition& decomposition, const WavePacket& wp, double probe_time) {
  if (decomposition.per_member.size() != wp.size()) {
    throw Error(ErrorKind::InvalidArgument, "Dyson decomposition does not match the wave packet");
  }
  std::map<ChannelKey, std::complex<double>> acc;
  for (std::size_t i = 0; i < wp.size(); ++i) {
    const auto phase = wave_packet_phase(wp, i, probe_time);
    for (const auto& ch : decomposition.per_member[i]) {
      acc[{ch.orbital, static_cast<int>(ch.spin)}] += phase * ch.coefficient;
    }
  }
  DysonOrbital out;
  out.final_index = decomposition.final_index;
  out.probe_time = probe_time;
  for (const auto& [key, c] : acc) {
    if (std::abs(c) < kDysonPruneThreshold) continue;
    out.terms.push_back({c, key.first, static_cast<Spin>(key.second)});
  }
  return out;
}

DysonOrbital assemble_dyson(const ElectronicState& final_state, const WavePacket& wp, double probe_time,
                            int final_index) {
  return assemble_dyson(decompose_dyson(final_state, wp, final_index), wp, probe_time);
}

}  // namespace attopmm
