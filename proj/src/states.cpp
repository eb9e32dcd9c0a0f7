#include "attopmm/states.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "attopmm/error.hpp"
#include "attopmm/orbital.hpp"

namespace attopmm {

namespace {

struct Op {
  bool creation;
  int orbital;
  Spin spin;
};

// Applies ops right-to-left (ops.back() acts first).
std::optional<SignedDeterminant> apply_string(const SlaterDeterminant& det, const std::vector<Op>& ops) {
  SignedDeterminant cur{1, det};
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    auto next = it->creation ? create(cur.det, it->orbital, it->spin) : annihilate(cur.det, it->orbital, it->spin);
    if (!next) return std::nullopt;
    cur = SignedDeterminant{cur.sign * next->sign, next->det};
  }
  return cur;
}

void check_orbital(int idx, int basis_size, const char* what) {
  if (idx < 0 || idx >= basis_size) {
    throw Error(ErrorKind::InvalidArgument, std::string(what) + " orbital index out of range");
  }
}

ConfigurationStateFunction make_csf(int n_occupied, int basis_size) {
  if (n_occupied < 0 || n_occupied > basis_size || basis_size > 32) {
    throw Error(ErrorKind::InvalidArgument, "invalid orbital basis dimensions");
  }
  ConfigurationStateFunction csf;
  csf.n_occupied = n_occupied;
  csf.basis_size = basis_size;
  return csf;
}

}  // namespace

std::string to_string(SpinCoupling c) {
  switch (c) {
    case SpinCoupling::None: return "";
    case SpinCoupling::Udu: return "udu";
    case SpinCoupling::Uud: return "uud";
  }
  return "";
}

std::string ConfigurationStateFunction::name() const {
  std::string s;
  for (std::size_t i = 0; i < holes.size(); ++i) {
    if (i) s += ',';
    s += OrbitalLabel::from_index(holes[i], n_occupied).str();
  }
  if (holes.empty()) s = "ref";
  if (!particles.empty()) {
    s += "/";
    for (std::size_t i = 0; i < particles.size(); ++i) {
      if (i) s += ',';
      s += OrbitalLabel::from_index(particles[i], n_occupied).str();
    }
  }
  if (coupling != SpinCoupling::None) s += ":" + to_string(coupling);
  return s;
}

void validate(const ConfigurationStateFunction& csf) {
  if (csf.expansion.empty()) throw Error(ErrorKind::InvalidArgument, "CSF has an empty expansion");
  double norm = 0.0;
  const int n = csf.expansion.front().det.electron_count();
  for (const auto& t : csf.expansion) {
    norm += t.coefficient * t.coefficient;
    if (t.det.electron_count() != n) throw Error(ErrorKind::InvalidArgument, "CSF determinants differ in electron count");
    if (t.det.highest_orbital() >= csf.basis_size) throw Error(ErrorKind::BasisMismatch, "CSF determinant outside orbital basis");
  }
  if (std::abs(norm - 1.0) > 1e-12) throw Error(ErrorKind::InvalidArgument, "CSF expansion is not normalized");
}

ConfigurationStateFunction reference_configuration(int n_occupied, int basis_size) {
  auto csf = make_csf(n_occupied, basis_size);
  csf.expansion.push_back({1.0, SlaterDeterminant::closed_shell(n_occupied)});
  validate(csf);
  return csf;
}

ConfigurationStateFunction singlet_excitation(int n_occupied, int basis_size, int hole, int particle) {
  auto csf = make_csf(n_occupied, basis_size);
  check_orbital(hole, n_occupied, "hole");
  check_orbital(particle, basis_size, "particle");
  if (particle < n_occupied) throw Error(ErrorKind::InvalidArgument, "particle must be a virtual orbital");
  csf.holes = {hole};
  csf.particles = {particle};
  const auto ref = SlaterDeterminant::closed_shell(n_occupied);
  const double w = 1.0 / std::sqrt(2.0);
  for (Spin s : {Spin::Up, Spin::Down}) {
    auto r = apply_string(ref, {{true, particle, s}, {false, hole, s}});
    csf.expansion.push_back({w * r->sign, r->det});
  }
  validate(csf);
  return csf;
}

ConfigurationStateFunction doublet_hole(int n_occupied, int basis_size, int hole, Spin removed) {
  auto csf = make_csf(n_occupied, basis_size);
  check_orbital(hole, n_occupied, "hole");
  csf.holes = {hole};
  csf.total_spin = 0.5;
  csf.spin_projection = removed == Spin::Down ? 0.5 : -0.5;
  auto r = apply_string(SlaterDeterminant::closed_shell(n_occupied), {{false, hole, removed}});
  csf.expansion.push_back({static_cast<double>(r->sign), r->det});
  validate(csf);
  return csf;
}

ConfigurationStateFunction doublet_two_hole_particle(int n_occupied, int basis_size, int hole1, int hole2,
                                                     int particle, SpinCoupling coupling) {
  auto csf = make_csf(n_occupied, basis_size);
  check_orbital(hole1, n_occupied, "hole");
  check_orbital(hole2, n_occupied, "hole");
  check_orbital(particle, basis_size, "particle");
  if (particle < n_occupied) throw Error(ErrorKind::InvalidArgument, "particle must be a virtual orbital");
  csf.holes = {hole1, hole2};
  csf.particles = {particle};
  csf.total_spin = 0.5;
  csf.spin_projection = 0.5;
  csf.coupling = coupling;
  const auto ref = SlaterDeterminant::closed_shell(n_occupied);

  if (hole1 == hole2) {
    if (coupling != SpinCoupling::None) {
      throw Error(ErrorKind::InvalidArgument, "doubly emptied orbital admits no coupling tag");
    }
    auto r = apply_string(ref, {{true, particle, Spin::Up}, {false, hole1, Spin::Down}, {false, hole1, Spin::Up}});
    csf.expansion.push_back({static_cast<double>(r->sign), r->det});
    validate(csf);
    return csf;
  }
  if (coupling == SpinCoupling::None) {
    throw Error(ErrorKind::InvalidArgument, "three open shells need a udu/uud coupling tag");
  }

  // Spin patterns over (hole1, hole2, particle).
  struct Pattern {
    Spin s1, s2, s3;
    double c;
  };
  std::vector<Pattern> patterns;
  const Spin u = Spin::Up, d = Spin::Down;
  if (coupling == SpinCoupling::Udu) {
    const double w = 1.0 / std::sqrt(2.0);
    patterns = {{u, d, u, w}, {d, u, u, -w}};
  } else {
    const double w = 1.0 / std::sqrt(6.0);
    patterns = {{u, u, d, 2.0 * w}, {u, d, u, -w}, {d, u, u, -w}};
  }

  std::vector<SpinOrbital> core;
  for (int o = 0; o < n_occupied; ++o) {
    if (o == hole1 || o == hole2) continue;
    core.push_back({o, u});
    core.push_back({o, d});
  }
  for (const auto& p : patterns) {
    std::vector<SpinOrbital> ordered = core;
    ordered.push_back({hole1, p.s1});
    ordered.push_back({hole2, p.s2});
    ordered.push_back({particle, p.s3});
    auto [sign, det] = SlaterDeterminant::from_ordered(ordered);
    csf.expansion.push_back({p.c * sign, det});
  }
  validate(csf);
  return csf;
}

int ElectronicState::electron_count() const {
  return expansion.empty() ? 0 : expansion.front().csf.electron_count();
}

int ElectronicState::basis_size() const { return expansion.empty() ? 0 : expansion.front().csf.basis_size; }

int ElectronicState::n_occupied() const { return expansion.empty() ? 0 : expansion.front().csf.n_occupied; }

double ElectronicState::weight() const {
  double w = 0.0;
  for (const auto& t : expansion) w += t.coefficient * t.coefficient;
  return w;
}

ElectronicState ElectronicState::renormalized() const {
  ElectronicState out = *this;
  const double w = std::sqrt(weight());
  if (w == 0.0) throw Error(ErrorKind::InvalidArgument, "cannot renormalize an empty state");
  for (auto& t : out.expansion) t.coefficient /= w;
  return out;
}

void validate(const ElectronicState& state) {
  if (state.expansion.empty()) throw Error(ErrorKind::InvalidArgument, "electronic state has no CSFs");
  const int n = state.electron_count();
  const int basis = state.basis_size();
  const int nocc = state.n_occupied();
  for (const auto& t : state.expansion) {
    validate(t.csf);
    if (t.csf.electron_count() != n) throw Error(ErrorKind::InvalidArgument, "CSFs differ in electron count");
    if (t.csf.basis_size != basis || t.csf.n_occupied != nocc) {
      throw Error(ErrorKind::BasisMismatch, "CSFs of one state use different orbital bases");
    }
  }
  if (state.weight() > 1.0 + 1e-6) throw Error(ErrorKind::InvalidArgument, "CI weight exceeds one");
}

WavePacket::WavePacket(std::vector<WavePacketMember> members, double t0) : members_(std::move(members)), t0_(t0) {
  if (members_.empty()) throw Error(ErrorKind::InvalidArgument, "wave packet has no members");
  double norm = 0.0;
  double mean = 0.0;
  for (const auto& m : members_) {
    validate(m.state);
    if (m.state.electron_count() != members_.front().state.electron_count() ||
        m.state.basis_size() != members_.front().state.basis_size()) {
      throw Error(ErrorKind::BasisMismatch, "wave-packet members differ in electron count or basis");
    }
    norm += std::norm(m.coefficient);
    mean += std::norm(m.coefficient) * m.energy;
  }
  if (std::abs(norm - 1.0) > 1e-10) {
    throw Error(ErrorKind::InvalidArgument, "wave-packet populations must sum to one");
  }
  mean_energy_ = mean;
}

std::optional<double> WavePacket::beat_period() const {
  if (members_.size() < 2) return std::nullopt;
  auto [lo, hi] = std::minmax_element(members_.begin(), members_.end(),
                                      [](const auto& a, const auto& b) { return a.energy < b.energy; });
  const double gap = hi->energy - lo->energy;
  if (gap <= 0.0) return std::nullopt;
  return 2.0 * 3.14159265358979323846 / gap;
}

std::complex<double> wave_packet_phase(const WavePacket& wp, std::size_t member, double t) {
  if (member >= wp.size()) throw Error(ErrorKind::InvalidArgument, "wave-packet member index out of range");
  const auto& m = wp.members()[member];
  return m.coefficient * std::polar(1.0, -m.energy * (t - wp.t0()));
}

void validate(const ProbePulse& pulse) {
  if (!(pulse.photon_energy > 0.0)) throw Error(ErrorKind::InvalidArgument, "photon energy must be positive");
  if (!(pulse.duration > 0.0)) throw Error(ErrorKind::InvalidArgument, "pulse duration must be positive");
  if (std::abs(pulse.polarization.norm() - 1.0) > 1e-12) {
    throw Error(ErrorKind::InvalidArgument, "polarization must be a unit vector");
  }
}

const FinalState& FinalStateTable::by_index(int index) const {
  for (const auto& r : rows) {
    if (r.index == index) return r;
  }
  throw Error(ErrorKind::InvalidArgument, "no final state with index " + std::to_string(index));
}

}  // namespace attopmm
