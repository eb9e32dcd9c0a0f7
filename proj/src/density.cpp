#include "attopmm/density.hpp"

#include <cmath>

#include "attopmm/error.hpp"
#include "attopmm/parallel.hpp"

namespace attopmm {

namespace {

bool is_singlet_single(const ConfigurationStateFunction& csf) {
  return csf.holes.size() == 1 && csf.particles.size() == 1 && csf.total_spin == 0.0;
}

[[noreturn]] void unsupported(const char* why) {
  throw Error(ErrorKind::InvalidArgument, std::string("wave packet not in supported two-state form: ") + why);
}

}  // namespace

DensityGridSpec default_density_grid(const std::vector<Atom>& atoms, double padding, double spacing) {
  if (atoms.empty()) throw Error(ErrorKind::InvalidArgument, "no atoms to size the density grid");
  if (!(spacing > 0.0) || padding < 0.0) throw Error(ErrorKind::InvalidArgument, "invalid density grid spacing");
  Eigen::Vector3d lo = atoms.front().position;
  Eigen::Vector3d hi = lo;
  for (const auto& a : atoms) {
    lo = lo.cwiseMin(a.position);
    hi = hi.cwiseMax(a.position);
  }
  const Eigen::Vector3d centre = 0.5 * (lo + hi);
  DensityGridSpec spec;
  spec.spacing = spacing;
  for (int d = 0; d < 3; ++d) {
    const double half = 0.5 * (hi[d] - lo[d]) + padding;
    const int m = std::max(1, static_cast<int>(std::ceil(half / spacing)));
    spec.counts[d] = 2 * m + 1;
    spec.origin[d] = centre[d] - m * spacing;
  }
  return spec;
}

TwoStateExcitation detect_two_state_excitation(const WavePacket& wp) {
  if (wp.size() != 2) unsupported("need exactly two members");
  TwoStateExcitation s;
  const auto& m0 = wp.members()[0].state.expansion;
  const auto& m1 = wp.members()[1].state.expansion;
  if (m0.size() == 1 && m1.size() == 2) {
    s.first = 0;
    s.second = 1;
  } else if (m0.size() == 2 && m1.size() == 1) {
    s.first = 1;
    s.second = 0;
  } else {
    unsupported("need one single-CSF member and one two-CSF member");
  }
  const auto& one = wp.members()[s.first].state.expansion.front();
  const auto& two = wp.members()[s.second].state.expansion;
  for (const auto* t : {&one, &two[0], &two[1]}) {
    if (!is_singlet_single(t->csf)) unsupported("members must be singlet single excitations");
  }
  if (std::abs(std::abs(one.coefficient) - 1.0) > 1e-6) unsupported("first member must be a single unit CSF");
  s.first_sign = one.coefficient > 0 ? 1.0 : -1.0;
  s.homo = one.csf.holes[0];
  s.lumo = one.csf.particles[0];

  bool found_particle = false, found_hole = false;
  for (const auto& t : two) {
    const int h = t.csf.holes[0];
    const int p = t.csf.particles[0];
    if (h == s.homo && p != s.lumo && !found_particle) {
      s.lumo_partner = p;
      s.a = t.coefficient;
      found_particle = true;
    } else if (p == s.lumo && h != s.homo && !found_hole) {
      s.homo_partner = h;
      s.b = t.coefficient;
      found_hole = true;
    }
  }
  if (!found_particle || !found_hole) unsupported("second member must share the hole and the particle of the first");
  return s;
}

DensityEvaluator::DensityEvaluator(const WavePacket& wp, const OrbitalSet& orbitals, const DensityGridSpec& spec,
                                   int threads)
    : wp_(wp), structure_(detect_two_state_excitation(wp)), spec_(spec), threads_(threads) {
  if (!(spec.spacing > 0.0)) throw Error(ErrorKind::InvalidArgument, "invalid density grid spacing");
  const Eigen::Matrix3d axes = Eigen::Matrix3d::Identity() * spec.spacing;
  const VolumetricGrid<double> geometry(spec.origin, axes, spec.counts);
  const std::size_t n = geometry.size();

  const std::array<int, 4> which{structure_.homo, structure_.homo_partner, structure_.lumo, structure_.lumo_partner};
  std::array<const MolecularOrbital*, 4> mos{};
  for (int k = 0; k < 4; ++k) mos[k] = &orbitals.at_index(which[k]);
  std::array<std::vector<double>*, 4> out{&h_, &h2_, &l_, &l2_};
  for (auto* v : out) v->assign(n, 0.0);

  const int ny = spec.counts[1], nz = spec.counts[2];
  parallel_for(n, threads_, [&](std::size_t idx) {
    const int i = static_cast<int>(idx / (static_cast<std::size_t>(ny) * nz));
    const int j = static_cast<int>((idx / nz) % ny);
    const int k = static_cast<int>(idx % nz);
    const Eigen::Vector3d r = geometry.point(i, j, k);
    for (int o = 0; o < 4; ++o) (*out[o])[idx] = evaluate_orbital(*mos[o], r);
  });
}

DensityFrame DensityEvaluator::frame(double t) const {
  const auto& s = structure_;
  const std::complex<double> c1 = std::conj(wave_packet_phase(wp_, s.first, t)) * s.first_sign;
  const std::complex<double> c2 = std::conj(wave_packet_phase(wp_, s.second, t));
  const double p2 = std::norm(c2);
  const double a2 = s.a * s.a, b2 = s.b * s.b;

  const Eigen::Matrix3d axes = Eigen::Matrix3d::Identity() * spec_.spacing;
  VolumetricGrid<double> grid(spec_.origin, axes, spec_.counts);
  auto& v = grid.values();
  parallel_for(v.size(), threads_, [&](std::size_t i) {
    const std::complex<double> electron = c1 * l_[i] + s.a * c2 * l2_[i];
    const std::complex<double> hole = c1 * h_[i] + s.b * c2 * h2_[i];
    v[i] = std::norm(electron) + b2 * p2 * l_[i] * l_[i] - a2 * p2 * h_[i] * h_[i] - std::norm(hole);
  });

  DensityFrame f{std::move(grid), t, 0.0, 0.0};
  const double dv = f.grid.voxel_volume();
  for (double x : f.grid.values()) {
    if (x > 0) f.positive_charge += x;
    else f.negative_charge += x;
  }
  f.positive_charge *= dv;
  f.negative_charge *= dv;
  return f;
}

DensityFrame density_change(const WavePacket& wp, const OrbitalSet& orbitals, const DensityGridSpec& spec, double t,
                            int threads) {
  return DensityEvaluator(wp, orbitals, spec, threads).frame(t);
}

std::vector<DensityFrame> density_timeseries(const WavePacket& wp, const OrbitalSet& orbitals,
                                             const DensityGridSpec& spec, const std::vector<double>& times,
                                             int threads) {
  const DensityEvaluator ev(wp, orbitals, spec, threads);
  std::vector<DensityFrame> frames;
  frames.reserve(times.size());
  for (double t : times) frames.push_back(ev.frame(t));
  return frames;
}

}  // namespace attopmm
