#include "attopmm/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "attopmm/error.hpp"
#include "attopmm/parallel.hpp"
#include "attopmm/spherical_quadrature.hpp"
#include "attopmm/units.hpp"

namespace attopmm {

namespace {

constexpr double kLn2 = std::numbers::ln2;

}  // namespace

double envelope_short(double omega_f, double energy, double duration) {
  const double d = omega_f - energy;
  return std::exp(-d * d * duration * duration / (4.0 * kLn2));
}

double envelope_long(double photon_energy, double member_energy, double final_energy, double energy,
                     double duration) {
  const double d = photon_energy + member_energy - final_energy - energy;
  return std::exp(-d * d * duration * duration / (8.0 * kLn2));
}

double envelope_fwhm_short(double duration) { return 4.0 * kLn2 / duration; }

double envelope_fwhm_long(double duration) { return 4.0 * std::numbers::sqrt2 * kLn2 / duration; }

SpectralModel::SpectralModel(std::shared_ptr<const OrbitalSet> orbitals, WavePacket wave_packet,
                             FinalStateTable finals, ProbePulse pulse, SignalOptions options)
    : orbitals_(std::move(orbitals)),
      wave_packet_(std::move(wave_packet)),
      finals_(std::move(finals)),
      pulse_(std::move(pulse)),
      options_(options) {
  if (!orbitals_) throw Error(ErrorKind::InvalidArgument, "no orbital set");
  if (finals_.rows.empty()) throw Error(ErrorKind::InvalidArgument, "empty final-state list");
  validate(pulse_);
  if (options_.truncation < 0.0) throw Error(ErrorKind::InvalidArgument, "negative truncation threshold");
  const int basis = wave_packet_.members().front().state.basis_size();
  if (basis != orbitals_->basis_size()) {
    throw Error(ErrorKind::BasisMismatch,
                fmt::format("wave packet uses {} orbitals, orbital set has {}", basis, orbitals_->basis_size()));
  }

  const double mean = wave_packet_.mean_energy();
  for (const auto& row : finals_.rows) {
    SpectralChannel ch;
    ch.final_index = row.index;
    ch.final_energy = row.state.energy;
    ch.omega = pulse_.photon_energy + mean - row.state.energy;
    ch.dyson = decompose_dyson(row.state, wave_packet_, row.index);
    ch.time_dependent = ch.dyson.contributing_members() >= 2;

    CompiledChannel cc;
    for (std::size_t m = 0; m < ch.dyson.per_member.size(); ++m) {
      for (int spin = 0; spin < 2; ++spin) {
        Contribution c{m, spin, {}};
        for (const auto& o : ch.dyson.per_member[m]) {
          if (static_cast<int>(o.spin) != spin) continue;
          const auto slot = orbitals_->position_of(o.orbital);
          if (!slot) {
            throw Error(ErrorKind::BasisMismatch,
                        fmt::format("final state {} needs orbital {} which has no spatial data", row.index,
                                    OrbitalLabel::from_index(o.orbital, orbitals_->n_occupied()).str()));
          }
          c.slots.emplace_back(static_cast<Eigen::Index>(*slot), o.coefficient);
        }
        if (!c.slots.empty()) cc.contributions.push_back(std::move(c));
      }
    }
    channels_.push_back(std::move(ch));
    compiled_.push_back(std::move(cc));
  }
}

SpectralModel SpectralModel::with_duration(double duration) const {
  ProbePulse p = pulse_;
  p.duration = duration;
  return SpectralModel(orbitals_, wave_packet_, finals_, p, options_);
}

SpectralModel SpectralModel::with_threads(int threads) const {
  SignalOptions o = options_;
  o.threads = threads;
  return SpectralModel(orbitals_, wave_packet_, finals_, pulse_, o);
}

double SpectralModel::prefactor(const Eigen::Vector3d& q) const {
  const double eq = pulse_.polarization.dot(q);
  double f = eq * eq;
  if (options_.prefactor == PrefactorMode::Absolute) {
    const double w = pulse_.photon_energy;
    f *= pulse_.duration * pulse_.duration * pulse_.peak_intensity /
         (8.0 * std::numbers::pi * kLn2 * w * w * units::speed_of_light);
  }
  return f;
}

bool SpectralModel::channel_active(std::size_t c, double energy, Formula formula) const {
  const auto& ch = channels_[c];
  if (compiled_[c].contributions.empty()) return false;
  if (formula == Formula::ShortPulse) {
    return envelope_short(ch.omega, energy, pulse_.duration) >= options_.truncation;
  }
  double best = 0.0;
  for (const auto& m : wave_packet_.members()) {
    const double e = envelope_long(pulse_.photon_energy, m.energy, ch.final_energy, energy, pulse_.duration);
    best = std::max(best, e * e);
  }
  return best >= options_.truncation;
}

std::vector<std::size_t> SpectralModel::active_channels(double energy, Formula formula) const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < channels_.size(); ++c) {
    if (channel_active(c, energy, formula)) out.push_back(c);
  }
  return out;
}

double SpectralModel::sample_probability(const Eigen::Vector3d& q, const std::complex<double>* amplitudes,
                                         Eigen::Index stride, const std::vector<std::complex<double>>& phases,
                                         Formula formula) const {
  const double q2 = q.squaredNorm();
  if (q2 == 0.0) return 0.0;
  const double energy = 0.5 * q2;
  double total = 0.0;
  for (std::size_t c = 0; c < channels_.size(); ++c) {
    if (!channel_active(c, energy, formula)) continue;
    const auto& ch = channels_[c];
    std::complex<double> amp[2] = {0.0, 0.0};
    for (const auto& contrib : compiled_[c].contributions) {
      std::complex<double> a = 0.0;
      for (const auto& [slot, coef] : contrib.slots) a += coef * amplitudes[slot * stride];
      std::complex<double> w = phases[contrib.member];
      if (formula == Formula::FiniteDuration) {
        w *= envelope_long(pulse_.photon_energy, wave_packet_.members()[contrib.member].energy, ch.final_energy,
                           energy, pulse_.duration);
      }
      amp[contrib.spin] += w * a;
    }
    double sum = std::norm(amp[0]) + std::norm(amp[1]);
    if (formula == Formula::ShortPulse) sum *= envelope_short(ch.omega, energy, pulse_.duration);
    total += sum;
  }
  return prefactor(q) * total;
}

double SpectralModel::probability(const Eigen::Vector3d& q, double probe_time, Formula formula) const {
  if (q.squaredNorm() == 0.0) return 0.0;
  std::vector<std::complex<double>> phases(wave_packet_.size());
  for (std::size_t m = 0; m < phases.size(); ++m) phases[m] = wave_packet_phase(wave_packet_, m, probe_time);
  std::vector<std::complex<double>> amps(orbitals_->orbitals().size());
  for (std::size_t s = 0; s < amps.size(); ++s) {
    const auto& mo = orbitals_->orbitals()[s];
    if (!mo.is_lcao()) {
      throw Error(ErrorKind::Unsupported, "single-point evaluation needs LCAO orbitals; use a momentum grid");
    }
    const auto& l = mo.lcao();
    std::complex<double> a = 0.0;
    for (Eigen::Index k = 0; k < l.coefficients.size(); ++k) {
      if (l.coefficients[k] != 0.0) a += l.coefficients[k] * gaussian_ft((*l.primitives)[k], q);
    }
    amps[s] = a;
  }
  return sample_probability(q, amps.data(), 1, phases, formula);
}

std::vector<double> SpectralModel::evaluate(const MomentumGrid& grid, const Eigen::MatrixXcd& amplitudes,
                                            double probe_time, Formula formula) const {
  if (amplitudes.rows() != static_cast<Eigen::Index>(grid.size()) ||
      amplitudes.cols() != static_cast<Eigen::Index>(orbitals_->orbitals().size())) {
    throw Error(ErrorKind::InvalidArgument, "amplitude table does not match grid and orbital set");
  }
  std::vector<std::complex<double>> phases(wave_packet_.size());
  for (std::size_t m = 0; m < phases.size(); ++m) phases[m] = wave_packet_phase(wave_packet_, m, probe_time);
  std::vector<double> out(grid.size(), 0.0);
  const Eigen::Index stride = amplitudes.rows();
  parallel_for(grid.size(), options_.threads, [&](std::size_t i) {
    if (!grid.valid(i)) return;
    out[i] = sample_probability(grid.sample(i), amplitudes.data() + i, stride, phases, formula);
  });
  return out;
}

std::optional<double> table_mean_energy(const FinalStateTable& finals, double photon_energy) {
  double sum = 0.0;
  int n = 0;
  for (const auto& row : finals.rows) {
    if (!row.tabulated_omega) continue;
    sum += *row.tabulated_omega + row.state.energy - photon_energy;
    ++n;
  }
  if (n == 0) return std::nullopt;
  return sum / n;
}

std::vector<OmegaMismatch> check_tabulated_omegas(const SpectralModel& model, double tolerance) {
  std::vector<OmegaMismatch> out;
  for (std::size_t c = 0; c < model.channels().size(); ++c) {
    const auto& row = model.finals().rows[c];
    if (!row.tabulated_omega) continue;
    const double computed = model.channels()[c].omega;
    if (std::abs(*row.tabulated_omega - computed) > tolerance) {
      out.push_back({row.index, *row.tabulated_omega, computed});
    }
  }
  return out;
}

double probability_short(const Eigen::Vector3d& q, double probe_time, const SpectralModel& model) {
  return model.probability(q, probe_time, Formula::ShortPulse);
}

double probability_long(const Eigen::Vector3d& q, double probe_time, const SpectralModel& model) {
  return model.probability(q, probe_time, Formula::FiniteDuration);
}

namespace {

std::vector<int> contributing_finals(const SpectralModel& model, double energy, Formula formula) {
  std::vector<int> out;
  for (std::size_t c : model.active_channels(energy, formula)) out.push_back(model.channels()[c].final_index);
  return out;
}

}  // namespace

PMM pmm_cut(const SpectralModel& model, double energy, double probe_time, int n, Formula formula,
            std::optional<double> q_max, AmplitudeCache* cache) {
  if (!(energy > 0.0)) throw Error(ErrorKind::InvalidArgument, "photoelectron energy must be positive");
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "PMM raster needs n >= 2");
  const double extent = q_max ? *q_max : std::sqrt(2.0 * energy);
  const MomentumGrid grid = MomentumGrid::hemisphere(energy, n, n, extent);
  std::shared_ptr<const Eigen::MatrixXcd> table;
  if (cache) {
    table = cache->get(model.orbitals(), grid, model.options().threads);
  } else {
    table = std::make_shared<const Eigen::MatrixXcd>(orbital_set_ft(model.orbitals(), grid, model.options().threads));
  }
  PMM pmm;
  pmm.energy = energy;
  pmm.probe_time = probe_time;
  pmm.duration = model.pulse().duration;
  pmm.nx = n;
  pmm.ny = n;
  pmm.q_max = extent;
  pmm.formula = formula;
  pmm.values = model.evaluate(grid, *table, probe_time, formula);
  pmm.valid.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) pmm.valid[i] = grid.valid(i) ? 1 : 0;
  pmm.channels = contributing_finals(model, energy, formula);
  return pmm;
}

PMM energy_average_pmm(const SpectralModel& model, double center, double width, int samples, double probe_time,
                       int n, Formula formula, AmplitudeCache* cache) {
  if (samples < 1) throw Error(ErrorKind::InvalidArgument, "energy averaging needs at least one sample");
  if (width < 0.0) throw Error(ErrorKind::InvalidArgument, "negative averaging width");
  if (samples == 1 || width == 0.0) {
    PMM p = pmm_cut(model, center, probe_time, n, formula, std::nullopt, cache);
    p.averaging_width = width;
    return p;
  }
  const double lowest = center - 0.5 * width;
  if (!(lowest > 0.0)) throw Error(ErrorKind::InvalidArgument, "averaging window reaches zero kinetic energy");
  const double extent = std::sqrt(2.0 * lowest);

  PMM out;
  std::vector<int> finals;
  for (int k = 0; k < samples; ++k) {
    const double e = lowest + width * k / (samples - 1);
    PMM p = pmm_cut(model, e, probe_time, n, formula, extent, cache);
    if (k == 0) {
      out = p;
      std::fill(out.values.begin(), out.values.end(), 0.0);
    }
    for (std::size_t i = 0; i < p.values.size(); ++i) {
      if (out.valid[i]) out.values[i] += p.values[i] / samples;
    }
    for (int f : p.channels) {
      if (std::find(finals.begin(), finals.end(), f) == finals.end()) finals.push_back(f);
    }
  }
  std::sort(finals.begin(), finals.end());
  out.energy = center;
  out.averaged_energies = samples;
  out.averaging_width = width;
  out.channels = finals;
  return out;
}

Spectrum angle_integrated_spectrum(const SpectralModel& model, const std::vector<double>& energies,
                                   double probe_time, int quadrature_order, Formula formula, std::string tag) {
  const SphericalQuadrature quad(quadrature_order);
  Spectrum s;
  s.tag = std::move(tag);
  s.probe_time = probe_time;
  s.quadrature_order = quadrature_order;
  s.energies = energies;
  s.values.reserve(energies.size());
  for (double e : energies) {
    if (!(e > 0.0)) throw Error(ErrorKind::InvalidArgument, "spectrum energies must be positive");
    const MomentumGrid grid = MomentumGrid::sphere(e, quad);
    const Eigen::MatrixXcd table = orbital_set_ft(model.orbitals(), grid, model.options().threads);
    const std::vector<double> p = model.evaluate(grid, table, probe_time, formula);
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) sum += grid.weight(i) * p[i];
    s.values.push_back(std::sqrt(2.0 * e) * sum);
  }
  return s;
}

std::pair<WavePacket, FinalStateTable> ground_state_scenario(int n_occupied, int basis_size,
                                                             const std::map<int, double>& binding_energies) {
  if (binding_energies.empty()) throw Error(ErrorKind::InvalidArgument, "no binding energies for the ground state");
  ElectronicState ground;
  ground.energy = 0.0;
  ground.expansion.push_back({1.0, reference_configuration(n_occupied, basis_size)});
  WavePacket wp({{1.0, 0.0, ground}}, 0.0);

  FinalStateTable table;
  int index = 1;
  for (const auto& [orbital, binding] : binding_energies) {
    if (orbital < 0 || orbital >= n_occupied) {
      throw Error(ErrorKind::InvalidArgument, fmt::format("orbital {} is not occupied", orbital));
    }
    if (!(binding > 0.0)) throw Error(ErrorKind::InvalidArgument, "binding energies must be positive");
    for (Spin spin : {Spin::Down, Spin::Up}) {
      FinalState f;
      f.index = index++;
      f.state.energy = binding;
      f.state.expansion.push_back({1.0, doublet_hole(n_occupied, basis_size, orbital, spin)});
      table.rows.push_back(std::move(f));
    }
  }
  return {std::move(wp), std::move(table)};
}

}  // namespace attopmm
