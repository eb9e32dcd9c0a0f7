#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "attopmm/csf_algebra.hpp"
#include "attopmm/momentum.hpp"
#include "attopmm/orbital.hpp"
#include "attopmm/states.hpp"

namespace attopmm {

/// Probability-level spectral window exp(-(Ω_F - ε)² τ² / (4 ln 2)), atomic units.
double envelope_short(double omega_f, double energy, double duration);

/// Amplitude-level window exp(-(ω + E_I - E_F - ε)² τ² / (8 ln 2)) used inside
/// the coherent member sum of the finite-duration formula.
double envelope_long(double photon_energy, double member_energy, double final_energy, double energy,
                     double duration);

/// FWHM in energy of envelope_short (4 ln 2 / τ) and of envelope_long as a
/// function of ε (√2 times wider).
double envelope_fwhm_short(double duration);
double envelope_fwhm_long(double duration);

enum class Formula {
  ShortPulse,    // member energies replaced by ⟨E⟩, envelope outside |·|²
  FiniteDuration // member-resolved envelopes inside |·|²
};

enum class PrefactorMode {
  Relative,  // τ² I0 / (8π ln2 ω² c) set to one
  Absolute,
};

struct SignalOptions {
  PrefactorMode prefactor = PrefactorMode::Relative;
  /// Channels whose (probability-level) envelope falls below this are skipped.
  double truncation = 1e-6;
  int threads = 1;
};

struct SpectralChannel {
  int final_index = 0;
  double final_energy = 0.0;  // E_F, hartree
  double omega = 0.0;         // Ω_F = ω + ⟨E⟩ - E_F, hartree
  DysonDecomposition dyson;
  bool time_dependent = false;
};

/// Photoemission observables for one wave packet, final-state table and probe.
/// Immutable after construction; all evaluation methods are const and safe to
/// call concurrently.
class SpectralModel {
 public:
  SpectralModel(std::shared_ptr<const OrbitalSet> orbitals, WavePacket wave_packet, FinalStateTable finals,
                ProbePulse pulse, SignalOptions options = {});

  const OrbitalSet& orbitals() const { return *orbitals_; }
  std::shared_ptr<const OrbitalSet> orbitals_ptr() const { return orbitals_; }
  const WavePacket& wave_packet() const { return wave_packet_; }
  const FinalStateTable& finals() const { return finals_; }
  const ProbePulse& pulse() const { return pulse_; }
  const SignalOptions& options() const { return options_; }
  const std::vector<SpectralChannel>& channels() const { return channels_; }

  /// Same physics with a different pulse duration (atomic units).
  SpectralModel with_duration(double duration) const;
  SpectralModel with_threads(int threads) const;

  /// Prefactor including the polarization factor |ε_in·q|².
  double prefactor(const Eigen::Vector3d& q) const;

  /// Indices into channels() that survive truncation at energy ε.
  std::vector<std::size_t> active_channels(double energy, Formula formula) const;

  /// P(q, t_p) with q in atomic units. q = 0 returns 0.
  double probability(const Eigen::Vector3d& q, double probe_time, Formula formula) const;

  /// P on every grid sample from a precomputed amplitude table
  /// (rows: samples, columns: orbitals() slots). Invalid samples give 0.
  std::vector<double> evaluate(const MomentumGrid& grid, const Eigen::MatrixXcd& amplitudes, double probe_time,
                               Formula formula) const;

 private:
  struct Contribution {
    std::size_t member;
    int spin;
    std::vector<std::pair<Eigen::Index, double>> slots;  // (amplitude column, coefficient)
  };
  struct CompiledChannel {
    std::vector<Contribution> contributions;
  };

  bool channel_active(std::size_t c, double energy, Formula formula) const;
  double sample_probability(const Eigen::Vector3d& q, const std::complex<double>* amplitudes, Eigen::Index stride,
                            const std::vector<std::complex<double>>& phases, Formula formula) const;

  std::shared_ptr<const OrbitalSet> orbitals_;
  WavePacket wave_packet_;
  FinalStateTable finals_;
  ProbePulse pulse_;
  SignalOptions options_;
  std::vector<SpectralChannel> channels_;
  std::vector<CompiledChannel> compiled_;
};

/// ⟨E⟩ implied by a table's Ω column: mean of Ω_F + E_F - ω over rows that list Ω.
std::optional<double> table_mean_energy(const FinalStateTable& finals, double photon_energy);

struct OmegaMismatch {
  int final_index;
  double tabulated;  // hartree
  double computed;   // hartree
};
/// Rows whose tabulated Ω differs from ω + ⟨E⟩ - E_F by more than `tolerance`.
std::vector<OmegaMismatch> check_tabulated_omegas(const SpectralModel& model, double tolerance);

double probability_short(const Eigen::Vector3d& q, double probe_time, const SpectralModel& model);
double probability_long(const Eigen::Vector3d& q, double probe_time, const SpectralModel& model);

/// Constant-energy momentum map on a (q_x, q_y) raster.
struct PMM {
  double energy = 0.0;      // hartree
  double probe_time = 0.0;  // atomic units
  double duration = 0.0;    // atomic units
  int nx = 0;
  int ny = 0;
  double q_max = 0.0;  // atomic units
  Formula formula = Formula::ShortPulse;
  int averaged_energies = 1;
  double averaging_width = 0.0;  // hartree
  std::vector<double> values;    // index i*ny + j; zero where invalid
  std::vector<unsigned char> valid;
  std::vector<int> channels;     // final indices that contributed

  double& at(int i, int j) { return values[static_cast<std::size_t>(i) * ny + j]; }
  double at(int i, int j) const { return values[static_cast<std::size_t>(i) * ny + j]; }
  double qx(int i) const { return (2 * i - (nx - 1)) * q_max / (nx - 1); }
  double qy(int j) const { return (2 * j - (ny - 1)) * q_max / (ny - 1); }
};

/// PMM at energy ε on an n×n raster; q_max defaults to the full disc √(2ε).
/// Pass a cache to reuse amplitudes across probe times.
PMM pmm_cut(const SpectralModel& model, double energy, double probe_time, int n, Formula formula = Formula::ShortPulse,
            std::optional<double> q_max = std::nullopt, AmplitudeCache* cache = nullptr);

/// Uniform average of pmm_cut over [ε_c - Δε/2, ε_c + Δε/2] with `samples`
/// energies; all maps share the raster of the lowest energy's disc.
PMM energy_average_pmm(const SpectralModel& model, double center, double width, int samples, double probe_time,
                       int n, Formula formula = Formula::ShortPulse, AmplitudeCache* cache = nullptr);

struct Spectrum {
  std::string tag;
  double probe_time = 0.0;
  int quadrature_order = 0;
  std::vector<double> energies;  // hartree
  std::vector<double> values;
};

/// S(ε) = q ∫ P(q q̂) dΩ with q = √(2ε), product Gauss quadrature of the given order.
Spectrum angle_integrated_spectrum(const SpectralModel& model, const std::vector<double>& energies, double probe_time,
                                   int quadrature_order, Formula formula = Formula::ShortPulse,
                                   std::string tag = "excited");

/// Koopmans picture: the closed-shell ground state as a one-member packet and
/// one-hole final states (both spin projections) for each listed orbital.
/// `binding_energies` maps orbital basis index to binding energy (hartree).
std::pair<WavePacket, FinalStateTable> ground_state_scenario(int n_occupied, int basis_size,
                                                             const std::map<int, double>& binding_energies);

}  // namespace attopmm
