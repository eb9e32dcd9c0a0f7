#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"

#include "attopmm/error.hpp"
#include "attopmm/momentum.hpp"
#include "attopmm/signal.hpp"
#include "attopmm/units.hpp"

using namespace attopmm;

namespace {

const double kTau = units::fs_to_au(0.5);
const double k99 = units::ev_to_hartree(99.0);

const SpectralModel& model() { return fixture::pentacene().model; }

SpectralModel restricted(const SpectralModel& m, std::vector<int> indices) {
  FinalStateTable t;
  for (int i : indices) t.rows.push_back(m.finals().by_index(i));
  return SpectralModel(m.orbitals_ptr(), m.wave_packet(), t, m.pulse(), m.options());
}

SpectralModel with_packet(const SpectralModel& m, WavePacket wp) {
  return SpectralModel(m.orbitals_ptr(), std::move(wp), m.finals(), m.pulse(), m.options());
}

// Random momentum on the 99 eV sphere, upper half.
Eigen::Vector3d sphere_point(std::mt19937_64& rng, double energy = k99) {
  std::normal_distribution<double> g;
  Eigen::Vector3d v(g(rng), g(rng), g(rng));
  v.z() = std::abs(v.z());
  return std::sqrt(2.0 * energy) * v.normalized();
}

double map_max(const PMM& p) { return *std::max_element(p.values.begin(), p.values.end()); }

}  // namespace

TEST_SUITE("signal") {

TEST_CASE("spectral envelopes") {
  const double half = units::ev_to_hartree(1.826);
  CHECK(envelope_short(k99, k99, kTau) == 1.0);
  CHECK(envelope_short(k99 + half, k99, kTau) == doctest::Approx(0.5).epsilon(0.002));
  CHECK(envelope_short(k99 - half, k99, kTau) == doctest::Approx(0.5).epsilon(0.002));
  CHECK(envelope_short(units::ev_to_hartree(98.9), k99, kTau) == doctest::Approx(0.998).epsilon(1e-3));
  CHECK(units::hartree_to_ev(envelope_fwhm_short(kTau)) == doctest::Approx(3.650).epsilon(1e-3));
  CHECK(units::hartree_to_ev(envelope_fwhm_long(kTau)) == doctest::Approx(5.162).epsilon(1e-3));
  const double w = envelope_fwhm_short(kTau);
  CHECK(envelope_short(k99 + w / 2, k99, kTau) == doctest::Approx(0.5).epsilon(1e-12));
  const double wl = envelope_fwhm_long(kTau);
  CHECK(envelope_long(k99, 0.0, 0.0, k99 + wl / 2, kTau) == doctest::Approx(0.5).epsilon(1e-12));
  for (double d : {0.0, 0.01, 0.05, 0.3}) {
    const double l = envelope_long(3.6, 0.15, 0.2, 3.55 - d, kTau);
    CHECK(l * l == doctest::Approx(envelope_short(3.55, 3.55 - d, kTau)).epsilon(1e-14));
  }
}

TEST_CASE("channel energies follow the table") {
  CHECK(units::hartree_to_ev(*table_mean_energy(model().finals(), model().pulse().photon_energy)) ==
        doctest::Approx(3.9).epsilon(1e-12));
  CHECK(check_tabulated_omegas(model(), 1e-9).empty());
  for (const auto& ch : model().channels()) {
    CHECK(ch.omega == doctest::Approx(model().pulse().photon_energy + model().wave_packet().mean_energy() -
                                      ch.final_energy)
                          .epsilon(1e-15));
  }
  const std::vector<bool> oscillating{true, false, false, false, false, true};
  for (std::size_t c = 0; c < model().channels().size(); ++c) {
    CHECK(model().channels()[c].time_dependent == oscillating[c]);
  }
}

TEST_CASE("oscillating channel involves L and L+2") {
  const auto& f1 = model().channels()[0].dyson;
  REQUIRE(f1.per_member.size() == 2);
  REQUIRE(f1.per_member[0].size() == 1);
  REQUIRE(f1.per_member[1].size() == 1);
  CHECK(f1.per_member[0][0].orbital == 11);
  CHECK(f1.per_member[1][0].orbital == 13);
}

TEST_CASE("polarization selection") {
  std::mt19937_64 rng(1);
  for (int k = 0; k < 20; ++k) {
    Eigen::Vector3d q = sphere_point(rng);
    q.y() = 0.0;
    CHECK(model().probability(q, 0.3 * k, Formula::ShortPulse) == 0.0);
    CHECK(model().probability(q, 0.3 * k, Formula::FiniteDuration) == 0.0);
  }
  CHECK(model().probability(Eigen::Vector3d::Zero(), 0.0, Formula::ShortPulse) == 0.0);
}

TEST_CASE("three lowest channels in closed form") {
  const auto three = restricted(model(), {1, 2, 3});
  const auto& wp = model().wave_packet();
  const std::complex<double> c1 = wp.members()[0].coefficient, c2 = wp.members()[1].coefficient;
  const double e1 = wp.members()[0].energy, e2 = wp.members()[1].energy;
  const auto& orbs = model().orbitals();
  auto ft = [&](const char* label, const Eigen::Vector3d& q) {
    const auto& l = orbs.at(OrbitalLabel::parse(label)).lcao();
    std::complex<double> a = 0.0;
    for (Eigen::Index k = 0; k < l.coefficients.size(); ++k) a += l.coefficients[k] * gaussian_ft((*l.primitives)[k], q);
    return a;
  };
  const double w = model().pulse().photon_energy, mean = wp.mean_energy();
  std::mt19937_64 rng(2);
  for (int k = 0; k < 30; ++k) {
    const Eigen::Vector3d q = sphere_point(rng);
    const double t = 40.0 * k;
    const double eps = 0.5 * q.squaredNorm();
    const auto p1 = std::polar(1.0, -e1 * t), p2 = std::polar(1.0, -e2 * t);
    const double env1 = envelope_short(w + mean - units::ev_to_hartree(5.0), eps, kTau);
    const double env2 = envelope_short(w + mean - units::ev_to_hartree(6.7), eps, kTau);
    const double env3 = envelope_short(w + mean - units::ev_to_hartree(7.5), eps, kTau);
    const double expected =
        q.y() * q.y() *
        (env1 * std::norm(0.95 / std::sqrt(2.0) * c1 * p1 * ft("L", q) + 0.95 / 2 * c2 * p2 * ft("L+2", q)) +
         env2 * std::norm(0.94 / 2 * c2 * p2 * ft("L", q)) +
         env3 * std::norm(0.83 / std::sqrt(2.0) * c1 * p1 * ft("H", q)));
    CHECK(probability_short(q, t, three) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("degenerate members factorize") {
  auto members = model().wave_packet().members();
  for (auto& m : members) m.energy = units::ev_to_hartree(3.9);
  const auto degenerate = with_packet(model(), WavePacket(members, 0.0));
  std::mt19937_64 rng(4);
  for (int k = 0; k < 20; ++k) {
    const Eigen::Vector3d q = sphere_point(rng, units::ev_to_hartree(95.0 + 0.3 * k));
    const double s = probability_short(q, 10.0 * k, degenerate);
    CHECK(probability_long(q, 10.0 * k, degenerate) == doctest::Approx(s).epsilon(1e-12));
  }
}

TEST_CASE("single-member packets do not oscillate") {
  auto members = model().wave_packet().members();
  members.resize(1);
  members[0].coefficient = 1.0;
  const auto single = with_packet(model(), WavePacket(members, 0.0));
  std::mt19937_64 rng(6);
  for (int k = 0; k < 10; ++k) {
    const Eigen::Vector3d q = sphere_point(rng);
    const double p0 = probability_short(q, 0.0, single);
    const double l0 = probability_long(q, 0.0, single);
    for (double t : {17.0, 59.0, 133.0}) {
      CHECK(probability_short(q, t, single) == doctest::Approx(p0).epsilon(1e-13));
      CHECK(probability_long(q, t, single) == doctest::Approx(l0).epsilon(1e-13));
    }
  }
  for (const auto& ch : single.channels()) CHECK_FALSE(ch.time_dependent);
}

TEST_CASE("periodicity and two-harmonic time dependence") {
  const double T = fixture::period();
  const double dE = 2 * std::numbers::pi / T;
  std::mt19937_64 rng(7);
  for (Formula f : {Formula::ShortPulse, Formula::FiniteDuration}) {
    for (int k = 0; k < 10; ++k) {
      const Eigen::Vector3d q = sphere_point(rng);
      std::vector<double> ts, ps;
      for (int s = 0; s < 8; ++s) {
        ts.push_back(0.37 * T + s * T / 8);
        ps.push_back(model().probability(q, ts.back(), f));
        CHECK(ps.back() >= 0.0);
      }
      CHECK(model().probability(q, ts[0] + T, f) == doctest::Approx(ps[0]).epsilon(1e-10));
      Eigen::MatrixXd a(8, 3);
      Eigen::VectorXd b(8);
      for (int s = 0; s < 8; ++s) {
        a(s, 0) = 1.0;
        a(s, 1) = std::cos(dE * ts[static_cast<std::size_t>(s)]);
        a(s, 2) = std::sin(dE * ts[static_cast<std::size_t>(s)]);
        b[s] = ps[static_cast<std::size_t>(s)];
      }
      const Eigen::VectorXd x = a.colPivHouseholderQr().solve(b);
      CHECK((a * x - b).cwiseAbs().maxCoeff() < 1e-8 * b.cwiseAbs().maxCoeff());
    }
  }
}

TEST_CASE("maps at half-period offsets are point reflections") {
  const double T = fixture::period();
  AmplitudeCache cache;
  const int n = 41;
  for (Formula f : {Formula::ShortPulse, Formula::FiniteDuration}) {
    const PMM a = pmm_cut(model(), k99, 0.0, n, f, std::nullopt, &cache);
    const PMM b = pmm_cut(model(), k99, T / 2, n, f, std::nullopt, &cache);
    const PMM c = pmm_cut(model(), k99, T / 4, n, f, std::nullopt, &cache);
    const PMM d = pmm_cut(model(), k99, 3 * T / 4, n, f, std::nullopt, &cache);
    double contrast = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double x = a.at(i, j), y = b.at(n - 1 - i, n - 1 - j);
        CHECK(std::abs(x - y) <= 1e-8 * std::max(std::abs(x), std::abs(y)));
        CHECK(std::abs(c.at(i, j) - d.at(i, j)) <= 1e-10 * map_max(c));
        // Each quarter-period map is mirror-symmetric in q_x.
        CHECK(std::abs(c.at(i, j) - c.at(n - 1 - i, j)) <= 1e-10 * map_max(c));
        contrast = std::max(contrast, std::abs(a.at(i, j) - b.at(i, j)));
      }
    }
    CHECK(contrast > 0.05 * map_max(a));
  }
  CHECK(cache.misses() == 1);
}

TEST_CASE("opposite hemisphere is shifted by half a period") {
  const double T = fixture::period();
  std::mt19937_64 rng(8);
  for (int k = 0; k < 20; ++k) {
    const Eigen::Vector3d q = sphere_point(rng);
    const Eigen::Vector3d m(q.x(), q.y(), -q.z());
    const double t = 0.1 * k * T;
    CHECK(model().probability(m, t, Formula::ShortPulse) ==
          doctest::Approx(model().probability(q, t + T / 2, Formula::ShortPulse)).epsilon(1e-10));
  }
}

TEST_CASE("short probes reduce the finite-duration formula to the short form") {
  const double T = fixture::period();
  // With equal member energies the two formulas coincide exactly.
  auto members = model().wave_packet().members();
  for (auto& m : members) m.energy = model().wave_packet().mean_energy();
  const SpectralModel same(model().orbitals_ptr(), WavePacket(members, 0.0), model().finals(), model().pulse(),
                           model().options());
  const auto fast_same = same.with_duration(units::fs_to_au(0.1));
  const auto fast = model().with_duration(units::fs_to_au(0.1));
  AmplitudeCache cache;
  for (double t : {0.0, T / 4, T / 2}) {
    const PMM s = pmm_cut(fast_same, k99, t, 31, Formula::ShortPulse, std::nullopt, &cache);
    const PMM l = pmm_cut(fast_same, k99, t, 31, Formula::FiniteDuration, std::nullopt, &cache);
    double diff = 0.0;
    for (std::size_t i = 0; i < s.values.size(); ++i) diff = std::max(diff, std::abs(s.values[i] - l.values[i]));
    CHECK(diff < 1e-12 * map_max(s));
    // The member splitting leaves a residue of a few percent from the channels far below 99 eV.
    const PMM s2 = pmm_cut(fast, k99, t, 31, Formula::ShortPulse, std::nullopt, &cache);
    const PMM l2 = pmm_cut(fast, k99, t, 31, Formula::FiniteDuration, std::nullopt, &cache);
    diff = 0.0;
    for (std::size_t i = 0; i < s2.values.size(); ++i) diff = std::max(diff, std::abs(s2.values[i] - l2.values[i]));
    CHECK(diff < 0.03 * map_max(s2));
    CHECK(diff > 0.005 * map_max(s2));
  }
}

TEST_CASE("channel gating") {
  CHECK(model().active_channels(k99, Formula::ShortPulse).size() == 6);
  CHECK(model().active_channels(units::ev_to_hartree(60.0), Formula::ShortPulse).empty());
  CHECK(model().active_channels(units::ev_to_hartree(60.0), Formula::FiniteDuration).empty());
  std::mt19937_64 rng(9);
  const Eigen::Vector3d q = sphere_point(rng, units::ev_to_hartree(60.0));
  CHECK(model().probability(q, 0.0, Formula::ShortPulse) == 0.0);
  const PMM p = pmm_cut(model(), k99, 0.0, 5);
  CHECK(p.channels == std::vector<int>{1, 2, 3, 4, 5, 6});
}

TEST_CASE("absolute prefactor") {
  const auto& m = model();
  const SpectralModel abs(m.orbitals_ptr(), m.wave_packet(), m.finals(), m.pulse(),
                          SignalOptions{PrefactorMode::Absolute, 1e-6, 1});
  const Eigen::Vector3d q(0.3, 1.2, 2.0);
  const double w = m.pulse().photon_energy;
  const double k = kTau * kTau * m.pulse().peak_intensity / (8 * std::numbers::pi * std::numbers::ln2 * w * w * 137.036);
  CHECK(abs.prefactor(q) == doctest::Approx(k * 1.44).epsilon(1e-14));
  CHECK(m.prefactor(q) == doctest::Approx(1.44).epsilon(1e-14));
  CHECK(abs.probability(q, 0.0, Formula::ShortPulse) ==
        doctest::Approx(k * m.probability(q, 0.0, Formula::ShortPulse)).epsilon(1e-13));
}

TEST_CASE("energy averaging") {
  AmplitudeCache cache;
  const PMM avg = energy_average_pmm(model(), k99, units::ev_to_hartree(1e-4), 2, 0.0, 41, Formula::ShortPulse, &cache);
  const PMM ref = pmm_cut(model(), k99, 0.0, 41, Formula::ShortPulse, avg.q_max, &cache);
  // q_z varies like 1/q_z with energy, so the rim band is left out.
  double diff = 0.0;
  for (int i = 0; i < 41; ++i) {
    for (int j = 0; j < 41; ++j) {
      const double qz2 = 2 * k99 - avg.qx(i) * avg.qx(i) - avg.qy(j) * avg.qy(j);
      if (!avg.valid[static_cast<std::size_t>(i) * 41 + j] || qz2 < 0.01 * 2 * k99) continue;
      diff = std::max(diff, std::abs(avg.at(i, j) - ref.at(i, j)));
    }
  }
  CHECK(diff < 1e-6 * map_max(ref));
  CHECK(avg.averaged_energies == 2);

  const PMM single = energy_average_pmm(model(), k99, units::ev_to_hartree(1.0), 1, 0.0, 41);
  CHECK(single.values == pmm_cut(model(), k99, 0.0, 41).values);

  const PMM wide = energy_average_pmm(model(), k99, units::ev_to_hartree(1.0), 11, 0.0, 41, Formula::ShortPulse, &cache);
  const PMM sharp = pmm_cut(model(), k99, 0.0, 41, Formula::ShortPulse, wide.q_max, &cache);
  double worst = 0.0;
  for (std::size_t i = 0; i < sharp.values.size(); ++i) {
    if (wide.valid[i]) worst = std::max(worst, std::abs(wide.values[i] - sharp.values[i]));
  }
  CHECK(worst < 0.1 * map_max(sharp));
  CHECK_THROWS_AS(energy_average_pmm(model(), 0.01, 0.05, 3, 0.0, 11), Error);
}

TEST_CASE("evaluation is independent of the thread count") {
  const auto grid = build_hemisphere(k99, 45, 45, std::sqrt(2 * k99));
  const auto table = orbital_set_ft(model().orbitals(), grid);
  const auto a = model().evaluate(grid, table, 12.0, Formula::FiniteDuration);
  const auto b = model().with_threads(4).evaluate(grid, table, 12.0, Formula::FiniteDuration);
  CHECK(a == b);
  CHECK_THROWS_AS(model().evaluate(grid, table.topRows(3), 0.0, Formula::ShortPulse), Error);
}

TEST_CASE("angle-integrated spectra") {
  const double T = fixture::period();
  const std::vector<double> energies{units::ev_to_hartree(94.0), units::ev_to_hartree(97.0), k99};
  const Spectrum s0 = angle_integrated_spectrum(model(), energies, 0.0, 24);
  for (double t : {T / 8, T / 4, 3 * T / 8}) {
    const Spectrum st = angle_integrated_spectrum(model(), energies, t, 24);
    for (std::size_t i = 0; i < energies.size(); ++i) {
      CHECK(st.values[i] == doctest::Approx(s0.values[i]).epsilon(1e-10));
    }
  }
  const Spectrum coarse = angle_integrated_spectrum(model(), energies, 0.0, 48);
  const Spectrum fine = angle_integrated_spectrum(model(), energies, 0.0, 96);
  for (std::size_t i = 0; i < energies.size(); ++i) {
    CHECK(fine.values[i] == doctest::Approx(coarse.values[i]).epsilon(1e-10));
    CHECK(s0.values[i] > 0.0);
  }
  CHECK(s0.tag == "excited");
  CHECK_THROWS_AS(angle_integrated_spectrum(model(), {0.0}, 0.0, 8), Error);
}

TEST_CASE("ground-state channels") {
  const auto& g = *fixture::pentacene().ground;
  CHECK(g.channels().size() == 22);
  CHECK(g.wave_packet().size() == 1);
  for (const auto& ch : g.channels()) {
    CHECK_FALSE(ch.time_dependent);
    CHECK(ch.omega == doctest::Approx(g.pulse().photon_energy - ch.final_energy).epsilon(1e-15));
  }
  // The highest channel is the HOMO at 5.0 eV binding, centred 2 eV below 97 eV.
  double top = 0.0;
  for (const auto& ch : g.channels()) top = std::max(top, ch.omega);
  CHECK(units::hartree_to_ev(top) == doctest::Approx(95.0).epsilon(1e-12));
  CHECK_THROWS_AS(ground_state_scenario(11, 22, {}), Error);
  CHECK_THROWS_AS(ground_state_scenario(11, 22, {{12, 0.2}}), Error);
  CHECK_THROWS_AS(ground_state_scenario(11, 22, {{3, -0.2}}), Error);
}

}  // TEST_SUITE
