#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"

#include "attopmm/error.hpp"
#include "attopmm/gaussian.hpp"
#include "attopmm/huckel.hpp"
#include "attopmm/orbital.hpp"
#include "attopmm/states.hpp"
#include "attopmm/units.hpp"

using namespace attopmm;

namespace {

WavePacket two_member_packet(std::complex<double> c1, std::complex<double> c2, double e1, double e2, double t0 = 0.0) {
  ElectronicState s1{0.0, {{1.0, singlet_excitation(11, 22, 10, 11)}}};
  ElectronicState s2{0.0, {{1.0, singlet_excitation(11, 22, 10, 13)}}};
  return WavePacket({{c1, e1, s1}, {c2, e2, s2}}, t0);
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("unit conversions round-trip") {
  for (double v : {0.0, 1.0, 99.0, -3.7, 1e-4}) {
    CHECK(units::hartree_to_ev(units::ev_to_hartree(v)) == doctest::Approx(v).epsilon(1e-15));
    CHECK(units::au_to_fs(units::fs_to_au(v)) == doctest::Approx(v).epsilon(1e-15));
    CHECK(units::bohr_to_angstrom(units::angstrom_to_bohr(v)) == doctest::Approx(v).epsilon(1e-15));
    CHECK(units::inv_angstrom_to_inv_bohr(units::inv_bohr_to_inv_angstrom(v)) == doctest::Approx(v).epsilon(1e-15));
  }
}

TEST_CASE("s primitive at its centre") {
  const auto g = GaussianPrimitive::make(Eigen::Vector3d(0.3, -1.0, 2.0), 1.0);
  CHECK(evaluate(g, g.center) == doctest::Approx(0.7127054703549902).epsilon(1e-12));
  CHECK(evaluate(g, g.center) == doctest::Approx(std::pow(2.0 / units::pi, 0.75)).epsilon(1e-14));
}

TEST_CASE("primitives are normalized analytically and by quadrature") {
  const std::vector<std::array<int, 3>> powers{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {2, 0, 0},
                                               {1, 1, 0}, {0, 1, 2}, {3, 0, 1}, {2, 2, 2}};
  for (double alpha : {0.2, 1.0, 3.5}) {
    for (const auto& p : powers) {
      const auto g = GaussianPrimitive::make(Eigen::Vector3d(0.5, -0.25, 1.0), alpha, p);
      CHECK(overlap(g, g) == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(oracle::quadrature_self_overlap(g) == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("two-centre overlaps agree with quadrature") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> pos(-2.0, 2.0), ex(0.3, 2.5);
  std::uniform_int_distribution<int> pw(0, 2);
  for (int trial = 0; trial < 40; ++trial) {
    const auto a = GaussianPrimitive::make(Eigen::Vector3d(pos(rng), pos(rng), pos(rng)), ex(rng),
                                           {pw(rng), pw(rng), pw(rng)});
    const auto b = GaussianPrimitive::make(Eigen::Vector3d(pos(rng), pos(rng), pos(rng)), ex(rng),
                                           {pw(rng), pw(rng), pw(rng)});
    CHECK(overlap(a, b) == doctest::Approx(oracle::quadrature_overlap(a, b)).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("p_y primitive vanishes in its nodal plane") {
  const auto g = GaussianPrimitive::make(Eigen::Vector3d(1.0, 0.0, -2.0), 1.0, {0, 1, 0});
  for (double x : {-3.0, 0.0, 1.0, 2.5}) {
    for (double z : {-2.0, 0.0, 4.0}) CHECK(evaluate(g, Eigen::Vector3d(x, 0.0, z)) == 0.0);
  }
  CHECK(evaluate(g, Eigen::Vector3d(1.0, 0.5, -2.0)) > 0.0);
}

TEST_CASE("invalid primitives are rejected") {
  CHECK_THROWS_AS(GaussianPrimitive::make(Eigen::Vector3d::Zero(), 0.0), Error);
  CHECK_THROWS_AS(GaussianPrimitive::make(Eigen::Vector3d::Zero(), -1.0), Error);
  CHECK_THROWS_AS(GaussianPrimitive::make(Eigen::Vector3d::Zero(), 1.0, {0, -1, 0}), Error);
}

TEST_CASE("orbital values match an independent LCAO sum") {
  const auto& orbs = *fixture::pentacene().orbitals;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-6.0, 6.0);
  for (const auto& mo : orbs.orbitals()) {
    for (const auto& atom : orbs.atoms()) {
      const Eigen::Vector3d r = atom.position + Eigen::Vector3d(0.0, 0.4, 0.0);
      CHECK(evaluate_orbital(mo, r) == doctest::Approx(oracle::lcao_value(mo, r)).epsilon(1e-12));
    }
    for (int k = 0; k < 5; ++k) {
      const Eigen::Vector3d r(u(rng), u(rng) / 4, u(rng) / 2);
      CHECK(std::abs(evaluate_orbital(mo, r) - oracle::lcao_value(mo, r)) < 1e-12);
    }
  }
}

TEST_CASE("Gram matrix of the molecular orbitals is the identity") {
  const auto& orbs = *fixture::pentacene().orbitals;
  const auto prims = orbs.shared_primitives();
  REQUIRE(prims);
  const Eigen::Index n = static_cast<Eigen::Index>(prims->size());
  Eigen::MatrixXd s_exact(n, n), s_quad(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      s_exact(i, j) = s_exact(j, i) = overlap((*prims)[i], (*prims)[j]);
      s_quad(i, j) = s_quad(j, i) = oracle::quadrature_overlap((*prims)[i], (*prims)[j]);
    }
  }
  const Eigen::MatrixXd c = orbs.coefficient_matrix();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(c.cols(), c.cols());
  CHECK((c.transpose() * s_exact * c - id).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((c.transpose() * s_quad * c - id).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("orbital labels") {
  for (const char* text : {"H", "H-1", "H-10", "L", "L+2", "L+10"}) {
    CHECK(OrbitalLabel::parse(text).str() == text);
  }
  CHECK(OrbitalLabel::parse("H-2").index(11) == 8);
  CHECK(OrbitalLabel::parse("L+2").index(11) == 13);
  CHECK(OrbitalLabel::from_index(10, 11) == OrbitalLabel::homo());
  CHECK(OrbitalLabel::from_index(11, 11) == OrbitalLabel::lumo());
  for (const char* bad : {"", "X", "H+1", "L-1", "H-", "HOMO"}) {
    CHECK_THROWS_AS(OrbitalLabel::parse(bad), Error);
  }
}

TEST_CASE("malformed orbitals are rejected") {
  auto prims = std::make_shared<std::vector<GaussianPrimitive>>();
  CHECK_THROWS_AS(MolecularOrbital(OrbitalLabel::homo(), LcaoExpansion{prims, Eigen::VectorXd()}), Error);
  prims->push_back(GaussianPrimitive::make(Eigen::Vector3d::Zero(), 1.0));
  CHECK_THROWS_AS(MolecularOrbital(OrbitalLabel::homo(), LcaoExpansion{prims, Eigen::VectorXd::Ones(2)}), Error);
  MolecularOrbital ok(OrbitalLabel::homo(), LcaoExpansion{prims, Eigen::VectorXd::Ones(1)});
  CHECK_THROWS_AS(OrbitalSet({ok, ok}, 1, 2), Error);
}

TEST_CASE("grid-backed orbitals interpolate and vanish outside") {
  const auto& homo = fixture::pentacene().orbitals->at(OrbitalLabel::homo());
  const double h = 0.4;
  const std::array<int, 3> counts{41, 11, 21};
  const Eigen::Vector3d origin(-8.0, -2.0, -4.0);
  VolumetricGrid<double> grid(origin, Eigen::Matrix3d::Identity() * h, counts);
  for (int i = 0; i < counts[0]; ++i)
    for (int j = 0; j < counts[1]; ++j)
      for (int k = 0; k < counts[2]; ++k) grid(i, j, k) = evaluate_orbital(homo, grid.point(i, j, k));
  MolecularOrbital mo(OrbitalLabel::homo(), grid);
  CHECK(evaluate_orbital(mo, grid.point(7, 3, 12)) == doctest::Approx(grid(7, 3, 12)).epsilon(1e-14));
  const Eigen::Vector3d mid = 0.5 * (grid.point(7, 3, 12) + grid.point(8, 3, 12));
  CHECK(evaluate_orbital(mo, mid) == doctest::Approx(0.5 * (grid(7, 3, 12) + grid(8, 3, 12))).epsilon(1e-14));
  CHECK(evaluate_orbital(mo, Eigen::Vector3d(100.0, 0.0, 0.0)) == 0.0);
  CHECK_THROWS_AS(VolumetricGrid<double>(origin, Eigen::Matrix3d::Identity(), {1, 2, 2}), Error);
}

TEST_CASE("wave-packet phases") {
  const double e1 = units::ev_to_hartree(3.539122), e2 = units::ev_to_hartree(4.260878);
  const std::complex<double> c1(0.6, 0.0), c2(0.0, 0.8);
  const auto wp = two_member_packet(c1, c2, e1, e2, 3.0);
  CHECK(wave_packet_phase(wp, 0, 3.0) == c1);
  CHECK(wave_packet_phase(wp, 1, 3.0) == c2);
  const double T = *wp.beat_period();
  CHECK(units::au_to_fs(T) == doctest::Approx(5.73).epsilon(1e-3));
  for (double t : {0.0, 11.0, -40.0}) {
    CHECK(std::abs(wave_packet_phase(wp, 1, t)) == doctest::Approx(0.8).epsilon(1e-15));
    const auto r0 = wave_packet_phase(wp, 1, t) / wave_packet_phase(wp, 0, t);
    const auto r1 = wave_packet_phase(wp, 1, t + T) / wave_packet_phase(wp, 0, t + T);
    CHECK(std::abs(r0 - r1) < 1e-12);
  }
  CHECK(wp.mean_energy() == doctest::Approx(0.36 * e1 + 0.64 * e2).epsilon(1e-15));
  CHECK_THROWS_AS(wave_packet_phase(wp, 2, 0.0), Error);
}

TEST_CASE("wave-packet normalization is enforced") {
  CHECK_THROWS_AS(two_member_packet(0.7, 0.7, 0.1, 0.2), Error);
  CHECK_NOTHROW(two_member_packet(std::sqrt(0.5), std::complex<double>(0.0, std::sqrt(0.5)), 0.1, 0.2));
  CHECK_THROWS_AS(WavePacket({}, 0.0), Error);
}

TEST_CASE("shipped wave packet") {
  const auto& wp = fixture::pentacene().model.wave_packet();
  CHECK(units::hartree_to_ev(wp.mean_energy()) == doctest::Approx(3.9).epsilon(1e-9));
  CHECK(units::au_to_fs(fixture::period()) == doctest::Approx(5.73).epsilon(1e-4));
}

TEST_CASE("probe pulse validation") {
  ProbePulse p{units::ev_to_hartree(100.0), Eigen::Vector3d::UnitY(), units::fs_to_au(0.5)};
  CHECK_NOTHROW(validate(p));
  p.polarization = Eigen::Vector3d(1.0, 1.0, 0.0);
  CHECK_THROWS_AS(validate(p), Error);
  p.polarization = Eigen::Vector3d::UnitY();
  p.duration = 0.0;
  CHECK_THROWS_AS(validate(p), Error);
}

}  // TEST_SUITE
