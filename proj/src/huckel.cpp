#include "attopmm/huckel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "attopmm/error.hpp"
#include "attopmm/units.hpp"

namespace attopmm {

namespace {

constexpr double kDegenerate = 1e-8;

// Permutation matrix of a reflection, or an empty matrix if the skeleton is
// not mapped onto itself.
Eigen::MatrixXd reflection(const PiSystemGraph& g, int axis) {
  const int n = g.size();
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    Eigen::Vector3d r = g.carbons[i];
    r[axis] = -r[axis];
    int hit = -1;
    for (int j = 0; j < n; ++j) {
      if ((g.carbons[j] - r).norm() < 1e-6) hit = j;
    }
    if (hit < 0) return {};
    p(hit, i) = 1.0;
  }
  return p;
}

}  // namespace

Eigen::MatrixXd PiSystemGraph::hamiltonian() const {
  const int n = size();
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n) * onsite;
  for (auto [i, j] : bonds) {
    h(i, j) = hopping;
    h(j, i) = hopping;
  }
  return h;
}

bool PiSystemGraph::connected() const {
  if (carbons.empty()) return false;
  std::vector<int> parent(carbons.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [i, j] : bonds) parent[find(i)] = find(j);
  const int root = find(0);
  for (int i = 0; i < size(); ++i) {
    if (find(i) != root) return false;
  }
  return true;
}

PiSystemGraph build_pentacene_graph(double cc_bond, double ch_bond) {
  if (!(cc_bond > 0.0) || !(ch_bond > 0.0)) throw Error(ErrorKind::InvalidArgument, "bond lengths must be positive");
  const double a = cc_bond;
  const double step = std::sqrt(3.0) * a;
  PiSystemGraph g;
  for (int k = -2; k <= 2; ++k) {
    g.carbons.emplace_back(k * step, 0.0, a);
    g.carbons.emplace_back(k * step, 0.0, -a);
  }
  for (int k = -3; k <= 2; ++k) {
    g.carbons.emplace_back((k + 0.5) * step, 0.0, 0.5 * a);
    g.carbons.emplace_back((k + 0.5) * step, 0.0, -0.5 * a);
  }
  const int n = g.size();
  std::vector<std::vector<int>> neighbours(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (std::abs((g.carbons[i] - g.carbons[j]).norm() - a) < 1e-6 * a) {
        g.bonds.emplace_back(i, j);
        neighbours[i].push_back(j);
        neighbours[j].push_back(i);
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    if (neighbours[i].size() != 2) continue;
    Eigen::Vector3d d = Eigen::Vector3d::Zero();
    for (int j : neighbours[i]) d += (g.carbons[j] - g.carbons[i]).normalized();
    g.hydrogens.push_back(g.carbons[i] - ch_bond * d.normalized());
  }
  return g;
}

HuckelSolution solve_huckel(const PiSystemGraph& graph) {
  const int n = graph.size();
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "empty π system");
  if (!graph.connected()) throw Error(ErrorKind::InvalidArgument, "π system graph is not connected");
  const Eigen::MatrixXd h = graph.hamiltonian();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);

  std::array<Eigen::MatrixXd, 2> ops{reflection(graph, 0), reflection(graph, 2)};
  struct Level {
    double energy;
    Eigen::VectorXd vector;
    std::array<int, 2> parity;
  };
  std::vector<Level> levels;
  for (int sx : {1, -1}) {
    for (int sz : {1, -1}) {
      if ((ops[0].size() == 0 && sx < 0) || (ops[1].size() == 0 && sz < 0)) continue;
      Eigen::MatrixXd proj = id;
      if (ops[0].size()) proj = proj * (id + sx * ops[0]) * 0.5;
      if (ops[1].size()) proj = proj * (id + sz * ops[1]) * 0.5;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> pe(proj);
      std::vector<Eigen::Index> cols;
      for (Eigen::Index k = 0; k < n; ++k) {
        if (pe.eigenvalues()[k] > 0.5) cols.push_back(k);
      }
      if (cols.empty()) continue;
      Eigen::MatrixXd basis(n, static_cast<Eigen::Index>(cols.size()));
      for (std::size_t c = 0; c < cols.size(); ++c) basis.col(static_cast<Eigen::Index>(c)) = pe.eigenvectors().col(cols[c]);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> he(basis.transpose() * h * basis);
      if (he.info() != Eigen::Success) throw Error(ErrorKind::Numeric, "Hückel eigensolver failed");
      const std::array<int, 2> parity{ops[0].size() ? sx : 0, ops[1].size() ? sz : 0};
      for (Eigen::Index k = 0; k < he.eigenvalues().size(); ++k) {
        levels.push_back({he.eigenvalues()[k], basis * he.eigenvectors().col(k), parity});
      }
    }
  }

  std::stable_sort(levels.begin(), levels.end(), [](const Level& a, const Level& b) { return a.energy < b.energy; });
  // Reorder inside degenerate clusters by distance from the gap.
  for (std::size_t begin = 0; begin < levels.size();) {
    std::size_t end = begin + 1;
    while (end < levels.size() && levels[end].energy - levels[end - 1].energy < kDegenerate) ++end;
    if (end - begin > 1) {
      const bool occupied_side = levels[begin].energy < graph.onsite;
      auto key = [](const Level& l) { return std::array<int, 2>{l.parity[0] < 0, l.parity[1] < 0}; };
      std::stable_sort(levels.begin() + begin, levels.begin() + end, [&](const Level& a, const Level& b) {
        return occupied_side ? key(a) < key(b) : key(b) < key(a);
      });
      for (std::size_t i = begin + 1; i < end; ++i) {
        if (key(levels[i]) == key(levels[i - 1])) {
          throw Error(ErrorKind::Numeric, "degenerate Hückel level inside one symmetry block");
        }
      }
    }
    begin = end;
  }

  HuckelSolution out;
  out.energies.resize(n);
  out.vectors.resize(n, n);
  for (int k = 0; k < n; ++k) {
    out.energies[k] = levels[k].energy;
    out.vectors.col(k) = levels[k].vector;
    out.parity.push_back(levels[k].parity);
  }
  return out;
}

OrbitalSet huckel_orbitals(const PiSystemGraph& graph, double exponent) {
  if (!(exponent > 0.0)) throw Error(ErrorKind::InvalidArgument, "p-orbital exponent must be positive");
  const HuckelSolution sol = solve_huckel(graph);
  const int n = graph.size();
  if (n % 2 != 0) throw Error(ErrorKind::InvalidArgument, "odd number of π centres");

  auto prims = std::make_shared<std::vector<GaussianPrimitive>>();
  std::vector<Atom> atoms;
  for (const auto& c : graph.carbons) {
    const Eigen::Vector3d r = c / units::bohr_in_angstrom;
    prims->push_back(GaussianPrimitive::make(r, exponent, {0, 1, 0}));
    atoms.push_back({6, r});
  }
  for (const auto& h : graph.hydrogens) atoms.push_back({1, h / units::bohr_in_angstrom});

  Eigen::MatrixXd s(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) s(i, j) = overlap((*prims)[i], (*prims)[j]);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> se(s);
  if (se.info() != Eigen::Success || se.eigenvalues().minCoeff() <= 1e-10) {
    throw Error(ErrorKind::Numeric, "p-orbital overlap matrix is singular");
  }
  const Eigen::MatrixXd inv_sqrt = se.operatorInverseSqrt();

  const int n_occ = n / 2;
  std::shared_ptr<const std::vector<GaussianPrimitive>> shared = prims;
  std::vector<MolecularOrbital> orbitals;
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXd c = inv_sqrt * sol.vectors.col(k);
    for (Eigen::Index i = 0; i < c.size(); ++i) {
      if (std::abs(c[i]) > 1e-8) {
        if (c[i] < 0) c = -c;
        break;
      }
    }
    ParityTags tags;
    tags.signs = {sol.parity[k][0], -1, sol.parity[k][1]};
    orbitals.emplace_back(OrbitalLabel::from_index(k, n_occ), LcaoExpansion{shared, c}, tags);
  }
  return OrbitalSet(std::move(orbitals), n_occ, n, std::move(atoms));
}

}  // namespace attopmm
