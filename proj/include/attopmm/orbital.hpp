#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "attopmm/gaussian.hpp"
#include "attopmm/volumetric_grid.hpp"

namespace attopmm {

/// Orbital name relative to the frontier orbitals: H-k (k-th below HOMO) or
/// L+k (k-th above LUMO).
struct OrbitalLabel {
  enum class Side { Occupied, Virtual };
  Side side = Side::Occupied;
  int offset = 0;

  static OrbitalLabel homo(int k = 0) { return {Side::Occupied, k}; }
  static OrbitalLabel lumo(int k = 0) { return {Side::Virtual, k}; }
  static OrbitalLabel parse(std::string_view text);
  static OrbitalLabel from_index(int index, int n_occupied);

  /// Position in the energy-ordered orbital basis (0 = deepest).
  int index(int n_occupied) const {
    return side == Side::Occupied ? n_occupied - 1 - offset : n_occupied + offset;
  }
  std::string str() const;

  friend bool operator==(const OrbitalLabel&, const OrbitalLabel&) = default;
};

/// Signs of an orbital under x→-x, y→-y, z→-z; 0 where the orbital has no
/// definite parity. Only consulted by tests.
struct ParityTags {
  std::array<int, 3> signs{0, 0, 0};
};

struct LcaoExpansion {
  std::shared_ptr<const std::vector<GaussianPrimitive>> primitives;
  Eigen::VectorXd coefficients;
};

class MolecularOrbital {
 public:
  MolecularOrbital() = default;
  MolecularOrbital(OrbitalLabel label, LcaoExpansion lcao, ParityTags parity = {});
  MolecularOrbital(OrbitalLabel label, VolumetricGrid<double> grid, ParityTags parity = {});

  const OrbitalLabel& label() const { return label_; }
  const ParityTags& parity() const { return parity_; }

  bool is_lcao() const { return std::holds_alternative<LcaoExpansion>(data_); }
  bool is_grid() const { return std::holds_alternative<VolumetricGrid<double>>(data_); }
  const LcaoExpansion& lcao() const;
  const VolumetricGrid<double>& grid() const;

 private:
  OrbitalLabel label_;
  ParityTags parity_;
  std::variant<std::monostate, LcaoExpansion, VolumetricGrid<double>> data_;
};

/// φ(r) for r in bohr. Grid-backed orbitals interpolate trilinearly, zero outside.
double evaluate_orbital(const MolecularOrbital& mo, const Eigen::Vector3d& r);

struct Atom {
  int atomic_number = 6;
  Eigen::Vector3d position = Eigen::Vector3d::Zero();  // bohr
};

/// The orbitals of one calculation. `basis_size` counts all orbitals of the
/// basis (the determinant index space), which may exceed the number of
/// orbitals for which spatial data is present.
class OrbitalSet {
 public:
  OrbitalSet() = default;
  OrbitalSet(std::vector<MolecularOrbital> orbitals, int n_occupied, int basis_size,
             std::vector<Atom> atoms = {});

  int n_occupied() const { return n_occupied_; }
  /// Identity shared by copies; distinct for independently built sets.
  std::uint64_t id() const { return id_; }
  int basis_size() const { return basis_size_; }
  const std::vector<MolecularOrbital>& orbitals() const { return orbitals_; }
  const std::vector<Atom>& atoms() const { return atoms_; }

  /// Position of the orbital with this basis index in `orbitals()`, if present.
  std::optional<std::size_t> position_of(int basis_index) const;
  const MolecularOrbital& at(const OrbitalLabel& label) const;
  const MolecularOrbital& at_index(int basis_index) const;

  /// Shared primitive list if every orbital is LCAO over one common list.
  std::shared_ptr<const std::vector<GaussianPrimitive>> shared_primitives() const;
  /// Coefficient matrix (n_primitives x n_orbitals) for a shared basis.
  Eigen::MatrixXd coefficient_matrix() const;

 private:
  std::vector<MolecularOrbital> orbitals_;
  std::vector<int> slot_of_index_;
  int n_occupied_ = 0;
  int basis_size_ = 0;
  std::vector<Atom> atoms_;
  std::uint64_t id_ = 0;
};

}  // namespace attopmm
