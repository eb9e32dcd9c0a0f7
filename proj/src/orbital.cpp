#include "attopmm/orbital.hpp"

#include <atomic>
#include <charconv>

namespace attopmm {

OrbitalLabel OrbitalLabel::parse(std::string_view text) {
  auto fail = [&]() -> OrbitalLabel {
    throw Error(ErrorKind::Parse, "bad orbital label '" + std::string(text) + "'");
  };
  if (text.empty()) return fail();
  OrbitalLabel label;
  if (text[0] == 'H') {
    label.side = Side::Occupied;
  } else if (text[0] == 'L') {
    label.side = Side::Virtual;
  } else {
    return fail();
  }
  std::string_view rest = text.substr(1);
  if (rest.empty()) return label;
  const char sign = rest[0];
  if ((label.side == Side::Occupied && sign != '-') || (label.side == Side::Virtual && sign != '+')) {
    return fail();
  }
  rest.remove_prefix(1);
  int k = 0;
  auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), k);
  if (ec != std::errc() || ptr != rest.data() + rest.size() || k < 0) return fail();
  label.offset = k;
  return label;
}

OrbitalLabel OrbitalLabel::from_index(int index, int n_occupied) {
  if (index < n_occupied) return homo(n_occupied - 1 - index);
  return lumo(index - n_occupied);
}

std::string OrbitalLabel::str() const {
  if (side == Side::Occupied) return offset == 0 ? "H" : "H-" + std::to_string(offset);
  return offset == 0 ? "L" : "L+" + std::to_string(offset);
}

MolecularOrbital::MolecularOrbital(OrbitalLabel label, LcaoExpansion lcao, ParityTags parity)
    : label_(label), parity_(parity) {
  if (!lcao.primitives || lcao.primitives->empty() || lcao.coefficients.size() == 0) {
    throw Error(ErrorKind::MalformedOrbital, "orbital " + label.str() + " has an empty expansion");
  }
  if (static_cast<std::size_t>(lcao.coefficients.size()) != lcao.primitives->size()) {
    throw Error(ErrorKind::MalformedOrbital,
                "orbital " + label.str() + ": coefficient count differs from primitive count");
  }
  data_ = std::move(lcao);
}

MolecularOrbital::MolecularOrbital(OrbitalLabel label, VolumetricGrid<double> grid, ParityTags parity)
    : label_(label), parity_(parity), data_(std::move(grid)) {}

const LcaoExpansion& MolecularOrbital::lcao() const {
  if (!is_lcao()) throw Error(ErrorKind::MalformedOrbital, "orbital " + label_.str() + " is not LCAO");
  return std::get<LcaoExpansion>(data_);
}

const VolumetricGrid<double>& MolecularOrbital::grid() const {
  if (!is_grid()) throw Error(ErrorKind::MalformedOrbital, "orbital " + label_.str() + " is not grid-backed");
  return std::get<VolumetricGrid<double>>(data_);
}

double evaluate_orbital(const MolecularOrbital& mo, const Eigen::Vector3d& r) {
  if (mo.is_grid()) return mo.grid().interpolate(r);
  if (!mo.is_lcao()) throw Error(ErrorKind::MalformedOrbital, "orbital has no expansion");
  const auto& lcao = mo.lcao();
  const auto& prims = *lcao.primitives;
  double sum = 0.0;
  for (std::size_t i = 0; i < prims.size(); ++i) {
    sum += lcao.coefficients[static_cast<Eigen::Index>(i)] * evaluate(prims[i], r);
  }
  return sum;
}

OrbitalSet::OrbitalSet(std::vector<MolecularOrbital> orbitals, int n_occupied, int basis_size,
                       std::vector<Atom> atoms)
    : orbitals_(std::move(orbitals)),
      n_occupied_(n_occupied),
      basis_size_(basis_size),
      atoms_(std::move(atoms)) {
  static std::atomic<std::uint64_t> next_id{1};
  id_ = next_id.fetch_add(1);
  if (n_occupied < 0 || basis_size < n_occupied || basis_size > 32) {
    throw Error(ErrorKind::InvalidArgument, "orbital basis must hold 0..32 orbitals with n_occupied <= basis size");
  }
  slot_of_index_.assign(static_cast<std::size_t>(basis_size), -1);
  for (std::size_t s = 0; s < orbitals_.size(); ++s) {
    const int idx = orbitals_[s].label().index(n_occupied);
    if (idx < 0 || idx >= basis_size) {
      throw Error(ErrorKind::InvalidArgument, "orbital " + orbitals_[s].label().str() + " outside basis");
    }
    if (slot_of_index_[static_cast<std::size_t>(idx)] >= 0) {
      throw Error(ErrorKind::InvalidArgument, "duplicate orbital " + orbitals_[s].label().str());
    }
    slot_of_index_[static_cast<std::size_t>(idx)] = static_cast<int>(s);
  }
}

std::optional<std::size_t> OrbitalSet::position_of(int basis_index) const {
  if (basis_index < 0 || basis_index >= basis_size_) return std::nullopt;
  const int s = slot_of_index_[static_cast<std::size_t>(basis_index)];
  if (s < 0) return std::nullopt;
  return static_cast<std::size_t>(s);
}

const MolecularOrbital& OrbitalSet::at_index(int basis_index) const {
  auto pos = position_of(basis_index);
  if (!pos) {
    throw Error(ErrorKind::BasisMismatch, "no spatial data for orbital " +
                                              OrbitalLabel::from_index(basis_index, n_occupied_).str());
  }
  return orbitals_[*pos];
}

const MolecularOrbital& OrbitalSet::at(const OrbitalLabel& label) const {
  return at_index(label.index(n_occupied_));
}

std::shared_ptr<const std::vector<GaussianPrimitive>> OrbitalSet::shared_primitives() const {
  std::shared_ptr<const std::vector<GaussianPrimitive>> shared;
  for (const auto& mo : orbitals_) {
    if (!mo.is_lcao()) return nullptr;
    if (!shared) {
      shared = mo.lcao().primitives;
    } else if (shared != mo.lcao().primitives) {
      return nullptr;
    }
  }
  return shared;
}

Eigen::MatrixXd OrbitalSet::coefficient_matrix() const {
  auto prims = shared_primitives();
  if (!prims) throw Error(ErrorKind::Unsupported, "orbitals do not share one primitive basis");
  Eigen::MatrixXd c(static_cast<Eigen::Index>(prims->size()), static_cast<Eigen::Index>(orbitals_.size()));
  for (std::size_t s = 0; s < orbitals_.size(); ++s) c.col(static_cast<Eigen::Index>(s)) = orbitals_[s].lcao().coefficients;
  return c;
}

}  // namespace attopmm
