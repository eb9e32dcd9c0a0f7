#include "attopmm/determinant.hpp"

#include "attopmm/error.hpp"
#include "attopmm/orbital.hpp"

namespace attopmm {

namespace {

constexpr int kMaxSpinOrbitals = 64;

int occupied_below(std::uint64_t bits, int index) {
  const std::uint64_t mask = index == 0 ? 0 : (~std::uint64_t{0} >> (64 - index));
  return std::popcount(bits & mask);
}

void check_range(int orbital) {
  if (orbital < 0 || 2 * orbital + 1 >= kMaxSpinOrbitals) {
    throw Error(ErrorKind::InvalidArgument, "orbital index out of range: " + std::to_string(orbital));
  }
}

}  // namespace

std::pair<int, SlaterDeterminant> SlaterDeterminant::from_ordered(std::span<const SpinOrbital> ordered) {
  std::uint64_t bits = 0;
  int inversions = 0;
  for (const SpinOrbital& so : ordered) {
    check_range(so.orbital);
    const int idx = so.index();
    if ((bits >> idx) & 1U) throw Error(ErrorKind::InvalidArgument, "duplicate spin-orbital in determinant");
    // Entries already placed with a larger index must move past this one.
    inversions += std::popcount(bits >> idx);
    bits |= std::uint64_t{1} << idx;
  }
  return {inversions % 2 == 0 ? 1 : -1, SlaterDeterminant(bits)};
}

SlaterDeterminant SlaterDeterminant::closed_shell(int n_doubly) {
  check_range(n_doubly > 0 ? n_doubly - 1 : 0);
  const int n = 2 * n_doubly;
  return SlaterDeterminant(n == 0 ? 0 : (~std::uint64_t{0} >> (64 - n)));
}

std::vector<SpinOrbital> SlaterDeterminant::spin_orbitals() const {
  std::vector<SpinOrbital> out;
  out.reserve(static_cast<std::size_t>(electron_count()));
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(SpinOrbital::from_index(std::countr_zero(b)));
  return out;
}

int SlaterDeterminant::highest_orbital() const {
  if (bits_ == 0) return -1;
  return (63 - std::countl_zero(bits_)) / 2;
}

std::string SlaterDeterminant::str(int n_occupied) const {
  std::string s = "|";
  bool first = true;
  for (const SpinOrbital& so : spin_orbitals()) {
    if (!first) s += ' ';
    first = false;
    s += OrbitalLabel::from_index(so.orbital, n_occupied).str();
    s += so.spin == Spin::Up ? "u" : "d";
  }
  return s + ">";
}

std::optional<SignedDeterminant> annihilate(const SlaterDeterminant& det, int orbital, Spin spin) {
  check_range(orbital);
  const SpinOrbital so{orbital, spin};
  if (!det.occupied(so)) return std::nullopt;
  const int idx = so.index();
  const int sign = occupied_below(det.bits(), idx) % 2 == 0 ? 1 : -1;
  return SignedDeterminant{sign, SlaterDeterminant::from_bits(det.bits() & ~(std::uint64_t{1} << idx))};
}

std::optional<SignedDeterminant> create(const SlaterDeterminant& det, int orbital, Spin spin) {
  check_range(orbital);
  const SpinOrbital so{orbital, spin};
  if (det.occupied(so)) return std::nullopt;
  const int idx = so.index();
  const int sign = occupied_below(det.bits(), idx) % 2 == 0 ? 1 : -1;
  return SignedDeterminant{sign, SlaterDeterminant::from_bits(det.bits() | (std::uint64_t{1} << idx))};
}

}  // namespace attopmm
