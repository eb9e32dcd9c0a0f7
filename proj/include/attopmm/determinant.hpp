#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace attopmm {

enum class Spin : std::uint8_t { Up = 0, Down = 1 };

inline char spin_char(Spin s) { return s == Spin::Up ? 'u' : 'd'; }

struct SpinOrbital {
  int orbital = 0;
  Spin spin = Spin::Up;

  /// Canonical position: orbital index first, ↑ before ↓.
  int index() const { return 2 * orbital + static_cast<int>(spin); }
  static SpinOrbital from_index(int i) { return {i / 2, static_cast<Spin>(i % 2)}; }

  friend bool operator==(const SpinOrbital&, const SpinOrbital&) = default;
};

/// Occupation pattern a†_{s1} a†_{s2} ... |0⟩ with s1 < s2 < ... in canonical
/// order. Supports up to 32 spatial orbitals.
class SlaterDeterminant {
 public:
  SlaterDeterminant() = default;
  static SlaterDeterminant from_bits(std::uint64_t bits) { return SlaterDeterminant(bits); }

  /// Brings an arbitrarily ordered creation string into canonical order and
  /// returns the permutation sign. Duplicate spin-orbitals are an error.
  static std::pair<int, SlaterDeterminant> from_ordered(std::span<const SpinOrbital> ordered);

  /// Closed-shell determinant with orbitals 0..n_doubly-1 doubly occupied.
  static SlaterDeterminant closed_shell(int n_doubly);

  bool occupied(SpinOrbital so) const { return (bits_ >> so.index()) & 1U; }
  int electron_count() const { return std::popcount(bits_); }
  std::uint64_t bits() const { return bits_; }
  std::vector<SpinOrbital> spin_orbitals() const;
  /// Highest spatial orbital index occupied, -1 for the vacuum.
  int highest_orbital() const;
  std::string str(int n_occupied) const;

  friend auto operator<=>(const SlaterDeterminant&, const SlaterDeterminant&) = default;

 private:
  explicit SlaterDeterminant(std::uint64_t bits) : bits_(bits) {}
  std::uint64_t bits_ = 0;
};

struct SignedDeterminant {
  int sign = 1;
  SlaterDeterminant det;
};

/// a_{orbital,spin}|det⟩. nullopt means the spin-orbital was empty (zero result).
std::optional<SignedDeterminant> annihilate(const SlaterDeterminant& det, int orbital, Spin spin);

/// a†_{orbital,spin}|det⟩. nullopt means the spin-orbital was already filled.
std::optional<SignedDeterminant> create(const SlaterDeterminant& det, int orbital, Spin spin);

}  // namespace attopmm
