#pragma once

// Unit policy: everything inside the library is in atomic units. Conversions
// happen at the I/O boundary only (config, tables, exports, CLI).

namespace attopmm::units {

inline constexpr double hartree_in_ev = 27.211386;
inline constexpr double bohr_in_angstrom = 0.529177;
inline constexpr double atomic_time_in_fs = 0.02418884;
inline constexpr double speed_of_light = 137.036;
inline constexpr double pi = 3.14159265358979323846;

constexpr double ev_to_hartree(double ev) { return ev / hartree_in_ev; }
constexpr double hartree_to_ev(double ha) { return ha * hartree_in_ev; }
constexpr double fs_to_au(double fs) { return fs / atomic_time_in_fs; }
constexpr double au_to_fs(double t) { return t * atomic_time_in_fs; }
constexpr double angstrom_to_bohr(double a) { return a / bohr_in_angstrom; }
constexpr double bohr_to_angstrom(double b) { return b * bohr_in_angstrom; }
// Momenta: 1 bohr^-1 = 1/0.529177 Å^-1.
constexpr double inv_bohr_to_inv_angstrom(double q) { return q / bohr_in_angstrom; }
constexpr double inv_angstrom_to_inv_bohr(double q) { return q * bohr_in_angstrom; }

}  // namespace attopmm::units
