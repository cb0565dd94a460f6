#pragma once

// Natural units: hbar = m = c = e = 1. Lengths are in Compton radii hbar/mc,
// magnetic moments in Bohr magnetons e*hbar/2mc, angular momenta in hbar,
// energies in mc^2.

namespace dirac_packets::units {

inline constexpr double hbar = 1.0;
inline constexpr double mass = 1.0;
inline constexpr double c = 1.0;
inline constexpr double charge = 1.0;  // e > 0; the electron carries -e

inline constexpr double compton_radius = hbar / (mass * c);
inline constexpr double bohr_magneton = charge * hbar / (2.0 * mass * c);
inline constexpr double rest_energy = mass * c * c;

constexpr double to_bohr_magnetons(double mu_z) { return mu_z / bohr_magneton; }
constexpr double from_bohr_magnetons(double ratio) { return ratio * bohr_magneton; }

constexpr double to_hbar_halves(double l_z) { return l_z / (0.5 * hbar); }
constexpr double from_hbar_halves(double ratio) { return ratio * 0.5 * hbar; }

constexpr double to_rest_energies(double energy) { return energy / rest_energy; }
constexpr double to_compton_squared(double area) { return area / (compton_radius * compton_radius); }

}  // namespace dirac_packets::units
