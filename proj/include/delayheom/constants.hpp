#pragma once

#include <complex>

namespace delayheom {

using cplx = std::complex<double>;

/// Physical constants in the simulator's unit system (eV, fs, μm).
/// The only definitions of ħ and c in the code base.
struct PhysicalConstants {
    static constexpr double hbar = 0.6582119569;  ///< eV·fs
    static constexpr double c = 0.299792458;      ///< μm/fs
};

inline constexpr double kHbar = PhysicalConstants::hbar;
inline constexpr double kSpeedOfLight = PhysicalConstants::c;

/// Cavity labels. Index 0 is A, index 1 is B.
enum class Cavity { A = 0, B = 1 };

inline constexpr int index_of(Cavity c) { return static_cast<int>(c); }
inline constexpr Cavity other(Cavity c) { return c == Cavity::A ? Cavity::B : Cavity::A; }
inline constexpr const char* name_of(Cavity c) { return c == Cavity::A ? "A" : "B"; }

}  // namespace delayheom
