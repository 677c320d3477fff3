#pragma once

#include <cmath>

// Physical constants (SI, CODATA 2018) and common angles.
namespace nvnmr {

inline constexpr double kMu0 = 1.25663706212e-6;        // vacuum permeability [T m / A]
inline constexpr double kPlanck = 6.62607015e-34;       // Planck constant [J s]
inline constexpr double kBoltzmann = 1.380649e-23;      // [J / K]
inline constexpr double kGammaProton = 42.577478518e6;  // 1H gyromagnetic ratio [Hz / T]
inline constexpr double kGammaElectron = 28.02495164e9; // NV electron spin [Hz / T]
inline constexpr double kGammaN15 = 4.3156e6;           // 15N, magnitude [Hz / T]

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// arccos(1/sqrt(3)) ~ 54.7356 deg; rank-2 anisotropies average to zero
// when rotated on a cone of this aperture.
inline const double kMagicAngle = std::acos(1.0 / std::sqrt(3.0));

inline double deg2rad(double deg) { return deg * kPi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / kPi; }

} // namespace nvnmr
