#pragma once

// Physical constants (CODATA 2018) and the cesium-specific defaults used
// throughout the library. Rates and frequencies are handled in units of
// 2*pi*MHz unless a suffix says otherwise; lengths are micrometers inside
// the fiber solver.

namespace fibergate::constants {

inline constexpr double kHBar = 1.054571817e-34;           // J s
inline constexpr double kSpeedOfLight = 299792458.0;       // m / s
inline constexpr double kVacuumPermittivity = 8.8541878128e-12;  // F / m
inline constexpr double kElementaryCharge = 1.602176634e-19;     // C
inline constexpr double kBohrRadius = 5.29177210903e-11;         // m
inline constexpr double kPolarizabilityAu = 1.64877727436e-41;   // C^2 m^2 / J per a.u.

// Cs D2 line and clock transition.
inline constexpr double kCsHalfLinewidth = 2.6;            // gamma, 2*pi*MHz
inline constexpr double kCsClockSplitting = 9192.631770;   // omega_q, 2*pi*MHz
inline constexpr double kCsExcitedHyperfineShift = 251.1;  // 2*pi*MHz
// Effective detuning of the weakly coupled qubit state from the probe.
inline constexpr double kCsResidualSplitting =
    kCsClockSplitting - kCsExcitedHyperfineShift;
// Squared ratio of the dipole moments of the two qubit-state transitions.
inline constexpr double kCsDipoleRatioSq = 3.0 / 7.0;

// Guided-mode coupling of the strongly coupled transition: reduced dipole
// moment in units of e*a0 and the effective squared projection factor of
// the pi-coupled clock transition onto the guided mode.
inline constexpr double kCsD2ReducedDipole = 4.4837;
inline constexpr double kCsD2ProjectionSq = 11.0 / 45.0;
inline constexpr double kCsD2Wavenumber = 7.372;           // 1/um

// Addressing-beam defaults for the 1480 nm light-shift transition.
inline constexpr double kBeamWavelengthNm = 1480.0;
inline constexpr double kBeamWaistUm = 2.0;
inline constexpr double kBeamPolarizabilityAu = 26709.98;  // a.u.

}  // namespace fibergate::constants
