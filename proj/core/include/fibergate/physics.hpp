#pragma once

#include <complex>
#include <span>

#include "fibergate/constants.hpp"
#include "fibergate/errors.hpp"

namespace fibergate {

using Complex = std::complex<double>;

/// Decay rates of a one-sided cavity, all in 2*pi*MHz. The probe frequency
/// is carried as a detuning from the cavity resonance, so absolute optical
/// frequencies never appear.
struct CavitySpec {
  double kappa_r = 0.0;  ///< input mirror
  double kappa_t = 0.0;  ///< transmission through the end mirror
  double kappa_m = 0.0;  ///< mirror scattering

  double total() const { return kappa_r + kappa_t + kappa_m; }
  void validate() const;
};

/// One atom coupled to the guided mode. `delta` is the detuning of the
/// probe from the atomic transition when the probe sits exactly on the
/// cavity resonance; light shifts compose additively onto it.
struct AtomSpec {
  double g = 0.0;
  double delta = 0.0;
  double gamma = constants::kCsHalfLinewidth;

  void validate() const;
};

/// Output amplitudes of a single photon hitting the cavity: reflection,
/// transmission, mirror scattering and atomic scattering. Unit norm by
/// construction.
struct AmplitudeSet {
  Complex r, t, m, a;

  double norm_squared() const {
    return std::norm(r) + std::norm(t) + std::norm(m) + std::norm(a);
  }
};

/// Collective coupling g(N, omega) of a set of atoms at the given probe
/// detuning from the cavity resonance. The real part is never positive.
Complex collective_coupling(std::span<const AtomSpec> atoms,
                            double probe_detuning);

/// Photon scattering rate off the atoms; equals -Re{collective_coupling}.
double atomic_scatter_rate(std::span<const AtomSpec> atoms,
                           double probe_detuning);

/// All four output amplitudes for the given cavity and coupled atoms.
AmplitudeSet amplitudes(const CavitySpec& cavity,
                        std::span<const AtomSpec> atoms,
                        double probe_detuning);

/// Reflection coefficient for `coupled` identical resonant atoms,
/// r(N) = 1 - 2 kappa_r / (kappa + N g^2 / gamma).
Complex simplified_reflection(int coupled, double g, const CavitySpec& cavity,
                              double gamma = constants::kCsHalfLinewidth);

/// Additive correction to the non-coupled reflection coefficient caused by
/// the finite qubit splitting, evaluated at the fidelity-maximum condition
/// for a cavity with the given loss ratio kappa_r/kappa. `dipole_ratio_sq`
/// scales the residual coupling of the weak transition; 1 recovers the
/// same-excited-state model. Requires loss_ratio > 1/2.
Complex residual_reflection_shift(double loss_ratio, double gamma,
                                  double splitting,
                                  double dipole_ratio_sq = 1.0);

}  // namespace fibergate
