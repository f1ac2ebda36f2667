#include "fibergate/physics.hpp"

#include <algorithm>
#include <cmath>

namespace fibergate {

void CavitySpec::validate() const {
  if (kappa_r <= 0.0) throw PhysicsError("cavity: kappa_r must be positive");
  if (kappa_t < 0.0 || kappa_m < 0.0)
    throw PhysicsError("cavity: decay rates must be non-negative");
}

void AtomSpec::validate() const {
  if (g < 0.0) throw PhysicsError("atom: coupling strength must be >= 0");
  if (gamma <= 0.0) throw PhysicsError("atom: gamma must be positive");
}

Complex collective_coupling(std::span<const AtomSpec> atoms,
                            double probe_detuning) {
  Complex sum = 0.0;
  for (const AtomSpec& at : atoms) {
    sum += at.g * at.g / Complex(-at.gamma, probe_detuning + at.delta);
  }
  return sum;
}

double atomic_scatter_rate(std::span<const AtomSpec> atoms,
                           double probe_detuning) {
  double rate = -collective_coupling(atoms, probe_detuning).real();
  return rate < 0.0 ? 0.0 : rate;  // clip the -0.0 of an empty sum
}

AmplitudeSet amplitudes(const CavitySpec& cavity,
                        std::span<const AtomSpec> atoms,
                        double probe_detuning) {
  cavity.validate();
  const Complex coupling = collective_coupling(atoms, probe_detuning);
  const double kappa_a = -coupling.real();
  const Complex denom = Complex(-cavity.total(), probe_detuning) + coupling;
  if (denom == Complex(0.0, 0.0))
    throw PhysicsError("amplitudes: vanishing response denominator");
  AmplitudeSet out;
  out.r = 1.0 + 2.0 * cavity.kappa_r / denom;
  out.t = 2.0 * std::sqrt(cavity.kappa_r * cavity.kappa_t) / denom;
  out.m = 2.0 * std::sqrt(cavity.kappa_r * cavity.kappa_m) / denom;
  out.a = 2.0 * std::sqrt(cavity.kappa_r * std::max(kappa_a, 0.0)) / denom;
  return out;
}

Complex simplified_reflection(int coupled, double g, const CavitySpec& cavity,
                              double gamma) {
  cavity.validate();
  if (coupled < 0) throw PhysicsError("simplified_reflection: negative count");
  return 1.0 - 2.0 * cavity.kappa_r /
                   (cavity.total() + coupled * g * g / gamma);
}

Complex residual_reflection_shift(double loss_ratio, double gamma,
                                  double splitting, double dipole_ratio_sq) {
  if (loss_ratio <= 0.5 || loss_ratio > 1.0)
    throw PhysicsError(
        "residual_reflection_shift: loss ratio must lie in (1/2, 1]");
  if (splitting <= 0.0)
    throw PhysicsError("residual_reflection_shift: splitting must be > 0");
  const double coop = loss_ratio / (1.0 - loss_ratio) - 1.0;
  const Complex inner =
      1.0 + Complex(0.0, 2.0 * gamma / splitting * dipole_ratio_sq * coop);
  return 2.0 * loss_ratio * (1.0 - 1.0 / inner);
}

}  // namespace fibergate
