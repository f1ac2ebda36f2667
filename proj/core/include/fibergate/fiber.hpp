#pragma once

#include <Eigen/Dense>
#include <optional>
#include <variant>

#include "fibergate/constants.hpp"
#include "fibergate/errors.hpp"

namespace fibergate {

/// Step-index nanofiber with a vacuum/air cladding, plus the cavity length
/// entering the mode volume. Lengths in micrometers unless suffixed.
struct FiberSpec {
  double radius_um = 0.2;
  double core_index = 1.45;
  double cladding_index = 1.0;
  double wavenumber = constants::kCsD2Wavenumber;  ///< vacuum k, 1/um
  int azimuthal_order = 1;                         ///< fixed to 1 for HE11
  double cavity_length_m = 0.12;

  /// v = a k sqrt(n1^2 - n0^2), the dimensionless fiber volume.
  double fiber_volume() const;
  void validate() const;
};

/// Solved fundamental mode: dimensionless transverse wavenumbers u (core)
/// and w (cladding), propagation constant beta, and the field parameter s.
struct ModeSolution {
  double u = 0.0;
  double w = 0.0;
  double beta = 0.0;  ///< 1/um
  double s = 0.0;
  double v = 0.0;
  double field_match = 0.0;  ///< J_l(u)/K_l(w), continuity prefactor
  double residual = 0.0;     ///< characteristic equation at the root
};

/// Finds the fundamental hybrid root of the characteristic equation by a
/// bracketed scan in u followed by bisection. Throws SolverError with the
/// residual trace if no sign change exists.
ModeSolution solve_mode(const FiberSpec& fiber);

struct Circular {
  int handedness = +1;  ///< flips E_phi and the sense of the phase winding
};
struct QuasiLinear {
  double axis = 0.0;  ///< polarization direction phi_0
};
using Polarization = std::variant<Circular, QuasiLinear>;

/// Complex Cartesian field (E_x, E_y, E_z) of the guided mode at radius r
/// (from the fiber center), azimuth phi and position z. Quasi-linear
/// polarization superposes the two circular handednesses.
Eigen::Vector3cd field_at(const ModeSolution& mode, const FiberSpec& fiber,
                          double r_um, double phi, double z_um,
                          const Polarization& pol);

/// |E|^2 at a transverse position (z drops out).
double mode_intensity(const ModeSolution& mode, const FiberSpec& fiber,
                      double r_um, double phi, const Polarization& pol);

/// Mode volume in um^3: cavity length times the transverse integral of
/// eps |E|^2 over its spatial maximum. Relative quadrature error < 1e-6.
double mode_volume(const ModeSolution& mode, const FiberSpec& fiber,
                   const Polarization& pol);

/// Transition data for the coupling-strength conversion.
struct TransitionSpec {
  double reduced_dipole_ea0 = constants::kCsD2ReducedDipole;
  double projection_sq = constants::kCsD2ProjectionSq;
};

/// Atom-position description used by the coupling evaluation.
struct AtomPosition {
  double r_um = 0.3;
  double phi = 0.0;
};

/// Coupling strength g(r, phi) in 2*pi*MHz for an atom in the evanescent
/// field, for the given polarization state of the mode.
double coupling_strength(const ModeSolution& mode, const FiberSpec& fiber,
                         const AtomPosition& where, const Polarization& pol,
                         const TransitionSpec& transition = {});

/// Solves the mode once and caches the normalization integral so that
/// repeated position queries stay cheap.
class CouplingModel {
 public:
  explicit CouplingModel(const FiberSpec& fiber,
                         const TransitionSpec& transition = {});

  const ModeSolution& mode() const { return mode_; }
  const FiberSpec& fiber() const { return fiber_; }

  double g(const AtomPosition& where, const Polarization& pol) const;
  /// Quasi-linear light with the atom on the polarization axis.
  double g_linear_parallel(double r_um) const;
  /// Quasi-linear light with the atom orthogonal to the polarization axis.
  double g_linear_orthogonal(double r_um) const;
  double g_circular(double r_um) const;
  double mode_volume(const Polarization& pol) const;

 private:
  FiberSpec fiber_;
  TransitionSpec transition_;
  ModeSolution mode_;
  double plane_integral_;  ///< integral of eps |E|^2 over the cross-section
  double g_scale_;         ///< sqrt(mu^2 omega / (2 hbar eps0 L integral))
};

// Bessel helpers shared with the tests; thin wrappers over the standard
// library implementations plus the derivative recurrences.
double bessel_j(int order, double x);
double bessel_k(int order, double x);
double bessel_j_prime(int order, double x);
double bessel_k_prime(int order, double x);

}  // namespace fibergate
