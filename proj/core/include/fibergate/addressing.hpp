#pragma once

#include <optional>

#include "fibergate/fiber.hpp"
#include "fibergate/gate.hpp"

namespace fibergate {

/// Gaussian addressing beam driving the light-shift transition.
struct AddressingBeam {
  double wavelength_nm = constants::kBeamWavelengthNm;
  double waist_um = constants::kBeamWaistUm;
  double polarizability_au = constants::kBeamPolarizabilityAu;

  void validate() const;
};

/// AC Stark shift of a driven transition, Omega^2 / (4 delta). Both
/// arguments and the result in 2*pi*MHz; delta must be nonzero.
double stark_shift(double rabi, double detuning);

/// Average laser power (mW) needed for a given light shift (2*pi*MHz).
double power_for_shift_mw(const AddressingBeam& beam, double shift);

/// Exact inverse of power_for_shift_mw.
double shift_for_power_mw(const AddressingBeam& beam, double power_mw);

/// Effective polarizability of the cavity transition from the scalar and
/// tensor components of the involved levels (all in atomic units).
double effective_polarizability(double scalar_excited, double tensor_excited,
                                double scalar_ground);

/// Couplings and shifts of one atom group; the coupling can be given
/// directly or resolved from the fiber distance.
struct AtomGroupSpec {
  std::optional<double> g;     ///< 2*pi*MHz, direct
  std::optional<double> r_nm;  ///< distance from the fiber center
  double delta = 0.0;          ///< detuning from the probe, 2*pi*MHz
};

/// Declarative description of a gate evaluation: cavity, gate kind and
/// flavor, target and non-target atom groups, optional fiber resolution.
struct Scenario {
  GateKind kind = GateKind::local;
  Flavor flavor = Flavor::post_selected;
  int total_atoms = 2;
  int control = 0;  ///< qubit indices, 0-based
  int target = 1;
  double probe_detuning = 0.0;
  double gamma = constants::kCsHalfLinewidth;
  CavitySpec cavity;
  ResidualCoupling residual;
  AtomGroupSpec targets;
  AtomGroupSpec nontargets;
  std::optional<FiberSpec> fiber;
  Polarization polarization = QuasiLinear{};
  AddressingBeam beam;

  void validate() const;
  bool needs_fiber() const;
};

/// Resolves a scenario into an explicit layout. Targeted qubits take the
/// `targets` group, every other atom the `nontargets` group. Remote gates
/// duplicate the cavity and distribute extra atoms alternately starting
/// with the control's cavity. Distances are converted to couplings through
/// `model` (solved on demand if absent but a fiber spec is present).
NodeLayout build_layout(const Scenario& scenario,
                        const CouplingModel* model = nullptr);

}  // namespace fibergate
