#include "fibergate/addressing.hpp"

#include <cmath>
#include <numbers>

namespace fibergate {

namespace cn = constants;

void AddressingBeam::validate() const {
  if (waist_um <= 0.0) throw PhysicsError("beam: waist must be positive");
  if (polarizability_au == 0.0)
    throw PhysicsError("beam: polarizability must be nonzero");
}

double stark_shift(double rabi, double detuning) {
  if (detuning == 0.0)
    throw PhysicsError("stark_shift: detuning must be nonzero");
  return rabi * rabi / (4.0 * detuning);
}

double power_for_shift_mw(const AddressingBeam& beam, double shift) {
  beam.validate();
  if (beam.polarizability_au <= 0.0)
    throw PhysicsError("power_for_shift: polarizability must be positive");
  if (shift < 0.0) throw PhysicsError("power_for_shift: shift must be >= 0");
  const double shift_rad_s = 2.0 * std::numbers::pi * shift * 1e6;
  const double waist_m = beam.waist_um * 1e-6;
  const double alpha_si = beam.polarizability_au * cn::kPolarizabilityAu;
  const double watts = 2.0 * std::numbers::pi * cn::kHBar *
                       cn::kSpeedOfLight * cn::kVacuumPermittivity *
                       waist_m * waist_m * shift_rad_s / alpha_si;
  return watts * 1e3;
}

double shift_for_power_mw(const AddressingBeam& beam, double power_mw) {
  const double per_unit = power_for_shift_mw(beam, 1.0);
  return power_mw / per_unit;
}

double effective_polarizability(double scalar_excited, double tensor_excited,
                                double scalar_ground) {
  return scalar_excited - 2.0 / 3.0 * tensor_excited - scalar_ground;
}

bool Scenario::needs_fiber() const {
  const bool direct = targets.g.has_value() &&
                      (total_atoms <= 2 || nontargets.g.has_value());
  return !direct;
}

void Scenario::validate() const {
  cavity.validate();
  beam.validate();
  if (total_atoms < 2) throw PhysicsError("scenario: need at least two atoms");
  if (control == target || control < 0 || target < 0 ||
      control >= total_atoms || target >= total_atoms)
    throw PhysicsError("scenario: control/target qubits invalid");
  if (gamma <= 0.0) throw PhysicsError("scenario: gamma must be positive");
  const auto check_group = [&](const AtomGroupSpec& grp, const char* name) {
    if (!grp.g && !grp.r_nm)
      throw PhysicsError(std::string("scenario: ") + name +
                         " needs either a coupling or a fiber distance");
    if (grp.g && grp.r_nm)
      throw PhysicsError(std::string("scenario: ") + name +
                         " must not set both coupling and distance");
  };
  check_group(targets, "target group");
  if (total_atoms > 2) check_group(nontargets, "non-target group");
  if (needs_fiber() && !fiber)
    throw PhysicsError("scenario: fiber section required to resolve distances");
  if (fiber) fiber->validate();
}

NodeLayout build_layout(const Scenario& scenario, const CouplingModel* model) {
  scenario.validate();

  std::optional<CouplingModel> own;
  if (scenario.needs_fiber() && model == nullptr) {
    own.emplace(*scenario.fiber);
    model = &*own;
  }

  const auto resolve_g = [&](const AtomGroupSpec& grp) {
    if (grp.g) return *grp.g;
    const double r_um = *grp.r_nm * 1e-3;
    if (r_um <= model->fiber().radius_um)
      throw PhysicsError("scenario: atom distance lies inside the fiber");
    return model->g({r_um, 0.0}, scenario.polarization);
  };

  NodeLayout layout;
  layout.residual = scenario.residual;
  if (scenario.kind == GateKind::local) {
    layout.cavities = {scenario.cavity};
  } else {
    layout.cavities = {scenario.cavity, scenario.cavity};
  }

  const double g_target = resolve_g(scenario.targets);
  const double g_rest =
      scenario.total_atoms > 2 ? resolve_g(scenario.nontargets) : 0.0;

  layout.control = scenario.control;
  layout.target = scenario.target;
  layout.atoms.resize(static_cast<size_t>(scenario.total_atoms));
  int extra_rank = 0;  // alternating cavity assignment for the spectators
  for (int q = 0; q < scenario.total_atoms; ++q) {
    PlacedAtom& pa = layout.atoms[static_cast<size_t>(q)];
    const bool targeted = q == scenario.control || q == scenario.target;
    pa.atom.gamma = scenario.gamma;
    if (targeted) {
      pa.atom.g = g_target;
      pa.atom.delta = scenario.targets.delta;
    } else {
      pa.atom.g = g_rest;
      pa.atom.delta = scenario.nontargets.delta;
    }
    if (scenario.kind == GateKind::local) {
      pa.cavity = 0;
    } else if (q == scenario.control) {
      pa.cavity = 0;
    } else if (q == scenario.target) {
      pa.cavity = 1;
    } else {
      pa.cavity = extra_rank++ % 2;
    }
  }
  layout.validate(scenario.kind);
  return layout;
}

}  // namespace fibergate
