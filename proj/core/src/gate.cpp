#include "fibergate/gate.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace fibergate {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

int cavity_of(const NodeLayout& layout, int qubit) {
  return layout.atoms[static_cast<size_t>(qubit)].cavity;
}

}  // namespace

void NodeLayout::validate(GateKind kind) const {
  if (atoms.size() < 2) throw PhysicsError("layout: need at least two atoms");
  if (qubit_count() > qubit_cap)
    throw PhysicsError("layout: qubit count exceeds the configured cap of " +
                       std::to_string(qubit_cap));
  if (cavities.empty()) throw PhysicsError("layout: no cavities");
  for (const CavitySpec& c : cavities) c.validate();
  for (const PlacedAtom& pa : atoms) {
    pa.atom.validate();
    if (pa.cavity < 0 || pa.cavity >= static_cast<int>(cavities.size()))
      throw PhysicsError("layout: atom assigned to an unknown cavity");
  }
  if (control == target || control < 0 || target < 0 ||
      control >= qubit_count() || target >= qubit_count())
    throw PhysicsError("layout: control/target qubits invalid");
  const bool same = cavity_of(*this, control) == cavity_of(*this, target);
  if (kind == GateKind::local && !same)
    throw PhysicsError("layout: local gate needs control and target in one cavity");
  if (kind == GateKind::remote && same)
    throw PhysicsError("layout: remote gate needs control and target in distinct cavities");
}

std::vector<AmplitudeSet> configuration_amplitudes(const NodeLayout& layout,
                                                   int cavity,
                                                   double probe_detuning) {
  if (cavity < 0 || cavity >= static_cast<int>(layout.cavities.size()))
    throw PhysicsError("configuration_amplitudes: unknown cavity");
  const int n = layout.qubit_count();
  if (n > layout.qubit_cap)
    throw PhysicsError("configuration_amplitudes: qubit cap exceeded");
  const CavitySpec& cav = layout.cavities[static_cast<size_t>(cavity)];

  std::vector<AmplitudeSet> out;
  out.reserve(static_cast<size_t>(1) << n);
  std::vector<AtomSpec> coupled;
  for (int config = 0; config < (1 << n); ++config) {
    coupled.clear();
    for (int q = 0; q < n; ++q) {
      const PlacedAtom& pa = layout.atoms[static_cast<size_t>(q)];
      if (pa.cavity != cavity) continue;
      if (config >> q & 1) {
        coupled.push_back(pa.atom);
      } else if (layout.residual.enabled) {
        AtomSpec weak = pa.atom;
        weak.g *= std::sqrt(layout.residual.dipole_ratio_sq);
        weak.delta += layout.residual.splitting;
        coupled.push_back(weak);
      }
    }
    out.push_back(amplitudes(cav, coupled, probe_detuning));
  }
  return out;
}

Eigen::VectorXcd configuration_reflections(const NodeLayout& layout,
                                           int cavity, double probe_detuning) {
  const auto amps = configuration_amplitudes(layout, cavity, probe_detuning);
  Eigen::VectorXcd r(static_cast<Eigen::Index>(amps.size()));
  for (size_t i = 0; i < amps.size(); ++i)
    r(static_cast<Eigen::Index>(i)) = amps[i].r;
  return r;
}

GMatrix build_g_matrix(const NodeLayout& layout, int cavity,
                       double probe_detuning, Flavor flavor) {
  const auto amps = configuration_amplitudes(layout, cavity, probe_detuning);
  const Eigen::Index d = static_cast<Eigen::Index>(amps.size());
  GMatrix out;
  out.flavor = flavor;
  out.m.resize(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const AmplitudeSet& pi = amps[static_cast<size_t>(i)];
    for (Eigen::Index j = 0; j < d; ++j) {
      const AmplitudeSet& pj = amps[static_cast<size_t>(j)];
      if (flavor == Flavor::post_selected) {
        out.m(i, j) = pi.r * std::conj(pj.r);
      } else {
        out.m(i, j) = pi.r * std::conj(pj.r) + pi.t * std::conj(pj.t) +
                      pi.m * std::conj(pj.m) + pi.a * std::conj(pj.a);
      }
    }
  }
  return out;
}

void require_valid_density_matrix(const Eigen::MatrixXcd& rho, int dim,
                                  double tol) {
  if (rho.rows() != dim || rho.cols() != dim)
    throw PhysicsError("density matrix has wrong dimension");
  if (!rho.isApprox(rho.adjoint(), tol))
    throw PhysicsError("density matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho,
                                                     Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol)
    throw PhysicsError("density matrix is not positive semidefinite");
}

GateResult apply_local_gate(const Eigen::MatrixXcd& rho,
                            const NodeLayout& layout, double probe_detuning,
                            Flavor flavor) {
  layout.validate(GateKind::local);
  require_valid_density_matrix(rho, layout.dim());
  const int cav = cavity_of(layout, layout.control);
  const GMatrix g = build_g_matrix(layout, cav, probe_detuning, flavor);
  GateResult out;
  out.rho = rho.cwiseProduct(g.m);
  if (flavor == Flavor::post_selected) {
    const double ps = out.rho.trace().real();
    if (ps <= 0.0)
      throw PhysicsError("apply_local_gate: vanishing success probability");
    out.rho /= ps;
    out.success_probability = ps;
  }
  return out;
}

Eigen::MatrixXcd apply_atom_photon_gate(const Eigen::MatrixXcd& rho,
                                        const NodeLayout& layout,
                                        double probe_detuning) {
  const int d = layout.dim();
  if (rho.rows() != 2 * d || rho.cols() != 2 * d)
    throw PhysicsError(
        "apply_atom_photon_gate: density matrix lacks the polarization factor");
  const Eigen::VectorXcd r = configuration_reflections(
      layout, cavity_of(layout, layout.control), probe_detuning);
  Eigen::VectorXcd kraus(2 * d);
  for (int i = 0; i < d; ++i) {
    kraus(i) = r(i);      // H component reflects off the cavity
    kraus(d + i) = 1.0;   // V component bypasses it
  }
  return kraus.asDiagonal() * rho * kraus.conjugate().asDiagonal();
}

std::pair<Eigen::VectorXcd, Eigen::VectorXcd> remote_branch_diagonals(
    const NodeLayout& layout, double probe_detuning) {
  const Eigen::VectorXcd r1 = configuration_reflections(
      layout, cavity_of(layout, layout.control), probe_detuning);
  const Eigen::VectorXcd r2 = configuration_reflections(
      layout, cavity_of(layout, layout.target), probe_detuning);
  const int d = layout.dim();
  Eigen::VectorXcd h(d), v(d);
  for (int i = 0; i < d; ++i) {
    const Complex round_trip = r2(i) * (r1(i) + 1.0);
    h(i) = (round_trip + r1(i) - 1.0) / (2.0 * kSqrt2);
    const double z = (i >> layout.control & 1) ? -1.0 : 1.0;
    v(i) = z * (round_trip - r1(i) + 1.0) / (2.0 * kSqrt2);
  }
  return {h, v};
}

GateResult apply_remote_gate(const Eigen::MatrixXcd& rho,
                             const NodeLayout& layout, double probe_detuning) {
  layout.validate(GateKind::remote);
  const int d = layout.dim();
  require_valid_density_matrix(rho, d);

  // Walk the physical sequence on the polarization (x) atom space.
  Eigen::MatrixXcd ext = Eigen::MatrixXcd::Zero(2 * d, 2 * d);
  ext.topLeftCorner(d, d) = rho;  // photon starts in |H>

  const auto hadamard = [&](Eigen::MatrixXcd& m) {
    Eigen::MatrixXcd h(2 * d, 2 * d);
    h.topLeftCorner(d, d) = (m.topLeftCorner(d, d) + m.bottomLeftCorner(d, d) +
                             m.topRightCorner(d, d) + m.bottomRightCorner(d, d));
    h.topRightCorner(d, d) = (m.topLeftCorner(d, d) - m.topRightCorner(d, d) +
                              m.bottomLeftCorner(d, d) - m.bottomRightCorner(d, d));
    h.bottomLeftCorner(d, d) = (m.topLeftCorner(d, d) + m.topRightCorner(d, d) -
                                m.bottomLeftCorner(d, d) - m.bottomRightCorner(d, d));
    h.bottomRightCorner(d, d) = (m.topLeftCorner(d, d) - m.topRightCorner(d, d) -
                                 m.bottomLeftCorner(d, d) + m.bottomRightCorner(d, d));
    m = 0.5 * h;
  };
  const auto reflect = [&](Eigen::MatrixXcd& m, int cavity) {
    const Eigen::VectorXcd r =
        configuration_reflections(layout, cavity, probe_detuning);
    Eigen::VectorXcd k(2 * d);
    k.head(d) = r;
    k.tail(d).setOnes();
    m = k.asDiagonal() * m * k.conjugate().asDiagonal();
  };

  hadamard(ext);
  reflect(ext, cavity_of(layout, layout.control));
  hadamard(ext);
  reflect(ext, cavity_of(layout, layout.target));
  hadamard(ext);

  // Project on the polarization outcomes, fix up the V branch with a Z on
  // the control qubit, then drop the photon.
  Eigen::MatrixXcd rho_h = ext.topLeftCorner(d, d);
  Eigen::MatrixXcd rho_v = ext.bottomRightCorner(d, d);
  Eigen::VectorXcd z(d);
  for (int i = 0; i < d; ++i)
    z(i) = (i >> layout.control & 1) ? -1.0 : 1.0;
  rho_v = z.asDiagonal() * rho_v * z.asDiagonal();

  GateResult out;
  out.rho = rho_h + rho_v;
  const double ps = out.rho.trace().real();
  if (ps <= 0.0)
    throw PhysicsError("apply_remote_gate: vanishing success probability");
  out.rho /= ps;
  out.success_probability = ps;
  return out;
}

double success_probability(const NodeLayout& layout, double probe_detuning,
                           GateKind kind) {
  layout.validate(kind);
  const int d = layout.dim();
  if (kind == GateKind::local) {
    const GMatrix g =
        build_g_matrix(layout, cavity_of(layout, layout.control),
                       probe_detuning, Flavor::post_selected);
    return g.m.trace().real() / d;
  }
  const auto [h, v] = remote_branch_diagonals(layout, probe_detuning);
  return (h.squaredNorm() + v.squaredNorm()) / d;
}

SchurChannel local_channel(const NodeLayout& layout, double probe_detuning,
                           Flavor flavor) {
  layout.validate(GateKind::local);
  SchurChannel ch;
  ch.g = build_g_matrix(layout, cavity_of(layout, layout.control),
                        probe_detuning, flavor)
             .m;
  ch.post_selected = flavor == Flavor::post_selected;
  return ch;
}

SchurChannel remote_channel(const NodeLayout& layout, double probe_detuning) {
  layout.validate(GateKind::remote);
  const auto [h, v] = remote_branch_diagonals(layout, probe_detuning);
  SchurChannel ch;
  ch.g = h * h.adjoint() + v * v.adjoint();
  ch.post_selected = true;
  return ch;
}

SchurChannel gate_channel(const NodeLayout& layout, double probe_detuning,
                          GateKind kind, Flavor flavor) {
  if (kind == GateKind::local)
    return local_channel(layout, probe_detuning, flavor);
  return remote_channel(layout, probe_detuning);
}

Eigen::VectorXcd ideal_phase_diagonal(GateKind kind,
                                      const NodeLayout& layout) {
  const int d = layout.dim();
  Eigen::VectorXcd u = Eigen::VectorXcd::Ones(d);
  for (int i = 0; i < d; ++i) {
    const bool c = i >> layout.control & 1;
    const bool t = i >> layout.target & 1;
    if (kind == GateKind::local ? (!c && !t) : (c && t)) u(i) = -1.0;
  }
  return u;
}

}  // namespace fibergate
