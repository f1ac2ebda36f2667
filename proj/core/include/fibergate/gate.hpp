#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "fibergate/physics.hpp"

namespace fibergate {

enum class GateKind { local, remote };
enum class Flavor { total, post_selected };

/// Optional weak coupling of the nominally dark qubit state. When enabled,
/// every atom whose qubit is |0> still couples with strength
/// g * sqrt(dipole_ratio_sq) at a detuning shifted by `splitting`.
struct ResidualCoupling {
  bool enabled = false;
  double dipole_ratio_sq = constants::kCsDipoleRatioSq;
  double splitting = constants::kCsResidualSplitting;
};

struct PlacedAtom {
  AtomSpec atom;
  int cavity = 0;
};

/// Atoms distributed over one or more cavities. The vector index is the
/// qubit number; qubit 0 occupies the least significant bit of a basis
/// state index, i.e. the rightmost slot of |q_{N-1} ... q_1 q_0>.
struct NodeLayout {
  std::vector<CavitySpec> cavities;
  std::vector<PlacedAtom> atoms;
  int control = 0;
  int target = 1;
  ResidualCoupling residual;
  int qubit_cap = 10;

  int qubit_count() const { return static_cast<int>(atoms.size()); }
  int dim() const { return 1 << atoms.size(); }
  void validate(GateKind kind) const;
};

struct GMatrix {
  Eigen::MatrixXcd m;
  Flavor flavor = Flavor::total;
};

/// Photon output amplitudes of one cavity for every atomic basis state.
/// Atom n joins the coupled set of configuration i iff bit n of i is set
/// and the atom sits in the requested cavity.
std::vector<AmplitudeSet> configuration_amplitudes(const NodeLayout& layout,
                                                   int cavity,
                                                   double probe_detuning);

/// Just the reflection coefficients, as a vector over basis states.
Eigen::VectorXcd configuration_reflections(const NodeLayout& layout,
                                           int cavity, double probe_detuning);

/// Photonic overlap matrix: (G_total)_ij = <p_j|p_i> over all four output
/// modes, or the rank-one reflection-only variant for post-selection.
GMatrix build_g_matrix(const NodeLayout& layout, int cavity,
                       double probe_detuning, Flavor flavor);

struct GateResult {
  Eigen::MatrixXcd rho;
  double success_probability = 1.0;
};

/// Single-reflection gate on two qubits in the same cavity. The total
/// flavor traces out the photon (trace preserving); the post-selected
/// flavor conditions on detecting the reflected photon and renormalizes,
/// returning the success probability separately.
GateResult apply_local_gate(const Eigen::MatrixXcd& rho,
                            const NodeLayout& layout, double probe_detuning,
                            Flavor flavor);

/// Controlled phase flip between the photon polarization and the atoms in
/// the control qubit's cavity. `rho` lives on the polarization (x) atom
/// space with basis index pol * 2^N + config and pol 0 = H. Returns the
/// unnormalized reflected branch.
Eigen::MatrixXcd apply_atom_photon_gate(const Eigen::MatrixXcd& rho,
                                        const NodeLayout& layout,
                                        double probe_detuning);

/// Two-reflection gate between qubits in distinct cavities: Hadamard,
/// cavity-1 reflection, Hadamard, cavity-2 reflection, Hadamard, then a
/// polarization measurement with a Z on the control conditioned on the V
/// outcome. Post-selected by construction.
GateResult apply_remote_gate(const Eigen::MatrixXcd& rho,
                             const NodeLayout& layout, double probe_detuning);

/// Channel-averaged success probability over the equal superposition of
/// all atomic basis states.
double success_probability(const NodeLayout& layout, double probe_detuning,
                           GateKind kind);

/// Every gate channel in this model acts element-wise, rho -> rho o G,
/// with a Hermitian PSD channel matrix G.
struct SchurChannel {
  Eigen::MatrixXcd g;
  bool post_selected = false;

  Eigen::MatrixXcd apply(const Eigen::MatrixXcd& rho) const {
    return rho.cwiseProduct(g);
  }
};

SchurChannel local_channel(const NodeLayout& layout, double probe_detuning,
                           Flavor flavor);
SchurChannel remote_channel(const NodeLayout& layout, double probe_detuning);
SchurChannel gate_channel(const NodeLayout& layout, double probe_detuning,
                          GateKind kind, Flavor flavor);

/// Kraus diagonals of the remote channel: the H branch and the V branch
/// including its conditional Z on the control qubit.
std::pair<Eigen::VectorXcd, Eigen::VectorXcd> remote_branch_diagonals(
    const NodeLayout& layout, double probe_detuning);

/// Diagonal (+-1 entries) of the ideal unitary: a pi phase on |00> of the
/// targeted pair for local gates and on |11> for remote ones.
Eigen::VectorXcd ideal_phase_diagonal(GateKind kind, const NodeLayout& layout);

/// Throws unless rho is square of dimension dim, Hermitian and positive
/// semidefinite within `tol`.
void require_valid_density_matrix(const Eigen::MatrixXcd& rho, int dim,
                                  double tol = 1e-9);

}  // namespace fibergate
