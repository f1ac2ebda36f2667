#pragma once

#include <array>
#include <string>

#include "fibergate/gate.hpp"

namespace fibergate {

/// Pauli-twirled picture of a gate channel. `rates` is indexed by base-4
/// little-endian Pauli strings: digit q of the index selects the Pauli on
/// qubit q with 0:I 1:X 2:Y 3:Z. `marginal` holds the 16 two-qubit rates
/// for the (control, target) pair with index 4 * target_digit +
/// control_digit, so e.g. marginal[3] is a Z on the control and identity
/// on the target.
struct PauliChannel {
  Eigen::VectorXd rates;
  std::array<double, 16> marginal{};
  double success_probability = 0.0;
  double bias = 0.0;  ///< +infinity for purely dephasing channels
  int n_qubits = 0;
  int control = 0;
  int target = 1;

  double marginal_rate(char target_pauli, char control_pauli) const;
};

/// Label of a marginal slot, written target-then-control ("IZ" is a Z on
/// the control qubit and nothing on the target).
std::string marginal_label(int index);

/// Diagonal of the Pauli transfer matrix of the ideal-adjusted channel
/// U^+ channel(.) U, one entry per Pauli string.
Eigen::VectorXd pauli_transfer_diagonal(const SchurChannel& channel,
                                        const Eigen::VectorXcd& ideal_diag,
                                        int n_qubits);

/// Inverts the PTM diagonal into Pauli error rates and marginalizes onto
/// the (control, target) pair.
PauliChannel error_rates(const Eigen::VectorXd& ptm_diagonal, int n_qubits,
                         int control, int target);

/// Dephasing over non-dephasing probability ratio of the two-qubit
/// marginal; +infinity when the non-dephasing weight is below 1e-12.
double noise_bias(const std::array<double, 16>& marginal);

/// Convenience wrapper: twirled rates of the gate channel for a layout.
PauliChannel pauli_channel(const NodeLayout& layout, double probe_detuning,
                           GateKind kind, Flavor flavor);

}  // namespace fibergate
