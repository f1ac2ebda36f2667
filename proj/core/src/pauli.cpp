#include "fibergate/pauli.hpp"

#include <cmath>
#include <limits>

namespace fibergate {

namespace {

constexpr char kPauliChars[4] = {'I', 'X', 'Y', 'Z'};

int pauli_digit(int string_index, int qubit) {
  return string_index >> (2 * qubit) & 3;
}

// sigma|k> = phase(k) |k ^ xmask>; X and Y flip the bit, Y and Z carry a
// configuration-dependent phase.
int x_mask(int string_index, int n_qubits) {
  int mask = 0;
  for (int q = 0; q < n_qubits; ++q) {
    const int dig = pauli_digit(string_index, q);
    if (dig == 1 || dig == 2) mask |= 1 << q;
  }
  return mask;
}

Complex pauli_phase(int string_index, int n_qubits, int basis_state) {
  Complex phase = 1.0;
  for (int q = 0; q < n_qubits; ++q) {
    const int dig = pauli_digit(string_index, q);
    const bool bit = basis_state >> q & 1;
    if (dig == 2) phase *= bit ? Complex(0.0, -1.0) : Complex(0.0, 1.0);
    if (dig == 3 && bit) phase *= -1.0;
  }
  return phase;
}

}  // namespace

std::string marginal_label(int index) {
  return {kPauliChars[index >> 2 & 3], kPauliChars[index & 3]};
}

double PauliChannel::marginal_rate(char target_pauli,
                                   char control_pauli) const {
  const auto digit = [](char c) {
    switch (c) {
      case 'I': return 0;
      case 'X': return 1;
      case 'Y': return 2;
      case 'Z': return 3;
    }
    throw PhysicsError("marginal_rate: unknown Pauli label");
  };
  return marginal[static_cast<size_t>(4 * digit(target_pauli) +
                                      digit(control_pauli))];
}

Eigen::VectorXd pauli_transfer_diagonal(const SchurChannel& channel,
                                        const Eigen::VectorXcd& ideal_diag,
                                        int n_qubits) {
  const int d = 1 << n_qubits;
  if (channel.g.rows() != d || ideal_diag.size() != d)
    throw PhysicsError("pauli_transfer_diagonal: dimension mismatch");
  const int n_strings = 1 << (2 * n_qubits);

  // Ideal-adjusted channel matrix: (G')_jk = conj(u_j) G_jk u_k.
  Eigen::MatrixXcd adj = channel.g;
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k)
      adj(j, k) *= std::conj(ideal_diag(j)) * ideal_diag(k);

  Eigen::VectorXd diag(n_strings);
  for (int alpha = 0; alpha < n_strings; ++alpha) {
    const int mask = x_mask(alpha, n_qubits);
    Complex acc = 0.0;
    for (int k = 0; k < d; ++k) {
      const int j = k ^ mask;
      acc += pauli_phase(alpha, n_qubits, j) *
             pauli_phase(alpha, n_qubits, k) * adj(j, k);
    }
    diag(alpha) = acc.real() / d;
  }
  return diag;
}

PauliChannel error_rates(const Eigen::VectorXd& ptm_diagonal, int n_qubits,
                         int control, int target) {
  const long n_strings = 1L << (2 * n_qubits);
  if (ptm_diagonal.size() != n_strings)
    throw PhysicsError("error_rates: diagonal length is not 4^N");
  if (control == target)
    throw PhysicsError("error_rates: control and target coincide");

  // Apply (A1/4)^(x)N digit by digit; A1 is its own inverse up to the 1/4.
  static const double a1[4][4] = {{1, 1, 1, 1},
                                  {1, 1, -1, -1},
                                  {1, -1, 1, -1},
                                  {1, -1, -1, 1}};
  Eigen::VectorXd rates = ptm_diagonal;
  Eigen::VectorXd next(n_strings);
  for (int q = 0; q < n_qubits; ++q) {
    const long stride = 1L << (2 * q);
    for (long base = 0; base < n_strings; ++base) {
      const int digit = static_cast<int>(base / stride) & 3;
      const long root = base - digit * stride;
      double acc = 0.0;
      for (int other = 0; other < 4; ++other)
        acc += a1[digit][other] * rates(root + other * stride);
      next(base) = 0.25 * acc;
    }
    rates.swap(next);
  }

  PauliChannel out;
  out.rates = rates;
  out.n_qubits = n_qubits;
  out.control = control;
  out.target = target;
  out.success_probability = rates.sum();
  out.marginal.fill(0.0);
  for (long s = 0; s < n_strings; ++s) {
    const int dc = static_cast<int>(s >> (2 * control)) & 3;
    const int dt = static_cast<int>(s >> (2 * target)) & 3;
    out.marginal[static_cast<size_t>(4 * dt + dc)] += rates(s);
  }
  out.bias = noise_bias(out.marginal);
  return out;
}

double noise_bias(const std::array<double, 16>& marginal) {
  double dephasing = 0.0;
  double other = 0.0;
  for (int i = 1; i < 16; ++i) {
    const int dc = i & 3;
    const int dt = i >> 2 & 3;
    const bool z_only = (dc == 0 || dc == 3) && (dt == 0 || dt == 3);
    (z_only ? dephasing : other) += marginal[static_cast<size_t>(i)];
  }
  if (other < 1e-12) return std::numeric_limits<double>::infinity();
  return dephasing / other;
}

PauliChannel pauli_channel(const NodeLayout& layout, double probe_detuning,
                           GateKind kind, Flavor flavor) {
  const SchurChannel ch = gate_channel(layout, probe_detuning, kind, flavor);
  const Eigen::VectorXcd u = ideal_phase_diagonal(kind, layout);
  const Eigen::VectorXd diag =
      pauli_transfer_diagonal(ch, u, layout.qubit_count());
  return error_rates(diag, layout.qubit_count(), layout.control,
                     layout.target);
}

}  // namespace fibergate
