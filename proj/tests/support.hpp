#pragma once

#include <Eigen/Dense>
#include <functional>
#include <random>
#include <vector>

#include "fibergate/gate.hpp"

namespace fibergate::test {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(0x5eed1234abcdull);
  return gen;
}

inline double uniform(double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  return dist(rng());
}

inline Eigen::VectorXcd random_pure_state(int dim) {
  std::normal_distribution<double> gauss;
  Eigen::VectorXcd psi(dim);
  for (int i = 0; i < dim; ++i) psi(i) = Complex(gauss(rng()), gauss(rng()));
  psi.normalize();
  return psi;
}

inline Eigen::MatrixXcd random_density_matrix(int dim) {
  std::normal_distribution<double> gauss;
  Eigen::MatrixXcd a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = Complex(gauss(rng()), gauss(rng()));
  Eigen::MatrixXcd rho = a * a.adjoint();
  rho /= rho.trace().real();
  return rho;
}

inline Eigen::MatrixXcd superposition_state(int dim) {
  Eigen::VectorXcd plus = Eigen::VectorXcd::Constant(dim, 1.0 / std::sqrt(dim));
  return plus * plus.adjoint();
}

/// Two-atom single-cavity layout with equal resonant couplings.
inline NodeLayout local_pair(double g, double kappa_r, double kappa_t = 0.1,
                             double kappa_m = 0.1, bool residual = false) {
  NodeLayout layout;
  layout.cavities = {CavitySpec{kappa_r, kappa_t, kappa_m}};
  layout.atoms = {{AtomSpec{g, 0.0, 2.6}, 0}, {AtomSpec{g, 0.0, 2.6}, 0}};
  layout.residual.enabled = residual;
  return layout;
}

/// One atom in each of two identical cavities.
inline NodeLayout remote_pair(double g, double kappa_r, double kappa_t = 0.1,
                              double kappa_m = 0.1, bool residual = false) {
  NodeLayout layout;
  layout.cavities = {CavitySpec{kappa_r, kappa_t, kappa_m},
                     CavitySpec{kappa_r, kappa_t, kappa_m}};
  layout.atoms = {{AtomSpec{g, 0.0, 2.6}, 0}, {AtomSpec{g, 0.0, 2.6}, 1}};
  layout.residual.enabled = residual;
  return layout;
}

// ---- brute-force Pauli machinery (independent of the production path) ----

inline const std::array<Eigen::Matrix2cd, 4>& single_qubit_paulis() {
  static const std::array<Eigen::Matrix2cd, 4> p = [] {
    std::array<Eigen::Matrix2cd, 4> out;
    out[0] << 1, 0, 0, 1;
    out[1] << 0, 1, 1, 0;
    out[2] << 0, Complex(0, -1), Complex(0, 1), 0;
    out[3] << 1, 0, 0, -1;
    return out;
  }();
  return p;
}

/// Dense Pauli string; digit q of `index` (base 4) acts on qubit q, which
/// occupies the least significant bit of the state index. Built low qubit
/// first so that each new factor lands on the higher bits.
inline Eigen::MatrixXcd pauli_string(int index, int n_qubits) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (int q = 0; q < n_qubits; ++q) {
    const Eigen::Matrix2cd& factor =
        single_qubit_paulis()[static_cast<size_t>(index >> (2 * q) & 3)];
    Eigen::MatrixXcd next(out.rows() * 2, out.cols() * 2);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        next.block(r * out.rows(), c * out.cols(), out.rows(), out.cols()) =
            factor(r, c) * out;
    out = std::move(next);
  }
  return out;
}

using DenseChannel = std::function<Eigen::MatrixXcd(const Eigen::MatrixXcd&)>;

/// Explicit Pauli twirl of `lambda`, then the rates read off the Choi
/// state of the twirled channel.
inline Eigen::VectorXd twirl_rates_oracle(const DenseChannel& lambda,
                                          int n_qubits) {
  const int d = 1 << n_qubits;
  const int n_strings = 1 << (2 * n_qubits);
  std::vector<Eigen::MatrixXcd> paulis;
  paulis.reserve(static_cast<size_t>(n_strings));
  for (int a = 0; a < n_strings; ++a)
    paulis.push_back(pauli_string(a, n_qubits));

  const auto twirled = [&](const Eigen::MatrixXcd& rho) {
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(d, d);
    for (const Eigen::MatrixXcd& p : paulis)
      acc += p * lambda(p * rho * p) * p;
    return (acc / n_strings).eval();
  };

  // chi = (1/d) sum_ij |i><j| (x) twirled(|i><j|)
  Eigen::MatrixXcd chi = Eigen::MatrixXcd::Zero(d * d, d * d);
  Eigen::MatrixXcd basis = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      basis(i, j) = 1.0;
      chi.block(i * d, j * d, d, d) = twirled(basis) / double(d);
      basis(i, j) = 0.0;
    }

  Eigen::VectorXd rates(n_strings);
  for (int a = 0; a < n_strings; ++a) {
    Eigen::VectorXcd w(d * d);
    for (int i = 0; i < d; ++i)
      w.segment(i * d, d) = paulis[static_cast<size_t>(a)].col(i);
    w /= std::sqrt(double(d));
    const Complex val = w.adjoint() * chi * w;
    rates(a) = val.real();
  }
  return rates;
}

}  // namespace fibergate::test
