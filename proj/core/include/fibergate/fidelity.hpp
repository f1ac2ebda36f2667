#pragma once

#include <functional>

#include "fibergate/gate.hpp"

namespace fibergate {

using ChannelFn = std::function<Eigen::MatrixXcd(const Eigen::MatrixXcd&)>;

/// Entanglement fidelity of a Schur channel against a diagonal target
/// unitary, via the Choi overlap. Post-selected channels are renormalized
/// by the total Choi trace.
double entanglement_fidelity(const SchurChannel& channel,
                             const Eigen::VectorXcd& ideal_diag);

/// Generic Choi-based entanglement fidelity for an arbitrary channel on a
/// d-dimensional space. Set `renormalize` for trace-decreasing channels.
double entanglement_fidelity(const ChannelFn& channel,
                             const Eigen::MatrixXcd& ideal_unitary,
                             bool renormalize);

/// F_avg = (d F_e + 1) / (d + 1).
double average_fidelity(double entanglement_fidelity, int dim);

/// Fidelity estimate from the channel's action on the equal superposition
/// of all basis states, renormalized for post-selected channels.
double superposition_fidelity(const SchurChannel& channel,
                              const Eigen::VectorXcd& ideal_diag);

/// Superposition-input fidelity written directly in terms of a photonic
/// overlap matrix, for a phase gate on qubits n and m (0-based).
double analytic_local_fidelity_full(const GMatrix& g, int qubit_n,
                                    int qubit_m);

/// Two-qubit closed form from the reflection coefficients of the 0-, 1-
/// and 2-atom configurations.
double analytic_local_fidelity_simple(Complex r0, Complex r1, Complex r2);

/// Closed form for the remote gate with identical cavities; averages the
/// two polarization-outcome branches with equal weight.
double analytic_remote_fidelity(Complex r0, Complex r1);
double analytic_remote_fidelity_h_branch(Complex r0, Complex r1);
double analytic_remote_fidelity_v_branch(Complex r0, Complex r1);

struct CooperativityPoint {
  double cooperativity = 0.0;
  double g_star = 0.0;
};

/// Cooperativity C* = g*^2/(gamma kappa) and coupling g* at which the
/// local gate fidelity peaks. Requires kappa_r/kappa > 1/2.
CooperativityPoint optimum_cooperativity(double kappa_r, double kappa,
                                         double gamma);

struct PerformancePoint {
  double f_max = 0.0;
  double p_success = 0.0;
};

/// Fidelity and success probability at the optimum, as rational functions
/// of the loss ratio kappa_r/kappa.
PerformancePoint optimum_performance(double kappa_r, double kappa);
PerformancePoint performance_from_loss_ratio(double loss_ratio);
PerformancePoint performance_from_cooperativity(double cooperativity);

/// Loss ratio kappa_r/kappa needed to reach a given maximum fidelity;
/// exact inverse of the fidelity branch of optimum_performance.
double required_loss_ratio(double f_max);

/// Infidelity floor from the finite qubit splitting,
/// 0.7528 * dipole_ratio_sq * 2 gamma / splitting.
double qubit_splitting_floor(double gamma, double splitting,
                             double dipole_ratio_sq);

/// Golden-section maximizer; returns the position of the maximum of f on
/// [lo, hi] to the given relative position tolerance.
double golden_section_max(const std::function<double(double)>& f, double lo,
                          double hi, double rel_tol = 1e-9);

struct SplittingOptimum {
  double f_ceiling = 0.0;       ///< best fidelity over all loss ratios
  double infidelity = 0.0;      ///< 1 - f_ceiling
  double ceiling_loss_ratio = 0.0;  ///< ratio at which the ceiling occurs
  double required_ratio = 0.0;  ///< loss ratio that reaches f_ceiling ideally
  double cooperativity = 0.0;   ///< C* at required_ratio
  double g_star = 0.0;          ///< coupling at required_ratio
};

/// Numerically locates the fidelity ceiling imposed by the finite qubit
/// splitting: for each loss ratio the two-atom gate is evaluated with the
/// residual coupling enabled at the analytic optimum coupling, then the
/// ratio is optimized. `kappa` only sets the overall rate scale.
SplittingOptimum splitting_limited_optimum(
    double gamma = constants::kCsHalfLinewidth,
    double splitting = constants::kCsResidualSplitting,
    double dipole_ratio_sq = constants::kCsDipoleRatioSq, double kappa = 2.7);

}  // namespace fibergate
