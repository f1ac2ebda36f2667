#include "fibergate/fidelity.hpp"

#include <cmath>

namespace fibergate {

double entanglement_fidelity(const SchurChannel& channel,
                             const Eigen::VectorXcd& ideal_diag) {
  const Eigen::Index d = channel.g.rows();
  if (ideal_diag.size() != d)
    throw PhysicsError("entanglement_fidelity: dimension mismatch");
  // Choi overlap collapses to a quadratic form for element-wise channels.
  const Complex q = ideal_diag.adjoint() * channel.g * ideal_diag;
  double fe = q.real() / static_cast<double>(d * d);
  if (channel.post_selected) {
    const double trace = channel.g.trace().real() / static_cast<double>(d);
    if (trace <= 0.0)
      throw PhysicsError("entanglement_fidelity: channel annihilates the maximally mixed state");
    fe /= trace;
  }
  return fe;
}

double entanglement_fidelity(const ChannelFn& channel,
                             const Eigen::MatrixXcd& ideal_unitary,
                             bool renormalize) {
  const Eigen::Index d = ideal_unitary.rows();
  if (ideal_unitary.cols() != d)
    throw PhysicsError("entanglement_fidelity: target is not square");
  const Eigen::Index dd = d * d;

  // Choi state chi = (I (x) channel)(|phi+><phi+|), assembled block-wise.
  Eigen::MatrixXcd chi = Eigen::MatrixXcd::Zero(dd, dd);
  Eigen::MatrixXcd basis = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      basis(i, j) = 1.0;
      const Eigen::MatrixXcd block = channel(basis);
      basis(i, j) = 0.0;
      chi.block(i * d, j * d, d, d) = block / static_cast<double>(d);
    }
  }
  if (renormalize) {
    const double trace = chi.trace().real();
    if (trace <= 0.0)
      throw PhysicsError("entanglement_fidelity: vanishing Choi trace");
    chi /= trace;
  }
  // Overlap with the target's Choi state w = (I (x) U)|phi+>.
  Eigen::VectorXcd w(dd);
  for (Eigen::Index i = 0; i < d; ++i)
    w.segment(i * d, d) = ideal_unitary.col(i) / std::sqrt(double(d));
  const Complex overlap = w.adjoint() * chi * w;
  return overlap.real();
}

double average_fidelity(double entanglement_fidelity, int dim) {
  if (dim < 2) throw PhysicsError("average_fidelity: dimension must be >= 2");
  return (dim * entanglement_fidelity + 1.0) / (dim + 1.0);
}

double superposition_fidelity(const SchurChannel& channel,
                              const Eigen::VectorXcd& ideal_diag) {
  const Eigen::Index d = channel.g.rows();
  if (ideal_diag.size() != d)
    throw PhysicsError("superposition_fidelity: dimension mismatch");
  // <a+| U^+ (rho o G) U |a+> with rho = |a+><a+|.
  const Complex num = ideal_diag.adjoint() * channel.g * ideal_diag;
  double f = num.real() / static_cast<double>(d * d);
  if (channel.post_selected) {
    const double trace = channel.g.trace().real() / static_cast<double>(d);
    if (trace <= 0.0)
      throw PhysicsError("superposition_fidelity: vanishing success probability");
    f /= trace;
  }
  return f;
}

double analytic_local_fidelity_full(const GMatrix& g, int qubit_n,
                                    int qubit_m) {
  if (qubit_n == qubit_m)
    throw PhysicsError("analytic_local_fidelity_full: need two distinct qubits");
  const Eigen::Index d = g.m.rows();
  Eigen::VectorXd sign(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const bool in_a = ((i >> qubit_n & 1) == 0) && ((i >> qubit_m & 1) == 0);
    sign(i) = in_a ? -1.0 : 1.0;
  }
  Complex acc = 0.0;
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) acc += g.m(i, j) * sign(i) * sign(j);
  const double trace = g.m.trace().real();
  if (trace <= 0.0)
    throw PhysicsError("analytic_local_fidelity_full: non-positive trace");
  return acc.real() / (static_cast<double>(d) * trace);
}

double analytic_local_fidelity_simple(Complex r0, Complex r1, Complex r2) {
  const double den =
      std::norm(r0) + 2.0 * std::norm(r1) + std::norm(r2);
  if (den <= 0.0)
    throw PhysicsError("analytic_local_fidelity_simple: all amplitudes vanish");
  return 0.25 * std::norm(r0 - 2.0 * r1 - r2) / den;
}

double analytic_remote_fidelity_h_branch(Complex r0, Complex r1) {
  const Complex num = r0 * r0 + 4.0 * r0 + 2.0 * r1 * r0 - r1 * r1 - 2.0;
  const double den = std::norm(r0 * r0 + 2.0 * r0 - 1.0) +
                     2.0 * std::norm(r1 * r0 + r1 + r0 - 1.0) +
                     std::norm(r1 * r1 + 2.0 * r1 - 1.0);
  if (den <= 0.0)
    throw PhysicsError("analytic_remote_fidelity: degenerate H denominator");
  return 0.25 * std::norm(num) / den;
}

double analytic_remote_fidelity_v_branch(Complex r0, Complex r1) {
  const Complex num = r0 * r0 - 2.0 * r0 + r1 * r1 + 2.0 * r1 + 2.0;
  const double den = std::norm(r0 * r0 + 1.0) +
                     std::norm(r1 * r0 + r1 - r0 + 1.0) +
                     std::norm(r1 * r0 + r0 - r1 + 1.0) +
                     std::norm(r1 * r1 + 1.0);
  if (den <= 0.0)
    throw PhysicsError("analytic_remote_fidelity: degenerate V denominator");
  return 0.25 * std::norm(num) / den;
}

double analytic_remote_fidelity(Complex r0, Complex r1) {
  return 0.5 * (analytic_remote_fidelity_h_branch(r0, r1) +
                analytic_remote_fidelity_v_branch(r0, r1));
}

CooperativityPoint optimum_cooperativity(double kappa_r, double kappa,
                                         double gamma) {
  const double ratio = kappa_r / kappa;
  if (ratio <= 0.5)
    throw PhysicsError("optimum_cooperativity: requires kappa_r/kappa > 1/2");
  CooperativityPoint p;
  p.cooperativity = ratio / (1.0 - ratio) - 1.0;
  p.g_star = std::sqrt(p.cooperativity * gamma * kappa);
  return p;
}

PerformancePoint performance_from_loss_ratio(double ratio) {
  if (ratio <= 0.5 || ratio > 1.0)
    throw PhysicsError("optimum_performance: requires kappa_r/kappa in (1/2, 1]");
  const double poly = 7.0 * ratio * ratio - 4.0 * ratio + 1.0;
  PerformancePoint p;
  p.f_max = 1.0 - 3.0 * (1.0 - ratio) * (1.0 - ratio) / (4.0 * poly);
  const double three = 3.0 * ratio - 1.0;
  const double two = 1.0 - 2.0 * ratio;
  p.p_success = poly / (three * three) * two * two;
  return p;
}

PerformancePoint optimum_performance(double kappa_r, double kappa) {
  return performance_from_loss_ratio(kappa_r / kappa);
}

PerformancePoint performance_from_cooperativity(double cooperativity) {
  if (cooperativity <= 0.0)
    throw PhysicsError("optimum_performance: cooperativity must be positive");
  return performance_from_loss_ratio((cooperativity + 1.0) /
                                     (cooperativity + 2.0));
}

double required_loss_ratio(double f_max) {
  if (f_max <= 0.75 || f_max > 1.0)
    throw PhysicsError("required_loss_ratio: fidelity must lie in (3/4, 1]");
  const double root = std::sqrt(f_max * (1.0 - f_max));
  const double num = 20.0 * root + std::sqrt(48.0) * (1.0 - f_max);
  const double den = std::sqrt(75.0) + 28.0 * root;
  return 1.0 - num / den;
}

double qubit_splitting_floor(double gamma, double splitting,
                             double dipole_ratio_sq) {
  if (splitting <= 0.0)
    throw PhysicsError("qubit_splitting_floor: splitting must be positive");
  return 0.7528 * dipole_ratio_sq * 2.0 * gamma / splitting;
}

double golden_section_max(const std::function<double(double)>& f, double lo,
                          double hi, double rel_tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > rel_tol * (std::fabs(a) + std::fabs(b) + 1.0)) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

SplittingOptimum splitting_limited_optimum(double gamma, double splitting,
                                           double dipole_ratio_sq,
                                           double kappa) {
  const auto fidelity_at_ratio = [&](double ratio) {
    const double kappa_r = ratio * kappa;
    const double coop = ratio / (1.0 - ratio) - 1.0;
    const double g = std::sqrt(coop * gamma * kappa);
    CavitySpec cav{kappa_r, 0.5 * (kappa - kappa_r), 0.5 * (kappa - kappa_r)};
    const AtomSpec strong{g, 0.0, gamma};
    const AtomSpec weak{g * std::sqrt(dipole_ratio_sq), splitting, gamma};
    const std::vector<AtomSpec> both_dark{weak, weak};
    const std::vector<AtomSpec> one_bright{strong, weak};
    const std::vector<AtomSpec> both_bright{strong, strong};
    const Complex r0 = amplitudes(cav, both_dark, 0.0).r;
    const Complex r1 = amplitudes(cav, one_bright, 0.0).r;
    const Complex r2 = amplitudes(cav, both_bright, 0.0).r;
    return analytic_local_fidelity_simple(r0, r1, r2);
  };

  SplittingOptimum out;
  out.ceiling_loss_ratio =
      golden_section_max(fidelity_at_ratio, 0.55, 1.0 - 1e-9, 1e-12);
  out.f_ceiling = fidelity_at_ratio(out.ceiling_loss_ratio);
  out.infidelity = 1.0 - out.f_ceiling;
  out.required_ratio = required_loss_ratio(out.f_ceiling);
  const auto coop = optimum_cooperativity(out.required_ratio, 1.0, gamma);
  out.cooperativity = coop.cooperativity;
  out.g_star = std::sqrt(out.cooperativity * gamma * kappa);
  return out;
}

}  // namespace fibergate
