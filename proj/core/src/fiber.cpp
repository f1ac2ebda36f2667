#include "fibergate/fiber.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <vector>

#include "fibergate/physics.hpp"

namespace fibergate {

namespace {

constexpr double kPi = std::numbers::pi;

double sqr(double x) { return x * x; }

struct CylindricalProfile {
  // radial profiles of the circularly polarized mode, phase factor split off
  Complex f_r, f_phi, f_z;
};

// Radial field profile at r (units of the core radius a). The transverse
// components carry the (1 -+ s) structure of the hybrid mode; inside uses
// J Bessel functions, outside the matched K functions.
CylindricalProfile radial_profile(const ModeSolution& mode,
                                  const FiberSpec& fiber, double r_over_a) {
  const double ab = fiber.radius_um * mode.beta;
  const double s = mode.s;
  CylindricalProfile p;
  if (r_over_a < 1.0) {
    const double x = mode.u * r_over_a;
    const double c = ab / (2.0 * mode.u);
    p.f_r = Complex(0.0, c * ((1.0 - s) * bessel_j(0, x) -
                              (1.0 + s) * bessel_j(2, x)));
    p.f_phi = -c * ((1.0 - s) * bessel_j(0, x) + (1.0 + s) * bessel_j(2, x));
    p.f_z = bessel_j(1, x);
  } else {
    const double x = mode.w * r_over_a;
    const double c = mode.field_match * ab / (2.0 * mode.w);
    p.f_r = Complex(0.0, c * ((1.0 - s) * bessel_k(0, x) +
                              (1.0 + s) * bessel_k(2, x)));
    p.f_phi = -c * ((1.0 - s) * bessel_k(0, x) - (1.0 + s) * bessel_k(2, x));
    p.f_z = mode.field_match * bessel_k(1, x);
  }
  return p;
}

double relative_permittivity(const FiberSpec& fiber, double r_over_a) {
  return r_over_a < 1.0 ? sqr(fiber.core_index) : sqr(fiber.cladding_index);
}

// Azimuthal average of |E|^2; identical for both polarization states.
double mean_intensity(const ModeSolution& mode, const FiberSpec& fiber,
                      double r_over_a) {
  const CylindricalProfile p = radial_profile(mode, fiber, r_over_a);
  return std::norm(p.f_r) + std::norm(p.f_phi) + std::norm(p.f_z);
}

// Adaptive Simpson quadrature with a roundoff floor on the tolerance.
double simpson_step(const std::function<double(double)>& f, double a,
                    double b, double fa, double fm, double fb, double whole,
                    double tol, double floor_tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::fabs(delta) <= 15.0 * std::max(tol, floor_tol))
    return left + right + delta / 15.0;
  if (depth <= 0) throw SolverError("quadrature did not converge");
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, floor_tol,
                      depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, floor_tol,
                      depth - 1);
}

// rel_tol is relative to a first coarse estimate of the integral.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double rel_tol) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double scale = std::max(std::fabs(whole), 1e-30);
  return simpson_step(f, a, b, fa, fm, fb, whole, rel_tol * scale,
                      1e-16 * scale, 44);
}

// Outer cut-off where the evanescent envelope has decayed to ~1e-14 of
// its surface value.
double outer_cutoff(const ModeSolution& mode) {
  return 1.0 + 0.5 * 14.0 * std::log(10.0) / mode.w;
}

// integral over the transverse plane of eps |E|^2, in um^2 units.
double plane_integral(const ModeSolution& mode, const FiberSpec& fiber) {
  const auto radial = [&](double r) {
    return relative_permittivity(fiber, r) * mean_intensity(mode, fiber, r) *
           r;
  };
  const double inner = adaptive_simpson(radial, 0.0, 1.0, 1e-12);
  const double outer = adaptive_simpson(radial, 1.0, outer_cutoff(mode), 1e-12);
  return 2.0 * kPi * sqr(fiber.radius_um) * (inner + outer);
}

// Spatial maximum of eps |E|^2 for the given polarization, searched over
// the core and the evanescent region separately.
double peak_weighted_intensity(const ModeSolution& mode,
                               const FiberSpec& fiber,
                               const Polarization& pol) {
  const auto value = [&](double r_over_a) {
    return relative_permittivity(fiber, r_over_a) *
           mode_intensity(mode, fiber, r_over_a * fiber.radius_um,
                          std::holds_alternative<QuasiLinear>(pol)
                              ? std::get<QuasiLinear>(pol).axis
                              : 0.0,
                          pol);
  };
  using Range = std::pair<double, double>;
  double best = 0.0;
  for (auto [lo, hi] : {Range{1e-9, 1.0 - 1e-12}, Range{1.0 + 1e-12, 3.0}}) {
    double a = lo, b = hi;
    // coarse scan then golden refinement, keeping endpoints in play
    constexpr int kScan = 64;
    double peak_x = a, peak_v = value(a);
    for (int i = 1; i <= kScan; ++i) {
      const double x = a + (b - a) * i / kScan;
      const double fv = value(x);
      if (fv > peak_v) {
        peak_v = fv;
        peak_x = x;
      }
    }
    double ga = std::max(a, peak_x - (b - a) / kScan);
    double gb = std::min(b, peak_x + (b - a) / kScan);
    constexpr double kInvPhi = 0.6180339887498949;
    while (gb - ga > 1e-13) {
      const double c = gb - kInvPhi * (gb - ga);
      const double d = ga + kInvPhi * (gb - ga);
      if (value(c) > value(d))
        gb = d;
      else
        ga = c;
    }
    best = std::max({best, peak_v, value(0.5 * (ga + gb))});
  }
  return best;
}

}  // namespace

double bessel_j(int order, double x) {
  return std::cyl_bessel_j(static_cast<double>(order), x);
}
double bessel_k(int order, double x) {
  return std::cyl_bessel_k(static_cast<double>(order), x);
}
double bessel_j_prime(int order, double x) {
  return 0.5 * (bessel_j(order - 1, x) - bessel_j(order + 1, x));
}
double bessel_k_prime(int order, double x) {
  return -0.5 * (bessel_k(order - 1, x) + bessel_k(order + 1, x));
}

double FiberSpec::fiber_volume() const {
  return radius_um * wavenumber *
         std::sqrt(sqr(core_index) - sqr(cladding_index));
}

void FiberSpec::validate() const {
  if (core_index <= cladding_index || cladding_index < 1.0)
    throw PhysicsError("fiber: need core_index > cladding_index >= 1");
  if (radius_um <= 0.0 || wavenumber <= 0.0 || cavity_length_m <= 0.0)
    throw PhysicsError("fiber: radius, wavenumber and length must be positive");
  if (azimuthal_order != 1)
    throw PhysicsError("fiber: only the fundamental l = 1 family is modeled");
}

ModeSolution solve_mode(const FiberSpec& fiber) {
  fiber.validate();
  const double v = fiber.fiber_volume();
  const double n1sq = sqr(fiber.core_index);
  const double n0sq = sqr(fiber.cladding_index);
  const int l = fiber.azimuthal_order;

  const auto characteristic = [&](double u) {
    const double w = std::sqrt(v * v - u * u);
    const double ju = bessel_j(l, u);
    const double kw = bessel_k(l, w);
    const double a = bessel_j_prime(l, u) / (u * ju);
    const double b = bessel_k_prime(l, w) / (w * kw);
    const double lhs = l * l * (n1sq / sqr(u) + n0sq / sqr(w)) *
                       (1.0 / sqr(u) + 1.0 / sqr(w));
    return lhs - (n1sq * a + n0sq * b) * (a + b);
  };

  // The fundamental root sits below both v and the first zero of J_l.
  constexpr double kFirstJ1Zero = 3.8317059702075123;
  const double hi = std::min(v, kFirstJ1Zero) - 1e-9;
  const double lo = 1e-6;
  constexpr int kScan = 2000;
  double a = lo, fa = characteristic(lo);
  double root_lo = 0.0, root_hi = 0.0;
  bool bracketed = false;
  double closest = std::fabs(fa);
  for (int i = 1; i <= kScan; ++i) {
    const double b = lo + (hi - lo) * i / kScan;
    const double fb = characteristic(b);
    closest = std::min(closest, std::fabs(fb));
    if (std::isfinite(fa) && std::isfinite(fb) && fa * fb < 0.0) {
      root_lo = a;
      root_hi = b;
      bracketed = true;
      break;
    }
    a = b;
    fa = fb;
  }
  if (!bracketed) {
    std::ostringstream msg;
    msg << "solve_mode: no sign change of the characteristic equation in u ("
        << lo << ", " << hi << "); smallest residual seen " << closest;
    throw SolverError(msg.str());
  }
  double flo = characteristic(root_lo);
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (root_lo + root_hi);
    const double fm = characteristic(mid);
    if (fm == 0.0) {
      root_lo = root_hi = mid;
      break;
    }
    if (flo * fm < 0.0) {
      root_hi = mid;
    } else {
      root_lo = mid;
      flo = fm;
    }
    if (root_hi - root_lo < 1e-15 * root_hi) break;
  }

  ModeSolution mode;
  mode.v = v;
  mode.u = 0.5 * (root_lo + root_hi);
  mode.w = std::sqrt(v * v - mode.u * mode.u);
  mode.beta = std::sqrt(n1sq * sqr(fiber.wavenumber) -
                        sqr(mode.u / fiber.radius_um));
  mode.residual = std::fabs(characteristic(mode.u));
  mode.s = l * (1.0 / sqr(mode.u) + 1.0 / sqr(mode.w)) /
           (bessel_j_prime(l, mode.u) / (mode.u * bessel_j(l, mode.u)) +
            bessel_k_prime(l, mode.w) / (mode.w * bessel_k(l, mode.w)));
  mode.field_match = bessel_j(l, mode.u) / bessel_k(l, mode.w);
  if (mode.residual > 1e-10)
    throw SolverError("solve_mode: root refinement left residual " +
                      std::to_string(mode.residual));
  return mode;
}

Eigen::Vector3cd field_at(const ModeSolution& mode, const FiberSpec& fiber,
                          double r_um, double phi, double z_um,
                          const Polarization& pol) {
  const double r_over_a = r_um / fiber.radius_um;
  const CylindricalProfile p = radial_profile(mode, fiber, r_over_a);

  // One circular handedness h: (f_r, h f_phi, f_z) e^{i(h phi - beta z)}.
  const auto circular_cyl = [&](int h) {
    const Complex winding =
        std::exp(Complex(0.0, h * phi - mode.beta * z_um));
    return Eigen::Vector3cd(p.f_r * winding,
                            static_cast<double>(h) * p.f_phi * winding,
                            p.f_z * winding);
  };

  Eigen::Vector3cd cyl;
  if (std::holds_alternative<Circular>(pol)) {
    cyl = circular_cyl(std::get<Circular>(pol).handedness >= 0 ? 1 : -1);
  } else {
    const double phi0 = std::get<QuasiLinear>(pol).axis;
    cyl = (circular_cyl(+1) * std::exp(Complex(0.0, -phi0)) +
           circular_cyl(-1) * std::exp(Complex(0.0, +phi0))) /
          std::sqrt(2.0);
  }
  Eigen::Vector3cd cart;
  cart(0) = std::cos(phi) * cyl(0) - std::sin(phi) * cyl(1);
  cart(1) = std::sin(phi) * cyl(0) + std::cos(phi) * cyl(1);
  cart(2) = cyl(2);
  return cart;
}

double mode_intensity(const ModeSolution& mode, const FiberSpec& fiber,
                      double r_um, double phi, const Polarization& pol) {
  return field_at(mode, fiber, r_um, phi, 0.0, pol).squaredNorm();
}

double mode_volume(const ModeSolution& mode, const FiberSpec& fiber,
                   const Polarization& pol) {
  const double cavity_length_um = fiber.cavity_length_m * 1e6;
  double integral;
  if (std::holds_alternative<Circular>(pol)) {
    integral = plane_integral(mode, fiber);  // azimuthal part is analytic
  } else {
    // periodic trapezoid in phi (spectrally exact for the trig dependence)
    constexpr int kPhiSamples = 64;
    const auto radial = [&](double r) {
      double acc = 0.0;
      for (int i = 0; i < kPhiSamples; ++i) {
        const double phi = 2.0 * kPi * i / kPhiSamples;
        acc += mode_intensity(mode, fiber, r * fiber.radius_um, phi, pol);
      }
      return relative_permittivity(fiber, r) * acc * r *
             (2.0 * kPi / kPhiSamples);
    };
    const double inner = adaptive_simpson(radial, 0.0, 1.0, 1e-10);
    const double outer =
        adaptive_simpson(radial, 1.0, outer_cutoff(mode), 1e-10);
    integral = sqr(fiber.radius_um) * (inner + outer);
  }
  return cavity_length_um * integral /
         peak_weighted_intensity(mode, fiber, pol);
}

double coupling_strength(const ModeSolution& mode, const FiberSpec& fiber,
                         const AtomPosition& where, const Polarization& pol,
                         const TransitionSpec& transition) {
  namespace cn = constants;
  const double mu = transition.reduced_dipole_ea0 *
                    std::sqrt(transition.projection_sq) *
                    cn::kElementaryCharge * cn::kBohrRadius;
  const double omega = cn::kSpeedOfLight * fiber.wavenumber * 1e6;  // rad/s
  const double cavity_length_um = fiber.cavity_length_m * 1e6;
  const double integral_um2 = plane_integral(mode, fiber);
  const double intensity =
      mode_intensity(mode, fiber, where.r_um, where.phi, pol);
  const double g_sq = mu * mu * omega * intensity /
                      (2.0 * cn::kHBar * cn::kVacuumPermittivity *
                       cavity_length_um * integral_um2 * 1e-18);
  return std::sqrt(g_sq) / (2.0 * kPi * 1e6);
}

CouplingModel::CouplingModel(const FiberSpec& fiber,
                             const TransitionSpec& transition)
    : fiber_(fiber), transition_(transition), mode_(solve_mode(fiber)) {
  namespace cn = constants;
  plane_integral_ = plane_integral(mode_, fiber_);
  const double mu = transition_.reduced_dipole_ea0 *
                    std::sqrt(transition_.projection_sq) *
                    cn::kElementaryCharge * cn::kBohrRadius;
  const double omega = cn::kSpeedOfLight * fiber_.wavenumber * 1e6;
  const double cavity_length_um = fiber_.cavity_length_m * 1e6;
  g_scale_ = std::sqrt(mu * mu * omega /
                       (2.0 * cn::kHBar * cn::kVacuumPermittivity *
                        cavity_length_um * plane_integral_ * 1e-18)) /
             (2.0 * kPi * 1e6);
}

double CouplingModel::g(const AtomPosition& where,
                        const Polarization& pol) const {
  return g_scale_ *
         std::sqrt(mode_intensity(mode_, fiber_, where.r_um, where.phi, pol));
}

double CouplingModel::g_linear_parallel(double r_um) const {
  return g({r_um, 0.0}, QuasiLinear{0.0});
}

double CouplingModel::g_linear_orthogonal(double r_um) const {
  return g({r_um, 0.5 * kPi}, QuasiLinear{0.0});
}

double CouplingModel::g_circular(double r_um) const {
  return g({r_um, 0.0}, Circular{});
}

double CouplingModel::mode_volume(const Polarization& pol) const {
  return fibergate::mode_volume(mode_, fiber_, pol);
}

}  // namespace fibergate
