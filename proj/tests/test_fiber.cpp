#include <doctest.h>

#include "fibergate/fiber.hpp"
#include "support.hpp"

using namespace fibergate;
using doctest::Approx;

namespace {

struct BesselRef {
  int order;
  double x;
  double value;
};

// 17-digit references computed with arbitrary-precision arithmetic.
const BesselRef kJ[] = {
    {0, 0.05, 0.99937509764946858},  {0, 0.5, 0.9384698072408129},
    {0, 1.0, 0.76519768655796655},   {0, 1.5, 0.51182767173591813},
    {0, 2.5, -0.048383776468197996}, {0, 5.0, -0.1775967713143383},
    {0, 10.0, -0.24593576445134834}, {1, 0.1, 0.049937526036241998},
    {1, 0.552, 0.26562033199767122}, {1, 1.0, 0.44005058574493352},
    {1, 1.5, 0.55793650791009964},   {1, 3.0, 0.33905895852593646},
    {1, 7.5, 0.13524842757970551},   {2, 0.25, 0.0077718892859626769},
    {2, 0.828, 0.080905608247621187},{2, 1.5, 0.23208767214421473},
    {2, 2.0, 0.35283402861563772},   {2, 6.0, -0.24287320996018547},
    {2, 12.0, -0.084930494878604805},{2, 0.05, 0.00031243490091938443}};
const BesselRef kK[] = {
    {0, 0.05, 3.1142340294719899},   {0, 0.5, 0.92441907122766586},
    {0, 1.0, 0.42102443824070833},   {0, 1.5, 0.21380556264752574},
    {0, 2.5, 0.062347553200366186},  {0, 5.0, 0.0036910983340425943},
    {0, 10.0, 1.7780062316167652e-5},{1, 0.1, 9.8538447808706061},
    {1, 0.552, 1.45667087715887},    {1, 1.0, 0.60190723019723457},
    {1, 1.5, 0.27738780045684382},   {1, 3.0, 0.040156431128194184},
    {1, 7.5, 0.00026529739012528953},{2, 0.25, 31.517714546773996},
    {2, 0.828, 2.5162549644005694},  {2, 1.5, 0.58365596325665082},
    {2, 2.0, 0.25375975456605586},   {2, 6.0, 0.0016919675672582928},
    {2, 12.0, 2.5826183081060227e-6},{2, 0.05, 799.50120706477225}};

const FiberSpec kDefaultFiber{};  // 200 nm radius, Cs D2 wavenumber, 0.12 m

double field_magnitude(const ModeSolution& mode, const FiberSpec& fiber,
                       double r_um, double phi, const Polarization& pol) {
  return std::sqrt(mode_intensity(mode, fiber, r_um, phi, pol));
}

}  // namespace

TEST_CASE("bessel wrappers reach twelve digits on the reference table") {
  for (const BesselRef& ref : kJ)
    CHECK(std::fabs(bessel_j(ref.order, ref.x) - ref.value) <
          1e-12 * std::fabs(ref.value));
  for (const BesselRef& ref : kK)
    CHECK(std::fabs(bessel_k(ref.order, ref.x) - ref.value) <
          1e-12 * std::fabs(ref.value));
  // derivative recurrences against central differences
  for (double x : {0.3, 0.9, 1.7, 4.0}) {
    const double h = 1e-6;
    CHECK(bessel_j_prime(1, x) ==
          Approx((bessel_j(1, x + h) - bessel_j(1, x - h)) / (2 * h))
              .epsilon(1e-7));
    CHECK(bessel_k_prime(1, x) ==
          Approx((bessel_k(1, x + h) - bessel_k(1, x - h)) / (2 * h))
              .epsilon(1e-7));
  }
}

TEST_CASE("fundamental mode of the reference fiber") {
  CHECK(kDefaultFiber.fiber_volume() == Approx(1.54812).epsilon(1e-5));
  const ModeSolution mode = solve_mode(kDefaultFiber);
  CHECK(mode.u == Approx(1.44636689).epsilon(1e-7));
  CHECK(mode.w == Approx(0.55199489).epsilon(1e-7));
  CHECK(mode.beta == Approx(7.87171156).epsilon(1e-7));
  CHECK(mode.s == Approx(-0.91078937).epsilon(1e-6));
  // guidance window and the transverse-wavenumber constraint
  CHECK(mode.beta > kDefaultFiber.cladding_index * kDefaultFiber.wavenumber);
  CHECK(mode.beta < kDefaultFiber.core_index * kDefaultFiber.wavenumber);
  CHECK(std::fabs(mode.u * mode.u + mode.w * mode.w - mode.v * mode.v) <
        1e-10);
  CHECK(mode.residual < 1e-10);
}

TEST_CASE("mode root is stable under small perturbations") {
  FiberSpec nudged = kDefaultFiber;
  nudged.radius_um += 1e-9;
  const double u0 = solve_mode(kDefaultFiber).u;
  const double u1 = solve_mode(nudged).u;
  CHECK(std::fabs(u1 - u0) < 1e-6);
}

TEST_CASE("fiber validation") {
  FiberSpec bad = kDefaultFiber;
  bad.core_index = 0.9;
  CHECK_THROWS_AS(solve_mode(bad), PhysicsError);
  FiberSpec wrong_order = kDefaultFiber;
  wrong_order.azimuthal_order = 2;
  CHECK_THROWS_AS(solve_mode(wrong_order), PhysicsError);
}

TEST_CASE("tangential field continuity across the core boundary") {
  const ModeSolution mode = solve_mode(kDefaultFiber);
  const double a = kDefaultFiber.radius_um;
  for (const Polarization pol :
       {Polarization{Circular{}}, Polarization{QuasiLinear{0.3}}}) {
    for (double phi : {0.0, 0.7, 2.1}) {
      const Eigen::Vector3cd in =
          field_at(mode, kDefaultFiber, a * (1 - 1e-13), phi, 0.0, pol);
      const Eigen::Vector3cd out =
          field_at(mode, kDefaultFiber, a * (1 + 1e-13), phi, 0.0, pol);
      // z component is tangential everywhere
      CHECK(std::abs(in(2) - out(2)) <= 1e-10 * std::abs(in(2)));
      // tangential transverse component: -sin(phi) Ex + cos(phi) Ey
      const Complex tin = -std::sin(phi) * in(0) + std::cos(phi) * in(1);
      const Complex tout = -std::sin(phi) * out(0) + std::cos(phi) * out(1);
      CHECK(std::abs(tin - tout) <= 1e-9 * (std::abs(tin) + 1e-30));
      // normal component jumps by the permittivity ratio
      const Complex nin = std::cos(phi) * in(0) + std::sin(phi) * in(1);
      const Complex nout = std::cos(phi) * out(0) + std::sin(phi) * out(1);
      const double eps_ratio = kDefaultFiber.core_index *
                               kDefaultFiber.core_index;
      CHECK(std::abs(eps_ratio * nin - nout) <= 1e-9 * std::abs(nout));
    }
  }
}

TEST_CASE("field is regular on the fiber axis") {
  const ModeSolution mode = solve_mode(kDefaultFiber);
  const Eigen::Vector3cd e =
      field_at(mode, kDefaultFiber, 0.0, 0.0, 0.0, Circular{});
  CHECK(std::isfinite(e.norm()));
  CHECK(e.norm() > 0.0);
}

TEST_CASE("azimuthal symmetry of circular polarization") {
  const ModeSolution mode = solve_mode(kDefaultFiber);
  const double r = 0.3;
  const double ref = field_magnitude(mode, kDefaultFiber, r, 0.0, Circular{});
  for (double phi = 0.2; phi < 6.3; phi += 0.37)
    CHECK(field_magnitude(mode, kDefaultFiber, r, phi, Circular{}) ==
          Approx(ref).epsilon(1e-12));
}

TEST_CASE("quasi-linear polarization is strongest along its axis") {
  const ModeSolution mode = solve_mode(kDefaultFiber);
  const QuasiLinear pol{0.0};
  for (double r : {0.25, 0.3, 0.5, 1.0}) {
    CHECK(field_magnitude(mode, kDefaultFiber, r, 0.0, pol) >
          field_magnitude(mode, kDefaultFiber, r, 1.5707963, pol));
  }
  // mirror symmetry about the polarization axis
  for (double delta : {0.2, 0.9, 1.4}) {
    CHECK(field_magnitude(mode, kDefaultFiber, 0.4, delta, pol) ==
          Approx(field_magnitude(mode, kDefaultFiber, 0.4, -delta, pol))
              .epsilon(1e-12));
  }
}

TEST_CASE("mode volume") {
  const ModeSolution mode = solve_mode(kDefaultFiber);
  const double v_circ = mode_volume(mode, kDefaultFiber, Circular{});
  CHECK(v_circ == Approx(22043.44).epsilon(1e-4));
  const double v_lin = mode_volume(mode, kDefaultFiber, QuasiLinear{0.0});
  CHECK(v_lin == Approx(v_circ).epsilon(1e-6));

  FiberSpec doubled = kDefaultFiber;
  doubled.cavity_length_m *= 2.0;
  CHECK(mode_volume(mode, doubled, Circular{}) ==
        Approx(2.0 * v_circ).epsilon(1e-12));

  // normalization peak sits inside the core for these parameters
  const double inside =
      mode_intensity(mode, kDefaultFiber, 0.0, 0.0, Circular{}) *
      kDefaultFiber.core_index * kDefaultFiber.core_index;
  const double at_surface =
      mode_intensity(mode, kDefaultFiber, kDefaultFiber.radius_um * 1.0001,
                     0.0, Circular{});
  CHECK(inside > at_surface);
}

TEST_CASE("coupling strength benchmark and ordering") {
  const CouplingModel model(kDefaultFiber);
  const double g300 = model.g_linear_parallel(0.3);
  CHECK(g300 == Approx(10.8296).epsilon(2e-4));
  CHECK(model.g_circular(0.3) == Approx(8.8750).epsilon(1e-3));
  CHECK(model.g_linear_parallel(1.0) == Approx(0.801683).epsilon(5e-4));

  // parallel > circular > orthogonal at fixed distance
  for (double r : {0.25, 0.3, 0.6, 1.0}) {
    CHECK(model.g_linear_parallel(r) > model.g_circular(r));
    CHECK(model.g_circular(r) > model.g_linear_orthogonal(r));
  }
  // monotone decay outside the fiber
  double prev = model.g_linear_parallel(0.21);
  for (double r = 0.3; r < 3.0; r += 0.15) {
    const double g = model.g_linear_parallel(r);
    CHECK(g < prev);
    prev = g;
  }
  CHECK(model.g_linear_parallel(5.0) < 1e-4);

  // free function agrees with the cached model
  const ModeSolution mode = solve_mode(kDefaultFiber);
  CHECK(coupling_strength(mode, kDefaultFiber, {0.3, 0.0}, QuasiLinear{0.0}) ==
        Approx(g300).epsilon(1e-12));
}

TEST_CASE("cooperativity is invariant under cavity-length rescaling") {
  const CouplingModel base(kDefaultFiber);
  FiberSpec doubled = kDefaultFiber;
  doubled.cavity_length_m *= 2.0;
  const CouplingModel longer(doubled);
  // g ~ 1/sqrt(L) and kappa ~ 1/L leave g^2 / kappa unchanged
  const double c_base = base.g_linear_parallel(0.3) *
                        base.g_linear_parallel(0.3);
  const double c_long = 2.0 * longer.g_linear_parallel(0.3) *
                        longer.g_linear_parallel(0.3);
  CHECK(c_long == Approx(c_base).epsilon(1e-6));
}
