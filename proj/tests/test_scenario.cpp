#include <doctest.h>

#include "fibergate/scenario.hpp"

using namespace fibergate;
using doctest::Approx;

namespace {

const char* kBaseline = R"(# two-atom reference point
[gate]
kind = local
total_atoms = 2

[cavity]
kappa_r_2pi_mhz = 2.5
kappa_t_2pi_mhz = 0.1
kappa_m_2pi_mhz = 0.1

[atoms]
gamma_2pi_mhz = 2.6
target_g_2pi_mhz = 7.8
)";

}  // namespace

TEST_CASE("parsing a minimal scenario") {
  const ScenarioDoc doc = ScenarioDoc::parse(kBaseline);
  const Scenario sc = bind_scenario(doc);
  CHECK(sc.kind == GateKind::local);
  CHECK(sc.total_atoms == 2);
  CHECK(sc.control == 0);
  CHECK(sc.target == 1);
  CHECK(sc.cavity.kappa_r == Approx(2.5));
  CHECK(sc.flavor == Flavor::post_selected);
  CHECK(!sc.residual.enabled);
  REQUIRE(sc.targets.g.has_value());
  CHECK(*sc.targets.g == Approx(7.8));
  CHECK(!sc.fiber.has_value());
}

TEST_CASE("comments, blank lines and inline comments are ignored") {
  const ScenarioDoc doc = ScenarioDoc::parse(
      "[cavity]\n"
      "kappa_r_2pi_mhz = 2.5   # input mirror\n"
      "\n"
      "[atoms]\n"
      "target_g_2pi_mhz = 7.8\n");
  CHECK(bind_scenario(doc).cavity.kappa_r == Approx(2.5));
}

TEST_CASE("strictness: unknown keys and sections are rejected") {
  CHECK_THROWS_AS(
      bind_scenario(ScenarioDoc::parse("[cavity]\nkapa_r_2pi_mhz = 2\n")),
      ParseError);
  CHECK_THROWS_AS(
      bind_scenario(ScenarioDoc::parse("[cavityy]\nkappa_r_2pi_mhz = 2\n")),
      ParseError);
  // the line number is carried along
  try {
    bind_scenario(ScenarioDoc::parse(
        "[cavity]\nkappa_r_2pi_mhz = 2.5\nbogus_key = 1\n[atoms]\n"
        "target_g_2pi_mhz = 7.8\n"));
    FAIL("expected ParseError");
  } catch (const ParseError& err) {
    CHECK(err.line() == 3);
  }
}

TEST_CASE("syntax errors") {
  CHECK_THROWS_AS(ScenarioDoc::parse("[cavity\n"), ParseError);
  CHECK_THROWS_AS(ScenarioDoc::parse("kappa = 1\n"), ParseError);  // no section
  CHECK_THROWS_AS(ScenarioDoc::parse("[a]\nnovalue\n"), ParseError);
  CHECK_THROWS_AS(ScenarioDoc::parse("[a]\nk = 1\nk = 2\n"), ParseError);
  CHECK_THROWS_AS(
      bind_scenario(ScenarioDoc::parse("[cavity]\nkappa_r_2pi_mhz = abc\n")),
      ParseError);
}

TEST_CASE("missing required cavity rate") {
  CHECK_THROWS_AS(
      bind_scenario(ScenarioDoc::parse("[atoms]\ntarget_g_2pi_mhz = 7.8\n")),
      ParseError);
}

TEST_CASE("physics violations surface as physics errors") {
  CHECK_THROWS_AS(
      bind_scenario(ScenarioDoc::parse(
          "[cavity]\nkappa_r_2pi_mhz = -2\n[atoms]\ntarget_g_2pi_mhz = 7\n")),
      PhysicsError);
}

TEST_CASE("qubit indices in files are one-based") {
  const ScenarioDoc doc = ScenarioDoc::parse(
      "[gate]\nkind = local\ntotal_atoms = 3\ncontrol_qubit = 1\n"
      "target_qubit = 3\n"
      "[cavity]\nkappa_r_2pi_mhz = 2.5\n"
      "[atoms]\ntarget_g_2pi_mhz = 7.8\nnontarget_g_2pi_mhz = 1.0\n");
  const Scenario sc = bind_scenario(doc);
  CHECK(sc.control == 0);
  CHECK(sc.target == 2);
}

TEST_CASE("fiber section with polarization") {
  const ScenarioDoc doc = ScenarioDoc::parse(
      "[gate]\nkind = remote\n"
      "[cavity]\nkappa_r_2pi_mhz = 2.5\n"
      "[atoms]\ntarget_r_nm = 300\n"
      "[fiber]\nradius_nm = 200\npolarization = circular\n");
  const Scenario sc = bind_scenario(doc);
  REQUIRE(sc.fiber.has_value());
  CHECK(sc.fiber->radius_um == Approx(0.2));
  CHECK(std::holds_alternative<Circular>(sc.polarization));
  CHECK_THROWS_AS(bind_scenario(ScenarioDoc::parse(
                      "[cavity]\nkappa_r_2pi_mhz = 2.5\n"
                      "[atoms]\ntarget_r_nm = 300\n"
                      "[fiber]\npolarization = diagonal\n")),
                  ParseError);
}

TEST_CASE("sweep binding") {
  const ScenarioDoc doc = ScenarioDoc::parse(
      "[cavity]\nkappa_r_2pi_mhz = 2.5\n"
      "[atoms]\ntarget_g_2pi_mhz = 7.8\n"
      "[sweep]\naxis1 = atoms.target_g_2pi_mhz\naxis1_min = 4\n"
      "axis1_max = 30\naxis1_steps = 14\n"
      "axis2 = cavity.kappa_r_2pi_mhz\naxis2_min = 1\naxis2_max = 8\n"
      "axis2_steps = 8\naxis2_scale = log\n");
  const SweepSpec sweep = bind_sweep(doc);
  REQUIRE(sweep.axes.size() == 2);
  CHECK(sweep.axes[0].section == "atoms");
  CHECK(sweep.axes[0].key == "target_g_2pi_mhz");
  CHECK(sweep.axes[0].value_at(0) == Approx(4.0));
  CHECK(sweep.axes[0].value_at(13) == Approx(30.0));
  CHECK(sweep.axes[1].log_scale);
  CHECK(sweep.axes[1].value_at(0) == Approx(1.0));
  CHECK(sweep.axes[1].value_at(7) == Approx(8.0));

  CHECK(!has_sweep(ScenarioDoc::parse(kBaseline)));
  CHECK_THROWS_AS(bind_sweep(ScenarioDoc::parse(kBaseline)), ParseError);
  CHECK_THROWS_AS(
      bind_sweep(ScenarioDoc::parse("[sweep]\naxis1 = nodots\naxis1_min = 1\n"
                                    "axis1_max = 2\naxis1_steps = 3\n")),
      ParseError);
  CHECK_THROWS_AS(
      bind_sweep(ScenarioDoc::parse("[sweep]\naxis1 = a.b\naxis1_min = 0\n"
                                    "axis1_max = 2\naxis1_steps = 3\n"
                                    "axis1_scale = log\n")),
      ParseError);
}

TEST_CASE("numeric overrides for sweeps") {
  ScenarioDoc doc = ScenarioDoc::parse(kBaseline);
  doc.set_number("atoms", "target_g_2pi_mhz", 12.25);
  CHECK(bind_scenario(doc).targets.g.value() == Approx(12.25));
  // overriding a non-numeric field fails at bind time
  doc.set_number("gate", "kind", 3.0);
  CHECK_THROWS_AS(bind_scenario(doc), ParseError);
}
