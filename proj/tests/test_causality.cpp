// Characteristic speed inventory, the three causality margins, the
// subcharacteristic range of the first-order speeds, and the coupling
// symmetry flags.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bdnk/causality.hpp"
#include "bdnk/dissipativity.hpp"

using namespace bdnk;

namespace {

ModelParameters demo() { return ModelParameters(1.0, 1.0, 0.3, 1.0, 3.0, 3.0, 0.9, 1.0); }
ModelParameters demo18() { return ModelParameters(2.0, 1.0, 0.3, 1.0, 2.0, 2.0, 0.7, 1.0); }
ModelParameters ft() { return ModelParameters(1.0, 1.0, 0.5, -1.0, -1.0, 1.0, -1.0 / 3.0, 0.5); }

}  // namespace

TEST_CASE("speed inventory on the double-root model") {
  CharacteristicSpeeds s = characteristic_speeds(ft());
  CHECK(s.applicable);
  CHECK(s.shear == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(s.sound1 == 1.0);
  CHECK(s.sound2 == 1.0);

  CharacteristicSpeeds none = characteristic_speeds(ModelParameters(1, 1, 0.3, 1, 0, 0, 0.3, 1));
  CHECK_FALSE(none.applicable);
}

TEST_CASE("lightspeed boundary model") {
  CausalityReport r = check_causality(ft());
  CHECK(r.applicable);
  CHECK(r.causal);
  CHECK(r.boundary);
  CHECK(r.b_max == 1.0);
  CHECK(r.margins.at("eta_le_mu") == 0.5);
  CHECK(r.margins.at("ca4_upper") == 0.0);
  CHECK(r.margins.at("ca4_lower") == 0.0);
  REQUIRE(r.subcharacteristic.has_value());
  CHECK(r.subcharacteristic->within_range);
  REQUIRE(r.subcharacteristic->a_values.size() == 4);
  CHECK(r.subcharacteristic->a_values[0] == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(r.subcharacteristic->a_values[1] == 0.0);
  CHECK(r.subcharacteristic->a_values[2] == 0.0);
  CHECK(r.subcharacteristic->a_values[3] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(r.subcharacteristic->w1pos_max_residual < 1e-10);
}

TEST_CASE("superluminal reference models are flagged") {
  CausalityReport r = check_causality(demo());
  CHECK(r.applicable);
  CHECK_FALSE(r.causal);
  CHECK(r.margins.at("ca4_upper") == -13.0);
  CHECK(r.margins.at("ca4_lower") == 0.5);
  CHECK(r.margins.at("eta_le_mu") == 0.7);
  const double want = std::sqrt(0.5 * (14.5 + std::sqrt(208.25)));
  CHECK(r.b_max == doctest::Approx(want).epsilon(1e-12));
  CHECK(r.b_max > 1.0);
  CHECK(r.shear_speed == doctest::Approx(std::sqrt(0.3)).epsilon(1e-14));
  // certification and causality are independent verdicts
  CHECK(certify_theorem1(demo()).theorem1_verdict == Theorem1Verdict::StableC1);

  CHECK_FALSE(check_causality(demo18()).causal);
}

TEST_CASE("margin arithmetic without hyperbolicity") {
  // All three margins pass, but the characteristic roots are complex: the
  // composite flag stays down because no real speed cone exists.
  ModelParameters p(1, 1, 0.3, 1, 0.7, 0.7, 0.9, 1);
  REQUIRE(p.sigma() == 0.5);
  CausalityReport r = check_causality(p);
  CHECK(r.margins.at("eta_le_mu") == 0.7);
  CHECK(r.margins.at("ca4_upper") == doctest::Approx(1.5 - 1.39).epsilon(1e-12));
  CHECK(r.margins.at("ca4_lower") == 0.5);
  for (const auto& [name, value] : r.margins) CHECK(value > 0.0);
  CHECK_FALSE(r.applicable);
  CHECK_FALSE(r.causal);
  CHECK_FALSE(r.subcharacteristic.has_value());
}

TEST_CASE("speed ordering and range") {
  CausalityReport r = check_causality(demo());
  CHECK(r.sound_speed1 <= r.sound_speed2);
  CHECK(r.b_max == std::max(r.shear_speed, r.sound_speed2));
  REQUIRE(r.subcharacteristic.has_value());
  const auto& a = r.subcharacteristic->a_values;
  CHECK(a[0] == doctest::Approx(-1.0).epsilon(1e-14));  // +-cs with cs = 1
  CHECK(a[3] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.subcharacteristic->within_range);
  CHECK(r.subcharacteristic->w1pos_max_residual < 1e-10);
}

TEST_CASE("coupling symmetry flags") {
  // mu = nu and tau = omega: structurally symmetric
  CHECK(check_symmetry_condition(demo()));
  CHECK(check_causality(demo()).c_matrix_symmetric);
  // double-root class counts as symmetric even though mu != nu
  CHECK(check_symmetry_condition(ft()));
  // but its coupling block is symmetric only when tau+mu = omega+nu
  CHECK(check_causality(ft()).c_matrix_symmetric);  // 0 = 0
  ModelParameters skew(1, 1, 0.3, 1, 3, 2.5, 0.9, 1);
  CHECK_FALSE(check_symmetry_condition(skew));
  CHECK_FALSE(check_causality(skew).c_matrix_symmetric);  // 4 vs 3.5
  // bdn18 family: mu = nu, tau = omega with kappa free
  CHECK(check_symmetry_condition(demo18()));
  CHECK(check_causality(demo18()).c_matrix_symmetric);
  // the block condition tau+mu = omega+nu is weaker than the structural one
  ModelParameters cross(1, 1, 0.3, 2, 3, 2, 0.9, 1);
  CHECK(check_causality(cross).c_matrix_symmetric);  // 4 = 4
  CHECK_FALSE(check_symmetry_condition(cross));      // mu != nu
}

TEST_CASE("not hyperbolic yields inapplicable, not an error") {
  ModelParameters p(1, 1, 0.3, 1, 0, 0, 0.3, 1);
  CausalityReport r = check_causality(p);
  CHECK_FALSE(r.applicable);
  CHECK_FALSE(r.causal);
  CHECK(r.b_max == 0.0);
  CHECK_FALSE(r.subcharacteristic.has_value());
  CHECK(r.margins.size() == 3);

  SubcharacteristicReport s = check_subcharacteristic(p);
  CHECK_FALSE(s.applicable);
}
