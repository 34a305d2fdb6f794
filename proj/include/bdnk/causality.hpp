#pragma once

// Causality of the second-order operator (all characteristic speeds at most
// lightspeed), the characteristic speed inventory, the subcharacteristic
// range check for the first-order speeds, and the coupling-symmetry test.
// Speeds are physical quantities, so everything here evaluates the
// parameters as given (no unit-sound-speed rescaling).

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bdnk/model.hpp"

namespace bdnk {

struct CharacteristicSpeeds {
  bool applicable = false;  // false when the operator is not hyperbolic
  double shear = 0.0;       // sqrt(eta/mu)
  double sound1 = 0.0;      // sqrt(beta1)
  double sound2 = 0.0;      // sqrt(beta2), sound1 <= sound2
};

struct SubcharacteristicReport {
  bool applicable = false;
  std::vector<double> a_values;  // first-order speeds: +-cs longitudinal, 0 0 transverse
  bool within_range = false;     // all a in [b_min - 1e-12, b_max + 1e-12]
  double w1pos_max_residual = 0.0;  // determinant identity residual over 20 sample points
};

struct CausalityReport {
  bool applicable = false;  // false when not hyperbolic
  bool causal = false;
  double shear_speed = 0.0;
  double sound_speed1 = 0.0;
  double sound_speed2 = 0.0;
  double b_max = 0.0;
  // eta_le_mu = mu - eta; ca4_upper = kappa mu + nu sigma - K;
  // ca4_lower = kappa mu - nu sigma, where K is the C1_1 expression.
  // causal iff all three >= 0 (lightlike characteristics allowed).
  std::map<std::string, double> margins;
  bool boundary = false;  // some margin is zero to within 1e-12
  std::optional<SubcharacteristicReport> subcharacteristic;
  bool symmetric_coupling = false;   // double-root class, or mu = nu and tau = omega
  bool c_matrix_symmetric = false;   // direct symmetry test of the coupling block
};

[[nodiscard]] CharacteristicSpeeds characteristic_speeds(const ModelParameters& p);

// Full causality report including the subcharacteristic check and the
// coupling-symmetry flags. Not-hyperbolic input yields applicable = false and
// causal = false rather than an error.
[[nodiscard]] CausalityReport check_causality(const ModelParameters& p);

// First-order speeds against the second-order speed range, plus the
// determinant identity linking the restricted quadratic form to the
// companion characteristic polynomial, evaluated at 20 deterministic sample
// points with the maximum scaled residual reported.
[[nodiscard]] SubcharacteristicReport check_subcharacteristic(const ModelParameters& p);

// True iff the coupling block is symmetric in the structural sense: either
// the double-root class holds, or mu = nu and tau = omega to 1e-12.
[[nodiscard]] bool check_symmetry_condition(const ModelParameters& p);

}  // namespace bdnk
