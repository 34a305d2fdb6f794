#pragma once

// Hyperbolicity of the second-order operator: closed-form classification of
// the principal symbol into the three admissible multiplicity classes, plus an
// independent numerical eigenstructure check on the companion matrices.
//
// Everything here depends only on the second-order blocks, so the sound speed
// never enters the formulas. Strict-inequality margins are reported for the
// parameters as given; the equality constraints of the double-root class are
// tested against the unit-sound-speed rescaling (see classify_hyperbolicity).

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bdnk/model.hpp"

namespace bdnk {

enum class HyperbolicClass {
  NotHyperbolic,
  ClassI_strict,        // four simple characteristic speeds
  ClassII_double,       // two double semi-simple speeds
  ClassIII_degenerate,  // zero double speed; flagged not physical
};
[[nodiscard]] const char* to_string(HyperbolicClass c);

// More than one class matched within tolerance. The message lists the classes.
struct AmbiguousClassification : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericEigenReport {
  // Eigenvalues of i*companion per block; real exactly when hyperbolic.
  std::vector<std::complex<double>> par_eigenvalues;
  std::vector<std::complex<double>> perp_eigenvalues;
  // max |Re| over the eigenvalues of the plain (un-multiplied) companions;
  // zero up to roundoff iff all characteristic roots are purely imaginary.
  double max_real_part_abs = 0.0;
  std::vector<int> par_multiplicities;
  std::vector<int> perp_multiplicities;
  bool par_semisimple = false;
  bool perp_semisimple = false;
  bool all_real = false;
  bool hyperbolic = false;  // all_real && both blocks semisimple
  double eigenvector_condition = 0.0;
  double tol = 0.0;
};

struct HyperbolicityReport {
  HyperbolicClass cls = HyperbolicClass::NotHyperbolic;
  bool holds = false;         // cls != NotHyperbolic
  bool not_physical = false;  // set for the degenerate class
  // Roots of the characteristic quadratic in b^2 (beta1 <= beta2); NaN when
  // complex or when the principal part degenerates.
  double beta1, beta2;
  double frak_k = 0.0, frak_l = 0.0;
  // Signed margins, one per tested inequality. Positivity margins pass when
  // > 0. The two equality margins (C2_1a, C2_1b) store minus the deviation
  // measured on unit-sound-speed coefficients and pass when >= -tol.
  std::map<std::string, double> margins;
  std::optional<NumericEigenReport> numeric_confirmation;
  std::vector<std::string> notes;
};

// Invariants (k, l) of the characteristic quadratic q(y) = y^2 - k y + l whose
// roots are the squared characteristic speeds of the longitudinal block:
// k = ((tau+mu)(nu+omega) - kappa sigma - nu mu)/(kappa mu), l = nu sigma/(kappa mu).
// Throws NumericalError when kappa*mu = 0 (degenerate principal part).
[[nodiscard]] std::pair<double, double> characteristic_quadratic(const ModelParameters& p);

// Lemma-style closed-form classification. tol bounds the deviation allowed in
// the ClassII equality constraints and the ClassIII |nu|, |sigma| window, both
// measured after rescaling to unit sound speed. Throws AmbiguousClassification
// when more than one class matches within tol.
[[nodiscard]] HyperbolicityReport classify_hyperbolicity(const ModelParameters& p,
                                                         double tol = 1e-9);

// Numerical oracle: eigenvalues, multiplicity clusters (within tol) and a
// rank-based semi-simplicity test of the two companion matrices at xi = 1.
// Requires kappa*mu != 0; throws NumericalError otherwise.
[[nodiscard]] NumericEigenReport numeric_eigenstructure(const ModelParameters& p,
                                                        double tol = 1e-8);

// Companion matrices of the second-order symbol (quadratic eigenproblem
// linearized in the speed variable), longitudinal and transverse blocks.
// Eigenvalues are i*b with b the characteristic speeds. For kappa, mu > 0 this
// is the symmetric-split form; otherwise an equivalent similarity variant is
// used so the spectrum is still correct for any invertible principal weight.
[[nodiscard]] Eigen::Matrix4cd companion_parallel(const ModelParameters& p, double xi = 1.0);
[[nodiscard]] Eigen::Matrix4cd companion_perpendicular(const ModelParameters& p, double xi = 1.0);

}  // namespace bdnk
