#pragma once

// Dissipativity of the coupled first/second-order system on the longitudinal
// block, and the composite stability certificate.
//
// The source material prints several of the key closed-form expressions in
// mutually inconsistent variants (a sigma-vs-eta slot in the quartic
// discriminant, and a mu-vs-nu swap inside the eigenvector pairing formulas).
// Nothing here transcribes a disputed formula as ground truth: the
// discriminant coefficients come from exact polynomial coefficient extraction
// and the mode pairings from numerically computed eigenvectors. The printed
// variants are evaluated side by side and the matching one is recorded.

#include <array>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bdnk/hyperbolicity.hpp"
#include "bdnk/model.hpp"

namespace bdnk {

enum class Theorem1Verdict { StableC1, StableC2, NotCertified };
[[nodiscard]] const char* to_string(Theorem1Verdict v);

// Which printed reading of an ambiguous formula the computed value matches.
// SigmaVariant is the reading consistent with the main-text symbol blocks
// (all-sigma discriminant; (tau+mu)(omega+nu) products). EtaVariant is the
// alternate printed reading (eta in the squared discriminant term;
// (tau+nu)(omega+mu) products). When the two coincide for degenerate
// parameters (eta = sigma, or tau = omega, or mu = nu), SigmaVariant is
// recorded.
enum class PrintedVariant { SigmaVariant, EtaVariant, Neither };
[[nodiscard]] const char* to_string(PrintedVariant v);

// One scalar inequality: pass iff value > threshold (strict) or value >=
// threshold (non-strict). applicable = false marks a check whose
// preconditions failed; its pass field is then meaningless and kept false.
struct ConditionCheck {
  double value = 0.0;
  double threshold = 0.0;
  bool strict = true;
  bool pass = false;
  bool applicable = true;
};

struct D1Report {
  bool applicable = false;
  bool verdict = false;
  double margin = 0.0;  // cs^-2 (omega+tau) - kappa - cs^-4 sigma
};

struct DeltaDecomposition {
  double delta1 = 0.0;  // linear coefficient of the discriminant, divided by kappa+mu
  double delta2 = 0.0;  // quadratic coefficient, as extracted
  PrintedVariant matched_variant = PrintedVariant::Neither;
};

struct D3Report {
  bool applicable = false;
  bool verdict = false;
  double delta1 = 0.0;
  double delta2 = 0.0;
  bool delta1_strict = false;
  bool delta2_strict = false;
  bool prerequisites = false;  // a0, a2 > 0 for all positive alpha
  PrintedVariant matched_variant = PrintedVariant::Neither;
};

struct EigenPairing {
  double beta = 0.0;                          // squared speed of the mode
  std::complex<double> pairing_value{0, 0};   // L A R with L R = 1
  double closed_form_q = 0.0;                 // pairing polynomial at beta (matched variant)
  PrintedVariant matched_variant = PrintedVariant::Neither;
};

struct D2Report {
  bool applicable = false;
  bool verdict = false;
  double min_abs_pairing = 0.0;
  std::vector<EigenPairing> pairings;
  // Which printed variant the product identity (pairing product against the
  // extracted quadratic discriminant coefficient) reproduces.
  PrintedVariant identity_variant = PrintedVariant::Neither;
  bool closed_form_available = false;  // false when (tau+mu)(omega+nu) = 0
  std::string note;
};

struct C2DissipativityReport {
  bool applicable = false;
  bool verdict = false;
  double margin = 0.0;        // -(sigma + cs^2 mu)
  bool matrix_test = false;   // sqrt(-sigma/mu) A0 +- A positive definite
  bool tests_agree = false;
};

struct DissipativityReport {
  HyperbolicityReport hyperbolicity;
  D1Report d1;
  D2Report d2;
  D3Report d3;
  std::optional<C2DissipativityReport> c2_branch;
  std::vector<std::pair<double, double>> rh_trace;  // (alpha, Delta(alpha)) samples
  Theorem1Verdict theorem1_verdict = Theorem1Verdict::NotCertified;
  // One entry per inequality entering the composite verdict.
  std::map<std::string, ConditionCheck> conditions;
  std::vector<std::string> failures;  // names of failed or blocking conditions
};

// Mode-coupling test for the simple-root class: margin is the raw-coefficient
// form cs^-2 (omega+tau) - kappa - cs^-4 sigma, positive iff the restriction
// of the first-order coupling on the transport eigenspaces is negative.
[[nodiscard]] D1Report check_D1(const ModelParameters& p);

// Quartic coefficients (a0..a4) of the longitudinal dispersion relation at
// squared wavenumber alpha, after rescaling to unit sound speed.
[[nodiscard]] std::array<double, 5> routh_hurwitz_coefficients(const ModelParameters& p,
                                                               double alpha);

// Hurwitz determinant of the quartic: Delta(alpha) = a1 a2 a3 - a1^2 a4 - a3^2 a0.
[[nodiscard]] double hurwitz_delta(const ModelParameters& p, double alpha);

// Exact coefficient extraction of Delta(alpha) = alpha ((kappa+mu) delta1 +
// alpha delta2) via polynomial arithmetic on the a_i(alpha), never by
// transcribing the printed closed form. matched_variant records which printed
// expression the extracted delta2 agrees with (1e-9 relative).
[[nodiscard]] DeltaDecomposition delta_decomposition(const ModelParameters& p);

// All dispersion roots in the open left half-plane for every positive
// wavenumber, decided through the sign structure of the discriminant
// decomposition: delta1 >= 0 and delta2 >= 0 with at least one strict, plus
// the 0th/2nd coefficient positivity prerequisites.
[[nodiscard]] D3Report check_D3(const ModelParameters& p);

// Left/right eigenvector pairing of the four simple longitudinal modes
// against the first-order weight; nonvanishing pairing is the mode-coupling
// nondegeneracy condition. Primary path is numeric; closed forms are
// evaluated in both printed variants for cross-checking.
[[nodiscard]] D2Report check_D2(const ModelParameters& p, double tol_pairing = 1e-8);

// Double-root branch: single scalar condition sigma + cs^2 mu < 0, plus the
// equivalent positive-definiteness matrix test.
[[nodiscard]] C2DissipativityReport check_C2_dissipativity(const ModelParameters& p);

// Composite certificate. Never throws: classification ambiguity or failed
// preconditions produce NotCertified with the failure list filled in. tol is
// the classification equality tolerance (see classify_hyperbolicity).
[[nodiscard]] DissipativityReport certify_theorem1(const ModelParameters& p, double tol = 1e-9);

// Longitudinal symbols conjugated by the inverse square root of the principal
// weight (and the first-order pair additionally carrying the sound-speed
// factors of the given parameters). Used by the pairing and subcharacteristic
// machinery. Require kappa, mu > 0.
[[nodiscard]] Eigen::Matrix2d normalized_a0(const ModelParameters& p);
[[nodiscard]] Eigen::Matrix2d normalized_a(const ModelParameters& p);
[[nodiscard]] Eigen::Matrix2d normalized_b(const ModelParameters& p);
[[nodiscard]] Eigen::Matrix2d normalized_c(const ModelParameters& p);
// Block matrix [[0, 0], [-i A_n, -A0_n]] pairing the companion eigenvectors
// with the first-order part.
[[nodiscard]] Eigen::Matrix4cd pairing_weight(const ModelParameters& p);

}  // namespace bdnk
