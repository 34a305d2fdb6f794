#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace bdnk {

// Config-level problems: missing/unknown keys, unparsable numbers, bad preset names.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An iterative numerical procedure failed (root polish, quadrature budget, non-finite state).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Coefficients of a first-order viscous relativistic fluid around a homogeneous
/// rest state, in the normalization where the principal fields are the temperature
/// perturbation and the three velocity components.
///
/// kappa, mu, eta, nu, tau, omega, chi are the seven dissipation coefficients;
/// sigma = chi - (4/3) eta is derived, never stored. cs is the sound speed of the
/// background state and must be positive; the seven coefficients carry no sign
/// constraints at construction (classification decides what they admit).
struct ModelParameters {
  double kappa = 0;
  double mu = 0;
  double eta = 0;
  double nu = 0;
  double tau = 0;
  double omega = 0;
  double chi = 0;
  double cs = 1;

  ModelParameters() = default;
  ModelParameters(double kappa_, double mu_, double eta_, double nu_, double tau_,
                  double omega_, double chi_, double cs_);

  [[nodiscard]] double sigma() const noexcept { return chi - (4.0 / 3.0) * eta; }
};

/// Sound speed from an equation of state sample: cs = sqrt(p'(theta) / (theta p''(theta))).
/// Requires theta > 0, p'' > 0 and a non-negative radicand.
[[nodiscard]] double compute_sound_speed(double p_prime, double p_double_prime, double theta);

/// Map to the equivalent cs = 1 model:
///   kappa -> cs^4 kappa,  mu, nu, tau, omega -> cs^2 each,  eta and chi unchanged
/// so that sigma is preserved. Every certification inequality keeps its sign under
/// this map (each expression rescales by a positive power of cs); causality is
/// evaluated on the original coefficients, which the map does not claim to preserve.
[[nodiscard]] ModelParameters rescale_to_unit_cs(const ModelParameters& p);

/// Fourier symbols of the linearized system restricted to the invariant splitting
/// (temperature, longitudinal velocity) + (transverse velocity) for a wave vector
/// of magnitude xi. The perpendicular entries act as scalars on both transverse
/// components.
struct SymbolSet {
  Eigen::Matrix2d b00_par;  // -diag(kappa, mu)
  Eigen::Matrix2d a0_par;   // diag(cs^-2, 1)
  double b00_perp;          // -mu
  double a0_perp;           // 1

  double nu_c = 0, sigma_c = 0, tau_c = 0, omega_c = 0, mu_c = 0, eta_c = 0;

  [[nodiscard]] Eigen::Matrix2d b_par(double xi) const;  // -xi^2 diag(nu, sigma)
  [[nodiscard]] Eigen::Matrix2d c_par(double xi) const;  // -xi offdiag(tau+mu, omega+nu)
  [[nodiscard]] Eigen::Matrix2d a_par(double xi) const;  // xi offdiag(1, 1)
  [[nodiscard]] double b_perp(double xi) const;          // eta xi^2
  [[nodiscard]] double c_perp(double) const { return 0.0; }
  [[nodiscard]] double a_perp(double) const { return 0.0; }
};

[[nodiscard]] SymbolSet assemble_symbols(const ModelParameters& p);

/// Full 4x4 rest-frame symbols on (temperature, velocity) for a wave vector xi3.
/// Used by tests to confirm the 2+2 block reduction by explicit conjugation.
[[nodiscard]] Eigen::Matrix4d rest_frame_b00(const ModelParameters& p);
[[nodiscard]] Eigen::Matrix4d rest_frame_a0(const ModelParameters& p);
[[nodiscard]] Eigen::Matrix4d rest_frame_b(const ModelParameters& p, const Eigen::Vector3d& xi3);
[[nodiscard]] Eigen::Matrix4d rest_frame_c(const ModelParameters& p, const Eigen::Vector3d& xi3);
[[nodiscard]] Eigen::Matrix4d rest_frame_a(const Eigen::Vector3d& xi3);

// Flat key = value config. Keys: kappa, mu, eta, nu, tau, omega, chi, cs.
// '#' starts a comment. A missing or unknown key raises ConfigError naming it.
[[nodiscard]] ModelParameters parse_parameters(const std::string& text);
[[nodiscard]] ModelParameters load_parameters_file(const std::string& path);
[[nodiscard]] std::string serialize_parameters(const ModelParameters& p);

}  // namespace bdnk
