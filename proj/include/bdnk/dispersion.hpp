#pragma once

// Dispersion-relation root tracking over wavenumber, exact per-mode linear
// evolution by matrix exponential, Sobolev-norm quadrature for radial
// whole-space data, and decay-exponent fitting.

#include <array>
#include <complex>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "bdnk/model.hpp"
#include "bdnk/numerics.hpp"

namespace bdnk {

enum class SymbolBlock { Parallel, Perpendicular };
[[nodiscard]] const char* to_string(SymbolBlock b);

// Longitudinal dispersion quartic in the growth rate at wavenumber xi,
// ascending coefficients:
//   kappa mu L^4 + (kappa + cs^-2 mu) L^3 + (xi^2 K + cs^-2) L^2
//   + xi^2 (tau + omega + mu - cs^-2 sigma) L + xi^4 nu sigma + xi^2.
[[nodiscard]] Poly dispersion_quartic(const ModelParameters& p, double xi);

struct DispersionRoots {
  std::array<std::complex<double>, 4> parallel;
  std::array<std::complex<double>, 2> perpendicular;
};

// Roots of the longitudinal quartic and the transverse quadratic
// mu L^2 + L + eta xi^2 at this wavenumber, each back-substituted and
// accepted only below 1e-9 relative residual. Large xi is solved in the
// rescaled variable L = xi Lt for conditioning.
[[nodiscard]] DispersionRoots dispersion_roots(const ModelParameters& p, double xi);

struct DispersionBranch {
  std::vector<double> xi_grid;
  std::vector<std::complex<double>> lambdas;
  SymbolBlock block = SymbolBlock::Parallel;
  int branch_id = 0;
};

struct BranchScan {
  std::vector<DispersionBranch> branches;  // 4 parallel + 2 perpendicular
  double max_real_part = 0.0;
};

// Log-spaced grid xi_lo..xi_hi with n points; branches continuity-tracked by
// the minimal-total-distance assignment between consecutive grid points.
[[nodiscard]] BranchScan scan_branches(const ModelParameters& p, double xi_lo, double xi_hi,
                                       int n);

// Per-mode perturbation state in the wavevector-adapted basis: components
// 0, 1 longitudinal (temperature, parallel velocity), 2, 3 transverse.
struct ModeState {
  Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
  Eigen::Vector4cd vdot = Eigen::Vector4cd::Zero();
};

struct InitialProfile {
  enum class Kind { Gaussian };
  Kind kind = Kind::Gaussian;
  double width = 1.0;  // Fourier amplitude per component: amp * exp(-width^2 xi^2 / 2)
  Eigen::Vector4d amplitudes = Eigen::Vector4d::Ones();
  Eigen::Vector4d vdot_amplitudes = Eigen::Vector4d::Zero();
};

// Exact solution of the constant-coefficient second-order mode system
//   M v'' + (A0 - i C(xi)) v' + (B(xi) + i A(xi)) v = 0,  M = -B00,
// as an 8-dimensional first-order companion split into the two 4x4 blocks.
// Throws NumericalError if the exponential overflows to non-finite values.
[[nodiscard]] ModeState evolve_mode(const ModelParameters& p, double xi, const ModeState& init,
                                    double t);

// Evolver with cached per-wavenumber companion decompositions, for quadrature
// loops that revisit the same xi at many times. Not thread-safe; use one
// instance per worker.
class ModeEvolver {
 public:
  explicit ModeEvolver(const ModelParameters& p);
  ~ModeEvolver();
  ModeEvolver(const ModeEvolver&) = delete;
  ModeEvolver& operator=(const ModeEvolver&) = delete;

  [[nodiscard]] ModeState evolve(double xi, const ModeState& init, double t);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct DecayTrace {
  std::vector<double> times;
  std::vector<double> hs_norms;
  std::vector<double> l2_norms;
  double s = 0.0;
  double fitted_exponent = 0.0;
  std::pair<double, double> fit_window{0.0, 0.0};
};

// Sobolev norm of the evolved radial perturbation at each requested time:
//   ||phi(t)||_{H^s}^2 = 4 pi Int_0^inf (1+xi^2)^s |phihat(t, xi)|^2 xi^2 dxi
// by adaptive quadrature (relative tolerance 1e-8), with phihat evolved
// per-mode from the profile's Gaussian Fourier amplitudes. fitted_exponent is
// the least-squares slope of log hs_norm against log(1+t) over the samples
// inside fit_window.
[[nodiscard]] DecayTrace decay_norm_trace(const ModelParameters& p, const InitialProfile& profile,
                                          double s, const std::vector<double>& t_grid,
                                          std::pair<double, double> fit_window = {1e2, 1e4});

// Closed form of the t = 0 Sobolev norm for integer s >= 0 (oracle for the
// quadrature path).
[[nodiscard]] double gaussian_hs_norm(const InitialProfile& profile, int s);

}  // namespace bdnk
