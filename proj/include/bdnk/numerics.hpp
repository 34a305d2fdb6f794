#pragma once

// Small numerical toolbox: real-coefficient polynomials with companion-matrix
// root solving, Gauss-Legendre panels with adaptive refinement, and a
// least-squares slope helper used by the decay and dispersion fits.

#include <complex>
#include <functional>
#include <vector>

#include "bdnk/model.hpp"

namespace bdnk {

// Polynomial with real coefficients in ascending order: c[0] + c[1] x + ...
// The leading coefficient is kept nonzero by normalize().
struct Poly {
  std::vector<double> c;

  Poly() = default;
  explicit Poly(std::vector<double> coeffs) : c(std::move(coeffs)) {}

  [[nodiscard]] int degree() const { return static_cast<int>(c.size()) - 1; }

  // Drop trailing near-zero leading coefficients (relative to the largest).
  void normalize(double rel_tol = 0.0);

  [[nodiscard]] double eval(double x) const;
  [[nodiscard]] std::complex<double> eval(std::complex<double> x) const;
  [[nodiscard]] Poly derivative() const;

  // Scale sum |c_i| |x|^i, used to put residuals on a relative footing.
  [[nodiscard]] double eval_scale(std::complex<double> x) const;
};

[[nodiscard]] Poly poly_add(const Poly& a, const Poly& b);
[[nodiscard]] Poly poly_sub(const Poly& a, const Poly& b);
[[nodiscard]] Poly poly_mul(const Poly& a, const Poly& b);
[[nodiscard]] Poly poly_scale(const Poly& a, double s);

// Roots of a real-coefficient polynomial via the balanced companion matrix,
// each polished with a few Newton steps.  Throws NumericalError when the
// polynomial is constant or the residual check fails.
[[nodiscard]] std::vector<std::complex<double>> poly_roots(const Poly& p,
                                                           double residual_tol = 1e-9);

// Stable quadratic solver for a x^2 + b x + c with real coefficients.
[[nodiscard]] std::vector<std::complex<double>> solve_quadratic(double a, double b, double c);

// Nodes and weights for n-point Gauss-Legendre quadrature on [-1, 1],
// computed at runtime by Newton iteration on the Legendre polynomial.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
[[nodiscard]] GaussRule gauss_legendre(int n);

// Adaptive panel integration of f over [a, b].  Each panel is estimated with
// 15-point Gauss-Legendre and its error with |GL15 - GL7|; the worst panel is
// split until the summed error estimate meets rtol * |integral| + atol.
// Deterministic: panels are summed in position order with Kahan compensation.
// Throws NumericalError if the panel budget is exhausted.
[[nodiscard]] double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                        double rtol = 1e-8, double atol = 0.0,
                                        int max_panels = 4096);

// Slope of the least-squares line through (x_i, y_i).
[[nodiscard]] double least_squares_slope(const std::vector<double>& xs,
                                         const std::vector<double>& ys);

}  // namespace bdnk
