#include "bdnk/numerics.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <queue>

namespace bdnk {

void Poly::normalize(double rel_tol) {
  double big = 0.0;
  for (double v : c) big = std::max(big, std::abs(v));
  const double cut = big * rel_tol;
  while (c.size() > 1 && std::abs(c.back()) <= cut) c.pop_back();
}

double Poly::eval(double x) const {
  double r = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
  return r;
}

std::complex<double> Poly::eval(std::complex<double> x) const {
  std::complex<double> r = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
  return r;
}

Poly Poly::derivative() const {
  Poly d;
  if (c.size() <= 1) {
    d.c = {0.0};
    return d;
  }
  d.c.resize(c.size() - 1);
  for (size_t i = 1; i < c.size(); ++i) d.c[i - 1] = c[i] * static_cast<double>(i);
  return d;
}

double Poly::eval_scale(std::complex<double> x) const {
  const double ax = std::abs(x);
  double s = 0.0;
  double p = 1.0;
  for (double v : c) {
    s += std::abs(v) * p;
    p *= ax;
  }
  return s;
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly r;
  r.c.assign(std::max(a.c.size(), b.c.size()), 0.0);
  for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
  if (r.c.empty()) r.c = {0.0};
  return r;
}

Poly poly_sub(const Poly& a, const Poly& b) {
  return poly_add(a, poly_scale(b, -1.0));
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly r;
  if (a.c.empty() || b.c.empty()) {
    r.c = {0.0};
    return r;
  }
  r.c.assign(a.c.size() + b.c.size() - 1, 0.0);
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
  return r;
}

Poly poly_scale(const Poly& a, double s) {
  Poly r = a;
  for (double& v : r.c) v *= s;
  return r;
}

std::vector<std::complex<double>> poly_roots(const Poly& p_in, double residual_tol) {
  Poly p = p_in;
  p.normalize(1e-14);
  const int n = p.degree();
  if (n < 1) throw NumericalError("poly_roots: polynomial is constant");
  if (n == 1) return {std::complex<double>(-p.c[0] / p.c[1], 0.0)};
  if (n == 2) return solve_quadratic(p.c[2], p.c[1], p.c[0]);

  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -p.c[i] / p.c[n];

  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) throw NumericalError("poly_roots: eigensolver failed");

  const Poly dp = p.derivative();
  std::vector<std::complex<double>> roots(n);
  for (int i = 0; i < n; ++i) {
    std::complex<double> z = es.eigenvalues()(i);
    for (int it = 0; it < 8; ++it) {
      const std::complex<double> f = p.eval(z);
      const std::complex<double> df = dp.eval(z);
      if (std::abs(df) == 0.0) break;
      const std::complex<double> step = f / df;
      z -= step;
      if (std::abs(step) <= 1e-15 * (1.0 + std::abs(z))) break;
    }
    // A real-coefficient polynomial has conjugate-paired roots; snap tiny
    // imaginary parts left over from the eigensolver.
    if (std::abs(z.imag()) <= 1e-12 * (1.0 + std::abs(z.real()))) z = {z.real(), 0.0};
    const double res = std::abs(p.eval(z));
    const double scale = p.eval_scale(z);
    if (scale > 0.0 && res > residual_tol * scale) {
      throw NumericalError("poly_roots: residual check failed");
    }
    roots[i] = z;
  }
  std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

std::vector<std::complex<double>> solve_quadratic(double a, double b, double c) {
  if (a == 0.0) {
    if (b == 0.0) throw NumericalError("solve_quadratic: degenerate equation");
    return {std::complex<double>(-c / b, 0.0)};
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc >= 0.0) {
    const double sq = std::sqrt(disc);
    // q avoids cancellation between -b and sq.
    const double q = -0.5 * (b + (b >= 0.0 ? sq : -sq));
    double r1, r2;
    if (q != 0.0) {
      r1 = q / a;
      r2 = c / q;
    } else {
      r1 = 0.0;
      r2 = 0.0;
    }
    if (r1 > r2) std::swap(r1, r2);
    return {std::complex<double>(r1, 0.0), std::complex<double>(r2, 0.0)};
  }
  const double re = -b / (2.0 * a);
  const double im = std::sqrt(-disc) / (2.0 * a);
  return {std::complex<double>(re, -std::abs(im)), std::complex<double>(re, std::abs(im))};
}

GaussRule gauss_legendre(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev-like initial guess for the i-th positive root.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      // Legendre recurrence: P_k(x) from P_{k-1}, P_{k-2}.
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.weights[i] = w;
    rule.nodes[n - 1 - i] = x;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

namespace {

struct Panel {
  double a, b;
  double value;  // GL15 estimate
  double error;  // |GL15 - GL7|
};

void evaluate_panel(const std::function<double(double)>& f, const GaussRule& g7,
                    const GaussRule& g15, Panel& p) {
  const double mid = 0.5 * (p.a + p.b);
  const double half = 0.5 * (p.b - p.a);
  double s7 = 0.0, s15 = 0.0;
  for (int i = 0; i < 7; ++i) s7 += g7.weights[i] * f(mid + half * g7.nodes[i]);
  for (int i = 0; i < 15; ++i) s15 += g15.weights[i] * f(mid + half * g15.nodes[i]);
  p.value = half * s15;
  p.error = std::abs(half * (s15 - s7));
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double rtol,
                          double atol, int max_panels) {
  if (!(b > a)) throw NumericalError("integrate_adaptive: empty interval");
  const GaussRule g7 = gauss_legendre(7);
  const GaussRule g15 = gauss_legendre(15);

  std::vector<Panel> panels;
  panels.push_back({a, b, 0.0, 0.0});
  evaluate_panel(f, g7, g15, panels[0]);

  auto total = [&panels] {
    double value = 0.0, error = 0.0;
    for (const Panel& p : panels) {
      value += p.value;
      error += p.error;
    }
    return std::pair{value, error};
  };

  while (true) {
    auto [value, error] = total();
    if (error <= rtol * std::abs(value) + atol) break;
    if (static_cast<int>(panels.size()) >= max_panels) {
      throw NumericalError("integrate_adaptive: panel budget exhausted");
    }
    // Split the worst panel; ties broken by left endpoint for determinism.
    size_t worst = 0;
    for (size_t i = 1; i < panels.size(); ++i) {
      if (panels[i].error > panels[worst].error ||
          (panels[i].error == panels[worst].error && panels[i].a < panels[worst].a)) {
        worst = i;
      }
    }
    const Panel old = panels[worst];
    const double mid = 0.5 * (old.a + old.b);
    Panel left{old.a, mid, 0.0, 0.0};
    Panel right{mid, old.b, 0.0, 0.0};
    evaluate_panel(f, g7, g15, left);
    evaluate_panel(f, g7, g15, right);
    panels[worst] = left;
    panels.push_back(right);
  }

  // Kahan sum in position order so the result does not depend on refinement
  // history.
  std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  double sum = 0.0, comp = 0.0;
  for (const Panel& p : panels) {
    const double y = p.value - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

double least_squares_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw NumericalError("least_squares_slope: need at least two points");
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) throw NumericalError("least_squares_slope: degenerate abscissae");
  return sxy / sxx;
}

}  // namespace bdnk
