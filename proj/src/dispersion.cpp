#include "bdnk/dispersion.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <sstream>
#include <unordered_map>

namespace bdnk {

const char* to_string(SymbolBlock b) {
  switch (b) {
    case SymbolBlock::Parallel: return "parallel";
    case SymbolBlock::Perpendicular: return "perpendicular";
  }
  return "unknown";
}

Poly dispersion_quartic(const ModelParameters& p, double xi) {
  if (p.kappa * p.mu == 0.0)
    throw NumericalError("dispersion quartic: kappa*mu = 0, principal part degenerates");
  const double cs2i = 1.0 / (p.cs * p.cs);
  const double sig = p.sigma();
  const double big_k = (p.tau + p.mu) * (p.nu + p.omega) - p.kappa * sig - p.nu * p.mu;
  const double x2 = xi * xi;
  return Poly{{x2 * x2 * p.nu * sig + x2,
               x2 * (p.tau + p.omega + p.mu - cs2i * sig),
               x2 * big_k + cs2i,
               p.kappa + cs2i * p.mu,
               p.kappa * p.mu}};
}

namespace {

std::complex<double> polish_root(const Poly& q, const Poly& dq, std::complex<double> z) {
  for (int it = 0; it < 2; ++it) {
    const std::complex<double> d = dq.eval(z);
    if (std::abs(d) == 0.0) break;
    z -= q.eval(z) / d;
  }
  return z;
}

void verify_roots(const Poly& q, const std::array<std::complex<double>, 4>& roots, double xi) {
  for (const auto& z : roots) {
    const double res = std::abs(q.eval(z));
    if (!(res <= 1e-9 * std::max(1e-300, q.eval_scale(z)))) {
      std::ostringstream msg;
      msg << "dispersion root residual " << res << " too large at xi = " << xi;
      throw NumericalError(msg.str());
    }
  }
}

bool re_im_less(const std::complex<double>& a, const std::complex<double>& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace

DispersionRoots dispersion_roots(const ModelParameters& p, double xi) {
  if (!(std::isfinite(xi) && xi >= 0.0))
    throw std::domain_error("dispersion_roots: xi must be finite and nonnegative");
  const Poly quartic = dispersion_quartic(p, xi);

  DispersionRoots out;
  if (xi <= 1.0) {
    const auto roots = poly_roots(quartic, 1e-9);
    for (int k = 0; k < 4; ++k) out.parallel[k] = roots[k];
  } else {
    // Solve in the rescaled growth rate L = xi Lt so coefficients stay O(1),
    // then polish on the original quartic.
    std::vector<double> scaled(5);
    for (int i = 0; i < 5; ++i) scaled[i] = quartic.c[i] * std::pow(xi, i - 4);
    const auto roots = poly_roots(Poly{scaled}, 1e-9);
    const Poly dq = quartic.derivative();
    for (int k = 0; k < 4; ++k) out.parallel[k] = polish_root(quartic, dq, xi * roots[k]);
    std::sort(out.parallel.begin(), out.parallel.end(), re_im_less);
  }
  verify_roots(quartic, out.parallel, xi);

  const auto perp = solve_quadratic(p.mu, 1.0, p.eta * xi * xi);
  out.perpendicular = {perp[0], perp[1]};
  std::sort(out.perpendicular.begin(), out.perpendicular.end(), re_im_less);
  return out;
}

BranchScan scan_branches(const ModelParameters& p, double xi_lo, double xi_hi, int n) {
  if (!(xi_lo > 0.0) || !(xi_hi >= xi_lo) || n < 1)
    throw std::domain_error("scan_branches: need 0 < xi_lo <= xi_hi and n >= 1");

  std::vector<double> grid(static_cast<size_t>(n));
  if (n == 1) {
    grid[0] = xi_lo;
  } else {
    const double llo = std::log(xi_lo);
    const double lhi = std::log(xi_hi);
    for (int i = 0; i < n; ++i)
      grid[static_cast<size_t>(i)] = std::exp(llo + (lhi - llo) * i / (n - 1));
  }

  BranchScan out;
  out.branches.resize(6);
  for (int b = 0; b < 6; ++b) {
    out.branches[static_cast<size_t>(b)].xi_grid = grid;
    out.branches[static_cast<size_t>(b)].branch_id = b;
    out.branches[static_cast<size_t>(b)].block =
        b < 4 ? SymbolBlock::Parallel : SymbolBlock::Perpendicular;
    out.branches[static_cast<size_t>(b)].lambdas.reserve(grid.size());
  }

  std::vector<std::array<int, 4>> perms4;
  {
    std::array<int, 4> base{0, 1, 2, 3};
    do perms4.push_back(base);
    while (std::next_permutation(base.begin(), base.end()));
  }

  std::array<std::complex<double>, 4> prev_par;
  std::array<std::complex<double>, 2> prev_perp;
  out.max_real_part = -std::numeric_limits<double>::infinity();

  for (size_t gi = 0; gi < grid.size(); ++gi) {
    const DispersionRoots roots = dispersion_roots(p, grid[gi]);
    std::array<std::complex<double>, 4> cur_par;
    std::array<std::complex<double>, 2> cur_perp;
    if (gi == 0) {
      cur_par = roots.parallel;
      cur_perp = roots.perpendicular;
    } else {
      double best = std::numeric_limits<double>::infinity();
      std::array<int, 4> pick{0, 1, 2, 3};
      for (const auto& perm : perms4) {
        double cost = 0.0;
        for (int j = 0; j < 4; ++j) cost += std::abs(roots.parallel[perm[j]] - prev_par[j]);
        if (cost < best) {
          best = cost;
          pick = perm;
        }
      }
      for (int j = 0; j < 4; ++j) cur_par[j] = roots.parallel[pick[j]];
      const double keep = std::abs(roots.perpendicular[0] - prev_perp[0]) +
                          std::abs(roots.perpendicular[1] - prev_perp[1]);
      const double swap = std::abs(roots.perpendicular[1] - prev_perp[0]) +
                          std::abs(roots.perpendicular[0] - prev_perp[1]);
      if (swap < keep) {
        cur_perp = {roots.perpendicular[1], roots.perpendicular[0]};
      } else {
        cur_perp = roots.perpendicular;
      }
    }
    for (int j = 0; j < 4; ++j) {
      out.branches[static_cast<size_t>(j)].lambdas.push_back(cur_par[j]);
      out.max_real_part = std::max(out.max_real_part, cur_par[j].real());
    }
    for (int j = 0; j < 2; ++j) {
      out.branches[static_cast<size_t>(4 + j)].lambdas.push_back(cur_perp[j]);
      out.max_real_part = std::max(out.max_real_part, cur_perp[j].real());
    }
    prev_par = cur_par;
    prev_perp = cur_perp;
  }
  return out;
}

namespace {

struct Decomp4 {
  bool modal = false;
  Eigen::Matrix4cd v, vinv;
  Eigen::Vector4cd lam;
  Eigen::Matrix4cd g;
};

struct Decomp2 {
  bool modal = false;
  Eigen::Matrix2cd v, vinv;
  Eigen::Vector2cd lam;
  Eigen::Matrix2cd g;
};

constexpr double kModalCondLimit = 1e8;

Decomp4 decompose4(const Eigen::Matrix4cd& g) {
  Decomp4 d;
  d.g = g;
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(g, true);
  if (es.info() == Eigen::Success) {
    Eigen::JacobiSVD<Eigen::Matrix4cd> svd(es.eigenvectors());
    const auto& sv = svd.singularValues();
    if (sv(3) > 0.0 && sv(0) / sv(3) < kModalCondLimit) {
      d.modal = true;
      d.v = es.eigenvectors();
      d.vinv = d.v.inverse();
      d.lam = es.eigenvalues();
    }
  }
  return d;
}

Decomp2 decompose2(const Eigen::Matrix2cd& g) {
  Decomp2 d;
  d.g = g;
  Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(g, true);
  if (es.info() == Eigen::Success) {
    Eigen::JacobiSVD<Eigen::Matrix2cd> svd(es.eigenvectors());
    const auto& sv = svd.singularValues();
    if (sv(1) > 0.0 && sv(0) / sv(1) < kModalCondLimit) {
      d.modal = true;
      d.v = es.eigenvectors();
      d.vinv = d.v.inverse();
      d.lam = es.eigenvalues();
    }
  }
  return d;
}

}  // namespace

struct ModeEvolver::Impl {
  ModelParameters p;
  SymbolSet sym;
  std::unordered_map<std::uint64_t, std::pair<Decomp4, Decomp2>> cache;

  explicit Impl(const ModelParameters& params) : p(params), sym(assemble_symbols(params)) {
    if (p.kappa * p.mu == 0.0)
      throw NumericalError("mode evolution: kappa*mu = 0, principal weight not invertible");
  }

  const std::pair<Decomp4, Decomp2>& at(double xi) {
    const std::uint64_t key = std::bit_cast<std::uint64_t>(xi);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    const std::complex<double> iu(0.0, 1.0);
    Eigen::Matrix2cd minv = Eigen::Matrix2cd::Zero();
    minv(0, 0) = 1.0 / p.kappa;
    minv(1, 1) = 1.0 / p.mu;
    const Eigen::Matrix2cd stiff = sym.b_par(xi).cast<std::complex<double>>() +
                                   iu * sym.a_par(xi).cast<std::complex<double>>();
    const Eigen::Matrix2cd damp = sym.a0_par.cast<std::complex<double>>() -
                                  iu * sym.c_par(xi).cast<std::complex<double>>();
    Eigen::Matrix4cd g4 = Eigen::Matrix4cd::Zero();
    g4.block<2, 2>(0, 2) = Eigen::Matrix2cd::Identity();
    g4.block<2, 2>(2, 0) = -(minv * stiff);
    g4.block<2, 2>(2, 2) = -(minv * damp);

    Eigen::Matrix2cd g2 = Eigen::Matrix2cd::Zero();
    g2(0, 1) = 1.0;
    g2(1, 0) = -sym.b_perp(xi) / p.mu;
    g2(1, 1) = -sym.a0_perp / p.mu;

    return cache.emplace(key, std::make_pair(decompose4(g4), decompose2(g2))).first->second;
  }
};

ModeEvolver::ModeEvolver(const ModelParameters& p) : impl_(std::make_unique<Impl>(p)) {}
ModeEvolver::~ModeEvolver() = default;

ModeState ModeEvolver::evolve(double xi, const ModeState& init, double t) {
  if (!(std::isfinite(xi) && xi >= 0.0))
    throw std::domain_error("ModeEvolver::evolve: xi must be finite and nonnegative");
  if (!(std::isfinite(t) && t >= 0.0))
    throw std::domain_error("ModeEvolver::evolve: t must be finite and nonnegative");
  if (t == 0.0) return init;

  const auto& [par, perp] = impl_->at(xi);
  ModeState out;

  Eigen::Vector4cd s0;
  s0 << init.v(0), init.v(1), init.vdot(0), init.vdot(1);
  Eigen::Vector4cd st;
  if (par.modal) {
    Eigen::Vector4cd y = par.vinv * s0;
    for (int k = 0; k < 4; ++k) y(k) *= std::exp(par.lam(k) * t);
    st = par.v * y;
  } else {
    st = (par.g * t).exp() * s0;
  }
  out.v(0) = st(0);
  out.v(1) = st(1);
  out.vdot(0) = st(2);
  out.vdot(1) = st(3);

  for (int j = 2; j < 4; ++j) {
    Eigen::Vector2cd q0;
    q0 << init.v(j), init.vdot(j);
    Eigen::Vector2cd qt;
    if (perp.modal) {
      Eigen::Vector2cd y = perp.vinv * q0;
      for (int k = 0; k < 2; ++k) y(k) *= std::exp(perp.lam(k) * t);
      qt = perp.v * y;
    } else {
      qt = (perp.g * t).exp() * q0;
    }
    out.v(j) = qt(0);
    out.vdot(j) = qt(1);
  }

  if (!out.v.allFinite() || !out.vdot.allFinite()) {
    std::ostringstream msg;
    msg << "mode evolution produced non-finite state at xi = " << xi << ", t = " << t;
    throw NumericalError(msg.str());
  }
  return out;
}

ModeState evolve_mode(const ModelParameters& p, double xi, const ModeState& init, double t) {
  ModeEvolver ev(p);
  return ev.evolve(xi, init, t);
}

DecayTrace decay_norm_trace(const ModelParameters& p, const InitialProfile& profile, double s,
                            const std::vector<double>& t_grid,
                            std::pair<double, double> fit_window) {
  if (!(profile.width > 0.0))
    throw std::domain_error("decay_norm_trace: profile width must be positive");
  if (t_grid.empty()) throw std::domain_error("decay_norm_trace: empty time grid");
  for (double t : t_grid)
    if (!(std::isfinite(t) && t >= 0.0))
      throw std::domain_error("decay_norm_trace: times must be finite and nonnegative");

  DecayTrace tr;
  tr.s = s;
  tr.fit_window = fit_window;

  ModeEvolver ev(p);
  const double w = profile.width;
  const double xi_max = 8.0 * std::max(1.0, 1.0 / w);
  const Eigen::Vector4cd amp = profile.amplitudes.cast<std::complex<double>>();
  const Eigen::Vector4cd amp_dot = profile.vdot_amplitudes.cast<std::complex<double>>();

  for (double t : t_grid) {
    auto norm_sq = [&](double weight_s) {
      auto f = [&](double xi) {
        const double g = std::exp(-0.5 * w * w * xi * xi);
        ModeState init;
        init.v = amp * g;
        init.vdot = amp_dot * g;
        const ModeState state = ev.evolve(xi, init, t);
        return std::pow(1.0 + xi * xi, weight_s) * state.v.squaredNorm() * xi * xi;
      };
      return 4.0 * std::numbers::pi * integrate_adaptive(f, 0.0, xi_max, 1e-8);
    };
    const double h2 = norm_sq(s);
    tr.times.push_back(t);
    tr.hs_norms.push_back(std::sqrt(std::max(0.0, h2)));
    tr.l2_norms.push_back(s == 0.0 ? tr.hs_norms.back()
                                   : std::sqrt(std::max(0.0, norm_sq(0.0))));
  }

  std::vector<double> xs, ys;
  for (size_t i = 0; i < tr.times.size(); ++i) {
    if (tr.times[i] >= fit_window.first && tr.times[i] <= fit_window.second &&
        tr.hs_norms[i] > 0.0) {
      xs.push_back(std::log1p(tr.times[i]));
      ys.push_back(std::log(tr.hs_norms[i]));
    }
  }
  tr.fitted_exponent =
      xs.size() >= 2 ? least_squares_slope(xs, ys) : std::numeric_limits<double>::quiet_NaN();
  return tr;
}

double gaussian_hs_norm(const InitialProfile& profile, int s) {
  if (s < 0) throw std::domain_error("gaussian_hs_norm: s must be a nonnegative integer");
  if (!(profile.width > 0.0))
    throw std::domain_error("gaussian_hs_norm: profile width must be positive");
  const double w = profile.width;
  double inner = 0.0;
  double binom = 1.0;
  for (int k = 0; k <= s; ++k) {
    if (k > 0) binom = binom * (s - k + 1) / k;
    inner += binom * std::tgamma(k + 1.5) / (2.0 * std::pow(w, 2 * k + 3));
  }
  const double amp_sq = profile.amplitudes.squaredNorm();
  return std::sqrt(4.0 * std::numbers::pi * amp_sq * inner);
}

}  // namespace bdnk
