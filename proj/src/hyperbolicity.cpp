#include "bdnk/hyperbolicity.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace bdnk {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Eigen::Matrix4cd companion_from_blocks(const Eigen::Matrix2d& bn, const Eigen::Matrix2d& cn) {
  Eigen::Matrix4cd g = Eigen::Matrix4cd::Zero();
  g.block<2, 2>(0, 2) = Eigen::Matrix2cd::Identity();
  g.block<2, 2>(2, 0) = -bn.cast<std::complex<double>>();
  g.block<2, 2>(2, 2) = std::complex<double>(0.0, 1.0) * cn.cast<std::complex<double>>();
  return g;
}

}  // namespace

const char* to_string(HyperbolicClass c) {
  switch (c) {
    case HyperbolicClass::NotHyperbolic: return "NotHyperbolic";
    case HyperbolicClass::ClassI_strict: return "ClassI_strict";
    case HyperbolicClass::ClassII_double: return "ClassII_double";
    case HyperbolicClass::ClassIII_degenerate: return "ClassIII_degenerate";
  }
  return "unknown";
}

std::pair<double, double> characteristic_quadratic(const ModelParameters& p) {
  const double km = p.kappa * p.mu;
  if (km == 0.0)
    throw NumericalError("characteristic quadratic: kappa*mu = 0, principal part degenerates");
  const double sigma = p.sigma();
  const double big_k = (p.tau + p.mu) * (p.nu + p.omega) - p.kappa * sigma - p.nu * p.mu;
  return {big_k / km, p.nu * sigma / km};
}

HyperbolicityReport classify_hyperbolicity(const ModelParameters& p, double tol) {
  if (!(tol > 0.0)) throw std::domain_error("classify_hyperbolicity: tol must be positive");

  HyperbolicityReport r;
  r.beta1 = kNaN;
  r.beta2 = kNaN;
  r.frak_k = kNaN;
  r.frak_l = kNaN;

  const double sigma = p.sigma();
  r.margins["kappa_pos"] = p.kappa;
  r.margins["mu_pos"] = p.mu;
  r.margins["eta_pos"] = p.eta;
  r.margins["nusigma_pos"] = p.nu * sigma;

  const bool prereq = p.kappa > 0.0 && p.mu > 0.0 && p.eta > 0.0;
  if (!prereq) r.notes.push_back("positivity prerequisite violated (kappa, mu, eta must be > 0)");

  const double km = p.kappa * p.mu;
  double big_k = kNaN;
  double disc = kNaN;
  if (km != 0.0) {
    const auto [k_inv, l_inv] = characteristic_quadratic(p);
    r.frak_k = k_inv;
    r.frak_l = l_inv;
    big_k = (p.tau + p.mu) * (p.nu + p.omega) - p.kappa * sigma - p.nu * p.mu;
    disc = big_k * big_k - 4.0 * km * p.nu * sigma;
    r.margins["C1_1"] = big_k;
    r.margins["C1_2"] = disc;
  } else {
    r.notes.push_back("principal part degenerate: kappa*mu = 0");
  }

  // Equality constraints are measured on unit-sound-speed coefficients so the
  // tolerance has a fixed meaning across models that differ only in cs.
  const ModelParameters q = rescale_to_unit_cs(p);
  const double sigma_q = q.sigma();
  const double dev_cross = std::abs(q.kappa * sigma_q - q.nu * q.mu);
  r.margins["C2_1a"] = -std::max(dev_cross, q.kappa * sigma_q);
  r.margins["C2_1b"] = -std::max(std::abs(q.tau + q.mu), std::abs(q.omega + q.nu));

  std::vector<HyperbolicClass> matches;
  if (prereq && km > 0.0) {
    const double nusigma = p.nu * sigma;
    const bool cand_simple = nusigma > 0.0 && big_k > 0.0 && disc > 0.0;
    const bool cand_double =
        nusigma > 0.0 && r.margins["C2_1a"] >= -tol && r.margins["C2_1b"] >= -tol;
    const bool cand_degenerate = std::abs(q.nu) < tol && std::abs(sigma_q) < tol &&
                                 (q.tau + q.mu) * (q.omega + q.nu) > 0.0;
    if (cand_simple) matches.push_back(HyperbolicClass::ClassI_strict);
    if (cand_double) matches.push_back(HyperbolicClass::ClassII_double);
    if (cand_degenerate) matches.push_back(HyperbolicClass::ClassIII_degenerate);
  }

  if (matches.size() > 1) {
    std::ostringstream msg;
    msg << "ambiguous classification: parameters match";
    for (size_t i = 0; i < matches.size(); ++i)
      msg << (i == 0 ? " " : " and ") << to_string(matches[i]);
    msg << " within tol = " << tol;
    throw AmbiguousClassification(msg.str());
  }

  // Real roots of the characteristic quadratic, whenever they exist.
  if (km != 0.0) {
    const double d2 = r.frak_k * r.frak_k - 4.0 * r.frak_l;
    if (d2 >= 0.0) {
      const double s = std::sqrt(d2);
      r.beta1 = 0.5 * (r.frak_k - s);
      r.beta2 = 0.5 * (r.frak_k + s);
    }
  }

  if (matches.empty()) {
    r.cls = HyperbolicClass::NotHyperbolic;
    r.holds = false;
    if (prereq && km > 0.0) r.notes.push_back("no admissible characteristic root pattern");
  } else {
    r.cls = matches.front();
    r.holds = true;
    if (r.cls == HyperbolicClass::ClassII_double) {
      // Exact member of the class has one double root; report that value for
      // both so the pair is meaningful even when roundoff makes d2 < 0.
      r.beta1 = 0.5 * r.frak_k;
      r.beta2 = r.beta1;
    } else if (r.cls == HyperbolicClass::ClassIII_degenerate) {
      r.not_physical = true;
      r.notes.push_back(
          "degenerate class: double zero characteristic speed, formally hyperbolic only");
    }
  }

  if (km != 0.0) {
    try {
      r.numeric_confirmation = numeric_eigenstructure(p);
    } catch (const NumericalError& e) {
      r.notes.push_back(std::string("numeric eigenstructure unavailable: ") + e.what());
    }
  }
  return r;
}

Eigen::Matrix4cd companion_parallel(const ModelParameters& p, double xi) {
  if (p.kappa * p.mu == 0.0)
    throw NumericalError("companion_parallel: kappa*mu = 0, principal part degenerates");
  const SymbolSet s = assemble_symbols(p);
  const Eigen::Matrix2d b = s.b_par(xi);
  const Eigen::Matrix2d c = s.c_par(xi);
  Eigen::Matrix2d bn, cn;
  if (p.kappa > 0.0 && p.mu > 0.0) {
    Eigen::Matrix2d w = Eigen::Matrix2d::Zero();
    w(0, 0) = 1.0 / std::sqrt(p.kappa);
    w(1, 1) = 1.0 / std::sqrt(p.mu);
    bn = w * b * w;
    cn = w * c * w;
  } else {
    Eigen::Matrix2d minv = Eigen::Matrix2d::Zero();
    minv(0, 0) = 1.0 / p.kappa;
    minv(1, 1) = 1.0 / p.mu;
    bn = minv * b;
    cn = minv * c;
  }
  return companion_from_blocks(bn, cn);
}

Eigen::Matrix4cd companion_perpendicular(const ModelParameters& p, double xi) {
  if (p.mu == 0.0)
    throw NumericalError("companion_perpendicular: mu = 0, principal part degenerates");
  const SymbolSet s = assemble_symbols(p);
  const double ratio = s.b_perp(xi) / p.mu;  // eta xi^2 / mu, sign carried through
  Eigen::Matrix2d bn = Eigen::Matrix2d::Zero();
  bn(0, 0) = ratio;
  bn(1, 1) = ratio;
  return companion_from_blocks(bn, Eigen::Matrix2d::Zero());
}

namespace {

struct ClusterResult {
  std::vector<int> multiplicities;
  bool semisimple = true;
};

// Greedy clustering of the sorted eigenvalue list, then a rank test of
// (M - rep*I) per cluster: semi-simple iff rank defect equals multiplicity.
ClusterResult cluster_and_rank(const Eigen::Matrix4cd& m,
                               std::vector<std::complex<double>> eigs, double tol) {
  std::sort(eigs.begin(), eigs.end(), [](const auto& a, const auto& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  ClusterResult out;
  size_t i = 0;
  while (i < eigs.size()) {
    const std::complex<double> seed = eigs[i];
    const double radius = tol * std::max(1.0, std::abs(seed));
    std::complex<double> sum = 0.0;
    int mult = 0;
    while (i < eigs.size() && std::abs(eigs[i] - seed) <= radius) {
      sum += eigs[i];
      ++mult;
      ++i;
    }
    const std::complex<double> rep = sum / static_cast<double>(mult);
    Eigen::Matrix4cd shifted = m - rep * Eigen::Matrix4cd::Identity();
    Eigen::JacobiSVD<Eigen::Matrix4cd> svd(shifted);
    const auto& sv = svd.singularValues();
    const double cut = tol * std::max(1.0, sv(0));
    int rank = 0;
    for (int k = 0; k < sv.size(); ++k)
      if (sv(k) > cut) ++rank;
    out.multiplicities.push_back(mult);
    if (rank != 4 - mult) out.semisimple = false;
  }
  return out;
}

}  // namespace

NumericEigenReport numeric_eigenstructure(const ModelParameters& p, double tol) {
  if (!(tol > 0.0)) throw std::domain_error("numeric_eigenstructure: tol must be positive");

  const Eigen::Matrix4cd g_par = companion_parallel(p);
  const Eigen::Matrix4cd g_perp = companion_perpendicular(p);

  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es_par(g_par, true);
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es_perp(g_perp, false);
  if (es_par.info() != Eigen::Success || es_perp.info() != Eigen::Success)
    throw NumericalError("numeric_eigenstructure: eigensolver did not converge");

  NumericEigenReport out;
  out.tol = tol;

  const std::complex<double> iunit(0.0, 1.0);
  // Work with i * companion: its spectrum is real exactly when every
  // characteristic speed is real.
  const Eigen::Matrix4cd im_par = iunit * g_par;
  const Eigen::Matrix4cd im_perp = iunit * g_perp;

  double max_abs = 0.0;
  double defect = 0.0;
  auto collect = [&](const Eigen::Vector4cd& lam, std::vector<std::complex<double>>& dst) {
    for (int k = 0; k < 4; ++k) {
      const std::complex<double> z = iunit * lam(k);
      dst.push_back(z);
      max_abs = std::max(max_abs, std::abs(z));
      defect = std::max(defect, std::abs(z.imag()));
    }
  };
  collect(es_par.eigenvalues(), out.par_eigenvalues);
  collect(es_perp.eigenvalues(), out.perp_eigenvalues);
  auto by_re_im = [](const auto& a, const auto& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  };
  std::sort(out.par_eigenvalues.begin(), out.par_eigenvalues.end(), by_re_im);
  std::sort(out.perp_eigenvalues.begin(), out.perp_eigenvalues.end(), by_re_im);

  out.max_real_part_abs = defect;  // |Re| of the plain companion = |Im| of i*companion
  out.all_real = defect <= tol * std::max(1.0, max_abs);

  const ClusterResult cl_par = cluster_and_rank(im_par, out.par_eigenvalues, tol);
  const ClusterResult cl_perp = cluster_and_rank(im_perp, out.perp_eigenvalues, tol);
  out.par_multiplicities = cl_par.multiplicities;
  out.perp_multiplicities = cl_perp.multiplicities;
  out.par_semisimple = cl_par.semisimple;
  out.perp_semisimple = cl_perp.semisimple;
  out.hyperbolic = out.all_real && out.par_semisimple && out.perp_semisimple;

  Eigen::JacobiSVD<Eigen::Matrix4cd> svd(es_par.eigenvectors());
  const auto& sv = svd.singularValues();
  out.eigenvector_condition =
      sv(3) > 0.0 ? sv(0) / sv(3) : std::numeric_limits<double>::infinity();
  return out;
}

}  // namespace bdnk
