#include "bdnk/model.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace bdnk {

namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw std::domain_error(std::string("parameter '") + name + "' must be finite");
  }
}

}  // namespace

ModelParameters::ModelParameters(double kappa_, double mu_, double eta_, double nu_,
                                 double tau_, double omega_, double chi_, double cs_)
    : kappa(kappa_), mu(mu_), eta(eta_), nu(nu_), tau(tau_), omega(omega_), chi(chi_), cs(cs_) {
  require_finite(kappa, "kappa");
  require_finite(mu, "mu");
  require_finite(eta, "eta");
  require_finite(nu, "nu");
  require_finite(tau, "tau");
  require_finite(omega, "omega");
  require_finite(chi, "chi");
  require_finite(cs, "cs");
  if (!(cs > 0.0)) {
    throw std::domain_error("parameter 'cs' must be positive");
  }
}

double compute_sound_speed(double p_prime, double p_double_prime, double theta) {
  if (!(theta > 0.0)) throw std::domain_error("theta must be positive");
  if (!(p_double_prime > 0.0)) throw std::domain_error("p'' must be positive");
  const double r = p_prime / (theta * p_double_prime);
  if (!(r >= 0.0)) throw std::domain_error("p'/(theta p'') must be non-negative");
  return std::sqrt(r);
}

ModelParameters rescale_to_unit_cs(const ModelParameters& p) {
  const double cs2 = p.cs * p.cs;
  const double cs4 = cs2 * cs2;
  // sigma is invariant: eta and chi are carried over unchanged.
  return ModelParameters(cs4 * p.kappa, cs2 * p.mu, p.eta, cs2 * p.nu, cs2 * p.tau,
                         cs2 * p.omega, p.chi, 1.0);
}

Eigen::Matrix2d SymbolSet::b_par(double xi) const {
  Eigen::Matrix2d m = Eigen::Matrix2d::Zero();
  m(0, 0) = -xi * xi * nu_c;
  m(1, 1) = -xi * xi * sigma_c;
  return m;
}

Eigen::Matrix2d SymbolSet::c_par(double xi) const {
  Eigen::Matrix2d m = Eigen::Matrix2d::Zero();
  m(0, 1) = -xi * (tau_c + mu_c);
  m(1, 0) = -xi * (omega_c + nu_c);
  return m;
}

Eigen::Matrix2d SymbolSet::a_par(double xi) const {
  Eigen::Matrix2d m = Eigen::Matrix2d::Zero();
  m(0, 1) = xi;
  m(1, 0) = xi;
  return m;
}

double SymbolSet::b_perp(double xi) const { return eta_c * xi * xi; }

SymbolSet assemble_symbols(const ModelParameters& p) {
  SymbolSet s;
  s.b00_par = Eigen::Matrix2d::Zero();
  s.b00_par(0, 0) = -p.kappa;
  s.b00_par(1, 1) = -p.mu;
  s.a0_par = Eigen::Matrix2d::Zero();
  s.a0_par(0, 0) = 1.0 / (p.cs * p.cs);
  s.a0_par(1, 1) = 1.0;
  s.b00_perp = -p.mu;
  s.a0_perp = 1.0;
  s.nu_c = p.nu;
  s.sigma_c = p.sigma();
  s.tau_c = p.tau;
  s.omega_c = p.omega;
  s.mu_c = p.mu;
  s.eta_c = p.eta;
  return s;
}

Eigen::Matrix4d rest_frame_b00(const ModelParameters& p) {
  Eigen::Vector4d d;
  d << -p.kappa, -p.mu, -p.mu, -p.mu;
  return d.asDiagonal();
}

Eigen::Matrix4d rest_frame_a0(const ModelParameters& p) {
  Eigen::Vector4d d;
  d << 1.0 / (p.cs * p.cs), 1.0, 1.0, 1.0;
  return d.asDiagonal();
}

Eigen::Matrix4d rest_frame_b(const ModelParameters& p, const Eigen::Vector3d& xi3) {
  const double xi2 = xi3.squaredNorm();
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  m(0, 0) = -p.nu * xi2;
  // velocity block: -[(chi - eta/3) xi xi^T - eta xi^2 I]
  Eigen::Matrix3d vel =
      (p.chi - p.eta / 3.0) * (xi3 * xi3.transpose()) - p.eta * xi2 * Eigen::Matrix3d::Identity();
  m.block<3, 3>(1, 1) = -vel;
  return m;
}

Eigen::Matrix4d rest_frame_c(const ModelParameters& p, const Eigen::Vector3d& xi3) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  m.block<1, 3>(0, 1) = -(p.tau + p.mu) * xi3.transpose();
  m.block<3, 1>(1, 0) = -(p.omega + p.nu) * xi3;
  return m;
}

Eigen::Matrix4d rest_frame_a(const Eigen::Vector3d& xi3) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  m.block<1, 3>(0, 1) = xi3.transpose();
  m.block<3, 1>(1, 0) = xi3;
  return m;
}

namespace {

const char* const kKeys[8] = {"kappa", "mu", "eta", "nu", "tau", "omega", "chi", "cs"};

int key_index(const std::string& k) {
  for (int i = 0; i < 8; ++i)
    if (k == kKeys[i]) return i;
  return -1;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

ModelParameters parse_parameters(const std::string& text) {
  double vals[8];
  bool seen[8] = {false, false, false, false, false, false, false, false};

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    line = trim(line);
    if (line.empty()) continue;

    std::string key, value;
    if (auto eq = line.find('='); eq != std::string::npos) {
      key = trim(line.substr(0, eq));
      value = trim(line.substr(eq + 1));
    } else {
      auto sp = line.find_first_of(" \t");
      if (sp == std::string::npos) {
        throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
      }
      key = trim(line.substr(0, sp));
      value = trim(line.substr(sp + 1));
    }

    const int idx = key_index(key);
    if (idx < 0) {
      throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    if (seen[idx]) {
      throw ConfigError("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
    double v = 0;
    const char* first = value.c_str();
    const char* last = first + value.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) {
      throw ConfigError("config line " + std::to_string(lineno) + ": cannot parse value for '" +
                        key + "': '" + value + "'");
    }
    vals[idx] = v;
    seen[idx] = true;
  }

  for (int i = 0; i < 8; ++i) {
    if (!seen[i]) throw ConfigError(std::string("config missing key '") + kKeys[i] + "'");
  }
  try {
    return ModelParameters(vals[0], vals[1], vals[2], vals[3], vals[4], vals[5], vals[6], vals[7]);
  } catch (const std::domain_error& e) {
    throw ConfigError(std::string("config invalid: ") + e.what());
  }
}

ModelParameters load_parameters_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_parameters(ss.str());
}

std::string serialize_parameters(const ModelParameters& p) {
  const double vals[8] = {p.kappa, p.mu, p.eta, p.nu, p.tau, p.omega, p.chi, p.cs};
  std::string out;
  char buf[64];
  for (int i = 0; i < 8; ++i) {
    std::snprintf(buf, sizeof buf, "%s = %.17g\n", kKeys[i], vals[i]);
    out += buf;
  }
  return out;
}

}  // namespace bdnk
