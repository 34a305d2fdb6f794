#include "bdnk/catalog.hpp"

#include <atomic>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>
#include <vector>

#include "bdnk/causality.hpp"
#include "bdnk/dissipativity.hpp"

namespace bdnk {

const char* to_string(PresetFamily f) {
  switch (f) {
    case PresetFamily::FT_symmetric: return "FT_symmetric";
    case PresetFamily::BDN19: return "BDN19";
    case PresetFamily::BDN18_fully_symmetric: return "BDN18_fully_symmetric";
    case PresetFamily::Custom: return "Custom";
  }
  return "Custom";
}

const std::vector<Preset>& preset_catalog() {
  static const std::vector<Preset> catalog = [] {
    std::vector<Preset> v;

    v.push_back(Preset{
        "ft-c2", PresetFamily::FT_symmetric,
        ModelParameters(1.0, 1.0, 0.5, -1.0, -1.0, 1.0, -1.0 / 3.0, 0.5),
        "constrained symmetric point: tau = -mu, omega = -nu, sigma = -mu exactly "
        "in floating point; certifies via the degenerate-pair branch and sits on "
        "the causality boundary (b_max = 1)."});

    v.push_back(Preset{
        "bdn19-demo", PresetFamily::BDN19,
        ModelParameters(1.0, 1.0, 0.3, 1.0, 3.0, 3.0, 0.9, 1.0),
        "equal-coefficient point kappa = mu = nu with strong cross coupling "
        "tau = omega = 3; strictly certified via the generic branch but far from "
        "causal (b_max about 3.8)."});

    v.push_back(Preset{
        "bdn18-demo", PresetFamily::BDN18_fully_symmetric,
        ModelParameters(2.0, 1.0, 0.3, 1.0, 2.0, 2.0, 0.7, 1.0),
        "fully symmetric point (mu = nu, tau = omega); strictly certified via the "
        "generic branch, not causal."});

    v.push_back(Preset{
        "bdn19-causal", PresetFamily::BDN19,
        ModelParameters(0.85255938767662409, 0.77718728870189313, 0.57395866149349184,
                        0.77718728870189313, 0.29777551938492508, 0.48653909266373441,
                        0.91442120848044295, 0.67471548513086488),
        "first hit (draw 159) of a seeded unit-box search (mt19937_64, seed "
        "0x62646e6b63617573, nu tied to mu) accepted on strict generic-branch "
        "certification plus strict causality; margins eta_le_mu 0.203, ca4_upper "
        "0.151, ca4_lower 0.547, b_max 0.859."});

    return v;
  }();
  return catalog;
}

Preset load_preset(const std::string& name) {
  const auto& cat = preset_catalog();
  for (const auto& p : cat) {
    if (p.name == name) return p;
  }
  std::string msg = "unknown preset '" + name + "'; available:";
  for (const auto& p : cat) msg += " " + p.name;
  throw ConfigError(msg);
}

namespace {

const char* const kParamKeys[8] = {"kappa", "mu", "eta", "nu", "tau", "omega", "chi", "cs"};

int param_index(const std::string& k) {
  for (int i = 0; i < 8; ++i)
    if (k == kParamKeys[i]) return i;
  return -1;
}

const char* const kOutputNames[5] = {"hyperbolicity_class", "theorem1_verdict", "causal",
                                     "b_max", "delta2"};

bool known_output(const std::string& s) {
  for (const char* o : kOutputNames)
    if (s == o) return true;
  return false;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& s, int lineno, const char* what) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.c_str(), s.c_str() + s.size(), v);
  if (ec != std::errc{} || ptr != s.c_str() + s.size()) {
    throw ConfigError("scan line " + std::to_string(lineno) + ": cannot parse " + what + " '" +
                      s + "'");
  }
  return v;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

ScanCell evaluate_cell(const ModelParameters& p, std::vector<double> coords) {
  ScanCell cell;
  cell.coords = std::move(coords);
  try {
    const DissipativityReport rep = certify_theorem1(p);
    cell.hyperbolicity_class = to_string(rep.hyperbolicity.cls);
    cell.theorem1_verdict = to_string(rep.theorem1_verdict);
    cell.delta2 = rep.d3.delta2;
    const CausalityReport c = check_causality(p);
    cell.causal = c.causal;
    cell.b_max = c.b_max;
  } catch (const std::exception& e) {
    cell = ScanCell{};
    cell.error = e.what();
  }
  return cell;
}

}  // namespace

int scan_worker_count() {
  if (const char* env = std::getenv("BDNKCERT_WORKERS")) {
    const std::string s = trim(env);
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.c_str(), s.c_str() + s.size(), v);
    if (ec != std::errc{} || ptr != s.c_str() + s.size() || v < 1) {
      throw ConfigError("BDNKCERT_WORKERS must be a positive integer, got '" + s + "'");
    }
    return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

ScanResult run_scan(const ScanSpec& spec) {
  if (spec.axes.empty() || spec.axes.size() > 2) {
    throw ConfigError("scan needs one or two axes, got " + std::to_string(spec.axes.size()));
  }
  for (const auto& ax : spec.axes) {
    if (param_index(ax.param) < 0) throw ConfigError("scan axis over unknown key '" + ax.param + "'");
    if (ax.n < 1) throw ConfigError("scan axis '" + ax.param + "' needs n >= 1");
  }
  if (spec.axes.size() == 2 && spec.axes[0].param == spec.axes[1].param) {
    throw ConfigError("scan axes repeat key '" + spec.axes[0].param + "'");
  }

  auto axis_value = [](const ScanAxis& ax, int i) {
    if (ax.n == 1) return ax.lo;
    return ax.lo + (ax.hi - ax.lo) * static_cast<double>(i) / static_cast<double>(ax.n - 1);
  };

  const int n0 = spec.axes[0].n;
  const int n1 = spec.axes.size() == 2 ? spec.axes[1].n : 1;
  const int total = n0 * n1;

  ScanResult result;
  result.spec = spec;
  result.cells.resize(static_cast<size_t>(total));

  auto work = [&](int idx) {
    const int i0 = idx / n1;
    const int i1 = idx % n1;
    double vals[8] = {spec.base.kappa, spec.base.mu,  spec.base.eta, spec.base.nu,
                      spec.base.tau,   spec.base.omega, spec.base.chi, spec.base.cs};
    std::vector<double> coords;
    vals[param_index(spec.axes[0].param)] = axis_value(spec.axes[0], i0);
    coords.push_back(axis_value(spec.axes[0], i0));
    if (spec.axes.size() == 2) {
      vals[param_index(spec.axes[1].param)] = axis_value(spec.axes[1], i1);
      coords.push_back(axis_value(spec.axes[1], i1));
    }
    try {
      const ModelParameters p(vals[0], vals[1], vals[2], vals[3], vals[4], vals[5], vals[6],
                              vals[7]);
      result.cells[static_cast<size_t>(idx)] = evaluate_cell(p, std::move(coords));
    } catch (const std::exception& e) {
      ScanCell cell;
      cell.coords = std::move(coords);
      cell.error = e.what();
      result.cells[static_cast<size_t>(idx)] = std::move(cell);
    }
  };

  const int workers = std::min(scan_worker_count(), total);
  if (workers <= 1) {
    for (int idx = 0; idx < total; ++idx) work(idx);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int idx = next.fetch_add(1); idx < total; idx = next.fetch_add(1)) work(idx);
      });
    }
    for (auto& t : pool) t.join();
  }
  return result;
}

ScanSpec parse_scan_spec(const std::string& text) {
  double vals[8] = {0, 0, 0, 0, 0, 0, 0, 1.0};
  bool seen[8] = {};
  ScanSpec spec;
  bool outputs_seen = false;

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
        throw ConfigError("scan line " + std::to_string(lineno) + ": expected 'key = value'");
      }
      key = trim(line.substr(0, sp));
      value = trim(line.substr(sp + 1));
    }

    if (key == "scan") {
      const auto toks = split_ws(value);
      if (toks.size() != 4) {
        throw ConfigError("scan line " + std::to_string(lineno) +
                          ": expected 'scan = <param> <lo> <hi> <n>'");
      }
      ScanAxis ax;
      ax.param = toks[0];
      if (param_index(ax.param) < 0) {
        throw ConfigError("scan line " + std::to_string(lineno) + ": unknown scan key '" +
                          ax.param + "'");
      }
      ax.lo = parse_double(toks[1], lineno, "axis low end");
      ax.hi = parse_double(toks[2], lineno, "axis high end");
      int n = 0;
      auto [ptr, ec] = std::from_chars(toks[3].c_str(), toks[3].c_str() + toks[3].size(), n);
      if (ec != std::errc{} || ptr != toks[3].c_str() + toks[3].size() || n < 1) {
        throw ConfigError("scan line " + std::to_string(lineno) +
                          ": axis count must be a positive integer, got '" + toks[3] + "'");
      }
      ax.n = n;
      for (const auto& other : spec.axes) {
        if (other.param == ax.param) {
          throw ConfigError("scan line " + std::to_string(lineno) + ": duplicate scan key '" +
                            ax.param + "'");
        }
      }
      if (spec.axes.size() == 2) {
        throw ConfigError("scan line " + std::to_string(lineno) + ": at most two scan axes");
      }
      spec.axes.push_back(ax);
      continue;
    }

    if (key == "outputs") {
      if (outputs_seen) {
        throw ConfigError("scan line " + std::to_string(lineno) + ": duplicate 'outputs'");
      }
      outputs_seen = true;
      std::string item;
      std::istringstream items(value);
      while (std::getline(items, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        if (!known_output(item)) {
          throw ConfigError("scan line " + std::to_string(lineno) + ": unknown output '" + item +
                            "'");
        }
        spec.outputs.push_back(item);
      }
      if (spec.outputs.empty()) {
        throw ConfigError("scan line " + std::to_string(lineno) + ": empty 'outputs' list");
      }
      continue;
    }

    const int idx = param_index(key);
    if (idx < 0) {
      throw ConfigError("scan line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    if (seen[idx]) {
      throw ConfigError("scan line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
    vals[idx] = parse_double(value, lineno, ("value for '" + key + "'").c_str());
    seen[idx] = true;
  }

  if (spec.axes.empty()) {
    throw ConfigError("scan config needs at least one 'scan = <param> <lo> <hi> <n>' line");
  }

  // Scanned parameters may omit a base value; the axis low end stands in so the
  // base point is a valid model on its own.
  for (const auto& ax : spec.axes) {
    const int idx = param_index(ax.param);
    if (!seen[idx]) {
      vals[idx] = ax.lo;
      seen[idx] = true;
    }
  }
  for (int i = 0; i < 7; ++i) {
    if (!seen[i]) throw ConfigError(std::string("scan config missing key '") + kParamKeys[i] + "'");
  }
  // cs falls back to 1 when absent.

  try {
    spec.base =
        ModelParameters(vals[0], vals[1], vals[2], vals[3], vals[4], vals[5], vals[6], vals[7]);
  } catch (const std::domain_error& e) {
    throw ConfigError(std::string("scan config invalid: ") + e.what());
  }
  return spec;
}

ScanSpec load_scan_spec_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open scan file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_scan_spec(ss.str());
}

}  // namespace bdnk
