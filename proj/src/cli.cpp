#include "bdnk/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <json.hpp>
#include <ostream>
#include <string>
#include <sys/stat.h>
#include <vector>

#include "bdnk/report.hpp"

namespace bdnk {

namespace {

bool file_exists(const std::string& path) {
  struct stat st{};
  return ::stat(path.c_str(), &st) == 0;
}

// A config argument is first matched against the preset catalog, then treated
// as a path to a flat key = value file.
ModelParameters resolve_config(const std::string& arg) {
  for (const auto& preset : preset_catalog()) {
    if (preset.name == arg) return preset.params;
  }
  if (!file_exists(arg)) {
    std::string msg = "'" + arg + "' is neither a preset (";
    const auto& cat = preset_catalog();
    for (size_t i = 0; i < cat.size(); ++i) {
      if (i) msg += ", ";
      msg += cat[i].name;
    }
    msg += ") nor a config file";
    throw ConfigError(msg);
  }
  return load_parameters_file(arg);
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi > lo)) throw ConfigError("time grid needs 0 < t-lo < t-hi");
  if (n < 2) throw ConfigError("time grid needs at least 2 samples");
  std::vector<double> g(static_cast<size_t>(n));
  const double la = std::log(lo), lb = std::log(hi);
  for (int i = 0; i < n; ++i) {
    g[static_cast<size_t>(i)] =
        std::exp(la + (lb - la) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  return g;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{
      "bdnkcert: certification of hyperbolicity, dissipativity, causality and "
      "decay for first-order viscous relativistic fluids around a rest state"};
  app.require_subcommand(1);

  const auto format_check = CLI::IsMember({"json", "csv"});

  // check
  auto* check = app.add_subcommand(
      "check", "Full stability report (hyperbolicity, dissipativity, causality); "
               "exit 0 iff the composite certificate holds");
  std::string check_config;
  std::string check_format = "json";
  double check_tol = 1e-9;
  check->add_option("config", check_config, "Preset name or flat key = value config file")
      ->required();
  check->add_option("--format", check_format, "Output format")
      ->capture_default_str()
      ->check(format_check);
  check->add_option("--tol", check_tol, "Classification equality tolerance")
      ->capture_default_str();

  // dispersion
  auto* dispersion = app.add_subcommand(
      "dispersion", "Track all six dispersion branches over a log wavenumber grid");
  std::string disp_config;
  std::string disp_format = "csv";
  double xi_lo = 1e-3, xi_hi = 1e3;
  int disp_n = 200;
  dispersion->add_option("config", disp_config, "Preset name or config file")->required();
  dispersion->add_option("--xi-lo", xi_lo, "Low end of the wavenumber grid")
      ->capture_default_str();
  dispersion->add_option("--xi-hi", xi_hi, "High end of the wavenumber grid")
      ->capture_default_str();
  dispersion->add_option("--n", disp_n, "Grid point count")->capture_default_str();
  dispersion->add_option("--format", disp_format, "Output format")
      ->capture_default_str()
      ->check(format_check);

  // decay
  auto* decay = app.add_subcommand(
      "decay", "Evolve Gaussian radial data and fit the Sobolev-norm decay exponent");
  std::string decay_config;
  std::string decay_format = "csv";
  double decay_s = 0.0, profile_width = 1.0, t_lo = 1e2, t_hi = 1e4;
  int t_n = 40;
  decay->add_option("config", decay_config, "Preset name or config file")->required();
  decay->add_option("--s", decay_s, "Sobolev index of the tracked norm")->capture_default_str();
  decay->add_option("--profile-width", profile_width, "Gaussian width of the initial profile")
      ->capture_default_str();
  decay->add_option("--t-lo", t_lo, "First sample time (also the fit window start)")
      ->capture_default_str();
  decay->add_option("--t-hi", t_hi, "Last sample time (also the fit window end)")
      ->capture_default_str();
  decay->add_option("--t-n", t_n, "Number of log-spaced sample times")->capture_default_str();
  decay->add_option("--format", decay_format, "Output format")
      ->capture_default_str()
      ->check(format_check);

  // scan
  auto* scan = app.add_subcommand("scan", "Evaluate a 1- or 2-axis parameter grid");
  std::string scan_path;
  std::string scan_format = "csv";
  scan->add_option("scanspec", scan_path, "Scan description file")->required();
  scan->add_option("--format", scan_format, "Output format")
      ->capture_default_str()
      ->check(format_check);

  // presets
  auto* presets = app.add_subcommand("presets", "List the shipped parameter presets");
  std::string presets_format = "csv";
  presets->add_option("--format", presets_format, "Output format")
      ->capture_default_str()
      ->check(format_check);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitCertified;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadConfig;
  }

  try {
    if (check->parsed()) {
      const ModelParameters p = resolve_config(check_config);
      if (!(check_tol > 0.0)) throw ConfigError("--tol must be positive");
      const StabilityReport r = full_stability_report(p, check_tol);
      out << (check_format == "csv" ? to_csv(r) : to_json(r));
      return r.certified ? kExitCertified : kExitNotCertified;
    }

    if (dispersion->parsed()) {
      const ModelParameters p = resolve_config(disp_config);
      const BranchScan s = scan_branches(p, xi_lo, xi_hi, disp_n);
      out << (disp_format == "json" ? to_json(s) : branches_to_csv(s));
      return kExitCertified;
    }

    if (decay->parsed()) {
      const ModelParameters p = resolve_config(decay_config);
      InitialProfile profile;
      profile.width = profile_width;
      if (!(profile_width > 0.0)) throw ConfigError("--profile-width must be positive");
      const std::vector<double> t_grid = log_grid(t_lo, t_hi, t_n);
      const DecayTrace trace = decay_norm_trace(p, profile, decay_s, t_grid, {t_lo, t_hi});
      out << (decay_format == "json" ? to_json(trace) : decay_to_csv(trace));
      return kExitCertified;
    }

    if (scan->parsed()) {
      const ScanSpec spec = load_scan_spec_file(scan_path);
      const ScanResult result = run_scan(spec);
      out << (scan_format == "json" ? to_json(result) : scan_to_csv(result));
      return kExitCertified;
    }

    if (presets->parsed()) {
      if (presets_format == "json") {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& pr : preset_catalog()) {
          const auto& p = pr.params;
          arr.push_back(nlohmann::ordered_json{
              {"name", pr.name},
              {"family", to_string(pr.family)},
              {"params",
               nlohmann::ordered_json{{"kappa", p.kappa}, {"mu", p.mu}, {"eta", p.eta},
                                      {"nu", p.nu}, {"tau", p.tau}, {"omega", p.omega},
                                      {"chi", p.chi}, {"cs", p.cs}, {"sigma", p.sigma()}}},
              {"note", pr.provenance_note}});
        }
        out << arr.dump(2) << "\n";
      } else {
        out << "name,family,kappa,mu,eta,nu,tau,omega,chi,cs\n";
        for (const auto& pr : preset_catalog()) {
          const auto& p = pr.params;
          out << pr.name << ',' << to_string(pr.family) << ',' << csv_double(p.kappa) << ','
              << csv_double(p.mu) << ',' << csv_double(p.eta) << ',' << csv_double(p.nu) << ','
              << csv_double(p.tau) << ',' << csv_double(p.omega) << ',' << csv_double(p.chi)
              << ',' << csv_double(p.cs) << '\n';
        }
      }
      return kExitCertified;
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadConfig;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadConfig;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }

  err << "error: no subcommand\n";
  return kExitBadConfig;
}

}  // namespace bdnk
