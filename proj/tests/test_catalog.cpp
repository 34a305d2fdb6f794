// Tests for the preset catalog, scan-spec parsing and grid execution, the
// report serializers, and the in-process CLI entry point. Scan grids are
// checked against hand-computed certification outcomes per cell, and the CLI
// is driven through cli_main with captured streams so exit codes and output
// formats are pinned without spawning processes.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "bdnk/catalog.hpp"
#include "bdnk/causality.hpp"
#include "bdnk/cli.hpp"
#include "bdnk/dissipativity.hpp"
#include "bdnk/report.hpp"
#include "json.hpp"

using namespace bdnk;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

CliRun run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliRun r;
  r.code = cli_main(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string write_temp(const std::string& name, const std::string& text) {
  std::string path = "/tmp/" + name;
  std::ofstream f(path);
  f << text;
  f.close();
  return path;
}

size_t count_lines(const std::string& s) {
  size_t n = 0;
  for (char c : s)
    if (c == '\n') ++n;
  return n;
}

void expect_parse_error(const std::string& text, const std::string& needle) {
  try {
    (void)parse_scan_spec(text);
    FAIL_CHECK("expected ConfigError containing '" << needle << "'");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find(needle) != std::string::npos);
  }
}

// Base point for the omega sweep: a sound-damped model whose certificate
// flips on as omega grows past the linear-degeneracy threshold.
const char* kOmegaSweep =
    "# omega sweep across the certification threshold\n"
    "kappa = 1\n"
    "mu = 1\n"
    "eta = 0.3\n"
    "nu = 1\n"
    "tau = 0.4\n"
    "chi = 0.5\n"
    "cs = 0.70710678118654752\n"
    "scan = omega 0.105 0.505 41\n";

}  // namespace

TEST_CASE("preset catalog contents and family constraints") {
  const auto& cat = preset_catalog();
  REQUIRE(cat.size() == 4);
  CHECK(cat[0].name == "ft-c2");
  CHECK(cat[1].name == "bdn19-demo");
  CHECK(cat[2].name == "bdn18-demo");
  CHECK(cat[3].name == "bdn19-causal");

  CHECK(cat[0].family == PresetFamily::FT_symmetric);
  CHECK(cat[1].family == PresetFamily::BDN19);
  CHECK(cat[2].family == PresetFamily::BDN18_fully_symmetric);
  CHECK(cat[3].family == PresetFamily::BDN19);

  CHECK(std::string(to_string(PresetFamily::FT_symmetric)) == "FT_symmetric");
  CHECK(std::string(to_string(PresetFamily::BDN19)) == "BDN19");
  CHECK(std::string(to_string(PresetFamily::BDN18_fully_symmetric)) ==
        "BDN18_fully_symmetric");
  CHECK(std::string(to_string(PresetFamily::Custom)) == "Custom");

  // ft-c2 ties tau = -mu, omega = -nu and lands sigma = -mu exactly.
  const auto& ft = cat[0].params;
  CHECK(ft.tau == -ft.mu);
  CHECK(ft.omega == -ft.nu);
  CHECK(ft.sigma() == -ft.mu);

  // Both BDN19 presets tie nu to mu; the fully symmetric one adds tau = omega.
  CHECK(cat[1].params.nu == cat[1].params.mu);
  CHECK(cat[3].params.nu == cat[3].params.mu);
  CHECK(cat[2].params.mu == cat[2].params.nu);
  CHECK(cat[2].params.tau == cat[2].params.omega);

  for (const auto& p : cat) CHECK_FALSE(p.provenance_note.empty());
}

TEST_CASE("presets re-certify as advertised") {
  const Preset ft = load_preset("ft-c2");
  const DissipativityReport dft = certify_theorem1(ft.params);
  CHECK(dft.theorem1_verdict == Theorem1Verdict::StableC2);
  const CausalityReport cft = check_causality(ft.params);
  CHECK(cft.causal);
  CHECK(cft.boundary);
  CHECK(cft.b_max == 1.0);

  const Preset p19 = load_preset("bdn19-demo");
  CHECK(certify_theorem1(p19.params).theorem1_verdict == Theorem1Verdict::StableC1);
  CHECK_FALSE(check_causality(p19.params).causal);

  const Preset p18 = load_preset("bdn18-demo");
  CHECK(certify_theorem1(p18.params).theorem1_verdict == Theorem1Verdict::StableC1);
  CHECK_FALSE(check_causality(p18.params).causal);

  // The searched causal point must reproduce the margins quoted in its note.
  const Preset pc = load_preset("bdn19-causal");
  CHECK(certify_theorem1(pc.params).theorem1_verdict == Theorem1Verdict::StableC1);
  const CausalityReport cc = check_causality(pc.params);
  CHECK(cc.causal);
  CHECK_FALSE(cc.boundary);
  CHECK(cc.margins.at("eta_le_mu") == doctest::Approx(0.203).epsilon(5e-3));
  CHECK(cc.margins.at("ca4_upper") == doctest::Approx(0.151).epsilon(5e-3));
  CHECK(cc.margins.at("ca4_lower") == doctest::Approx(0.547).epsilon(5e-3));
  CHECK(cc.b_max == doctest::Approx(0.859).epsilon(2e-3));
}

TEST_CASE("unknown preset error lists the available names") {
  CHECK_THROWS_WITH_AS(
      (void)load_preset("nope"),
      "unknown preset 'nope'; available: ft-c2 bdn19-demo bdn18-demo bdn19-causal",
      ConfigError);
}

TEST_CASE("scan spec parsing accepts both separators and fills defaults") {
  const ScanSpec spec = parse_scan_spec(
      "# comment line\n"
      "kappa = 1\n"
      "mu = 1\n"
      "eta = 0.3\n"
      "nu = 1\n"
      "chi = 0.5\n"
      "tau 0.4\n"  // space separator, no '='
      "scan = omega 0.105 0.505 41\n"
      "outputs = theorem1_verdict, b_max\n");
  REQUIRE(spec.axes.size() == 1);
  CHECK(spec.axes[0].param == "omega");
  CHECK(spec.axes[0].lo == 0.105);
  CHECK(spec.axes[0].hi == 0.505);
  CHECK(spec.axes[0].n == 41);
  // omega has no base line: the axis low end stands in. cs defaults to 1.
  CHECK(spec.base.omega == 0.105);
  CHECK(spec.base.cs == 1.0);
  CHECK(spec.base.tau == 0.4);
  REQUIRE(spec.outputs.size() == 2);
  CHECK(spec.outputs[0] == "theorem1_verdict");
  CHECK(spec.outputs[1] == "b_max");
}

TEST_CASE("scan spec parse errors carry line numbers and key names") {
  const std::string base =
      "kappa = 1\nmu = 1\neta = 0.3\nnu = 1\ntau = 0.4\nchi = 0.5\n";
  expect_parse_error(base, "scan config needs at least one 'scan");
  expect_parse_error(base + "scan = omega 0.1 0.5\n",
                     "scan line 7: expected 'scan = <param> <lo> <hi> <n>'");
  expect_parse_error(base + "scan = bogus 0.1 0.5 3\n",
                     "scan line 7: unknown scan key 'bogus'");
  expect_parse_error(base + "scan = omega 0.1 0.5 0\n",
                     "scan line 7: axis count must be a positive integer, got '0'");
  expect_parse_error(base + "scan = omega 0.1 0.5 x\n",
                     "scan line 7: axis count must be a positive integer, got 'x'");
  expect_parse_error(base + "scan = omega lo 0.5 3\n",
                     "scan line 7: cannot parse axis low end 'lo'");
  expect_parse_error(base + "scan = omega 0.1 0.5 3\nscan = omega 0.2 0.6 3\n",
                     "scan line 8: duplicate scan key 'omega'");
  expect_parse_error(
      base + "scan = omega 0.1 0.5 3\nscan = tau 0 1 3\nscan = cs 0.5 1 3\n",
      "scan line 9: at most two scan axes");
  expect_parse_error(base + "scan = omega 0.1 0.5 3\nbogus = 1\n",
                     "scan line 8: unknown key 'bogus'");
  expect_parse_error(base + "mu = 2\nscan = omega 0.1 0.5 3\n",
                     "scan line 7: duplicate key 'mu'");
  expect_parse_error(base + "scan = omega 0.1 0.5 3\noutputs = b_max\noutputs = causal\n",
                     "scan line 9: duplicate 'outputs'");
  expect_parse_error(base + "scan = omega 0.1 0.5 3\noutputs = wat\n",
                     "scan line 8: unknown output 'wat'");
  expect_parse_error(base + "scan = omega 0.1 0.5 3\noutputs = ,\n",
                     "scan line 8: empty 'outputs' list");
  expect_parse_error("kappa = 1\nmu = 1\neta = 0.3\nnu = 1\ntau = 0.4\nscan = omega 0.1 0.5 3\n",
                     "scan config missing key 'chi'");
  // A base point that violates the model domain is rejected at parse time.
  expect_parse_error(base + "cs = -1\nscan = omega 0.1 0.5 3\n",
                     "scan config invalid: parameter 'cs' must be positive");
}

TEST_CASE("single-cell scan reproduces the direct certification") {
  const ModelParameters demo(1.0, 1.0, 0.3, 1.0, 3.0, 3.0, 0.9, 1.0);
  ScanSpec spec;
  spec.base = demo;
  spec.axes.push_back(ScanAxis{"kappa", 1.0, 9.0, 1});  // n = 1 pins the low end
  const ScanResult res = run_scan(spec);
  REQUIRE(res.cells.size() == 1);
  const ScanCell& cell = res.cells[0];
  CHECK(cell.error.empty());
  REQUIRE(cell.coords.size() == 1);
  CHECK(cell.coords[0] == 1.0);

  const DissipativityReport rep = certify_theorem1(demo);
  const CausalityReport cau = check_causality(demo);
  CHECK(cell.hyperbolicity_class == to_string(rep.hyperbolicity.cls));
  CHECK(cell.theorem1_verdict == to_string(rep.theorem1_verdict));
  CHECK(cell.delta2 == rep.d3.delta2);
  CHECK(cell.causal == cau.causal);
  CHECK(cell.b_max == cau.b_max);
}

TEST_CASE("omega sweep flips from rejected to certified at the threshold") {
  const ScanSpec spec = parse_scan_spec(kOmegaSweep);
  const ScanResult res = run_scan(spec);
  REQUIRE(res.cells.size() == 41);

  // Low omega: complex characteristic roots, no hyperbolicity at all.
  CHECK(res.cells[0].hyperbolicity_class == "NotHyperbolic");
  CHECK(res.cells[0].theorem1_verdict == "NotCertified");
  CHECK(res.cells[13].hyperbolicity_class == "NotHyperbolic");

  // Middle band: four simple roots appear but the degeneracy margin is
  // still negative, so classification succeeds while certification fails.
  CHECK(res.cells[14].hyperbolicity_class == "ClassI_strict");
  CHECK(res.cells[14].theorem1_verdict == "NotCertified");
  CHECK(res.cells[19].hyperbolicity_class == "ClassI_strict");
  CHECK(res.cells[19].theorem1_verdict == "NotCertified");

  // The certificate switches on at omega = 0.305 and stays on.
  int first_pass = -1;
  for (size_t i = 0; i < res.cells.size(); ++i) {
    if (res.cells[i].theorem1_verdict == "StableC1") {
      first_pass = static_cast<int>(i);
      break;
    }
  }
  CHECK(first_pass == 20);
  CHECK(res.cells[20].coords[0] == doctest::Approx(0.305).epsilon(1e-12));
  for (size_t i = 20; i < res.cells.size(); ++i) {
    CHECK(res.cells[i].theorem1_verdict == "StableC1");
    CHECK(res.cells[i].error.empty());
  }
}

TEST_CASE("two-axis scan around the symmetric point maps the branch structure") {
  // Grid centered on the constrained symmetric point. The center lands
  // exactly on tau = -1, omega = 1 and certifies through the degenerate-pair
  // branch. Cells with (tau+1)(omega-1) > 0 gain four simple roots and
  // certify through the generic branch; everything else loses hyperbolicity.
  ScanSpec spec;
  spec.base = ModelParameters(1.0, 1.0, 0.5, -1.0, -1.0, 1.0, -1.0 / 3.0, 0.5);
  spec.axes.push_back(ScanAxis{"tau", -1.2, -0.8, 5});
  spec.axes.push_back(ScanAxis{"omega", 0.8, 1.2, 5});
  const ScanResult res = run_scan(spec);
  REQUIRE(res.cells.size() == 25);

  int n_c1 = 0, n_c2 = 0, n_nh = 0;
  for (size_t i = 0; i < res.cells.size(); ++i) {
    const ScanCell& cell = res.cells[i];
    REQUIRE(cell.error.empty());
    REQUIRE(cell.coords.size() == 2);
    if (cell.theorem1_verdict == "StableC2") {
      ++n_c2;
      CHECK(i == 12);  // row-major center
      CHECK(cell.coords[0] == -1.0);
      CHECK(cell.coords[1] == 1.0);
      CHECK(cell.hyperbolicity_class == "ClassII_double");
    } else if (cell.theorem1_verdict == "StableC1") {
      ++n_c1;
      CHECK(cell.hyperbolicity_class == "ClassI_strict");
      CHECK((cell.coords[0] + 1.0) * (cell.coords[1] - 1.0) > 1e-3);
    } else {
      ++n_nh;
      CHECK(cell.theorem1_verdict == "NotCertified");
      CHECK(cell.hyperbolicity_class == "NotHyperbolic");
    }
  }
  CHECK(n_c2 == 1);
  CHECK(n_c1 == 8);
  CHECK(n_nh == 16);
}

TEST_CASE("scan cells capture per-cell failures without aborting the grid") {
  ScanSpec spec = parse_scan_spec(
      "kappa = 1\nmu = 1\neta = 0.3\nnu = 1\ntau = 3\nomega = 3\nchi = 0.9\n"
      "cs = 1\n"
      "scan = cs -0.5 0.5 3\n");
  const ScanResult res = run_scan(spec);
  REQUIRE(res.cells.size() == 3);
  // cs = -0.5 and cs = 0 are invalid models; cs = 0.5 evaluates normally.
  CHECK(res.cells[0].error.find("cs") != std::string::npos);
  CHECK(res.cells[0].coords[0] == -0.5);
  CHECK_FALSE(res.cells[1].error.empty());
  CHECK(res.cells[2].error.empty());
  CHECK(res.cells[2].theorem1_verdict == "StableC1");

  // Bad axis setups are rejected up front.
  ScanSpec none;
  none.base = ModelParameters(1, 1, 0.3, 1, 3, 3, 0.9, 1);
  CHECK_THROWS_AS((void)run_scan(none), ConfigError);
  ScanSpec dup = none;
  dup.axes.push_back(ScanAxis{"tau", 0, 1, 2});
  dup.axes.push_back(ScanAxis{"tau", 0, 1, 2});
  CHECK_THROWS_AS((void)run_scan(dup), ConfigError);
  ScanSpec zero = none;
  zero.axes.push_back(ScanAxis{"tau", 0, 1, 0});
  CHECK_THROWS_AS((void)run_scan(zero), ConfigError);
  ScanSpec unknown = none;
  unknown.axes.push_back(ScanAxis{"blah", 0, 1, 2});
  CHECK_THROWS_AS((void)run_scan(unknown), ConfigError);
}

TEST_CASE("worker count honors the environment and results stay deterministic") {
  const char* saved = std::getenv("BDNKCERT_WORKERS");
  const std::string saved_val = saved ? saved : "";

  setenv("BDNKCERT_WORKERS", "3", 1);
  CHECK(scan_worker_count() == 3);
  setenv("BDNKCERT_WORKERS", " 2 ", 1);  // whitespace is trimmed
  CHECK(scan_worker_count() == 2);
  setenv("BDNKCERT_WORKERS", "abc", 1);
  CHECK_THROWS_AS((void)scan_worker_count(), ConfigError);
  setenv("BDNKCERT_WORKERS", "0", 1);
  CHECK_THROWS_AS((void)scan_worker_count(), ConfigError);
  unsetenv("BDNKCERT_WORKERS");
  CHECK(scan_worker_count() >= 1);

  // The same grid serialized under different pool sizes must match bytewise.
  const ScanSpec spec = parse_scan_spec(kOmegaSweep);
  setenv("BDNKCERT_WORKERS", "1", 1);
  const std::string serial = scan_to_csv(run_scan(spec));
  setenv("BDNKCERT_WORKERS", "4", 1);
  const std::string pooled = scan_to_csv(run_scan(spec));
  CHECK(serial == pooled);

  if (saved)
    setenv("BDNKCERT_WORKERS", saved_val.c_str(), 1);
  else
    unsetenv("BDNKCERT_WORKERS");
}

TEST_CASE("stability report serializes to parseable json with stable fields") {
  const ModelParameters ft(1.0, 1.0, 0.5, -1.0, -1.0, 1.0, -1.0 / 3.0, 0.5);
  const StabilityReport rep = full_stability_report(ft);
  const std::string js = to_json(rep);
  CHECK(js == to_json(full_stability_report(ft)));  // byte-identical reruns

  const auto j = nlohmann::json::parse(js);
  CHECK(j["certified"].get<bool>());
  CHECK(j["params"]["sigma"].get<double>() == -1.0);
  CHECK(j["params_unit_cs"]["kappa"].get<double>() == 0.0625);
  CHECK(j["params_unit_cs"]["cs"].get<double>() == 1.0);
  CHECK(j["hyperbolicity"]["class"].get<std::string>() == "ClassII_double");
  CHECK(j["dissipativity"]["theorem1_verdict"].get<std::string>() == "StableC2");
  CHECK(j["dissipativity"]["c2_branch"]["margin"].get<double>() == 0.75);
  CHECK(j["causality"]["causal"].get<bool>());
  CHECK(j["causality"]["b_max"].get<double>() == 1.0);
  CHECK(j["dissipativity"]["conditions"].contains("C2_1"));
  CHECK(j["dissipativity"]["failures"].empty());

  // Generic-branch report: rh_trace populated, c2_branch null.
  const ModelParameters demo(1.0, 1.0, 0.3, 1.0, 3.0, 3.0, 0.9, 1.0);
  const auto jd = nlohmann::json::parse(to_json(full_stability_report(demo)));
  CHECK(jd["dissipativity"]["theorem1_verdict"].get<std::string>() == "StableC1");
  CHECK(jd["dissipativity"]["rh_trace"].size() == 9);
  CHECK(jd["dissipativity"]["c2_branch"].is_null());
  CHECK_FALSE(jd["causality"]["causal"].get<bool>());
  CHECK(jd["certified"].get<bool>());
}

TEST_CASE("csv serializers pin headers and formatting") {
  CHECK(csv_double(0.1) == "0.1");
  CHECK(csv_double(153.25) == "153.25");
  CHECK(csv_double(1.0 / 3.0) == "0.333333333333");  // 12 significant digits

  const ModelParameters ft(1.0, 1.0, 0.5, -1.0, -1.0, 1.0, -1.0 / 3.0, 0.5);
  const std::string csv = to_csv(full_stability_report(ft));
  CHECK(csv.rfind("section,name,value\n", 0) == 0);
  CHECK(csv.find("hyperbolicity,class,ClassII_double") != std::string::npos);
  CHECK(csv.find("verdict,certified,true") != std::string::npos);
  CHECK(csv.find("c2_branch,margin,0.75") != std::string::npos);

  const BranchScan bs = scan_branches(ft, 0.5, 2.0, 3);
  const std::string bcsv = branches_to_csv(bs);
  CHECK(bcsv.rfind("xi,re_lambda,im_lambda,branch_id,block\n", 0) == 0);
  CHECK(count_lines(bcsv) == 1 + 6 * 3);
  CHECK(bcsv.find(",parallel") != std::string::npos);
  CHECK(bcsv.find(",perpendicular") != std::string::npos);

  // Output restriction trims the scan columns but always keeps error.
  ScanSpec spec = parse_scan_spec(
      "kappa = 1\nmu = 1\neta = 0.3\nnu = 1\ntau = 3\nomega = 3\nchi = 0.9\n"
      "scan = kappa 1 2 2\noutputs = theorem1_verdict\n");
  const std::string scsv = scan_to_csv(run_scan(spec));
  CHECK(scsv.rfind("kappa,theorem1_verdict,error\n", 0) == 0);
  CHECK(count_lines(scsv) == 3);
  CHECK(scsv.find("StableC1") != std::string::npos);
  CHECK(scsv.find("b_max") == std::string::npos);
}

TEST_CASE("cli help, presets and bad arguments") {
  const CliRun help = run_cli({"--help"});
  CHECK(help.code == kExitCertified);
  CHECK(help.out.find("check") != std::string::npos);
  CHECK(help.out.find("decay") != std::string::npos);
  CHECK(help.out.find("presets") != std::string::npos);

  CHECK(run_cli({}).code == kExitBadConfig);          // subcommand required
  CHECK(run_cli({"frobnicate"}).code == kExitBadConfig);
  CHECK(run_cli({"check", "ft-c2", "--format", "xml"}).code == kExitBadConfig);

  const CliRun pcsv = run_cli({"presets"});
  CHECK(pcsv.code == kExitCertified);
  CHECK(pcsv.out.rfind("name,family,kappa,mu,eta,nu,tau,omega,chi,cs\n", 0) == 0);
  CHECK(count_lines(pcsv.out) == 5);

  const CliRun pjson = run_cli({"presets", "--format", "json"});
  CHECK(pjson.code == kExitCertified);
  const auto arr = nlohmann::json::parse(pjson.out);
  REQUIRE(arr.is_array());
  REQUIRE(arr.size() == 4);
  CHECK(arr[0]["name"].get<std::string>() == "ft-c2");
  CHECK(arr[0]["params"]["sigma"].get<double>() == -1.0);
  CHECK(arr[3]["family"].get<std::string>() == "BDN19");
}

TEST_CASE("cli check maps certification onto exit codes") {
  const CliRun ok = run_cli({"check", "bdn19-demo"});
  CHECK(ok.code == kExitCertified);
  const auto j = nlohmann::json::parse(ok.out);
  CHECK(j["certified"].get<bool>());
  CHECK(j["dissipativity"]["theorem1_verdict"].get<std::string>() == "StableC1");

  // Identical invocations must produce identical bytes.
  CHECK(run_cli({"check", "bdn19-demo"}).out == ok.out);

  const CliRun okcsv = run_cli({"check", "ft-c2", "--format", "csv"});
  CHECK(okcsv.code == kExitCertified);
  CHECK(okcsv.out.rfind("section,name,value\n", 0) == 0);

  // A valid model that fails certification exits 1, not 2.
  const std::string notcert = write_temp(
      "bdnkcert_notcert.cfg",
      "kappa = 1\nmu = 1\neta = 0.3\nnu = 1\ntau = 0\nomega = 0\nchi = 0.3\ncs = 1\n");
  const CliRun bad = run_cli({"check", notcert});
  CHECK(bad.code == kExitNotCertified);
  const auto jb = nlohmann::json::parse(bad.out);
  CHECK_FALSE(jb["certified"].get<bool>());
  CHECK(jb["hyperbolicity"]["class"].get<std::string>() == "NotHyperbolic");
  std::remove(notcert.c_str());

  const CliRun missing = run_cli({"check", "/no/such/file.cfg"});
  CHECK(missing.code == kExitBadConfig);
  CHECK(missing.err.find("nor a config file") != std::string::npos);
  CHECK(missing.err.find("ft-c2") != std::string::npos);

  CHECK(run_cli({"check", "ft-c2", "--tol", "-1"}).code == kExitBadConfig);
}

TEST_CASE("cli dispersion, decay and scan surfaces") {
  const CliRun disp = run_cli({"dispersion", "bdn19-demo", "--xi-lo", "0.1",
                               "--xi-hi", "10", "--n", "5"});
  CHECK(disp.code == kExitCertified);
  CHECK(disp.out.rfind("xi,re_lambda,im_lambda,branch_id,block\n", 0) == 0);
  CHECK(count_lines(disp.out) == 1 + 6 * 5);

  const CliRun decay = run_cli({"decay", "ft-c2", "--t-lo", "1", "--t-hi", "10",
                                "--t-n", "3"});
  CHECK(decay.code == kExitCertified);
  CHECK(decay.out.rfind("t,hs_norm,l2_norm\n", 0) == 0);
  CHECK(count_lines(decay.out) == 4);

  CHECK(run_cli({"decay", "ft-c2", "--t-lo", "10", "--t-hi", "1"}).code ==
        kExitBadConfig);
  CHECK(run_cli({"decay", "ft-c2", "--profile-width", "-1"}).code == kExitBadConfig);

  const std::string scanfile = write_temp(
      "bdnkcert_scan.cfg",
      "kappa = 1\nmu = 1\neta = 0.3\nnu = 1\ntau = 3\nomega = 3\nchi = 0.9\n"
      "scan = kappa 0.5 2 4\noutputs = theorem1_verdict, causal\n");
  const CliRun scan = run_cli({"scan", scanfile});
  CHECK(scan.code == kExitCertified);
  CHECK(scan.out.rfind("kappa,theorem1_verdict,causal,error\n", 0) == 0);
  CHECK(count_lines(scan.out) == 5);
  std::remove(scanfile.c_str());

  CHECK(run_cli({"scan", "/no/such/scan.cfg"}).code == kExitBadConfig);
}
