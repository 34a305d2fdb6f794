#include "bdnk/report.hpp"

#include <cstdio>
#include <json.hpp>
#include <sstream>

namespace bdnk {

namespace {

using ordered_json = nlohmann::ordered_json;

// Non-finite values have no JSON representation; nlohmann emits null, which
// is what we document. The helper exists so every double goes through one
// place if that ever changes.
ordered_json jnum(double v) { return v; }

ordered_json jcomplex(std::complex<double> z) {
  return ordered_json{{"re", jnum(z.real())}, {"im", jnum(z.imag())}};
}

ordered_json params_json(const ModelParameters& p) {
  return ordered_json{{"kappa", jnum(p.kappa)}, {"mu", jnum(p.mu)},     {"eta", jnum(p.eta)},
                      {"nu", jnum(p.nu)},       {"tau", jnum(p.tau)},   {"omega", jnum(p.omega)},
                      {"chi", jnum(p.chi)},     {"cs", jnum(p.cs)},     {"sigma", jnum(p.sigma())}};
}

ordered_json margins_json(const std::map<std::string, double>& m) {
  ordered_json j = ordered_json::object();
  for (const auto& [k, v] : m) j[k] = jnum(v);
  return j;
}

ordered_json numeric_json(const NumericEigenReport& n) {
  ordered_json j;
  ordered_json par = ordered_json::array();
  for (auto z : n.par_eigenvalues) par.push_back(jcomplex(z));
  ordered_json perp = ordered_json::array();
  for (auto z : n.perp_eigenvalues) perp.push_back(jcomplex(z));
  j["par_eigenvalues"] = std::move(par);
  j["perp_eigenvalues"] = std::move(perp);
  j["max_real_part_abs"] = jnum(n.max_real_part_abs);
  j["par_multiplicities"] = n.par_multiplicities;
  j["perp_multiplicities"] = n.perp_multiplicities;
  j["par_semisimple"] = n.par_semisimple;
  j["perp_semisimple"] = n.perp_semisimple;
  j["all_real"] = n.all_real;
  j["hyperbolic"] = n.hyperbolic;
  j["eigenvector_condition"] = jnum(n.eigenvector_condition);
  j["tol"] = jnum(n.tol);
  return j;
}

ordered_json hyperbolicity_json(const HyperbolicityReport& h) {
  ordered_json j;
  j["class"] = to_string(h.cls);
  j["holds"] = h.holds;
  j["not_physical"] = h.not_physical;
  j["beta1"] = jnum(h.beta1);
  j["beta2"] = jnum(h.beta2);
  j["frak_k"] = jnum(h.frak_k);
  j["frak_l"] = jnum(h.frak_l);
  j["margins"] = margins_json(h.margins);
  j["numeric"] = h.numeric_confirmation ? numeric_json(*h.numeric_confirmation)
                                        : ordered_json(nullptr);
  j["notes"] = h.notes;
  return j;
}

ordered_json condition_json(const ConditionCheck& c) {
  return ordered_json{{"value", jnum(c.value)},
                      {"threshold", jnum(c.threshold)},
                      {"strict", c.strict},
                      {"pass", c.pass},
                      {"applicable", c.applicable}};
}

ordered_json dissipativity_json(const DissipativityReport& d) {
  ordered_json j;
  j["theorem1_verdict"] = to_string(d.theorem1_verdict);
  ordered_json conds = ordered_json::object();
  for (const auto& [name, c] : d.conditions) conds[name] = condition_json(c);
  j["conditions"] = std::move(conds);
  j["failures"] = d.failures;

  j["d1"] = ordered_json{{"applicable", d.d1.applicable},
                         {"verdict", d.d1.verdict},
                         {"margin", jnum(d.d1.margin)}};

  ordered_json pairings = ordered_json::array();
  for (const auto& ep : d.d2.pairings) {
    pairings.push_back(ordered_json{{"beta", jnum(ep.beta)},
                                    {"pairing", jcomplex(ep.pairing_value)},
                                    {"closed_form_q", jnum(ep.closed_form_q)},
                                    {"matched_variant", to_string(ep.matched_variant)}});
  }
  j["d2"] = ordered_json{{"applicable", d.d2.applicable},
                         {"verdict", d.d2.verdict},
                         {"min_abs_pairing", jnum(d.d2.min_abs_pairing)},
                         {"pairings", std::move(pairings)},
                         {"identity_variant", to_string(d.d2.identity_variant)},
                         {"closed_form_available", d.d2.closed_form_available},
                         {"note", d.d2.note}};

  j["d3"] = ordered_json{{"applicable", d.d3.applicable},
                         {"verdict", d.d3.verdict},
                         {"delta1", jnum(d.d3.delta1)},
                         {"delta2", jnum(d.d3.delta2)},
                         {"delta1_strict", d.d3.delta1_strict},
                         {"delta2_strict", d.d3.delta2_strict},
                         {"prerequisites", d.d3.prerequisites},
                         {"matched_variant", to_string(d.d3.matched_variant)}};

  if (d.c2_branch) {
    j["c2_branch"] = ordered_json{{"applicable", d.c2_branch->applicable},
                                  {"verdict", d.c2_branch->verdict},
                                  {"margin", jnum(d.c2_branch->margin)},
                                  {"matrix_test", d.c2_branch->matrix_test},
                                  {"tests_agree", d.c2_branch->tests_agree}};
  } else {
    j["c2_branch"] = nullptr;
  }

  ordered_json trace = ordered_json::array();
  for (const auto& [alpha, delta] : d.rh_trace) {
    trace.push_back(ordered_json{{"alpha", jnum(alpha)}, {"delta", jnum(delta)}});
  }
  j["rh_trace"] = std::move(trace);
  return j;
}

ordered_json causality_json(const CausalityReport& c) {
  ordered_json j;
  j["applicable"] = c.applicable;
  j["causal"] = c.causal;
  j["shear_speed"] = jnum(c.shear_speed);
  j["sound_speed1"] = jnum(c.sound_speed1);
  j["sound_speed2"] = jnum(c.sound_speed2);
  j["b_max"] = jnum(c.b_max);
  j["margins"] = margins_json(c.margins);
  j["boundary"] = c.boundary;
  if (c.subcharacteristic) {
    j["subcharacteristic"] =
        ordered_json{{"applicable", c.subcharacteristic->applicable},
                     {"a_values", c.subcharacteristic->a_values},
                     {"within_range", c.subcharacteristic->within_range},
                     {"w1pos_max_residual", jnum(c.subcharacteristic->w1pos_max_residual)}};
  } else {
    j["subcharacteristic"] = nullptr;
  }
  j["symmetric_coupling"] = c.symmetric_coupling;
  j["c_matrix_symmetric"] = c.c_matrix_symmetric;
  return j;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += "\"\"";
    out += ch;
  }
  out += "\"";
  return out;
}

const char* bool_str(bool b) { return b ? "true" : "false"; }

void csv_row(std::string& out, const std::string& section, const std::string& name,
             const std::string& value) {
  out += csv_escape(section);
  out += ',';
  out += csv_escape(name);
  out += ',';
  out += csv_escape(value);
  out += '\n';
}

void csv_params(std::string& out, const char* section, const ModelParameters& p) {
  csv_row(out, section, "kappa", csv_double(p.kappa));
  csv_row(out, section, "mu", csv_double(p.mu));
  csv_row(out, section, "eta", csv_double(p.eta));
  csv_row(out, section, "nu", csv_double(p.nu));
  csv_row(out, section, "tau", csv_double(p.tau));
  csv_row(out, section, "omega", csv_double(p.omega));
  csv_row(out, section, "chi", csv_double(p.chi));
  csv_row(out, section, "cs", csv_double(p.cs));
  csv_row(out, section, "sigma", csv_double(p.sigma()));
}

}  // namespace

std::string csv_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

StabilityReport full_stability_report(const ModelParameters& p, double tol) {
  StabilityReport r(p, rescale_to_unit_cs(p));
  r.dissipativity = certify_theorem1(p, tol);
  r.causality = check_causality(p);
  r.certified = r.dissipativity.theorem1_verdict != Theorem1Verdict::NotCertified;
  return r;
}

std::string to_json(const StabilityReport& r) {
  ordered_json j;
  j["params"] = params_json(r.params);
  j["params_unit_cs"] = params_json(r.params_unit_cs);
  j["hyperbolicity"] = hyperbolicity_json(r.dissipativity.hyperbolicity);
  j["dissipativity"] = dissipativity_json(r.dissipativity);
  j["causality"] = causality_json(r.causality);
  j["certified"] = r.certified;
  return j.dump(2) + "\n";
}

std::string to_csv(const StabilityReport& r) {
  std::string out = "section,name,value\n";
  csv_params(out, "params", r.params);
  csv_params(out, "params_unit_cs", r.params_unit_cs);

  const auto& h = r.dissipativity.hyperbolicity;
  csv_row(out, "hyperbolicity", "class", to_string(h.cls));
  csv_row(out, "hyperbolicity", "holds", bool_str(h.holds));
  csv_row(out, "hyperbolicity", "not_physical", bool_str(h.not_physical));
  csv_row(out, "hyperbolicity", "beta1", csv_double(h.beta1));
  csv_row(out, "hyperbolicity", "beta2", csv_double(h.beta2));
  csv_row(out, "hyperbolicity", "frak_k", csv_double(h.frak_k));
  csv_row(out, "hyperbolicity", "frak_l", csv_double(h.frak_l));
  for (const auto& [k, v] : h.margins) csv_row(out, "hyperbolicity.margins", k, csv_double(v));
  if (h.numeric_confirmation) {
    const auto& n = *h.numeric_confirmation;
    csv_row(out, "hyperbolicity.numeric", "max_real_part_abs", csv_double(n.max_real_part_abs));
    csv_row(out, "hyperbolicity.numeric", "all_real", bool_str(n.all_real));
    csv_row(out, "hyperbolicity.numeric", "par_semisimple", bool_str(n.par_semisimple));
    csv_row(out, "hyperbolicity.numeric", "perp_semisimple", bool_str(n.perp_semisimple));
    csv_row(out, "hyperbolicity.numeric", "hyperbolic", bool_str(n.hyperbolic));
  }

  const auto& d = r.dissipativity;
  csv_row(out, "dissipativity", "theorem1_verdict", to_string(d.theorem1_verdict));
  for (const auto& [name, c] : d.conditions) {
    csv_row(out, "dissipativity.conditions", name,
            std::string(bool_str(c.pass)) + (c.applicable ? "" : " (inapplicable)"));
    csv_row(out, "dissipativity.margins", name, csv_double(c.value - c.threshold));
  }
  for (const auto& f : d.failures) csv_row(out, "dissipativity.failures", f, "");
  csv_row(out, "d1", "applicable", bool_str(d.d1.applicable));
  csv_row(out, "d1", "verdict", bool_str(d.d1.verdict));
  csv_row(out, "d1", "margin", csv_double(d.d1.margin));
  csv_row(out, "d2", "applicable", bool_str(d.d2.applicable));
  csv_row(out, "d2", "verdict", bool_str(d.d2.verdict));
  csv_row(out, "d2", "min_abs_pairing", csv_double(d.d2.min_abs_pairing));
  csv_row(out, "d2", "identity_variant", to_string(d.d2.identity_variant));
  csv_row(out, "d3", "applicable", bool_str(d.d3.applicable));
  csv_row(out, "d3", "verdict", bool_str(d.d3.verdict));
  csv_row(out, "d3", "delta1", csv_double(d.d3.delta1));
  csv_row(out, "d3", "delta2", csv_double(d.d3.delta2));
  csv_row(out, "d3", "matched_variant", to_string(d.d3.matched_variant));
  if (d.c2_branch) {
    csv_row(out, "c2_branch", "verdict", bool_str(d.c2_branch->verdict));
    csv_row(out, "c2_branch", "margin", csv_double(d.c2_branch->margin));
    csv_row(out, "c2_branch", "matrix_test", bool_str(d.c2_branch->matrix_test));
    csv_row(out, "c2_branch", "tests_agree", bool_str(d.c2_branch->tests_agree));
  }

  const auto& c = r.causality;
  csv_row(out, "causality", "applicable", bool_str(c.applicable));
  csv_row(out, "causality", "causal", bool_str(c.causal));
  csv_row(out, "causality", "shear_speed", csv_double(c.shear_speed));
  csv_row(out, "causality", "sound_speed1", csv_double(c.sound_speed1));
  csv_row(out, "causality", "sound_speed2", csv_double(c.sound_speed2));
  csv_row(out, "causality", "b_max", csv_double(c.b_max));
  for (const auto& [k, v] : c.margins) csv_row(out, "causality.margins", k, csv_double(v));
  csv_row(out, "causality", "boundary", bool_str(c.boundary));
  if (c.subcharacteristic) {
    csv_row(out, "causality", "subchar_within_range", bool_str(c.subcharacteristic->within_range));
    csv_row(out, "causality", "subchar_w1pos_max_residual",
            csv_double(c.subcharacteristic->w1pos_max_residual));
  }
  csv_row(out, "causality", "symmetric_coupling", bool_str(c.symmetric_coupling));
  csv_row(out, "causality", "c_matrix_symmetric", bool_str(c.c_matrix_symmetric));

  csv_row(out, "verdict", "certified", bool_str(r.certified));
  return out;
}

std::string branches_to_csv(const BranchScan& scan) {
  std::string out = "xi,re_lambda,im_lambda,branch_id,block\n";
  for (const auto& br : scan.branches) {
    for (size_t i = 0; i < br.xi_grid.size(); ++i) {
      out += csv_double(br.xi_grid[i]);
      out += ',';
      out += csv_double(br.lambdas[i].real());
      out += ',';
      out += csv_double(br.lambdas[i].imag());
      out += ',';
      out += std::to_string(br.branch_id);
      out += ',';
      out += to_string(br.block);
      out += '\n';
    }
  }
  return out;
}

std::string decay_to_csv(const DecayTrace& trace) {
  std::string out = "t,hs_norm,l2_norm\n";
  for (size_t i = 0; i < trace.times.size(); ++i) {
    out += csv_double(trace.times[i]);
    out += ',';
    out += csv_double(trace.hs_norms[i]);
    out += ',';
    out += csv_double(trace.l2_norms[i]);
    out += '\n';
  }
  return out;
}

namespace {

bool wants_output(const ScanSpec& spec, const char* name) {
  if (spec.outputs.empty()) return true;
  for (const auto& o : spec.outputs)
    if (o == name) return true;
  return false;
}

}  // namespace

std::string scan_to_csv(const ScanResult& result) {
  const auto& spec = result.spec;
  std::string out;
  for (const auto& ax : spec.axes) {
    out += csv_escape(ax.param);
    out += ',';
  }
  const bool w_class = wants_output(spec, "hyperbolicity_class");
  const bool w_verdict = wants_output(spec, "theorem1_verdict");
  const bool w_causal = wants_output(spec, "causal");
  const bool w_bmax = wants_output(spec, "b_max");
  const bool w_delta2 = wants_output(spec, "delta2");
  if (w_class) out += "hyperbolicity_class,";
  if (w_verdict) out += "theorem1_verdict,";
  if (w_causal) out += "causal,";
  if (w_bmax) out += "b_max,";
  if (w_delta2) out += "delta2,";
  out += "error\n";

  for (const auto& cell : result.cells) {
    for (double c : cell.coords) {
      out += csv_double(c);
      out += ',';
    }
    if (cell.error.empty()) {
      if (w_class) { out += csv_escape(cell.hyperbolicity_class); out += ','; }
      if (w_verdict) { out += csv_escape(cell.theorem1_verdict); out += ','; }
      if (w_causal) { out += bool_str(cell.causal); out += ','; }
      if (w_bmax) { out += csv_double(cell.b_max); out += ','; }
      if (w_delta2) { out += csv_double(cell.delta2); out += ','; }
      out += '\n';
    } else {
      if (w_class) out += ',';
      if (w_verdict) out += ',';
      if (w_causal) out += ',';
      if (w_bmax) out += ',';
      if (w_delta2) out += ',';
      out += csv_escape(cell.error);
      out += '\n';
    }
  }
  return out;
}

std::string to_json(const BranchScan& scan) {
  ordered_json j;
  ordered_json branches = ordered_json::array();
  for (const auto& br : scan.branches) {
    ordered_json lam = ordered_json::array();
    for (auto z : br.lambdas) lam.push_back(jcomplex(z));
    branches.push_back(ordered_json{{"block", to_string(br.block)},
                                    {"branch_id", br.branch_id},
                                    {"xi_grid", br.xi_grid},
                                    {"lambdas", std::move(lam)}});
  }
  j["branches"] = std::move(branches);
  j["max_real_part"] = jnum(scan.max_real_part);
  return j.dump(2) + "\n";
}

std::string to_json(const DecayTrace& trace) {
  ordered_json j;
  j["s"] = jnum(trace.s);
  j["times"] = trace.times;
  j["hs_norms"] = trace.hs_norms;
  j["l2_norms"] = trace.l2_norms;
  j["fit_window"] = ordered_json{{"lo", jnum(trace.fit_window.first)},
                                 {"hi", jnum(trace.fit_window.second)}};
  j["fitted_exponent"] = jnum(trace.fitted_exponent);
  return j.dump(2) + "\n";
}

std::string to_json(const ScanResult& result) {
  ordered_json j;
  ordered_json axes = ordered_json::array();
  for (const auto& ax : result.spec.axes) {
    axes.push_back(ordered_json{
        {"param", ax.param}, {"lo", jnum(ax.lo)}, {"hi", jnum(ax.hi)}, {"n", ax.n}});
  }
  j["axes"] = std::move(axes);
  j["base"] = params_json(result.spec.base);
  j["outputs"] = result.spec.outputs;
  ordered_json cells = ordered_json::array();
  for (const auto& cell : result.cells) {
    ordered_json c;
    c["coords"] = cell.coords;
    if (cell.error.empty()) {
      if (wants_output(result.spec, "hyperbolicity_class"))
        c["hyperbolicity_class"] = cell.hyperbolicity_class;
      if (wants_output(result.spec, "theorem1_verdict"))
        c["theorem1_verdict"] = cell.theorem1_verdict;
      if (wants_output(result.spec, "causal")) c["causal"] = cell.causal;
      if (wants_output(result.spec, "b_max")) c["b_max"] = jnum(cell.b_max);
      if (wants_output(result.spec, "delta2")) c["delta2"] = jnum(cell.delta2);
    } else {
      c["error"] = cell.error;
    }
    cells.push_back(std::move(c));
  }
  j["cells"] = std::move(cells);
  return j.dump(2) + "\n";
}

}  // namespace bdnk
