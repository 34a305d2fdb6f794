#pragma once

// Composite stability report and the serialization boundary: JSON trees with
// stable field names, and the documented CSV schemas for scans, dispersion
// branches, and decay traces.

#include <string>

#include "bdnk/catalog.hpp"
#include "bdnk/causality.hpp"
#include "bdnk/dispersion.hpp"
#include "bdnk/dissipativity.hpp"
#include "bdnk/model.hpp"

namespace bdnk {

struct StabilityReport {
  ModelParameters params;           // as given
  ModelParameters params_unit_cs;   // after rescaling to cs = 1
  DissipativityReport dissipativity;  // embeds the hyperbolicity report
  CausalityReport causality;
  bool certified = false;  // theorem verdict is one of the two stable branches

  StabilityReport(const ModelParameters& raw, const ModelParameters& rescaled)
      : params(raw), params_unit_cs(rescaled) {}
};

[[nodiscard]] StabilityReport full_stability_report(const ModelParameters& p, double tol = 1e-9);

// JSON (one top-level object per module report, stable field names).
[[nodiscard]] std::string to_json(const StabilityReport& r);
// Flat CSV view of the same report: section,name,value rows.
[[nodiscard]] std::string to_csv(const StabilityReport& r);

// CSV schemas (documented columns):
//   branches: xi,re_lambda,im_lambda,branch_id,block
//   decay:    t,hs_norm,l2_norm
//   scan:     axis columns, then the requested outputs, then error
[[nodiscard]] std::string branches_to_csv(const BranchScan& scan);
[[nodiscard]] std::string decay_to_csv(const DecayTrace& trace);
[[nodiscard]] std::string scan_to_csv(const ScanResult& result);

[[nodiscard]] std::string to_json(const BranchScan& scan);
[[nodiscard]] std::string to_json(const DecayTrace& trace);
[[nodiscard]] std::string to_json(const ScanResult& result);

// Shared numeric formatting: CSV uses 12 significant digits.
[[nodiscard]] std::string csv_double(double v);

}  // namespace bdnk
