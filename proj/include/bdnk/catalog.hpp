#pragma once

// Preset parameter sets for the covered model families, and deterministic
// parameter-space scanning over a 1- or 2-axis grid.

#include <optional>
#include <string>
#include <vector>

#include "bdnk/model.hpp"

namespace bdnk {

enum class PresetFamily { FT_symmetric, BDN19, BDN18_fully_symmetric, Custom };
[[nodiscard]] const char* to_string(PresetFamily f);

struct Preset {
  std::string name;
  PresetFamily family = PresetFamily::Custom;
  ModelParameters params;
  std::string provenance_note;
};

[[nodiscard]] const std::vector<Preset>& preset_catalog();

// Throws ConfigError listing the available names when the name is unknown.
[[nodiscard]] Preset load_preset(const std::string& name);

struct ScanAxis {
  std::string param;  // one of the eight parameter keys
  double lo = 0.0, hi = 0.0;
  int n = 2;
};

struct ScanSpec {
  std::vector<ScanAxis> axes;  // 1 or 2
  ModelParameters base;        // values of the non-scanned parameters
  // Requested per-cell outputs; empty means all of:
  // hyperbolicity_class, theorem1_verdict, causal, b_max, delta2.
  std::vector<std::string> outputs;
};

struct ScanCell {
  std::vector<double> coords;  // one value per axis
  std::string hyperbolicity_class;
  std::string theorem1_verdict;
  bool causal = false;
  double b_max = 0.0;
  double delta2 = 0.0;
  std::string error;  // nonempty when this cell failed; other fields default
};

struct ScanResult {
  ScanSpec spec;
  std::vector<ScanCell> cells;  // row-major over the axes, ascending
};

// Evaluates every grid cell; cells are independent and run on a worker pool
// (size from the BDNKCERT_WORKERS environment variable, default all cores),
// but the result order is the deterministic grid order and per-cell errors
// are recorded in the cell, never thrown.
[[nodiscard]] ScanResult run_scan(const ScanSpec& spec);

// Scan description as a flat key = value file: the eight parameter keys give
// the base point, `scan = <param> <lo> <hi> <n>` lines (one or two) give the
// axes, and an optional `outputs = a,b,...` line restricts the outputs.
// Scanned parameters may omit their base value (the axis low end is used).
[[nodiscard]] ScanSpec parse_scan_spec(const std::string& text);
[[nodiscard]] ScanSpec load_scan_spec_file(const std::string& path);

[[nodiscard]] int scan_worker_count();

}  // namespace bdnk
