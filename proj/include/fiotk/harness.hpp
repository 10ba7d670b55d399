#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fiotk/grid.hpp"
#include <optional>

#include "fiotk/parabolic_frame.hpp"
#include "fiotk/symbol.hpp"
#include "json.hpp"

namespace fiotk {

inline constexpr const char* kToolkitVersion = "0.1.0";

struct BenchSettings {
  GridSpec grid{2, 256, kPi};
  std::vector<int> bands{4, 5, 6, 7, 8};
  double r = 2.0;
  double delta = 0.5;
  double s = 0.0;
  double shift = 0.0;  // added to s on the input side
  std::uint64_t symbol_seed = 20240611;
  bool identity_row = true;
  bool power_check = true;
  double max_slope = 0.2;
  double max_growth = 2.0;
};

struct RunConfig {
  GridSpec grid;
  FrameParams frame;
  double eps = 0.125;
  std::string experiment = "calibrate";
  std::vector<double> p{4.0 / 3.0, 2.0, 4.0};
  std::vector<double> s{0.0};
  double r = 2.0;
  double delta = 0.5;
  double m = 0.0;
  double eps_slack = 0.01;
  std::uint64_t seed = 7;
  std::string csv_path;
  std::string json_path;
  double tol_exact = 1e-12;
  double tol_frame = 1e-10;
  double tol_calderon = 1e-10;
  BenchSettings bench;

  void validate() const;
  nlohmann::json to_json() const;
  static RunConfig from_json(const nlohmann::json& doc);
  std::string hash() const;
};

RunConfig load_config(const std::string& path);

// Shortest decimal text that parses back to the same double.
std::string format_number(double value);

struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct SuiteReport {
  std::vector<CheckResult> checks;
  bool passed() const;
  nlohmann::json to_json() const;
};

nlohmann::json provenance(const RunConfig& config);

SuiteReport run_calibration(const RunConfig& config);
SuiteReport run_verification(const RunConfig& config);

struct BenchOutput {
  std::string csv;
  nlohmann::json summary;
  bool passed = false;
};

BenchOutput run_bench(const RunConfig& config);

struct LoadedSymbol {
  std::optional<DenseSymbol> dense;
  std::optional<SeparableSymbol> separable;
  DenseSymbol as_dense() const;
};

// Reads a JSON symbol descriptor; field paths are resolved against its directory.
LoadedSymbol load_symbol(const std::string& path, const GridSpec& spec);
LoadedSymbol symbol_from_json(const nlohmann::json& doc, const GridSpec& spec,
                              const std::string& base_dir);

}  // namespace fiotk
