#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "discflow/batchelor_wood.hpp"
#include "discflow/error_solver.hpp"
#include "discflow/errors.hpp"
#include "discflow/prandtl.hpp"

namespace discflow {

using Json = nlohmann::ordered_json;

enum class RunMode { ConstructOnly, FullSolve, Sweep, RescaleLambda };

const char* to_string(RunMode m);
RunMode parse_mode(const std::string& s);

struct RunConfig {
  Params params;
  RunMode mode = RunMode::ConstructOnly;
  int n_modes = 16;
  int n_radial = 400;
  double r_max = 64.0;
  int n_s = 400;
  LayerConfig layer;
  PicardConfig picard;
  std::string out_dir;
  std::vector<std::string> gates;  // empty: every gate applicable to the mode
  bool write_fields = true;
  bool report_timing = false;
  // Sweep settings.
  std::string sweep_axis = "epsilon";
  std::vector<double> sweep_values;
  RunMode member_mode = RunMode::ConstructOnly;

  void validate() const;
};

// Throws Error(Config) naming the offending key.
RunConfig config_from_json(const Json& j);
// Parses text; syntax errors are reported with their line and column.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
Json config_to_json(const RunConfig& c);

struct Gate {
  std::string name;
  double measured = 0.0;
  double lo = 0.0;  // pass iff lo <= measured <= hi
  double hi = 0.0;
  bool pass = false;
};

struct RunReport {
  Json json;
  std::vector<Gate> gates;
  // Set when a stage failed; the report then holds the partial results.
  std::optional<ErrorKind> failure;
  std::string failure_message;
  bool passed() const;
};

// Names accepted by RunConfig::gates.
const std::vector<std::string>& gate_names();

RunReport run(const RunConfig& cfg);
RunReport sweep(const RunConfig& cfg, const std::string& axis, const std::vector<double>& values);

// Deterministic JSON text: keys in insertion order, floats with 17
// significant digits, two-space indentation.
std::string to_json_text(const Json& j);

}  // namespace discflow
