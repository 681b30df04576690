#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dqc/bath.hpp"
#include "dqc/core_model.hpp"
#include "dqc/photonics.hpp"
#include "dqc/signal.hpp"

namespace dqc {

struct JsaConfig {
  int points = 128;
  std::optional<double> half_width = {};  // cm^-1; auto from the pump if unset
  int top_k = 20;
};

struct JobConfig {
  std::optional<double> omega1 = {};  // auto: dominant z_eg when unset
  AxisSpec omega2_axis;
  AxisSpec omega3_axis;
  bool normalize = true;
  PathwayFilter filter = PathwayFilter::both;
  bool signed_gaps = false;
  bool lamb_shift = false;
  double s0 = 1.0;
  JsaConfig jsa;
};

struct OutputConfig {
  std::string directory = "out";
  bool write_real = true;
  bool write_imag = true;
  bool write_magnitude = true;
  bool write_metadata = true;
  bool render = false;
  std::string palette = "viridis";
};

struct RunConfig {
  AggregateSpec aggregate;
  BathSpec bath;
  PhotonSource source;
  JobConfig job;
  OutputConfig output;
};

// Parse and fully validate a configuration file (JSON, // comments
// allowed).  Violations carry the dotted field path; parse errors carry
// the position reported by the JSON parser.
RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config(const std::string& text, const std::string& origin);

// Canonical serialization with every default materialized; two configs
// are equivalent iff their canonical forms match.
std::string canonical_config(const RunConfig& config);

// FNV-1a 64-bit over the canonical form, as a hex string.
std::string config_hash(const RunConfig& config);

struct Diagnostics {
  int n_sites = 0;
  int n_one_exciton = 0;
  int n_two_exciton = 0;
  int overtone_states = 0;
  int combination_states = 0;
  double omega1 = 0;
  std::vector<std::pair<int, double>> strongest_ge_dipoles;  // (e index, |d|)
  double gamma_e_min = 0, gamma_e_max = 0;
  double gamma_f_min = 0, gamma_f_max = 0;
  Eigen::VectorXd jsa_singular_values;  // empty for classical sources
};

struct RunResult {
  SpectrumGrid grid;
  Diagnostics diagnostics;
};

// Full pipeline: diagonalize -> dephasing -> resonances -> spectrum.
// Errors are tagged with the pipeline stage they came from.
RunResult run_job(const RunConfig& config, int threads = 1);

// Diagnostics without evaluating the spectrum grid.
Diagnostics diagnose(const RunConfig& config);

}  // namespace dqc
