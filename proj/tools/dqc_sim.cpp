#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "dqc/config.hpp"
#include "dqc/heatmap.hpp"
#include "dqc/spectrum_io.hpp"
#include "dqc/units.hpp"
#include "dqc/validation.hpp"

namespace {

using dqc::Diagnostics;

void print_diagnostics(const Diagnostics& d) {
  std::printf("aggregate: %d sites\n", d.n_sites);
  std::printf("manifolds: N_e = %d, N_f = %d (%d overtone + %d combination)\n",
              d.n_one_exciton, d.n_two_exciton, d.overtone_states,
              d.combination_states);
  std::printf("fixed Omega_1: %.6f cm^-1\n", d.omega1);
  std::printf("strongest |d_eg| (state: value):");
  for (const auto& [e, v] : d.strongest_ge_dipoles)
    std::printf("  e%02d: %.4f", e, v);
  std::printf("\n");
  std::printf("dephasing gamma_e: [%.4f, %.4f] cm^-1\n", d.gamma_e_min,
              d.gamma_e_max);
  std::printf("dephasing gamma_f: [%.4f, %.4f] cm^-1\n", d.gamma_f_min,
              d.gamma_f_max);
  if (d.jsa_singular_values.size() > 0) {
    std::printf("JSA singular values (top %d):",
                static_cast<int>(d.jsa_singular_values.size()));
    for (int i = 0; i < d.jsa_singular_values.size(); ++i)
      std::printf(" %.4e", d.jsa_singular_values(i));
    std::printf("\n");
  }
}

std::string source_json_of(const dqc::RunConfig& config) {
  // Reuse the canonical form so file headers always match the hash input.
  auto j = nlohmann::json::parse(dqc::canonical_config(config));
  return j["source"].dump();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Double-quantum-coherence spectra of Frenkel exciton "
               "aggregates driven by entangled photon pairs or classical "
               "pulses"};
  app.require_subcommand(1);
  app.fallthrough(true);

  std::string config_path;
  std::string out_dir;
  int threads = 1;
  bool no_normalize = false;
  bool render = false;

  app.add_option("--config", config_path, "configuration file (JSON)")
      ->required();
  app.add_option("--out", out_dir, "output directory (overrides config)");
  app.add_option("--threads", threads, "worker threads for grid evaluation")
      ->check(CLI::PositiveNumber);
  app.add_flag("--no-normalize", no_normalize,
               "keep the raw signal scale instead of unit peak magnitude");
  app.add_flag("--render", render, "also write an SVG heatmap");

  auto* cmd_validate =
      app.add_subcommand("validate", "parse and validate a configuration");
  auto* cmd_diag = app.add_subcommand(
      "diagonalize", "print manifold sizes, dipoles and dephasing ranges");
  auto* cmd_spectrum =
      app.add_subcommand("spectrum", "evaluate and write the 2D spectrum");
  auto* cmd_jsa = app.add_subcommand(
      "jsa", "joint-spectral-amplitude diagnostics for an SPDC source");

  CLI11_PARSE(app, argc, argv);

  try {
    dqc::RunConfig config = dqc::load_config(config_path);
    if (!out_dir.empty()) config.output.directory = out_dir;
    if (no_normalize) config.job.normalize = false;
    if (render) config.output.render = true;

    if (cmd_validate->parsed()) {
      std::printf("OK: %s (%d sites, %s source, config hash %s)\n",
                  config_path.c_str(), config.aggregate.n_sites,
                  dqc::source_kind(config.source).c_str(),
                  dqc::config_hash(config).c_str());
      return 0;
    }

    if (cmd_diag->parsed()) {
      print_diagnostics(dqc::diagnose(config));
      return 0;
    }

    if (cmd_jsa->parsed()) {
      const auto* spdc = std::get_if<dqc::SpdcSource>(&config.source);
      if (!spdc)
        throw dqc::ValidationError("source.type",
                                   "the jsa subcommand needs an spdc source");
      dqc::JsaGrid grid = dqc::default_jsa_grid(*spdc, config.job.jsa.points);
      if (config.job.jsa.half_width)
        grid.half_width = *config.job.jsa.half_width;
      const Eigen::VectorXd s =
          dqc::jsa_singular_values(*spdc, grid, config.job.jsa.top_k);

      std::filesystem::create_directories(config.output.directory);
      const auto sv_path =
          std::filesystem::path(config.output.directory) / "jsa_singular_values.dat";
      std::ofstream sv(sv_path);
      sv << "# normalized JSA singular values (descending, sum of squares 1)\n";
      for (int i = 0; i < s.size(); ++i) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g\n", s(i));
        sv << buf;
      }

      const auto grid_path =
          std::filesystem::path(config.output.directory) / "jsa_magnitude.dat";
      std::ofstream gm(grid_path);
      gm << "# |f(w_a, w_b)| on the discretization grid; rows: w_a "
            "ascending, columns: w_b ascending\n";
      gm << "# w_a_cm1: min " << grid.center_a - grid.half_width << " max "
         << grid.center_a + grid.half_width << " count " << grid.points << "\n";
      gm << "# w_b_cm1: min " << grid.center_b - grid.half_width << " max "
         << grid.center_b + grid.half_width << " count " << grid.points << "\n";
      const double step = 2.0 * grid.half_width / (grid.points - 1);
      for (int i = 0; i < grid.points; ++i) {
        for (int j = 0; j < grid.points; ++j) {
          const double wa = grid.center_a - grid.half_width + i * step;
          const double wb = grid.center_b - grid.half_width + j * step;
          char buf[64];
          std::snprintf(buf, sizeof(buf), "%s%.17g", j ? " " : "",
                        std::abs(dqc::jsa(wa, wb, *spdc)));
          gm << buf;
        }
        gm << '\n';
      }
      std::printf("wrote %s and %s\n", sv_path.c_str(), grid_path.c_str());
      std::printf("singular values above 1e-2: %d of %d\n",
                  static_cast<int>((s.array() > 1e-2).count()),
                  static_cast<int>(s.size()));
      return 0;
    }

    if (cmd_spectrum->parsed()) {
      dqc::RunResult result = dqc::run_job(config, threads);
      print_diagnostics(result.diagnostics);

      dqc::WriteOptions wopt;
      wopt.write_real = config.output.write_real;
      wopt.write_imag = config.output.write_imag;
      wopt.write_magnitude = config.output.write_magnitude;
      wopt.write_metadata = config.output.write_metadata;
      wopt.config_hash = dqc::config_hash(config);
      wopt.source_json = source_json_of(config);
      const auto files =
          dqc::write_spectrum(result.grid, config.output.directory, wopt);
      for (const auto& f : files) std::printf("wrote %s\n", f.c_str());

      if (config.output.render) {
        const auto svg = std::filesystem::path(config.output.directory) /
                         "spectrum_heatmap.svg";
        dqc::render_heatmap(result.grid, svg, config.output.palette);
        std::printf("wrote %s\n", svg.c_str());
      }
      return 0;
    }
  } catch (const dqc::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
