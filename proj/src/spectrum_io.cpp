#include "dqc/spectrum_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "dqc/validation.hpp"

namespace dqc {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_matrix_file(const std::filesystem::path& path,
                       const std::string& component, const SpectrumGrid& grid,
                       const WriteOptions& opt,
                       const std::function<double(int, int)>& value) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  const auto& a2 = grid.omega2_axis;
  const auto& a3 = grid.omega3_axis;
  out << "# dqc-sim spectrum component: " << component << "\n";
  out << "# units: cm^-1\n";
  out << "# omega1_cm1: " << fmt17(grid.meta.omega1) << "\n";
  out << "# omega2_cm1: min " << fmt17(a2.min) << " max " << fmt17(a2.max)
      << " count " << a2.count << "\n";
  out << "# omega3_cm1: min " << fmt17(a3.min) << " max " << fmt17(a3.max)
      << " count " << a3.count << "\n";
  out << "# rows: omega2 ascending; columns: omega3 ascending\n";
  out << "# s0: " << fmt17(grid.meta.s0)
      << " normalized: " << (grid.meta.normalized ? "true" : "false")
      << " pathway_filter: " << to_string(grid.meta.filter)
      << " signed_gap_frequencies: "
      << (grid.meta.signed_gaps ? "true" : "false") << "\n";
  out << "# source: "
      << (opt.source_json.empty() ? grid.meta.source_kind : opt.source_json)
      << "\n";
  if (!opt.config_hash.empty())
    out << "# config_hash: " << opt.config_hash << "\n";
  for (int i = 0; i < a2.count; ++i) {
    for (int j = 0; j < a3.count; ++j) {
      if (j) out << ' ';
      out << fmt17(value(i, j));
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

Eigen::MatrixXd read_matrix_file(const std::filesystem::path& path, int rows,
                                 int cols) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  Eigen::MatrixXd m(rows, cols);
  std::string line;
  int i = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (i >= rows)
      throw std::runtime_error("unexpected extra data row in " + path.string());
    const char* p = line.c_str();
    char* end = nullptr;
    for (int j = 0; j < cols; ++j) {
      const double v = std::strtod(p, &end);
      if (end == p)
        throw std::runtime_error("malformed data row in " + path.string());
      m(i, j) = v;
      p = end;
    }
    ++i;
  }
  if (i != rows)
    throw std::runtime_error("expected " + std::to_string(rows) +
                             " data rows in " + path.string() + ", got " +
                             std::to_string(i));
  return m;
}

}  // namespace

std::vector<std::filesystem::path> write_spectrum(
    const SpectrumGrid& grid, const std::filesystem::path& directory,
    const WriteOptions& opt) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec)
    throw std::runtime_error("cannot create output directory " +
                             directory.string() + ": " + ec.message());

  std::vector<std::filesystem::path> written;
  if (opt.write_real) {
    auto p = directory / "spectrum_real.dat";
    write_matrix_file(p, "real", grid, opt,
                      [&](int i, int j) { return grid.values(i, j).real(); });
    written.push_back(p);
  }
  if (opt.write_imag) {
    auto p = directory / "spectrum_imag.dat";
    write_matrix_file(p, "imag", grid, opt,
                      [&](int i, int j) { return grid.values(i, j).imag(); });
    written.push_back(p);
  }
  if (opt.write_magnitude) {
    auto p = directory / "spectrum_magnitude.dat";
    write_matrix_file(p, "magnitude", grid, opt,
                      [&](int i, int j) { return grid.magnitude(i, j); });
    written.push_back(p);
  }
  if (opt.write_metadata) {
    json meta;
    meta["format_version"] = 1;
    meta["units"] = "cm^-1";
    meta["omega1_cm1"] = grid.meta.omega1;
    meta["omega2_axis_cm1"] = {{"min", grid.omega2_axis.min},
                               {"max", grid.omega2_axis.max},
                               {"count", grid.omega2_axis.count}};
    meta["omega3_axis_cm1"] = {{"min", grid.omega3_axis.min},
                               {"max", grid.omega3_axis.max},
                               {"count", grid.omega3_axis.count}};
    meta["s0"] = grid.meta.s0;
    meta["normalized"] = grid.meta.normalized;
    meta["pathway_filter"] = to_string(grid.meta.filter);
    meta["signed_gap_frequencies"] = grid.meta.signed_gaps;
    meta["source_kind"] = grid.meta.source_kind;
    if (!opt.source_json.empty())
      meta["source"] = json::parse(opt.source_json);
    if (!opt.config_hash.empty()) meta["config_hash"] = opt.config_hash;
    json files = json::array();
    for (const auto& p : written) files.push_back(p.filename().string());
    meta["files"] = files;

    auto p = directory / "metadata.json";
    std::ofstream out(p);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << meta.dump(2) << '\n';
    written.push_back(p);
  }
  return written;
}

SpectrumGrid read_spectrum(const std::filesystem::path& directory) {
  const auto meta_path = directory / "metadata.json";
  std::ifstream in(meta_path);
  if (!in) throw std::runtime_error("cannot open " + meta_path.string());
  json meta = json::parse(in);

  SpectrumGrid grid;
  grid.omega2_axis = {meta["omega2_axis_cm1"]["min"].get<double>(),
                      meta["omega2_axis_cm1"]["max"].get<double>(),
                      meta["omega2_axis_cm1"]["count"].get<int>()};
  grid.omega3_axis = {meta["omega3_axis_cm1"]["min"].get<double>(),
                      meta["omega3_axis_cm1"]["max"].get<double>(),
                      meta["omega3_axis_cm1"]["count"].get<int>()};
  grid.meta.omega1 = meta["omega1_cm1"].get<double>();
  grid.meta.s0 = meta["s0"].get<double>();
  grid.meta.normalized = meta["normalized"].get<bool>();
  grid.meta.filter =
      pathway_filter_from_string(meta["pathway_filter"].get<std::string>(),
                                 "metadata.pathway_filter");
  grid.meta.signed_gaps = meta["signed_gap_frequencies"].get<bool>();
  grid.meta.source_kind = meta["source_kind"].get<std::string>();

  const int rows = grid.omega2_axis.count;
  const int cols = grid.omega3_axis.count;
  const Eigen::MatrixXd re =
      read_matrix_file(directory / "spectrum_real.dat", rows, cols);
  const Eigen::MatrixXd im =
      read_matrix_file(directory / "spectrum_imag.dat", rows, cols);
  grid.values.resize(rows, cols);
  grid.values.real() = re;
  grid.values.imag() = im;
  if (std::filesystem::exists(directory / "spectrum_magnitude.dat")) {
    grid.magnitude =
        read_matrix_file(directory / "spectrum_magnitude.dat", rows, cols);
  } else {
    grid.magnitude = grid.values.cwiseAbs();
  }
  return grid;
}

}  // namespace dqc
