#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "dqc/signal.hpp"

namespace dqc {

struct WriteOptions {
  bool write_real = true;
  bool write_imag = true;
  bool write_magnitude = true;
  bool write_metadata = true;
  std::string config_hash;
  std::string source_json;  // compact source-parameter record for the headers
};

// Delimited-text matrices (rows = Omega_2 ascending, columns = Omega_3
// ascending) with a comment header, plus metadata.json.  Values are
// printed with 17 significant digits so a read-back reproduces the grid
// bit-exactly.
std::vector<std::filesystem::path> write_spectrum(
    const SpectrumGrid& grid, const std::filesystem::path& directory,
    const WriteOptions& options = {});

// Reconstructs a grid written by write_spectrum; requires metadata.json
// plus the real and imaginary component files.
SpectrumGrid read_spectrum(const std::filesystem::path& directory);

}  // namespace dqc
