#pragma once

#include <filesystem>
#include <string>

#include "dqc/signal.hpp"

namespace dqc {

// Self-contained SVG heatmap of the magnitude map: linear color scale
// from 0 to the grid maximum, axis ticks in units of 10^3 cm^-1.
// Palettes: "viridis" (default) or "grayscale".
void render_heatmap(const SpectrumGrid& grid,
                    const std::filesystem::path& path,
                    const std::string& palette = "viridis");

}  // namespace dqc
