#include "dqc/heatmap.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <vector>

#include "dqc/validation.hpp"

namespace dqc {

namespace {

struct Rgb {
  double r, g, b;
};

// Anchor points of the viridis colormap, t = 0..1.
constexpr std::array<Rgb, 9> kViridis = {{{0.267, 0.005, 0.329},
                                          {0.283, 0.141, 0.458},
                                          {0.254, 0.265, 0.530},
                                          {0.207, 0.372, 0.553},
                                          {0.164, 0.471, 0.558},
                                          {0.128, 0.567, 0.551},
                                          {0.135, 0.659, 0.518},
                                          {0.267, 0.749, 0.441},
                                          {0.993, 0.906, 0.144}}};

Rgb sample_palette(double t, const std::string& palette) {
  t = std::clamp(t, 0.0, 1.0);
  if (palette == "grayscale") return {t, t, t};
  const double x = t * (kViridis.size() - 1);
  const int i = std::min<int>(static_cast<int>(x), kViridis.size() - 2);
  const double u = x - i;
  const Rgb& a = kViridis[i];
  const Rgb& b = kViridis[i + 1];
  return {a.r + u * (b.r - a.r), a.g + u * (b.g - a.g), a.b + u * (b.b - a.b)};
}

std::string hex_color(const Rgb& c) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x",
                static_cast<int>(std::lround(c.r * 255.0)),
                static_cast<int>(std::lround(c.g * 255.0)),
                static_cast<int>(std::lround(c.b * 255.0)));
  return buf;
}

std::vector<double> nice_ticks(double lo, double hi, int target) {
  const double span = hi - lo;
  const double raw = span / std::max(1, target);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double f : {1.0, 2.0, 2.5, 5.0, 10.0}) {
    if (f * mag >= raw) {
      step = f * mag;
      break;
    }
  }
  std::vector<double> ticks;
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * span;
       t += step)
    ticks.push_back(t);
  return ticks;
}

std::string fmt_tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

}  // namespace

void render_heatmap(const SpectrumGrid& grid,
                    const std::filesystem::path& path,
                    const std::string& palette) {
  require(grid.values.size() > 0, "grid", "cannot render an empty grid");
  require(palette == "viridis" || palette == "grayscale", "palette",
          "expected viridis or grayscale");

  const int n2 = static_cast<int>(grid.magnitude.rows());
  const int n3 = static_cast<int>(grid.magnitude.cols());
  const double peak = grid.magnitude.maxCoeff();

  const double plot_w = 640.0, plot_h = 640.0;
  const double mleft = 86.0, mbottom = 64.0, mtop = 46.0, mright = 28.0;
  const double width = mleft + plot_w + mright;
  const double height = mtop + plot_h + mbottom;
  const double cell_w = plot_w / n3;
  const double cell_h = plot_h / n2;

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n";
  out << "<rect width=\"" << width << "\" height=\"" << height
      << "\" fill=\"white\"/>\n";

  char buf[256];
  // Omega_2 rows drawn bottom-up so frequency increases upward.
  for (int i = 0; i < n2; ++i) {
    for (int j = 0; j < n3; ++j) {
      const double t = peak > 0.0 ? grid.magnitude(i, j) / peak : 0.0;
      const double x = mleft + j * cell_w;
      const double y = mtop + plot_h - (i + 1) * cell_h;
      std::snprintf(buf, sizeof(buf),
                    "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.3f\" "
                    "height=\"%.3f\" fill=\"%s\"/>\n",
                    x, y, cell_w + 0.05, cell_h + 0.05,
                    hex_color(sample_palette(t, palette)).c_str());
      out << buf;
    }
  }

  out << "<rect x=\"" << mleft << "\" y=\"" << mtop << "\" width=\"" << plot_w
      << "\" height=\"" << plot_h
      << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

  // Ticks in units of 10^3 cm^-1.
  const double k = 1e-3;
  const auto& a2 = grid.omega2_axis;
  const auto& a3 = grid.omega3_axis;
  for (double t : nice_ticks(a3.min * k, a3.max * k, 6)) {
    const double frac = (t / k - a3.min) / (a3.max - a3.min);
    if (frac < -1e-9 || frac > 1.0 + 1e-9) continue;
    const double x = mleft + frac * plot_w;
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
                  "stroke=\"black\"/>\n",
                  x, mtop + plot_h, x, mtop + plot_h + 6.0);
    out << buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.2f\" y=\"%.2f\" font-size=\"14\" "
                  "text-anchor=\"middle\" font-family=\"sans-serif\">%s</text>\n",
                  x, mtop + plot_h + 24.0, fmt_tick(t).c_str());
    out << buf;
  }
  for (double t : nice_ticks(a2.min * k, a2.max * k, 6)) {
    const double frac = (t / k - a2.min) / (a2.max - a2.min);
    if (frac < -1e-9 || frac > 1.0 + 1e-9) continue;
    const double y = mtop + plot_h - frac * plot_h;
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
                  "stroke=\"black\"/>\n",
                  mleft - 6.0, y, mleft, y);
    out << buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.2f\" y=\"%.2f\" font-size=\"14\" "
                  "text-anchor=\"end\" font-family=\"sans-serif\">%s</text>\n",
                  mleft - 10.0, y + 5.0, fmt_tick(t).c_str());
    out << buf;
  }

  std::snprintf(buf, sizeof(buf),
                "<text x=\"%.2f\" y=\"%.2f\" font-size=\"16\" "
                "text-anchor=\"middle\" font-family=\"sans-serif\">&#937;&#8323; "
                "(10&#179; cm&#8315;&#185;)</text>\n",
                mleft + plot_w / 2.0, height - 18.0);
  out << buf;
  std::snprintf(buf, sizeof(buf),
                "<text x=\"%.2f\" y=\"%.2f\" font-size=\"16\" "
                "text-anchor=\"middle\" font-family=\"sans-serif\" "
                "transform=\"rotate(-90 %.2f %.2f)\">&#937;&#8322; (10&#179; "
                "cm&#8315;&#185;)</text>\n",
                24.0, mtop + plot_h / 2.0, 24.0, mtop + plot_h / 2.0);
  out << buf;
  std::snprintf(buf, sizeof(buf),
                "<text x=\"%.2f\" y=\"%.2f\" font-size=\"16\" "
                "font-family=\"sans-serif\">|S|, linear scale 0..%.6g, "
                "&#937;&#8321; = %.5g &#215; 10&#179; cm&#8315;&#185;</text>\n",
                mleft, 28.0, peak, grid.meta.omega1 * k);
  out << buf;

  out << "</svg>\n";
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace dqc
