#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>

#include "dqc/bath.hpp"
#include "dqc/core_model.hpp"
#include "dqc/photonics.hpp"

namespace dqc {

enum class PathwayFilter { both, pathway1, pathway2 };

std::string to_string(PathwayFilter filter);
PathwayFilter pathway_filter_from_string(const std::string& name,
                                         const std::string& field);

struct AxisSpec {
  double min = 0;
  double max = 0;
  int count = 0;

  void validate(const std::string& field) const;
  double step() const { return (max - min) / (count - 1); }
  double value(int i) const { return min + i * step(); }
  Eigen::VectorXd values() const;
};

struct SpectrumJob {
  double omega1 = 0;  // fixed Omega_1, cm^-1
  AxisSpec omega2_axis;
  AxisSpec omega3_axis;
  PhotonSource source;
  ExcitonBasis basis;
  ResonanceTable resonances;
  bool normalize = true;
  PathwayFilter filter = PathwayFilter::both;
  // Evaluate the correlator at the signed gaps exactly as written in the
  // sum-over-states expression instead of the positive transition
  // frequencies.  Off by default; see README.
  bool signed_gaps = false;
  double s0 = 1.0;

  // Axes only matter for grid evaluation; point evaluations skip them.
  void validate(bool require_axes = true) const;
};

struct GridMeta {
  double omega1 = 0;
  double s0 = 1.0;
  bool normalized = true;
  PathwayFilter filter = PathwayFilter::both;
  bool signed_gaps = false;
  std::string source_kind;
};

struct SpectrumGrid {
  AxisSpec omega2_axis;
  AxisSpec omega3_axis;
  Eigen::MatrixXcd values;    // count2 x count3
  Eigen::MatrixXd magnitude;  // |values|, max forced to 1 when normalized
  GridMeta meta;
};

// w1 = d_e'f d_e'g d_fe d_eg and w2 = d_ge' d_e'f d_fe d_eg; equal for
// real dipoles.
std::pair<double, double> pathway_weights(int f, int e_prime, int e,
                                          const ExcitonBasis& basis);

// (O3 - zc)(O2 - zb)(O1 - za); throws std::domain_error unless every
// Im(z) > 0, which keeps the product away from zero for real inputs.
std::complex<double> resonance_denominator(double o3, double o2, double o1,
                                           std::complex<double> zc,
                                           std::complex<double> zb,
                                           std::complex<double> za);

// Sum-over-states double-quantum-coherence signal at one grid point.
// Rebuilds the pathway table on every call; use spectrum_2d for grids.
std::complex<double> signal_point(double o3, double o2, double o1,
                                  const SpectrumJob& job);

// Dense evaluation over the Cartesian grid.  Grid points are
// independent; results are bitwise identical for any thread count.
SpectrumGrid spectrum_2d(const SpectrumJob& job, int threads = 1);

// Dominant one-exciton resonance: Re z_eg at the argmax of |d_eg|^2.
double default_omega1(const ExcitonBasis& basis,
                      const ResonanceTable& resonances);

}  // namespace dqc
