#include "dqc/photonics.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <numbers>

#include "dqc/units.hpp"
#include "dqc/validation.hpp"

namespace dqc {

namespace {

constexpr double kTwoLn2 = 2.0 * std::numbers::ln2;

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

std::complex<double> phase_matching_term(double phi) {
  return sinc(phi) * std::exp(std::complex<double>(0.0, phi));
}

}  // namespace

double SpdcSource::entanglement_time() const { return std::abs(t2 - t1); }

double SpdcSource::gamma_p0() const {
  return kTwoLn2 / (pump_width * pump_width);
}

void SpdcSource::validate(const std::string& p) const {
  require(pump_width > 0.0, p + ".pump_width_fs", "must be > 0");
  require(std::isfinite(t1) && std::isfinite(t2), p + ".t1_fs", "must be finite");
}

void ClassicalPulseSet::validate(const std::string& p) const {
  for (std::size_t j = 0; j < pulses.size(); ++j) {
    require(pulses[j].tau0 > 0.0,
            p + ".pulses[" + std::to_string(j) + "].tau0_fs", "must be > 0");
  }
}

void validate_source(const PhotonSource& source, const std::string& p) {
  std::visit([&](const auto& s) { s.validate(p); }, source);
}

std::string source_kind(const PhotonSource& source) {
  return std::holds_alternative<SpdcSource>(source) ? "spdc" : "classical";
}

std::complex<double> pump_envelope(double wa, double wb,
                                   const SpdcSource& src) {
  const double g = src.gamma_p0();
  const double det = units::rad_per_fs(src.pump_center - (wa + wb));
  return src.e0 * std::sqrt(std::numbers::pi / g) *
         std::exp(-det * det / (4.0 * g));
}

std::complex<double> jsa(double wa, double wb, const SpdcSource& src) {
  const std::complex<double> ap = pump_envelope(wa, wb, src);
  const double half_pump = 0.5 * units::rad_per_fs(src.pump_center);
  const double xa = units::rad_per_fs(wa) - half_pump;
  const double xb = units::rad_per_fs(wb) - half_pump;
  const double phi_ab = xa * src.t1 + xb * src.t2;
  const double phi_ba = xb * src.t1 + xa * src.t2;
  return src.alpha * ap * (phase_matching_term(phi_ab) + phase_matching_term(phi_ba));
}

std::complex<double> four_point_entangled(double w4, double w3, double w2,
                                          double w1, const SpdcSource& src) {
  return std::conj(jsa(w4, w3, src)) * jsa(w2, w1, src);
}

PulseDerived pulse_derived(const Pulse& pulse) {
  PulseDerived d;
  d.gamma0 = kTwoLn2 / (pulse.tau0 * pulse.tau0);
  d.t0 = pulse.tau0 / std::sqrt(kTwoLn2);
  const double two_phi = 2.0 * pulse.chirp;
  const double t0sq = d.t0 * d.t0;
  d.tp = d.t0 * std::sqrt(1.0 + (two_phi / t0sq) * (two_phi / t0sq));
  d.alpha_chirp = two_phi / (t0sq * t0sq + two_phi * two_phi);
  d.inv_gamma = {1.0 / d.gamma0, -two_phi};
  d.gamma = 1.0 / d.inv_gamma;
  return d;
}

std::complex<double> pulse_amplitude(double w, const Pulse& pulse) {
  const PulseDerived d = pulse_derived(pulse);
  const double x = units::rad_per_fs(w - pulse.center);
  return pulse.e0 * std::sqrt(std::numbers::pi / d.gamma0) *
         std::exp(-(x * x / 4.0) * d.inv_gamma);
}

std::complex<double> four_point_classical(double w4, double w3, double w2,
                                          double w1,
                                          const ClassicalPulseSet& set) {
  return std::conj(pulse_amplitude(w4, set.pulses[3])) *
         std::conj(pulse_amplitude(w3, set.pulses[2])) *
         pulse_amplitude(w2, set.pulses[1]) *
         pulse_amplitude(w1, set.pulses[0]);
}

std::complex<double> four_point(const PhotonSource& source, double w4,
                                double w3, double w2, double w1) {
  if (const auto* spdc = std::get_if<SpdcSource>(&source))
    return four_point_entangled(w4, w3, w2, w1, *spdc);
  return four_point_classical(w4, w3, w2, w1,
                              std::get<ClassicalPulseSet>(source));
}

JsaGrid default_jsa_grid(const SpdcSource& src, int points,
                         double bandwidths) {
  JsaGrid grid;
  grid.center_a = src.center1;
  grid.center_b = src.center2;
  const double bw_rad = 2.0 * std::sqrt(src.gamma_p0());
  grid.half_width = bandwidths * units::cm1_from_rad_per_fs(bw_rad);
  grid.points = points;
  return grid;
}

Eigen::VectorXd normalized_singular_values(const Eigen::MatrixXcd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  Eigen::VectorXd s = svd.singularValues();
  const double norm = s.norm();
  if (norm > 0.0) s /= norm;
  return s;
}

Eigen::VectorXd jsa_singular_values(const SpdcSource& src, const JsaGrid& grid,
                                    int top_k) {
  require(grid.points >= 32, "jsa.points",
          "grid too coarse: need at least 32 points per axis, got " +
              std::to_string(grid.points));
  require(grid.half_width > 0.0, "jsa.half_width_cm1", "must be > 0");
  require(top_k >= 1, "jsa.top_k", "must be >= 1");

  const int n = grid.points;
  const double step_a = 2.0 * grid.half_width / (n - 1);
  Eigen::VectorXd trap(n);
  trap.setConstant(step_a);
  trap(0) = trap(n - 1) = 0.5 * step_a;

  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i) {
    const double wa = grid.center_a - grid.half_width + i * step_a;
    const double wi = std::sqrt(trap(i));
    for (int j = 0; j < n; ++j) {
      const double wb = grid.center_b - grid.half_width + j * step_a;
      m(i, j) = jsa(wa, wb, src) * (wi * std::sqrt(trap(j)));
    }
  }
  Eigen::VectorXd s = normalized_singular_values(m);
  const int k = std::min<int>(top_k, static_cast<int>(s.size()));
  return s.head(k);
}

}  // namespace dqc
