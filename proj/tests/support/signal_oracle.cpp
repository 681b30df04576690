#include "support/signal_oracle.hpp"

#include <cmath>
#include <numbers>

namespace dqc::testing {

namespace {

using cd = std::complex<double>;

// Locally restated constants and field profiles.
constexpr double kAngular = 2.0 * std::numbers::pi * 2.99792458e-5;
constexpr double kTwoLn2 = 2.0 * std::numbers::ln2;

cd oracle_jsa(double wa, double wb, const SpdcSource& s) {
  const double g = kTwoLn2 / (s.pump_width * s.pump_width);
  const double det = kAngular * (s.pump_center - (wa + wb));
  const cd pump = s.e0 * std::sqrt(std::numbers::pi / g) *
                  std::exp(-det * det / (4.0 * g));
  const double xa = kAngular * wa - 0.5 * kAngular * s.pump_center;
  const double xb = kAngular * wb - 0.5 * kAngular * s.pump_center;
  auto term = [](double phi) {
    const double sinc = phi == 0.0 ? 1.0 : std::sin(phi) / phi;
    return sinc * std::exp(cd(0.0, phi));
  };
  return s.alpha * pump *
         (term(xa * s.t1 + xb * s.t2) + term(xb * s.t1 + xa * s.t2));
}

cd oracle_pulse(double w, const Pulse& p) {
  const double g0 = kTwoLn2 / (p.tau0 * p.tau0);
  const cd inv_gamma(1.0 / g0, -2.0 * p.chirp);
  const double x = kAngular * (w - p.center);
  return p.e0 * std::sqrt(std::numbers::pi / g0) *
         std::exp(-(x * x / 4.0) * inv_gamma);
}

cd oracle_four_point(const PhotonSource& src, double w4, double w3, double w2,
                     double w1) {
  if (const auto* s = std::get_if<SpdcSource>(&src))
    return std::conj(oracle_jsa(w4, w3, *s)) * oracle_jsa(w2, w1, *s);
  const auto& set = std::get<ClassicalPulseSet>(src);
  return std::conj(oracle_pulse(w4, set.pulses[3])) *
         std::conj(oracle_pulse(w3, set.pulses[2])) *
         oracle_pulse(w2, set.pulses[1]) * oracle_pulse(w1, set.pulses[0]);
}

}  // namespace

std::complex<double> signal_point_oracle(double o3, double o2, double o1,
                                         const SpectrumJob& job) {
  const ExcitonBasis& basis = job.basis;
  const ResonanceTable& res = job.resonances;
  cd sum1 = 0.0, sum2 = 0.0;
  for (int f = 0; f < basis.n_two_exciton(); ++f) {
    const double ef = basis.two_exciton_energies(f);
    for (int ep = 0; ep < basis.n_one_exciton(); ++ep) {
      const double eep = basis.one_exciton_energies(ep);
      for (int e = 0; e < basis.n_one_exciton(); ++e) {
        const double ee = basis.one_exciton_energies(e);
        const double w1 = basis.dip_ef(f, ep) * basis.dip_ge(ep) *
                          basis.dip_ef(f, e) * basis.dip_ge(e);
        const double w2 = basis.dip_ge(ep) * basis.dip_ef(f, ep) *
                          basis.dip_ef(f, e) * basis.dip_ge(e);

        double p1_s4, p1_s3, p2_s4, p2_s3;
        if (job.signed_gaps) {
          p1_s4 = eep - ef;
          p1_s3 = eep;
          p2_s4 = -eep;
          p2_s3 = eep - ef;
        } else {
          p1_s4 = ef - eep;
          p1_s3 = eep;
          p2_s4 = eep;
          p2_s3 = ef - eep;
        }

        const cd corr1 = oracle_four_point(job.source, p1_s4, p1_s3, ef - ee, ee);
        const cd corr2 = oracle_four_point(job.source, p2_s4, p2_s3, ef - ee, ee);

        const cd den1 = (o3 - res.z_eg(ep)) * (o2 - res.z_fg(f)) *
                        (o1 - res.z_eg(e));
        const cd den2 = (o3 - res.z_fe(f, ep)) * (o2 - res.z_fg(f)) *
                        (o1 - res.z_eg(e));
        sum1 += w1 * corr1 / den1;
        sum2 += w2 * corr2 / den2;
      }
    }
  }
  cd out = 0.0;
  if (job.filter != PathwayFilter::pathway2) out += job.s0 * sum1;
  if (job.filter != PathwayFilter::pathway1) out -= job.s0 * sum2;
  return out;
}

}  // namespace dqc::testing
