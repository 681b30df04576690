#pragma once

#include <random>
#include <string>

#include "dqc/bath.hpp"
#include "dqc/core_model.hpp"
#include "dqc/photonics.hpp"
#include "dqc/signal.hpp"

namespace dqc::testing {

inline std::string config_dir() {
#ifdef DQC_CONFIG_DIR
  return DQC_CONFIG_DIR;
#else
  return "configs";
#endif
}

inline AggregateSpec make_dimer(double e1 = 15000.0, double e2 = 15300.0,
                                double j = 100.0, double u1 = -150.0,
                                double u2 = -50.0, double mu1 = 1.0,
                                double mu2 = 0.8, double kappa = 1.0) {
  AggregateSpec spec;
  spec.n_sites = 2;
  spec.site_energies = Eigen::Vector2d(e1, e2);
  spec.couplings = Eigen::Matrix2d{{0.0, j}, {j, 0.0}};
  spec.overtone_nonlinearity = Eigen::Vector2d(u1, u1);
  spec.combination_nonlinearity = Eigen::Matrix2d{{0.0, u2}, {u2, 0.0}};
  spec.site_dipoles = Eigen::Vector2d(mu1, mu2);
  spec.overtone_dipole_scale = kappa;
  return spec;
}

inline AggregateSpec make_random_aggregate(std::mt19937& rng, int n_sites) {
  std::uniform_real_distribution<double> energy(14500.0, 15500.0);
  std::uniform_real_distribution<double> coupling(-150.0, 150.0);
  std::uniform_real_distribution<double> u1(-220.0, -60.0);
  std::uniform_real_distribution<double> u2(-80.0, -5.0);
  std::uniform_real_distribution<double> dip(0.4, 1.4);
  std::uniform_real_distribution<double> kap(0.7, 1.3);

  AggregateSpec spec;
  spec.n_sites = n_sites;
  spec.site_energies.resize(n_sites);
  spec.overtone_nonlinearity.resize(n_sites);
  spec.site_dipoles.resize(n_sites);
  for (int m = 0; m < n_sites; ++m) {
    spec.site_energies(m) = energy(rng);
    spec.overtone_nonlinearity(m) = u1(rng);
    spec.site_dipoles(m) = dip(rng);
  }
  spec.couplings = Eigen::MatrixXd::Zero(n_sites, n_sites);
  spec.combination_nonlinearity = Eigen::MatrixXd::Zero(n_sites, n_sites);
  for (int m = 0; m < n_sites; ++m) {
    for (int n = m + 1; n < n_sites; ++n) {
      spec.couplings(m, n) = spec.couplings(n, m) = coupling(rng);
      spec.combination_nonlinearity(m, n) =
          spec.combination_nonlinearity(n, m) = u2(rng);
    }
  }
  spec.overtone_dipole_scale = kap(rng);
  return spec;
}

inline BathSpec make_simple_bath(double lambda0 = 35.0, double gamma0 = 40.0,
                                 double temperature = 273.0) {
  BathSpec bath;
  bath.lambda0 = lambda0;
  bath.gamma0 = gamma0;
  bath.temperature = temperature;
  bath.modes = {{12.0, 250.0, 12.0}, {6.0, 750.0, 18.0}};
  return bath;
}

inline BathSpec make_random_bath(std::mt19937& rng) {
  std::uniform_real_distribution<double> l0(5.0, 50.0);
  std::uniform_real_distribution<double> g0(20.0, 80.0);
  std::uniform_real_distribution<double> lm(1.0, 15.0);
  std::uniform_real_distribution<double> wm(80.0, 1200.0);
  std::uniform_real_distribution<double> gm(5.0, 25.0);
  std::uniform_int_distribution<int> nm(1, 3);
  BathSpec bath;
  bath.lambda0 = l0(rng);
  bath.gamma0 = g0(rng);
  bath.temperature = 273.0;
  const int n = nm(rng);
  for (int j = 0; j < n; ++j) bath.modes.push_back({lm(rng), wm(rng), gm(rng)});
  return bath;
}

// Alternates SPDC and classical sources, tuned near the aggregate bands.
inline PhotonSource make_random_source(std::mt19937& rng,
                                       const ExcitonBasis& basis,
                                       bool entangled) {
  std::uniform_real_distribution<double> jitter(-60.0, 60.0);
  const double e_mid = basis.one_exciton_energies.mean();
  const double f_mid = basis.two_exciton_energies.mean();
  if (entangled) {
    SpdcSource src;
    src.pump_center = f_mid + jitter(rng);
    src.pump_width = 40.0 + 30.0 * std::generate_canonical<double, 32>(rng);
    src.t1 = 0.0;
    src.t2 = 5.0 + 20.0 * std::generate_canonical<double, 32>(rng);
    src.center1 = e_mid + jitter(rng);
    src.center2 = src.pump_center - src.center1;
    return src;
  }
  ClassicalPulseSet set;
  for (auto& p : set.pulses) {
    p.center = e_mid + jitter(rng);
    p.tau0 = 6.0 + 8.0 * std::generate_canonical<double, 32>(rng);
    p.chirp = (std::generate_canonical<double, 32>(rng) < 0.5) ? 0.0 : -400.0;
  }
  return set;
}

}  // namespace dqc::testing
