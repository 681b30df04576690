#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "dqc/core_model.hpp"

namespace dqc {

struct BrownianMode {
  double lambda = 0;  // reorganization energy, cm^-1
  double omega = 0;   // mode frequency, cm^-1
  double gamma = 0;   // damping, cm^-1
};

// One overdamped (Drude) term plus a set of Brownian oscillator modes.
struct BathSpec {
  double lambda0 = 0;  // cm^-1
  double gamma0 = 0;   // cm^-1
  std::vector<BrownianMode> modes;
  double temperature = 0;  // K

  void validate(const std::string& field_prefix = "bath") const;
  double beta() const;  // 1/(k_B T), (cm^-1)^-1
};

// J(w) = 2 l0 w g0/(w^2+g0^2) + sum_j 2 l_j w_j^2 w g_j /((w_j^2-w^2)^2 + w^2 g_j^2)
double spectral_density(double omega, const BathSpec& bath);

// dJ/dw at w = 0
double spectral_density_slope0(const BathSpec& bath);

// Re C_ph(gap): J(gap)(n(gap)+1) for gap > 0, J(|gap|) n(|gap|) for
// gap < 0, k_B T J'(0) at gap = 0.  Detailed balance holds by
// construction: Re C(gap)/Re C(-gap) = exp(beta*gap).
double bath_correlation_real(double gap, const BathSpec& bath);

struct PvOptions {
  double rel_tol = 1e-7;
  int max_depth = 48;
};

// Im C_ph(gap) = (1/pi) PV int dw Re C_ph(w)/(gap - w), by adaptive
// principal-value quadrature.  Throws std::runtime_error carrying the
// residual estimate when the quadrature fails to converge.
double bath_correlation_imag(double gap, const BathSpec& bath,
                             const PvOptions& options = {});

std::complex<double> bath_correlation_spectrum(double gap, const BathSpec& bath,
                                               bool with_imaginary = false);

enum class Manifold { ground, one_exciton, two_exciton };

// Site participation weights entering the dephasing rates: squared T1
// entries for e-states; for f-states T2 is marginalized over the
// partner site index.  Isolated here so the f-state rule can be swapped.
Eigen::MatrixXd site_participation(const ExcitonBasis& basis, Manifold manifold);

struct DephasingRates {
  Eigen::VectorXd gamma_e;
  Eigen::VectorXd gamma_f;
};

DephasingRates dephasing_rates(const ExcitonBasis& basis, const BathSpec& bath);

// gamma_p for a single state; 0 for the ground state.
double state_dephasing_rate(Manifold manifold, int index,
                            const ExcitonBasis& basis, const BathSpec& bath);

// Complex inter-manifold resonances z_pq = w_pq + i (gamma_p+gamma_q)/2,
// with the ground-state energy at zero.
struct ResonanceTable {
  Eigen::VectorXcd z_eg;  // N_e
  Eigen::VectorXcd z_fg;  // N_f
  Eigen::MatrixXcd z_fe;  // N_f x N_e
};

struct ResonanceOptions {
  // Add the principal-value (lamb-shift-like) level shifts to the real
  // parts.  Off by default; the bare exciton gaps are used.
  bool lamb_shift = false;
  PvOptions pv{};
};

ResonanceTable resonance_table(const ExcitonBasis& basis, const BathSpec& bath,
                               const ResonanceOptions& options = {});

// Phenomenological table with the same dephasing width on every
// coherence; useful for equal-dephasing studies and fixtures.
ResonanceTable uniform_resonance_table(const ExcitonBasis& basis, double gamma);

// G(w) = i/(w - z); requires Im(z) > 0.
std::complex<double> green_function(double omega, std::complex<double> z);

}  // namespace dqc
