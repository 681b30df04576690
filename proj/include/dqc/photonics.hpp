#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <string>
#include <variant>

namespace dqc {

// Entangled photon pair from spontaneous parametric down-conversion.
// Frequencies in cm^-1, times in fs.  The pump width follows the same
// convention as the classical pulses: Gamma_p0 = 2 ln2 / tau_p^2 with
// tau_p the intensity FWHM.
struct SpdcSource {
  double pump_center = 0;  // w_p, cm^-1
  double pump_width = 0;   // tau_p, fs
  double t1 = 0;           // T_1, fs
  double t2 = 0;           // T_2, fs
  double center1 = 0;      // beam-1 center, cm^-1 (informational + JSA grids)
  double center2 = 0;      // beam-2 center, cm^-1
  double alpha = 1.0;      // down-conversion efficiency
  double e0 = 1.0;         // pump field amplitude

  double entanglement_time() const;  // |T_2 - T_1|
  double gamma_p0() const;           // rad^2/fs^2
  void validate(const std::string& field_prefix = "source") const;
};

struct Pulse {
  double center = 0;  // w_0, cm^-1
  double tau0 = 0;    // temporal width, fs
  double chirp = 0;   // phi^(2), fs^2
  double e0 = 1.0;
};

struct ClassicalPulseSet {
  std::array<Pulse, 4> pulses;  // slots 1..4 of the four-point correlator

  void validate(const std::string& field_prefix = "source") const;
};

using PhotonSource = std::variant<SpdcSource, ClassicalPulseSet>;

void validate_source(const PhotonSource& source,
                     const std::string& field_prefix = "source");
std::string source_kind(const PhotonSource& source);

// Transform-limited pump envelope A_p = E0 sqrt(pi/Gamma_p0)
// exp[-(w_p-w_a-w_b)^2/(4 Gamma_p0)], evaluated in rad/fs.
std::complex<double> pump_envelope(double wa, double wb, const SpdcSource& src);

// Joint spectral amplitude, explicitly symmetrized in (wa, wb):
// f = alpha A_p { sinc(phi_ab) e^{i phi_ab} + sinc(phi_ba) e^{i phi_ba} }
// with phi_ab = (wa - wp/2) T1 + (wb - wp/2) T2 in angular units.
std::complex<double> jsa(double wa, double wb, const SpdcSource& src);

// <E4^+ E3^+ E2 E1> = f*(w4,w3) f(w2,w1); scales as E0^2.
std::complex<double> four_point_entangled(double w4, double w3, double w2,
                                          double w1, const SpdcSource& src);

// Derived chirped-pulse quantities: Gamma_0 = 2 ln2/tau0^2 = 1/T0^2,
// 1/Gamma = 1/Gamma_0 - 2i phi2, Gamma = 1/Tp^2 + i alpha_chirp.
struct PulseDerived {
  double gamma0 = 0;       // rad^2/fs^2
  double t0 = 0;           // fs
  double tp = 0;           // stretched width, fs
  double alpha_chirp = 0;  // chirp rate, rad/fs^2
  std::complex<double> inv_gamma;
  std::complex<double> gamma;
};

PulseDerived pulse_derived(const Pulse& pulse);

// A(w) = E0 sqrt(pi/Gamma_0) exp[-(w-w0)^2/(4 Gamma)]; chirp = 0
// reduces to the transform-limited profile.
std::complex<double> pulse_amplitude(double w, const Pulse& pulse);

// A4*(w4) A3*(w3) A2(w2) A1(w1); scales as E0^4.
std::complex<double> four_point_classical(double w4, double w3, double w2,
                                          double w1,
                                          const ClassicalPulseSet& pulses);

// Dispatch on the source type.
std::complex<double> four_point(const PhotonSource& source, double w4,
                                double w3, double w2, double w1);

// Rectangular discretization window for the JSA, cm^-1.
struct JsaGrid {
  double center_a = 0;
  double center_b = 0;
  double half_width = 0;
  int points = 128;
};

// Window of +/- `bandwidths` pump bandwidths around the beam centers,
// one pump bandwidth being 2 sqrt(Gamma_p0).
JsaGrid default_jsa_grid(const SpdcSource& src, int points = 128,
                         double bandwidths = 4.0);

// Normalized singular values (sum of squares 1) of an arbitrary matrix,
// descending.
Eigen::VectorXd normalized_singular_values(const Eigen::MatrixXcd& m);

// Schmidt-type spectrum of the discretized JSA with trapezoid weights
// folded in as sqrt(dw) scaling; returns the top_k values.  Grids with
// fewer than 32 points per axis are rejected.
Eigen::VectorXd jsa_singular_values(const SpdcSource& src, const JsaGrid& grid,
                                    int top_k = 20);

}  // namespace dqc
