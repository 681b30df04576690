#include "dqc/bath.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "dqc/units.hpp"
#include "dqc/validation.hpp"

namespace dqc {

void BathSpec::validate(const std::string& p) const {
  require(lambda0 > 0.0, p + ".overdamped.lambda_cm1", "must be > 0");
  require(gamma0 > 0.0, p + ".overdamped.gamma_cm1", "must be > 0");
  require(temperature > 0.0, p + ".temperature_K", "must be > 0");
  for (std::size_t j = 0; j < modes.size(); ++j) {
    const std::string mp = p + ".modes[" + std::to_string(j) + "]";
    require(modes[j].lambda > 0.0, mp + ".lambda_cm1", "must be > 0");
    require(modes[j].omega > 0.0, mp + ".omega_cm1", "must be > 0");
    require(modes[j].gamma > 0.0, mp + ".gamma_cm1", "must be > 0");
  }
}

double BathSpec::beta() const {
  return 1.0 / (units::boltzmann_cm1_per_K * temperature);
}

double spectral_density(double omega, const BathSpec& bath) {
  double j = 2.0 * bath.lambda0 * omega * bath.gamma0 /
             (omega * omega + bath.gamma0 * bath.gamma0);
  for (const auto& m : bath.modes) {
    const double w2 = m.omega * m.omega;
    const double d = w2 - omega * omega;
    j += 2.0 * m.lambda * w2 * omega * m.gamma /
         (d * d + omega * omega * m.gamma * m.gamma);
  }
  return j;
}

double spectral_density_slope0(const BathSpec& bath) {
  double s = 2.0 * bath.lambda0 / bath.gamma0;
  for (const auto& m : bath.modes)
    s += 2.0 * m.lambda * m.gamma / (m.omega * m.omega);
  return s;
}

double bath_correlation_real(double gap, const BathSpec& bath) {
  if (gap == 0.0)
    return spectral_density_slope0(bath) / bath.beta();
  const double a = std::abs(gap);
  const double j = spectral_density(a, bath);
  const double x = bath.beta() * a;
  // Bose occupation via expm1; overflows cleanly to n = 0 for large x.
  const double n = 1.0 / std::expm1(x);
  return gap > 0.0 ? j * (n + 1.0) : j * n;
}

namespace {

// Adaptive Simpson with an absolute tolerance per invocation.
struct SimpsonWorker {
  const std::function<double(double)>& f;
  int max_depth;
  bool converged = true;
  double residual = 0;

  double recurse(double a, double m, double b, double fa, double fm, double fb,
                 double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double err = left + right - whole;
    if (std::abs(err) <= 15.0 * tol || depth >= max_depth) {
      if (std::abs(err) > 15.0 * tol) {
        converged = false;
        residual += std::abs(err) / 15.0;
      }
      return left + right + err / 15.0;
    }
    return recurse(a, lm, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           recurse(m, rm, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }

  double integrate(double a, double b, double tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return recurse(a, m, b, fa, fm, fb, whole, tol, 0);
  }
};

std::vector<double> pv_breakpoints(double gap, const BathSpec& bath,
                                   double cutoff) {
  std::set<double> pts;
  auto add = [&](double x) {
    if (x > -cutoff && x < cutoff) pts.insert(x);
  };
  add(0.0);
  for (double k : {1.0, 4.0, 16.0}) {
    add(k * bath.gamma0);
    add(-k * bath.gamma0);
  }
  for (const auto& m : bath.modes) {
    for (double s : {-1.0, 1.0}) {
      add(s * m.omega);
      add(s * (m.omega - 3.0 * m.gamma));
      add(s * (m.omega + 3.0 * m.gamma));
    }
  }
  add(gap);
  pts.insert(-cutoff);
  pts.insert(cutoff);
  return {pts.begin(), pts.end()};
}

}  // namespace

double bath_correlation_imag(double gap, const BathSpec& bath,
                             const PvOptions& options) {
  bath.validate();
  double wmax = 64.0 * bath.gamma0;
  for (const auto& m : bath.modes)
    wmax = std::max(wmax, m.omega + 64.0 * m.gamma);
  const double cutoff = std::max({wmax, 4.0 * std::abs(gap) + 1000.0, 4000.0});

  const double wc = bath_correlation_real(gap, bath);
  const double scale =
      std::max({std::abs(wc), bath_correlation_real(0.0, bath), 1e-12});
  const double tol = options.rel_tol * scale;

  // Half-window around the pole; the log term of the subtracted
  // principal value vanishes on a symmetric window.
  auto breakpoints = pv_breakpoints(gap, bath, cutoff);
  double delta = cutoff - std::abs(gap);
  for (double b : breakpoints) {
    const double d = std::abs(b - gap);
    if (d > 0.0) delta = std::min(delta, d);
  }
  delta = std::clamp(0.5 * delta, 1e-6, 50.0);
  const double lo = gap - delta, hi = gap + delta;

  std::function<double(double)> regular = [&](double w) {
    return bath_correlation_real(w, bath) / (gap - w);
  };
  std::function<double(double)> subtracted = [&](double w) {
    const double d = gap - w;
    if (std::abs(d) < 1e-9 * std::max(1.0, std::abs(gap))) {
      // Remove the 0/0 with a symmetric difference quotient.
      const double h = std::max(1e-6, 1e-9 * std::abs(gap));
      return -(bath_correlation_real(gap + h, bath) -
               bath_correlation_real(gap - h, bath)) /
             (2.0 * h);
    }
    return (bath_correlation_real(w, bath) - wc) / d;
  };

  SimpsonWorker pole_worker{subtracted, options.max_depth};
  double integral = pole_worker.integrate(lo, hi, tol);

  SimpsonWorker tail_worker{regular, options.max_depth};
  std::vector<double> edges;
  for (double b : breakpoints)
    if (b <= lo) edges.push_back(b);
  edges.push_back(lo);
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i] - edges[i - 1] > 0.0)
      integral += tail_worker.integrate(edges[i - 1], edges[i], tol);
  }
  edges.clear();
  edges.push_back(hi);
  for (double b : breakpoints)
    if (b >= hi) edges.push_back(b);
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i] - edges[i - 1] > 0.0)
      integral += tail_worker.integrate(edges[i - 1], edges[i], tol);
  }

  // Analytic estimate of the truncated positive tail, where
  // Re C ~ J(w) ~ 2 l0 g0/w + sum_j 2 l_j w_j^2 g_j / w^3.
  double tail = 2.0 * bath.lambda0 * bath.gamma0 *
                (1.0 / cutoff + gap / (2.0 * cutoff * cutoff));
  for (const auto& m : bath.modes)
    tail += 2.0 * m.lambda * m.omega * m.omega * m.gamma /
            (3.0 * cutoff * cutoff * cutoff);
  integral -= tail;

  if (!pole_worker.converged || !tail_worker.converged) {
    std::ostringstream oss;
    oss << "principal-value quadrature for Im C_ph(" << gap
        << ") did not converge; residual estimate "
        << (pole_worker.residual + tail_worker.residual);
    throw std::runtime_error(oss.str());
  }
  return integral / std::numbers::pi;
}

std::complex<double> bath_correlation_spectrum(double gap, const BathSpec& bath,
                                               bool with_imaginary) {
  const double re = bath_correlation_real(gap, bath);
  if (!with_imaginary) return {re, 0.0};
  return {re, bath_correlation_imag(gap, bath)};
}

Eigen::MatrixXd site_participation(const ExcitonBasis& basis,
                                   Manifold manifold) {
  switch (manifold) {
    case Manifold::ground:
      return Eigen::MatrixXd::Zero(1, basis.n_sites());
    case Manifold::one_exciton:
      return basis.t1.array().square();
    case Manifold::two_exciton: {
      Eigen::MatrixXd p =
          Eigen::MatrixXd::Zero(basis.n_two_exciton(), basis.n_sites());
      for (int f = 0; f < basis.n_two_exciton(); ++f) {
        for (const auto& pr : basis.pairs) {
          const double v = basis.t2(f, pr.flat) * basis.t2(f, pr.flat);
          p(f, pr.m) += v;
          if (pr.n != pr.m) p(f, pr.n) += v;
        }
      }
      return p;
    }
  }
  throw std::logic_error("unknown manifold");
}

namespace {

Eigen::VectorXd manifold_rates(const Eigen::VectorXd& energies,
                               const Eigen::MatrixXd& participation,
                               const BathSpec& bath) {
  const int n = static_cast<int>(energies.size());
  Eigen::VectorXd gamma = Eigen::VectorXd::Zero(n);
  for (int p = 0; p < n; ++p) {
    double g = 0.0;
    for (int q = 0; q < n; ++q) {
      const double overlap = participation.row(p).dot(participation.row(q));
      g += bath_correlation_real(energies(p) - energies(q), bath) * overlap;
    }
    gamma(p) = g;
  }
  return gamma;
}

Eigen::VectorXd manifold_shifts(const Eigen::VectorXd& energies,
                                const Eigen::MatrixXd& participation,
                                const BathSpec& bath, const PvOptions& pv) {
  const int n = static_cast<int>(energies.size());
  Eigen::VectorXd shift = Eigen::VectorXd::Zero(n);
  for (int p = 0; p < n; ++p) {
    double s = 0.0;
    for (int q = 0; q < n; ++q) {
      const double overlap = participation.row(p).dot(participation.row(q));
      s += bath_correlation_imag(energies(p) - energies(q), bath, pv) * overlap;
    }
    shift(p) = s;
  }
  return shift;
}

}  // namespace

DephasingRates dephasing_rates(const ExcitonBasis& basis, const BathSpec& bath) {
  bath.validate();
  DephasingRates rates;
  rates.gamma_e =
      manifold_rates(basis.one_exciton_energies,
                     site_participation(basis, Manifold::one_exciton), bath);
  rates.gamma_f =
      manifold_rates(basis.two_exciton_energies,
                     site_participation(basis, Manifold::two_exciton), bath);
  return rates;
}

double state_dephasing_rate(Manifold manifold, int index,
                            const ExcitonBasis& basis, const BathSpec& bath) {
  if (manifold == Manifold::ground) return 0.0;
  const Eigen::VectorXd& energies = manifold == Manifold::one_exciton
                                        ? basis.one_exciton_energies
                                        : basis.two_exciton_energies;
  require(index >= 0 && index < energies.size(), "state.index",
          "state index out of range");
  const Eigen::MatrixXd part = site_participation(basis, manifold);
  double g = 0.0;
  for (int q = 0; q < energies.size(); ++q) {
    g += bath_correlation_real(energies(index) - energies(q), bath) *
         part.row(index).dot(part.row(q));
  }
  return g;
}

ResonanceTable resonance_table(const ExcitonBasis& basis, const BathSpec& bath,
                               const ResonanceOptions& options) {
  const DephasingRates rates = dephasing_rates(basis, bath);
  const int ne = basis.n_one_exciton();
  const int nf = basis.n_two_exciton();

  Eigen::VectorXd e_energy = basis.one_exciton_energies;
  Eigen::VectorXd f_energy = basis.two_exciton_energies;
  if (options.lamb_shift) {
    e_energy += manifold_shifts(basis.one_exciton_energies,
                                site_participation(basis, Manifold::one_exciton),
                                bath, options.pv);
    f_energy += manifold_shifts(basis.two_exciton_energies,
                                site_participation(basis, Manifold::two_exciton),
                                bath, options.pv);
  }

  ResonanceTable table;
  table.z_eg.resize(ne);
  table.z_fg.resize(nf);
  table.z_fe.resize(nf, ne);
  for (int e = 0; e < ne; ++e)
    table.z_eg(e) = {e_energy(e), 0.5 * rates.gamma_e(e)};
  for (int f = 0; f < nf; ++f)
    table.z_fg(f) = {f_energy(f), 0.5 * rates.gamma_f(f)};
  for (int f = 0; f < nf; ++f)
    for (int e = 0; e < ne; ++e)
      table.z_fe(f, e) = {f_energy(f) - e_energy(e),
                          0.5 * (rates.gamma_f(f) + rates.gamma_e(e))};
  return table;
}

ResonanceTable uniform_resonance_table(const ExcitonBasis& basis,
                                       double gamma) {
  require(gamma > 0.0, "resonances.gamma_cm1", "must be > 0");
  const int ne = basis.n_one_exciton();
  const int nf = basis.n_two_exciton();
  ResonanceTable table;
  table.z_eg.resize(ne);
  table.z_fg.resize(nf);
  table.z_fe.resize(nf, ne);
  for (int e = 0; e < ne; ++e)
    table.z_eg(e) = {basis.one_exciton_energies(e), gamma};
  for (int f = 0; f < nf; ++f)
    table.z_fg(f) = {basis.two_exciton_energies(f), gamma};
  for (int f = 0; f < nf; ++f)
    for (int e = 0; e < ne; ++e)
      table.z_fe(f, e) = {basis.two_exciton_energies(f) -
                              basis.one_exciton_energies(e),
                          gamma};
  return table;
}

std::complex<double> green_function(double omega, std::complex<double> z) {
  if (z.imag() <= 0.0)
    throw std::domain_error("green_function requires Im(z) > 0");
  return std::complex<double>(0.0, 1.0) / (omega - z);
}

}  // namespace dqc
