#include "dqc/signal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "dqc/validation.hpp"

namespace dqc {

std::string to_string(PathwayFilter filter) {
  switch (filter) {
    case PathwayFilter::both: return "both";
    case PathwayFilter::pathway1: return "pathway1";
    case PathwayFilter::pathway2: return "pathway2";
  }
  return "both";
}

PathwayFilter pathway_filter_from_string(const std::string& name,
                                         const std::string& field) {
  if (name == "both") return PathwayFilter::both;
  if (name == "pathway1") return PathwayFilter::pathway1;
  if (name == "pathway2") return PathwayFilter::pathway2;
  throw ValidationError(field,
                        "expected one of both|pathway1|pathway2, got '" +
                            name + "'");
}

void AxisSpec::validate(const std::string& field) const {
  require(count >= 2, field + ".count", "must be >= 2");
  require(max > min, field + ".max", "must exceed min");
}

Eigen::VectorXd AxisSpec::values() const {
  Eigen::VectorXd v(count);
  for (int i = 0; i < count; ++i) v(i) = value(i);
  return v;
}

void SpectrumJob::validate(bool require_axes) const {
  if (require_axes) {
    omega2_axis.validate("job.omega2_axis_cm1");
    omega3_axis.validate("job.omega3_axis_cm1");
  }
  validate_source(source);
  require(basis.n_one_exciton() > 0, "job.basis", "empty exciton basis");
  require(resonances.z_eg.size() == basis.n_one_exciton() &&
              resonances.z_fg.size() == basis.n_two_exciton() &&
              resonances.z_fe.rows() == basis.n_two_exciton() &&
              resonances.z_fe.cols() == basis.n_one_exciton(),
          "job.resonances", "resonance table does not match the basis");
}

std::pair<double, double> pathway_weights(int f, int e_prime, int e,
                                          const ExcitonBasis& basis) {
  require(f >= 0 && f < basis.n_two_exciton(), "pathway.f", "index out of range");
  require(e_prime >= 0 && e_prime < basis.n_one_exciton(), "pathway.e_prime",
          "index out of range");
  require(e >= 0 && e < basis.n_one_exciton(), "pathway.e",
          "index out of range");
  const double d_epf = basis.dip_ef(f, e_prime);
  const double d_epg = basis.dip_ge(e_prime);
  const double d_fe = basis.dip_ef(f, e);
  const double d_eg = basis.dip_ge(e);
  const double w1 = d_epf * d_epg * d_fe * d_eg;
  const double w2 = d_epg * d_epf * d_fe * d_eg;
  return {w1, w2};
}

std::complex<double> resonance_denominator(double o3, double o2, double o1,
                                           std::complex<double> zc,
                                           std::complex<double> zb,
                                           std::complex<double> za) {
  if (zc.imag() <= 0.0 || zb.imag() <= 0.0 || za.imag() <= 0.0)
    throw std::domain_error(
        "resonance_denominator requires positive dephasing on every pole");
  return (o3 - zc) * (o2 - zb) * (o1 - za);
}

namespace {

// One (f, e', e) contribution with the source correlators folded into
// the constants; only the denominators depend on the grid point.
struct PathwayTerm {
  std::complex<double> z3_p1;  // z_e'g
  std::complex<double> z3_p2;  // z_fe'
  std::complex<double> z2;     // z_fg
  std::complex<double> z1;     // z_eg
  std::complex<double> c1;     // w1 * Corr_1
  std::complex<double> c2;     // w2 * Corr_2
};

std::vector<PathwayTerm> build_terms(const SpectrumJob& job) {
  const ExcitonBasis& basis = job.basis;
  const ResonanceTable& res = job.resonances;
  const int ne = basis.n_one_exciton();
  const int nf = basis.n_two_exciton();

  std::vector<PathwayTerm> terms;
  terms.reserve(static_cast<std::size_t>(nf) * ne * ne);
  for (int f = 0; f < nf; ++f) {
    const double ef = basis.two_exciton_energies(f);
    for (int ep = 0; ep < ne; ++ep) {
      const double eep = basis.one_exciton_energies(ep);
      for (int e = 0; e < ne; ++e) {
        const double ee = basis.one_exciton_energies(e);
        const auto [w1, w2] = pathway_weights(f, ep, e, basis);
        if (w1 == 0.0 && w2 == 0.0) continue;

        const double gap_fe = ef - ee;    // w_fe slot, both pathways
        const double gap_eg = ee;         // w_eg slot, both pathways
        double p1_s4, p1_s3, p2_s4, p2_s3;
        if (job.signed_gaps) {
          p1_s4 = eep - ef;  // w_e'f as written
          p1_s3 = eep;       // w_e'g
          p2_s4 = -eep;      // w_ge'
          p2_s3 = eep - ef;  // w_e'f
        } else {
          p1_s4 = ef - eep;
          p1_s3 = eep;
          p2_s4 = eep;
          p2_s3 = ef - eep;
        }

        PathwayTerm t;
        t.z3_p1 = res.z_eg(ep);
        t.z3_p2 = res.z_fe(f, ep);
        t.z2 = res.z_fg(f);
        t.z1 = res.z_eg(e);
        if (t.z3_p1.imag() <= 0.0 || t.z3_p2.imag() <= 0.0 ||
            t.z2.imag() <= 0.0 || t.z1.imag() <= 0.0)
          throw std::domain_error(
              "resonance table carries a nonpositive dephasing rate");
        t.c1 = w1 * four_point(job.source, p1_s4, p1_s3, gap_fe, gap_eg);
        t.c2 = w2 * four_point(job.source, p2_s4, p2_s3, gap_fe, gap_eg);
        terms.push_back(t);
      }
    }
  }
  return terms;
}

// Neumaier-compensated accumulation, real and imaginary parts tracked
// separately so grid values do not depend on summation chunking.
struct CompensatedComplex {
  double sr = 0, cr = 0, si = 0, ci = 0;

  static void add_part(double& s, double& c, double x) {
    const double t = s + x;
    if (std::abs(s) >= std::abs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
  }

  void add(std::complex<double> v) {
    add_part(sr, cr, v.real());
    add_part(si, ci, v.imag());
  }

  std::complex<double> value() const { return {sr + cr, si + ci}; }
};

std::complex<double> eval_point(const std::vector<PathwayTerm>& terms,
                                double o3, double o2, double o1,
                                PathwayFilter filter, double s0) {
  CompensatedComplex acc1, acc2;
  for (const auto& t : terms) {
    const std::complex<double> shared = (o2 - t.z2) * (o1 - t.z1);
    acc1.add(t.c1 / ((o3 - t.z3_p1) * shared));
    acc2.add(t.c2 / ((o3 - t.z3_p2) * shared));
  }
  // The two excited-state-absorption pathways enter with opposite signs;
  // their near-cancellation at vanishing nonlinearity is the signal's
  // defining feature.
  std::complex<double> out = 0.0;
  if (filter != PathwayFilter::pathway2) out += s0 * acc1.value();
  if (filter != PathwayFilter::pathway1) out += -(s0 * acc2.value());
  return out;
}

}  // namespace

std::complex<double> signal_point(double o3, double o2, double o1,
                                  const SpectrumJob& job) {
  job.validate(/*require_axes=*/false);
  const auto terms = build_terms(job);
  return eval_point(terms, o3, o2, o1, job.filter, job.s0);
}

SpectrumGrid spectrum_2d(const SpectrumJob& job, int threads) {
  job.validate();
  require(threads >= 1, "threads", "must be >= 1");
  const auto terms = build_terms(job);

  SpectrumGrid grid;
  grid.omega2_axis = job.omega2_axis;
  grid.omega3_axis = job.omega3_axis;
  grid.meta.omega1 = job.omega1;
  grid.meta.s0 = job.s0;
  grid.meta.normalized = job.normalize;
  grid.meta.filter = job.filter;
  grid.meta.signed_gaps = job.signed_gaps;
  grid.meta.source_kind = source_kind(job.source);

  const int n2 = job.omega2_axis.count;
  const int n3 = job.omega3_axis.count;
  grid.values.resize(n2, n3);

  const int total = n2 * n3;
  const int nthreads = std::min(threads, total);
  auto worker = [&](int begin, int end) {
    for (int k = begin; k < end; ++k) {
      const int i = k / n3;
      const int j = k % n3;
      grid.values(i, j) =
          eval_point(terms, job.omega3_axis.value(j), job.omega2_axis.value(i),
                     job.omega1, job.filter, job.s0);
    }
  };
  if (nthreads <= 1) {
    worker(0, total);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (total + nthreads - 1) / nthreads;
    for (int t = 0; t < nthreads; ++t) {
      const int begin = t * chunk;
      const int end = std::min(total, begin + chunk);
      if (begin < end) pool.emplace_back(worker, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  grid.magnitude = grid.values.cwiseAbs();
  if (job.normalize) {
    const double peak = grid.magnitude.maxCoeff();
    if (peak > 0.0) {
      grid.values /= peak;
      grid.magnitude = grid.values.cwiseAbs();
      const double rescaled = grid.magnitude.maxCoeff();
      if (rescaled > 0.0 && rescaled != 1.0) grid.magnitude /= rescaled;
    }
  }
  return grid;
}

double default_omega1(const ExcitonBasis& basis,
                      const ResonanceTable& resonances) {
  int idx = 0;
  basis.dip_ge.cwiseAbs2().maxCoeff(&idx);
  return resonances.z_eg(idx).real();
}

}  // namespace dqc
