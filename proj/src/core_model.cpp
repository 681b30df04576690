#include "dqc/core_model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "dqc/validation.hpp"

namespace dqc {

namespace {

void check_symmetric_zero_diagonal(const Eigen::MatrixXd& m, int n,
                                   const std::string& field) {
  require(m.rows() == n && m.cols() == n, field,
          "expected a " + std::to_string(n) + "x" + std::to_string(n) +
              " matrix, got " + std::to_string(m.rows()) + "x" +
              std::to_string(m.cols()));
  for (int i = 0; i < n; ++i) {
    require(m(i, i) == 0.0, field + "[" + std::to_string(i) + "][" +
                                std::to_string(i) + "]",
            "diagonal entries must be zero");
    for (int j = i + 1; j < n; ++j) {
      if (m(i, j) != m(j, i)) {
        std::ostringstream oss;
        oss << "matrix must be symmetric; entries (" << i << "," << j
            << ") and (" << j << "," << i << ") differ: " << m(i, j)
            << " vs " << m(j, i);
        throw ValidationError(
            field + "[" + std::to_string(i) + "][" + std::to_string(j) + "]",
            oss.str());
      }
    }
  }
}

// Flip eigenvector rows so the largest-magnitude component is positive.
void fix_row_signs(Eigen::MatrixXd& rows) {
  for (int r = 0; r < rows.rows(); ++r) {
    int imax = 0;
    rows.row(r).cwiseAbs().maxCoeff(&imax);
    if (rows(r, imax) < 0.0) rows.row(r) *= -1.0;
  }
}

struct EigResult {
  Eigen::VectorXd energies;
  Eigen::MatrixXd rows;  // eigenstates as rows
};

EigResult diagonalize_block(const Eigen::MatrixXd& h, const char* label) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success) {
    std::ostringstream oss;
    oss << "eigensolver failed to converge for the " << label
        << " block (n=" << h.rows() << ", |H|_inf=" << h.cwiseAbs().maxCoeff()
        << ", |H|_F=" << h.norm() << ")";
    throw std::runtime_error(oss.str());
  }
  EigResult out;
  out.energies = solver.eigenvalues();
  out.rows = solver.eigenvectors().transpose();
  fix_row_signs(out.rows);
  return out;
}

}  // namespace

void AggregateSpec::validate(const std::string& p) const {
  require(n_sites >= 1, p + ".n_sites", "must be >= 1");
  require(site_energies.size() == n_sites, p + ".site_energies_cm1",
          "expected " + std::to_string(n_sites) + " entries, got " +
              std::to_string(site_energies.size()));
  require(overtone_nonlinearity.size() == n_sites,
          p + ".overtone_nonlinearity_cm1",
          "expected " + std::to_string(n_sites) + " entries, got " +
              std::to_string(overtone_nonlinearity.size()));
  require(site_dipoles.size() == n_sites, p + ".site_dipoles",
          "expected " + std::to_string(n_sites) + " entries, got " +
              std::to_string(site_dipoles.size()));
  check_symmetric_zero_diagonal(couplings, n_sites, p + ".couplings_cm1");
  check_symmetric_zero_diagonal(combination_nonlinearity, n_sites,
                                p + ".combination_nonlinearity_cm1");
  require(std::isfinite(overtone_dipole_scale), p + ".overtone_dipole_scale",
          "must be finite");
}

int pair_count(int n_sites) { return n_sites * (n_sites + 1) / 2; }

std::vector<PairIndex> pair_basis(int n_sites) {
  std::vector<PairIndex> pairs;
  pairs.reserve(pair_count(n_sites));
  int flat = 0;
  for (int m = 0; m < n_sites; ++m)
    for (int n = m; n < n_sites; ++n) pairs.push_back({m, n, flat++});
  return pairs;
}

int ExcitonBasis::overtone_count() const {
  int c = 0;
  for (const auto& p : pairs) c += (p.m == p.n);
  return c;
}

int ExcitonBasis::combination_count() const {
  return static_cast<int>(pairs.size()) - overtone_count();
}

Eigen::MatrixXd build_one_exciton_hamiltonian(const AggregateSpec& spec) {
  spec.validate();
  Eigen::MatrixXd h = spec.couplings;
  h.diagonal() = spec.site_energies;
  return h;
}

Eigen::MatrixXd build_two_exciton_hamiltonian(const AggregateSpec& spec) {
  spec.validate();
  const auto pairs = pair_basis(spec.n_sites);
  const int nf = static_cast<int>(pairs.size());
  const double sqrt2 = std::numbers::sqrt2;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(nf, nf);

  for (const auto& a : pairs) {
    h(a.flat, a.flat) =
        (a.m == a.n)
            ? 2.0 * spec.site_energies(a.m) + spec.overtone_nonlinearity(a.m)
            : spec.site_energies(a.m) + spec.site_energies(a.n) +
                  spec.combination_nonlinearity(a.m, a.n);
  }

  for (int ia = 0; ia < nf; ++ia) {
    for (int ib = ia + 1; ib < nf; ++ib) {
      const auto& a = pairs[ia];
      const auto& b = pairs[ib];
      // Leftover indices p (from a) and q (from b) once the shared site is
      // removed; pairs sharing no site are uncoupled.
      int p = -1, q = -1;
      if (a.m == b.m && a.n != b.n) {
        p = a.n; q = b.n;
      } else if (a.m == b.n && a.n != b.m) {
        p = a.n; q = b.m;
      } else if (a.n == b.m && a.m != b.n) {
        p = a.m; q = b.n;
      } else if (a.n == b.n && a.m != b.m) {
        p = a.m; q = b.m;
      }
      if (p < 0) continue;
      const bool overtone_involved = (a.m == a.n) || (b.m == b.n);
      const double element =
          (overtone_involved ? sqrt2 : 1.0) * spec.couplings(p, q);
      h(ia, ib) = element;
      h(ib, ia) = element;
    }
  }
  return h;
}

Eigen::MatrixXd site_pair_dipoles(const AggregateSpec& spec) {
  const auto pairs = pair_basis(spec.n_sites);
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(static_cast<int>(pairs.size()),
                                            spec.n_sites);
  for (const auto& p : pairs) {
    if (p.m == p.n) {
      d(p.flat, p.m) = spec.overtone_dipole_scale * std::numbers::sqrt2 *
                       spec.site_dipoles(p.m);
    } else {
      d(p.flat, p.m) = spec.site_dipoles(p.n);
      d(p.flat, p.n) = spec.site_dipoles(p.m);
    }
  }
  return d;
}

Eigen::VectorXd transition_dipoles_ge(const AggregateSpec& spec,
                                      const Eigen::MatrixXd& t1) {
  require(t1.cols() == spec.n_sites && t1.rows() == spec.n_sites, "t1",
          "expected a " + std::to_string(spec.n_sites) + "x" +
              std::to_string(spec.n_sites) + " transformation matrix");
  return t1 * spec.site_dipoles;
}

Eigen::MatrixXd transition_dipoles_ef(const AggregateSpec& spec,
                                      const Eigen::MatrixXd& t1,
                                      const Eigen::MatrixXd& t2) {
  const int nf = pair_count(spec.n_sites);
  require(t1.cols() == spec.n_sites && t1.rows() == spec.n_sites, "t1",
          "unexpected dimensions");
  require(t2.rows() == nf && t2.cols() == nf, "t2",
          "expected a " + std::to_string(nf) + "x" + std::to_string(nf) +
              " transformation matrix");
  return t2 * site_pair_dipoles(spec) * t1.transpose();
}

ExcitonBasis diagonalize_manifolds(const AggregateSpec& spec) {
  const Eigen::MatrixXd h1 = build_one_exciton_hamiltonian(spec);
  const Eigen::MatrixXd h2 = build_two_exciton_hamiltonian(spec);

  auto one = diagonalize_block(h1, "one-exciton");
  auto two = diagonalize_block(h2, "two-exciton");

  ExcitonBasis basis;
  basis.one_exciton_energies = std::move(one.energies);
  basis.two_exciton_energies = std::move(two.energies);
  basis.t1 = std::move(one.rows);
  basis.t2 = std::move(two.rows);
  basis.pairs = pair_basis(spec.n_sites);
  basis.dip_ge = transition_dipoles_ge(spec, basis.t1);
  basis.dip_ef = transition_dipoles_ef(spec, basis.t1, basis.t2);
  return basis;
}

}  // namespace dqc
