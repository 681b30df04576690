#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace dqc {

// Site-basis description of a Frenkel exciton aggregate.  Energies,
// couplings and nonlinearities in cm^-1; dipoles in arbitrary units.
struct AggregateSpec {
  int n_sites = 0;
  Eigen::VectorXd site_energies;             // E_m
  Eigen::MatrixXd couplings;                 // J_mn, symmetric, zero diagonal
  Eigen::VectorXd overtone_nonlinearity;     // U1_m
  Eigen::MatrixXd combination_nonlinearity;  // U2_mn, symmetric, zero diagonal
  Eigen::VectorXd site_dipoles;              // mu_m
  double overtone_dipole_scale = 1.0;        // kappa, scales the 1->2 site transition

  void validate(const std::string& field_prefix = "aggregate") const;
};

// One element of the ordered two-exciton site basis.  m == n is an
// overtone state, m < n a combination state.
struct PairIndex {
  int m = 0;
  int n = 0;
  int flat = 0;
};

// All pairs m <= n in lexicographic order; size n_sites*(n_sites+1)/2.
std::vector<PairIndex> pair_basis(int n_sites);
int pair_count(int n_sites);

// Eigen decomposition of the one- and two-exciton blocks plus the
// inter-manifold transition dipoles.  Rows of t1/t2 are eigenstates,
// energies sorted ascending, eigenvector signs fixed so the
// largest-magnitude component of each row is positive.
struct ExcitonBasis {
  Eigen::VectorXd one_exciton_energies;  // E_e, length N_e = N_s
  Eigen::VectorXd two_exciton_energies;  // E_f, length N_f = N_s(N_s+1)/2
  Eigen::MatrixXd t1;                    // N_e x N_s
  Eigen::MatrixXd t2;                    // N_f x N_f over the pair basis
  Eigen::VectorXd dip_ge;                // d_eg, length N_e
  Eigen::MatrixXd dip_ef;                // d_fe, N_f x N_e
  std::vector<PairIndex> pairs;

  int n_sites() const { return static_cast<int>(t1.cols()); }
  int n_one_exciton() const { return static_cast<int>(one_exciton_energies.size()); }
  int n_two_exciton() const { return static_cast<int>(two_exciton_energies.size()); }
  int overtone_count() const;
  int combination_count() const;
};

// H1_mn = E_m delta_mn + J_mn
Eigen::MatrixXd build_one_exciton_hamiltonian(const AggregateSpec& spec);

// Two-exciton block over the pair basis.  Diagonal: 2E_m + U1_m for
// overtones, E_m + E_n + U2_mn for combinations.  Pairs sharing exactly
// one site couple through J, with a sqrt(2) factor when an overtone
// participates; pairs sharing no site are uncoupled.
Eigen::MatrixXd build_two_exciton_hamiltonian(const AggregateSpec& spec);

// Site-basis pair-to-single dipole matrix, N_f x N_s: combination (m<n)
// carries mu_n on column m and mu_m on column n; overtone (m,m) carries
// kappa*sqrt(2)*mu_m on column m.
Eigen::MatrixXd site_pair_dipoles(const AggregateSpec& spec);

// d_eg(j) = sum_m T1(j,m) mu_m
Eigen::VectorXd transition_dipoles_ge(const AggregateSpec& spec,
                                      const Eigen::MatrixXd& t1);

// d_fe = T2 * site_pair_dipoles * T1^T
Eigen::MatrixXd transition_dipoles_ef(const AggregateSpec& spec,
                                      const Eigen::MatrixXd& t1,
                                      const Eigen::MatrixXd& t2);

ExcitonBasis diagonalize_manifolds(const AggregateSpec& spec);

}  // namespace dqc
