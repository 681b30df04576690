#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dqc/core_model.hpp"
#include "dqc/validation.hpp"
#include "support/fixtures.hpp"
#include "support/fock_oracle.hpp"

using namespace dqc;
using dqc::testing::fock_oracle;
using dqc::testing::make_dimer;
using dqc::testing::make_random_aggregate;

namespace {

AggregateSpec make_uniform(int n_sites, double e0 = 15000.0, double j = 50.0) {
  AggregateSpec spec;
  spec.n_sites = n_sites;
  spec.site_energies = Eigen::VectorXd::Constant(n_sites, e0);
  for (int m = 0; m < n_sites; ++m) spec.site_energies(m) += 37.0 * m;
  spec.couplings = Eigen::MatrixXd::Zero(n_sites, n_sites);
  for (int m = 0; m + 1 < n_sites; ++m) {
    spec.couplings(m, m + 1) = spec.couplings(m + 1, m) = j;
  }
  spec.overtone_nonlinearity = Eigen::VectorXd::Constant(n_sites, -150.0);
  spec.combination_nonlinearity = Eigen::MatrixXd::Zero(n_sites, n_sites);
  spec.site_dipoles = Eigen::VectorXd::Ones(n_sites);
  return spec;
}

}  // namespace

TEST_CASE("one-exciton hamiltonian assembles energies and couplings") {
  const auto h = build_one_exciton_hamiltonian(make_dimer());
  CHECK(h(0, 0) == 15000.0);
  CHECK(h(1, 1) == 15300.0);
  CHECK(h(0, 1) == 100.0);
  CHECK(h(1, 0) == 100.0);

  auto decoupled = make_dimer(15000.0, 15300.0, 0.0);
  const auto hd = build_one_exciton_hamiltonian(decoupled);
  CHECK(hd(0, 1) == 0.0);
  CHECK(hd(0, 0) == 15000.0);

  const auto big = make_uniform(14);
  const auto hb = build_one_exciton_hamiltonian(big);
  CHECK(hb.rows() == 14);
  CHECK((hb - hb.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("aggregate validation reports the offending field") {
  auto spec = make_dimer();
  spec.couplings(0, 1) = 101.0;  // breaks symmetry
  CHECK_THROWS_AS(build_one_exciton_hamiltonian(spec), ValidationError);
  try {
    build_one_exciton_hamiltonian(spec);
  } catch (const ValidationError& e) {
    CHECK(e.field() == "aggregate.couplings_cm1[0][1]");
  }

  auto short_spec = make_dimer();
  short_spec.site_energies.resize(1);
  CHECK_THROWS_AS(short_spec.validate(), ValidationError);
}

TEST_CASE("two-exciton hamiltonian matches the stated matrix rules") {
  const auto spec = make_dimer(15000.0, 15300.0, 100.0, -150.0, -50.0);
  const auto h2 = build_two_exciton_hamiltonian(spec);
  REQUIRE(h2.rows() == 3);
  // basis order (1,1), (1,2), (2,2)
  CHECK(h2(0, 0) == doctest::Approx(29850.0));
  CHECK(h2(1, 1) == doctest::Approx(30250.0));
  CHECK(h2(2, 2) == doctest::Approx(30450.0));
  CHECK(h2(0, 1) == doctest::Approx(std::numbers::sqrt2 * 100.0));
  CHECK(h2(1, 2) == doctest::Approx(std::numbers::sqrt2 * 100.0));
  CHECK(h2(0, 2) == 0.0);

  // operator-algebra cross-check on the truncated Fock space
  const auto oracle = fock_oracle(spec);
  CHECK((h2 - oracle.h2).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("decoupled two-exciton block is diagonal with pair sums") {
  auto spec = make_dimer(15000.0, 15300.0, 0.0, 0.0, 0.0);
  const auto h2 = build_two_exciton_hamiltonian(spec);
  CHECK(h2(0, 0) == 30000.0);
  CHECK(h2(1, 1) == 30300.0);
  CHECK(h2(2, 2) == 30600.0);
  CHECK(h2.cwiseAbs().sum() == doctest::Approx(h2.diagonal().cwiseAbs().sum()));
}

TEST_CASE("pair basis dimensions") {
  for (int n = 1; n <= 20; ++n) {
    const auto pairs = pair_basis(n);
    CHECK(static_cast<int>(pairs.size()) == n * (n + 1) / 2);
    int overtones = 0;
    for (const auto& p : pairs) {
      CHECK(p.m <= p.n);
      overtones += (p.m == p.n);
    }
    CHECK(overtones == n);
  }
  const auto h2 = build_two_exciton_hamiltonian(make_uniform(14));
  CHECK(h2.rows() == 105);
}

TEST_CASE("diagonalize_manifolds on limiting cases") {
  SUBCASE("decoupled dimer gives a permutation T1") {
    const auto basis =
        diagonalize_manifolds(make_dimer(15000.0, 15300.0, 0.0, 0.0, 0.0));
    CHECK(basis.one_exciton_energies(0) == doctest::Approx(15000.0));
    CHECK(basis.one_exciton_energies(1) == doctest::Approx(15300.0));
    CHECK(basis.t1(0, 0) == doctest::Approx(1.0));
    CHECK(basis.t1(0, 1) == doctest::Approx(0.0));
    CHECK(basis.t1(1, 1) == doctest::Approx(1.0));
  }
  SUBCASE("symmetric dimer splits by 2J") {
    const auto basis =
        diagonalize_manifolds(make_dimer(15000.0, 15000.0, 100.0, 0.0, 0.0, 1.0, 1.0));
    CHECK(basis.one_exciton_energies(0) == doctest::Approx(14900.0));
    CHECK(basis.one_exciton_energies(1) == doctest::Approx(15100.0));
    const double r = 1.0 / std::numbers::sqrt2;
    CHECK(std::abs(basis.t1(0, 0)) == doctest::Approx(r));
    CHECK(std::abs(basis.t1(0, 1)) == doctest::Approx(r));
    CHECK(basis.t1(0, 0) * basis.t1(0, 1) < 0.0);  // antisymmetric below
    CHECK(basis.t1(1, 0) * basis.t1(1, 1) > 0.0);
  }
  SUBCASE("14-site manifold sizes") {
    const auto basis = diagonalize_manifolds(make_uniform(14));
    CHECK(basis.n_one_exciton() == 14);
    CHECK(basis.n_two_exciton() == 105);
    CHECK(basis.overtone_count() == 14);
    CHECK(basis.combination_count() == 91);
  }
}

TEST_CASE("transformation matrices are orthonormal and sorted") {
  std::mt19937 rng(71);
  for (int trial = 0; trial < 4; ++trial) {
    const auto spec = make_random_aggregate(rng, 3 + trial % 2);
    const auto basis = diagonalize_manifolds(spec);
    const int ne = basis.n_one_exciton();
    const int nf = basis.n_two_exciton();
    CHECK((basis.t1 * basis.t1.transpose() - Eigen::MatrixXd::Identity(ne, ne))
              .cwiseAbs()
              .maxCoeff() < 1e-10);
    CHECK((basis.t2 * basis.t2.transpose() - Eigen::MatrixXd::Identity(nf, nf))
              .cwiseAbs()
              .maxCoeff() < 1e-10);
    for (int i = 1; i < ne; ++i)
      CHECK(basis.one_exciton_energies(i) >= basis.one_exciton_energies(i - 1));
    for (int i = 1; i < nf; ++i)
      CHECK(basis.two_exciton_energies(i) >= basis.two_exciton_energies(i - 1));
  }
}

TEST_CASE("trace equals eigenvalue sum") {
  std::mt19937 rng(1234);
  for (int trial = 0; trial < 6; ++trial) {
    const auto spec = make_random_aggregate(rng, 2 + trial % 3);
    const auto h1 = build_one_exciton_hamiltonian(spec);
    const auto h2 = build_two_exciton_hamiltonian(spec);
    const auto basis = diagonalize_manifolds(spec);
    CHECK(basis.one_exciton_energies.sum() ==
          doctest::Approx(h1.trace()).epsilon(1e-8));
    CHECK(basis.two_exciton_energies.sum() ==
          doctest::Approx(h2.trace()).epsilon(1e-8));
  }
}

TEST_CASE("decoupling property: f energies are sums of e energies") {
  auto spec = make_dimer(15000.0, 15280.0, 0.0, 0.0, 0.0);
  const auto basis = diagonalize_manifolds(spec);
  for (int f = 0; f < basis.n_two_exciton(); ++f) {
    double best = 1e9;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        best = std::min(best, std::abs(basis.two_exciton_energies(f) -
                                       basis.one_exciton_energies(i) -
                                       basis.one_exciton_energies(j)));
    CHECK(best < 1e-9);
  }
}

TEST_CASE("constant shift of the nonlinearities moves only the f manifold") {
  std::mt19937 rng(99);
  const auto spec = make_random_aggregate(rng, 3);
  auto shifted = spec;
  const double delta = 37.5;
  shifted.overtone_nonlinearity.array() += delta;
  for (int m = 0; m < 3; ++m)
    for (int n = 0; n < 3; ++n)
      if (m != n) shifted.combination_nonlinearity(m, n) += delta;

  const auto a = diagonalize_manifolds(spec);
  const auto b = diagonalize_manifolds(shifted);
  CHECK((a.one_exciton_energies - b.one_exciton_energies).cwiseAbs().maxCoeff() <
        1e-10);
  CHECK(((b.two_exciton_energies - a.two_exciton_energies).array() - delta)
            .abs()
            .maxCoeff() < 1e-8);
}

TEST_CASE("ge dipoles") {
  SUBCASE("symmetric dimer concentrates all strength in one state") {
    const auto basis =
        diagonalize_manifolds(make_dimer(15000.0, 15000.0, 100.0, 0.0, 0.0, 1.0, 1.0));
    CHECK(basis.dip_ge(0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(basis.dip_ge(1) == doctest::Approx(std::numbers::sqrt2));
    CHECK(basis.dip_ge.squaredNorm() == doctest::Approx(2.0));
  }
  SUBCASE("identity transformation returns the site dipoles") {
    const auto spec = make_dimer(15000.0, 15300.0, 0.0, 0.0, 0.0, 1.0, 0.5);
    const auto d = transition_dipoles_ge(spec, Eigen::MatrixXd::Identity(2, 2));
    CHECK(d(0) == 1.0);
    CHECK(d(1) == 0.5);
  }
  SUBCASE("general dimer matches the analytic rotation") {
    const double j = 100.0, de = 300.0;
    const auto spec = make_dimer(15000.0, 15000.0 + de, j, 0.0, 0.0, 1.0, 0.5);
    const auto basis = diagonalize_manifolds(spec);
    const double theta = 0.5 * std::atan2(2.0 * j, de);
    const Eigen::Vector2d lower(std::cos(theta), -std::sin(theta));
    const Eigen::Vector2d upper(std::sin(theta), std::cos(theta));
    const double d0 = std::abs(lower.dot(spec.site_dipoles));
    const double d1 = std::abs(upper.dot(spec.site_dipoles));
    CHECK(std::abs(basis.dip_ge(0)) == doctest::Approx(d0).epsilon(1e-10));
    CHECK(std::abs(basis.dip_ge(1)) == doctest::Approx(d1).epsilon(1e-10));
  }
}

TEST_CASE("ef dipoles") {
  SUBCASE("single-site overtone carries the harmonic-ladder factor") {
    AggregateSpec spec;
    spec.n_sites = 1;
    spec.site_energies = Eigen::VectorXd::Constant(1, 15000.0);
    spec.couplings = Eigen::MatrixXd::Zero(1, 1);
    spec.overtone_nonlinearity = Eigen::VectorXd::Constant(1, -150.0);
    spec.combination_nonlinearity = Eigen::MatrixXd::Zero(1, 1);
    spec.site_dipoles = Eigen::VectorXd::Ones(1);
    const auto basis = diagonalize_manifolds(spec);
    CHECK(basis.dip_ef(0, 0) == doctest::Approx(std::numbers::sqrt2));

    spec.overtone_dipole_scale = 0.0;
    const auto dark = diagonalize_manifolds(spec);
    CHECK(dark.dip_ef(0, 0) == 0.0);
  }
  SUBCASE("decoupled dimer combination state swaps the site dipoles") {
    const auto spec = make_dimer(15000.0, 15300.0, 0.0, 0.0, 0.0, 1.0, 0.5);
    const auto basis = diagonalize_manifolds(spec);
    // decoupled f energies: 30000 (overtone 1), 30300 (combination), 30600
    // (overtone 2); e states ordered (site1, site2)
    CHECK(basis.two_exciton_energies(1) == doctest::Approx(30300.0));
    CHECK(std::abs(basis.dip_ef(1, 0)) == doctest::Approx(0.5));
    CHECK(std::abs(basis.dip_ef(1, 1)) == doctest::Approx(1.0));
  }
  SUBCASE("full contraction matches the Fock-space operator oracle") {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 5; ++trial) {
      const auto spec = make_random_aggregate(rng, 2 + trial % 3);
      const auto basis = diagonalize_manifolds(spec);
      const auto oracle = fock_oracle(spec);
      CHECK((basis.one_exciton_energies - oracle.e_energies).cwiseAbs().maxCoeff() <
            1e-8);
      CHECK((basis.two_exciton_energies - oracle.f_energies).cwiseAbs().maxCoeff() <
            1e-8);
      CHECK((basis.dip_ge - oracle.d_eg).cwiseAbs().maxCoeff() < 1e-9);
      CHECK((basis.dip_ef - oracle.d_fe).cwiseAbs().maxCoeff() < 1e-8);
    }
  }
}

TEST_CASE("dipole contraction round-trips to the site basis") {
  std::mt19937 rng(5);
  const auto spec = make_random_aggregate(rng, 4);
  const auto basis = diagonalize_manifolds(spec);
  const Eigen::MatrixXd site =
      basis.t2.transpose() * basis.dip_ef * basis.t1;
  CHECK((site - site_pair_dipoles(spec)).cwiseAbs().maxCoeff() < 1e-10);
}
