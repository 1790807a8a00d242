#include <doctest.h>

#include <random>

#include "gtensor/band_solver.hpp"
#include "gtensor/magnetic_response.hpp"
#include "gtensor/symmetry.hpp"
#include "support.hpp"

using namespace gtensor;
using testing_support::material;

TEST_CASE("solve: eigen-decomposition contract") {
  const MaterialModel si = material("Si");
  std::mt19937_64 rng(21);
  const Vector3d k = testing_support::random_k(rng);
  const BlochSolution sol = solve(si, k);
  const MatrixXc h = bloch_hamiltonian(si, k);
  for (int i = 0; i + 1 < sol.energies.size(); ++i) CHECK(sol.energies[i] <= sol.energies[i + 1]);
  for (int i = 0; i < si.dim(); ++i)
    CHECK((h * sol.states.col(i) - sol.energies[i] * sol.states.col(i)).norm() < 1e-10);
  CHECK((sol.states.adjoint() * sol.states - MatrixXc::Identity(si.dim(), si.dim())).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("solve: Gamma-point valence multiplets") {
  const MaterialModel si = material("Si");
  const MaterialModel ge = material("Ge");
  auto gap = [](const MaterialModel& m) {
    const Eigen::VectorXd e = solve(m, Vector3d::Zero()).energies;
    // Gamma8+ is bands 4..7, Gamma7+ bands 2..3
    CHECK(std::abs(e[7] - e[4]) < 1e-10);
    CHECK(std::abs(e[3] - e[2]) < 1e-10);
    CHECK(e[4] - e[3] > 1e-4);
    return e[4] - e[3];
  };
  const double si_so = gap(si), ge_so = gap(ge);
  CHECK(ge_so > si_so);

  const MaterialModel bare = with_soc_scaled(si, 0.0);
  std::mt19937_64 rng(4);
  const Eigen::VectorXd e = solve(bare, testing_support::random_k(rng)).energies;
  for (int b = 0; b < bare.dim(); b += 2) CHECK(std::abs(e[b + 1] - e[b]) < 1e-12);
}

TEST_CASE("select_pair") {
  const MaterialModel si = material("Si");
  const KramersPair p = select_pair(si, solve(si, Vector3d::Zero()), "split-off");
  CHECK(std::abs(p.splitting) < 1e-10);
  CHECK(std::abs(p.xi().dot(p.xi_bar())) < 1e-10);
  CHECK(p.xi().norm() == doctest::Approx(1.0));

  SUBCASE("first-conduction pair is well defined along a ray out to half of Gamma-X") {
    std::mt19937_64 rng(1);
    const Vector3d u = random_direction(rng);
    const double half = 0.5 * high_symmetry_point("X", si.lattice_constant).norm();
    for (int i = 0; i <= 100; ++i) {
      const KramersPair q = select_pair(si, solve(si, half * i / 100.0 * u), "first-conduction");
      CHECK(q.gap_to_rest > si.pair_split_tol);
      CHECK(std::abs(q.splitting) <= si.pair_split_tol);
    }
  }
  SUBCASE("third band inside the tolerance is ambiguous") {
    // X1 conduction minimum is fourfold with spin
    const Vector3d x = high_symmetry_point("X", si.lattice_constant);
    CHECK_THROWS_AS(select_pair(si, solve(si, x), "first-conduction"), pairing_ambiguity);
    BlochSolution fake{Vector3d::Zero(), Eigen::VectorXd::LinSpaced(6, 0, 5), MatrixXc::Identity(6, 6)};
    fake.energies[3] = fake.energies[2] + 1e-7;
    fake.energies[4] = fake.energies[3] + 5e-7;
    CHECK_THROWS_AS(select_pair(fake, BandPair{2, 3}, 1e-6), pairing_ambiguity);
  }
  SUBCASE("unknown label") {
    CHECK_THROWS_AS(select_pair(si, solve(si, Vector3d::Zero()), "third-conduction"), validation_error);
  }
  SUBCASE("selection is stable under small displacements") {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 10; ++i) {
      const Vector3d k = testing_support::random_k(rng, 0.2);
      const Vector3d d = 1e-4 * random_direction(rng);
      const KramersPair a = select_pair(si, solve(si, k), "first-conduction");
      const KramersPair b = select_pair(si, solve(si, k + d), "first-conduction");
      CHECK(std::abs(a.pair_energy - b.pair_energy) < 1e-4);
    }
  }
}

TEST_CASE("follow_ray: maximal-overlap gauge") {
  const MaterialModel si = material("Si");
  std::mt19937_64 rng(17);
  const Vector3d u = random_direction(rng);
  std::vector<double> radii;
  for (int i = 0; i <= 100; ++i) radii.push_back(1e-3 * i);
  const auto pairs = follow_ray(si, u, radii, "split-off");
  for (size_t i = 1; i < pairs.size(); ++i) {
    const Matrix2c o = pairs[i - 1].states.adjoint() * pairs[i].states;
    CHECK(std::abs(o(0, 0)) > 0.99);
    CHECK(std::abs(o(1, 1)) > 0.99);
    CHECK(std::abs(pairs[i].pair_energy - pairs[i - 1].pair_energy) < 1e-3);
  }

  std::vector<double> reversed(radii.rbegin(), radii.rend());
  const auto back = follow_ray(si, u, reversed, "split-off");
  for (size_t i = 0; i < radii.size(); ++i) {
    const Svd3 a = svd3(spin_g(pairs[i]));
    const Svd3 b = svd3(spin_g(back[radii.size() - 1 - i]));
    CHECK((a.sigma - b.sigma).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(a.det() == doctest::Approx(b.det()).epsilon(1e-9));
  }

  const auto delta = follow_ray(si, Vector3d(1, 0, 0), radii, "split-off");
  for (const auto& p : delta) CHECK(std::abs(p.splitting) < 1e-10);
}
