#pragma once

#include <string>

#include "gtensor/band_solver.hpp"

namespace gtensor {

constexpr double default_energy_floor = 1e-5;  // Hartree

// <u_a| pi_j |u_b> over all bands, j = x,y,z
struct MomentumTable {
  std::array<MatrixXc, 3> pi;
};

MomentumTable momentum_elements(const std::array<MatrixXc, 3>& gradient,
                                const std::array<MatrixXc, 3>& dipole, const BlochSolution& sol);
MomentumTable momentum_elements(const MaterialModel& m, const BlochSolution& sol);

// only the rows of the two pair bands; enough for the orbital moment
MomentumTable pair_momentum_rows(const MaterialModel& m, const BlochSolution& sol, const BandPair& bands);

struct PairOperators {
  std::array<Matrix2c, 3> S;
  std::array<Matrix2c, 3> L;
};

enum class orbital_route { luttinger, berry };

std::array<Matrix2c, 3> spin_matrices(const KramersPair& pair);
Matrix3d spin_g(const KramersPair& pair);

// (1/m*)^AS_jk projected on the pair; entry [j][k] is a 2x2 matrix
std::array<std::array<Matrix2c, 3>, 3> antisymmetric_inverse_mass(const KramersPair& pair, const BlochSolution& sol,
                                                                  const MomentumTable& table,
                                                                  double energy_floor = default_energy_floor);
std::array<Matrix2c, 3> orbital_matrices(const KramersPair& pair, const BlochSolution& sol, const MomentumTable& table,
                                         double energy_floor = default_energy_floor,
                                         orbital_route route = orbital_route::luttinger);
Matrix3d orbital_g(const KramersPair& pair, const BlochSolution& sol, const MomentumTable& table,
                   double energy_floor = default_energy_floor);

// g_ij = Tr(A_i sigma_j)
Matrix3d g_from_operators(const std::array<Matrix2c, 3>& a, double factor = 1.0);

struct Svd3 {
  Matrix3d U;
  Vector3d sigma;  // descending, >= 0
  Matrix3d V;
  double sign = 1;  // det(U) det(V)
  double det() const { return sign * sigma.prod(); }
};

Svd3 svd3(const Matrix3d& g);

struct GTensorSet {
  Matrix3d g_S, g_L, g_tot, G;
  Svd3 svd_S, svd_L, svd_tot;
  double det_gS = 0, det_gtot = 0;
  PairOperators ops;
  std::string basis_convention = "pair(xi,xi_bar)";
};

GTensorSet g_total(const KramersPair& pair, const BlochSolution& sol, const MomentumTable& table,
                   double energy_floor = default_energy_floor);
// convenience: full evaluation at the pair's own k
GTensorSet g_total(const MaterialModel& m, const BlochSolution& sol, const KramersPair& pair,
                   double energy_floor = default_energy_floor);

struct FieldResponse {
  Vector3d B;
  double splitting = 0;          // mu_B sqrt(B G B)
  double splitting_direct = 0;   // from diagonalising mu_B sum_l (2 S_l + L_l) B_l
  Vector3d moment_principal;     // mu_B^2 Sigma_ii^2 B'_i / (2 dE), B' = U^T B
  Vector3d moment;               // same moment in lab axes
};

FieldResponse zeeman(const GTensorSet& g, const Vector3d& B);
Matrix2c pair_zeeman_hamiltonian(const PairOperators& ops, const Vector3d& B);

// SU(2) <-> SO(3): q sigma_j q^dag = sum_k R_kj sigma_k, so a basis change P -> P q maps g -> g R
Matrix2c su2_from_rotation(const Matrix3d& r);
Matrix3d rotation_from_su2(const Matrix2c& q);

// R in SO(3) minimising |g R - target|_F
Matrix3d procrustes_rotation(const Matrix3d& g, const Matrix3d& target);
// pair re-expressed so that its g_S is as close as possible to target
KramersPair reference_basis(const KramersPair& pair, const Matrix3d& target);
// the |1/2,+-1/2>-like basis at Gamma where g_S ~ diag(2/3, 2/3, -2/3)
KramersPair gamma_reference_basis(const KramersPair& pair);

struct AtomResponse {
  std::string species;
  double dipole = 0;   // Bohr
  double g_J = 0;      // tr(g_tot)/3 in the Lande frame
  Matrix3d g_S, g_L, g_tot;  // in the frame where g_S ~ -(2/3) I
};

// j = 1/2 doublet of an isolated atom of the given species at the given dipole
AtomResponse atom_response(const MaterialModel& m, const std::string& species, double dipole);
// dipole for which the atomic j=1/2 doublet has g_J = target_g; root bracketed in [0, 10] Bohr
AtomResponse atomfit(const MaterialModel& m, const std::string& species, double target_g = 2.0 / 3.0);

} // namespace gtensor
