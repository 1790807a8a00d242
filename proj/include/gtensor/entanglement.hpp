#pragma once

#include <utility>

#include "gtensor/magnetic_response.hpp"
#include "gtensor/symmetry.hpp"

namespace gtensor {

struct SpinDensity {
  Matrix2c rho;
  Matrix2c rho_bar;
};

// partial trace over orbitals of a spin-major state vector
Matrix2c reduce_spin(const VectorXc& state);
SpinDensity reduce_spin(const KramersPair& pair);

// von Neumann entropy in bits
double entropy(const Matrix2c& rho);

// pair basis rotated by the right singular vectors of g_S: g_S -> U Sigma, so the
// first state's spin polarisation is proportional to Sigma_zz
KramersPair v_aligned_basis(const KramersPair& pair);

// basis used for the entanglement checks: V-aligned when the pair is degenerate
// within split_tol, raw eigenstates otherwise
KramersPair entanglement_basis(const KramersPair& pair, double split_tol = 1e-6);

// |rho_bar - sigma_y rho^T sigma_y|_F in the entanglement basis
double check_lemma(const KramersPair& pair, point_group g, double split_tol = 1e-6);

// entropies of both pair states at (or near) a det(g_S) = 0 point
std::pair<double, double> verify_theorem2(const KramersPair& pair, point_group g, double split_tol = 1e-6);

struct CardinalEntropies {
  double plus = 0, minus = 0, plus_i = 0, minus_i = 0;
};

// (xi' +- xi_bar')/sqrt2 and (xi' +- i xi_bar')/sqrt2 in the V-aligned basis
CardinalEntropies cardinal_entropies(const KramersPair& pair);

} // namespace gtensor
