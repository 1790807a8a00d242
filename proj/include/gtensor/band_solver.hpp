#pragma once

#include <string>
#include <vector>

#include "gtensor/crystal_model.hpp"

namespace gtensor {

struct BlochSolution {
  Vector3d k;
  Eigen::VectorXd energies;  // ascending, Hartree
  MatrixXc states;           // eigenvectors as columns
};

struct KramersPair {
  Vector3d k;
  BandPair bands;
  Eigen::Matrix<cplx, Eigen::Dynamic, 2> states;  // columns xi, xi_bar
  double pair_energy = 0;                          // (E_n + E_m)/2
  double gap_to_rest = 0;
  double splitting = 0;                            // E_m - E_n

  VectorXc xi() const { return states.col(0); }
  VectorXc xi_bar() const { return states.col(1); }
};

BlochSolution solve(const MaterialModel& m, const Vector3d& k);

// raw pair from the eigenvectors of bands (n, m); split_tol < 0 lifts the
// degeneracy requirement (non-centrosymmetric crystals)
KramersPair select_pair(const BlochSolution& sol, const BandPair& bands, double split_tol);
KramersPair select_pair(const MaterialModel& m, const BlochSolution& sol, const std::string& label);

// re-express the pair in the basis (xi, xi_bar) * q
KramersPair rotate_pair(const KramersPair& p, const Matrix2c& q);

// rotate cur within its 2-space so that <prev|cur> is Hermitian positive
void align_pair(const KramersPair& prev, KramersPair& cur);

std::vector<KramersPair> follow_ray(const MaterialModel& m, const Vector3d& direction,
                                    const std::vector<double>& radii, const std::string& label);

} // namespace gtensor
