#pragma once

#include "gtensor/types.hpp"

namespace gtensor {

// orbital order within one atom
enum orbital : int { s = 0, px, py, pz, dxy, dyz, dzx, dx2y2, dz2, s_star };

constexpr int n_orbitals_max = 10;
inline constexpr std::array<const char*, n_orbitals_max> orbital_names = {
  "s", "px", "py", "pz", "dxy", "dyz", "dzx", "dx2-y2", "dz2", "s*"};

// Two-center integrals for a directed bond: the first letter refers to the
// orbital on the origin atom, the second to the orbital on the neighbour.
// Hartree.
struct SkParams {
  double ss_sigma = 0, s_star_s_star_sigma = 0, s_s_star_sigma = 0, s_star_s_sigma = 0;
  double sp_sigma = 0, ps_sigma = 0, s_star_p_sigma = 0, ps_star_sigma = 0;
  double sd_sigma = 0, ds_sigma = 0, s_star_d_sigma = 0, ds_star_sigma = 0;
  double pp_sigma = 0, pp_pi = 0;
  double pd_sigma = 0, pd_pi = 0, dp_sigma = 0, dp_pi = 0;
  double dd_sigma = 0, dd_pi = 0, dd_delta = 0;
};

using SkBlock = Eigen::Matrix<double, n_orbitals_max, n_orbitals_max>;

// E[a][b] = <a on origin | H | b on neighbour at direction cosines (l,m,n)>
SkBlock sk_block(const Vector3d& direction, const SkParams& v);

} // namespace gtensor
