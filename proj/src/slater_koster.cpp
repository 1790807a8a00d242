#include "gtensor/slater_koster.hpp"

#include <cmath>

namespace gtensor {

namespace {

// p (rows x,y,z) on origin to d (cols xy,yz,zx,x2-y2,z2) on neighbour
Eigen::Matrix<double, 3, 5> pd_block(double l, double m, double n, double vs, double vp) {
  const double s3 = std::sqrt(3.0);
  const double l2 = l * l, m2 = m * m, n2 = n * n;
  Eigen::Matrix<double, 3, 5> b;
  b(0, 0) = s3 * l2 * m * vs + m * (1 - 2 * l2) * vp;
  b(0, 1) = s3 * l * m * n * vs - 2 * l * m * n * vp;
  b(0, 2) = s3 * l2 * n * vs + n * (1 - 2 * l2) * vp;
  b(0, 3) = s3 / 2 * l * (l2 - m2) * vs + l * (1 - l2 + m2) * vp;
  b(0, 4) = l * (n2 - (l2 + m2) / 2) * vs - s3 * l * n2 * vp;
  b(1, 0) = s3 * m2 * l * vs + l * (1 - 2 * m2) * vp;
  b(1, 1) = s3 * m2 * n * vs + n * (1 - 2 * m2) * vp;
  b(1, 2) = s3 * l * m * n * vs - 2 * l * m * n * vp;
  b(1, 3) = s3 / 2 * m * (l2 - m2) * vs - m * (1 + l2 - m2) * vp;
  b(1, 4) = m * (n2 - (l2 + m2) / 2) * vs - s3 * m * n2 * vp;
  b(2, 0) = s3 * l * m * n * vs - 2 * l * m * n * vp;
  b(2, 1) = s3 * n2 * m * vs + m * (1 - 2 * n2) * vp;
  b(2, 2) = s3 * n2 * l * vs + l * (1 - 2 * n2) * vp;
  b(2, 3) = s3 / 2 * n * (l2 - m2) * vs - n * (l2 - m2) * vp;
  b(2, 4) = n * (n2 - (l2 + m2) / 2) * vs + s3 * n * (l2 + m2) * vp;
  return b;
}

// s-like orbital on one side, d on the other; sign is even so no reversal needed
Eigen::Matrix<double, 1, 5> sd_row(double l, double m, double n, double v) {
  const double s3 = std::sqrt(3.0);
  const double l2 = l * l, m2 = m * m, n2 = n * n;
  Eigen::Matrix<double, 1, 5> r;
  r << s3 * l * m * v, s3 * m * n * v, s3 * n * l * v, s3 / 2 * (l2 - m2) * v, (n2 - (l2 + m2) / 2) * v;
  return r;
}

} // namespace

SkBlock sk_block(const Vector3d& direction, const SkParams& v) {
  const Vector3d u = direction.normalized();
  const double l = u.x(), m = u.y(), n = u.z();
  const double l2 = l * l, m2 = m * m, n2 = n * n;
  const double s3 = std::sqrt(3.0);
  SkBlock e = SkBlock::Zero();

  const int s_idx[2] = {s, s_star};
  const double vss[2][2] = {{v.ss_sigma, v.s_s_star_sigma}, {v.s_star_s_sigma, v.s_star_s_star_sigma}};
  const double vsp[2] = {v.sp_sigma, v.s_star_p_sigma};
  const double vps[2] = {v.ps_sigma, v.ps_star_sigma};
  const double vsd[2] = {v.sd_sigma, v.s_star_d_sigma};
  const double vds[2] = {v.ds_sigma, v.ds_star_sigma};
  const Vector3d dc(l, m, n);

  for (int a = 0; a < 2; ++a) {
    const int i = s_idx[a];
    for (int b = 0; b < 2; ++b) e(i, s_idx[b]) = vss[a][b];
    e.block<1, 3>(i, px) = (dc * vsp[a]).transpose();
    // p on origin, s on neighbour: odd parity flips the sign
    e.block<3, 1>(px, i) = -dc * vps[a];
    e.block<1, 5>(i, dxy) = sd_row(l, m, n, vsd[a]);
    e.block<5, 1>(dxy, i) = sd_row(l, m, n, vds[a]).transpose();
  }

  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      e(px + i, px + j) = dc[i] * dc[j] * (v.pp_sigma - v.pp_pi) + (i == j ? v.pp_pi : 0.0);

  e.block<3, 5>(px, dxy) = pd_block(l, m, n, v.pd_sigma, v.pd_pi);
  e.block<5, 3>(dxy, px) = -pd_block(l, m, n, v.dp_sigma, v.dp_pi).transpose();

  const double vs = v.dd_sigma, vp = v.dd_pi, vd = v.dd_delta;
  Eigen::Matrix<double, 5, 5> d;
  d(0, 0) = 3 * l2 * m2 * vs + (l2 + m2 - 4 * l2 * m2) * vp + (n2 + l2 * m2) * vd;
  d(1, 1) = 3 * m2 * n2 * vs + (m2 + n2 - 4 * m2 * n2) * vp + (l2 + m2 * n2) * vd;
  d(2, 2) = 3 * n2 * l2 * vs + (n2 + l2 - 4 * n2 * l2) * vp + (m2 + n2 * l2) * vd;
  d(0, 1) = 3 * l * m2 * n * vs + l * n * (1 - 4 * m2) * vp + l * n * (m2 - 1) * vd;
  d(0, 2) = 3 * l2 * m * n * vs + m * n * (1 - 4 * l2) * vp + m * n * (l2 - 1) * vd;
  d(1, 2) = 3 * m * n2 * l * vs + m * l * (1 - 4 * n2) * vp + m * l * (n2 - 1) * vd;
  d(0, 3) = 1.5 * l * m * (l2 - m2) * vs + 2 * l * m * (m2 - l2) * vp + 0.5 * l * m * (l2 - m2) * vd;
  d(1, 3) = 1.5 * m * n * (l2 - m2) * vs - m * n * (1 + 2 * (l2 - m2)) * vp + m * n * (1 + (l2 - m2) / 2) * vd;
  d(2, 3) = 1.5 * n * l * (l2 - m2) * vs + n * l * (1 - 2 * (l2 - m2)) * vp - n * l * (1 - (l2 - m2) / 2) * vd;
  d(0, 4) = s3 * l * m * (n2 - (l2 + m2) / 2) * vs - 2 * s3 * l * m * n2 * vp + s3 / 2 * l * m * (1 + n2) * vd;
  d(1, 4) = s3 * m * n * (n2 - (l2 + m2) / 2) * vs + s3 * m * n * (l2 + m2 - n2) * vp - s3 / 2 * m * n * (l2 + m2) * vd;
  d(2, 4) = s3 * l * n * (n2 - (l2 + m2) / 2) * vs + s3 * l * n * (l2 + m2 - n2) * vp - s3 / 2 * l * n * (l2 + m2) * vd;
  d(3, 3) = 0.75 * std::pow(l2 - m2, 2) * vs + (l2 + m2 - std::pow(l2 - m2, 2)) * vp + (n2 + std::pow(l2 - m2, 2) / 4) * vd;
  d(3, 4) = s3 / 2 * (l2 - m2) * (n2 - (l2 + m2) / 2) * vs + s3 * n2 * (m2 - l2) * vp + s3 / 4 * (1 + n2) * (l2 - m2) * vd;
  d(4, 4) = std::pow(n2 - (l2 + m2) / 2, 2) * vs + 3 * n2 * (l2 + m2) * vp + 0.75 * std::pow(l2 + m2, 2) * vd;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < i; ++j) d(i, j) = d(j, i);
  e.block<5, 5>(dxy, dxy) = d;
  return e;
}

} // namespace gtensor
