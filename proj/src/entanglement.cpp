#include "gtensor/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gtensor {

Matrix2c reduce_spin(const VectorXc& state) {
  const Eigen::Index h = state.size() / 2;
  const auto up = state.head(h);
  const auto dn = state.tail(h);
  Matrix2c rho;
  rho(0, 0) = up.squaredNorm();
  rho(1, 1) = dn.squaredNorm();
  rho(0, 1) = dn.dot(up);  // sum_o psi[up,o] conj(psi[dn,o])
  rho(1, 0) = std::conj(rho(0, 1));
  return rho;
}

SpinDensity reduce_spin(const KramersPair& pair) {
  return {reduce_spin(pair.xi()), reduce_spin(pair.xi_bar())};
}

double entropy(const Matrix2c& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix2c> es(rho, Eigen::EigenvaluesOnly);
  double s = 0;
  for (int i = 0; i < 2; ++i) {
    const double p = std::clamp(es.eigenvalues()[i], 0.0, 1.0);
    if (p > 0) s -= p * std::log2(p);
  }
  return s;
}

KramersPair v_aligned_basis(const KramersPair& pair) {
  const Svd3 svd = svd3(spin_g(pair));
  Matrix3d r = svd.V;
  if (r.determinant() < 0) r.col(2) *= -1.0;
  return rotate_pair(pair, su2_from_rotation(r));
}

KramersPair entanglement_basis(const KramersPair& pair, double split_tol) {
  return std::abs(pair.splitting) <= split_tol ? v_aligned_basis(pair) : pair;
}

namespace {

void require_applicable(const KramersPair& pair, point_group g) {
  if (pair.k.norm() == 0.0 || direction_applicable(g, pair.k)) return;
  std::ostringstream msg;
  msg << "direction (" << pair.k.x() << ", " << pair.k.y() << ", " << pair.k.z() << ") is not a listed "
      << to_string(g) << " direction for the spin-density relation";
  throw direction_not_applicable(msg.str());
}

} // namespace

double check_lemma(const KramersPair& pair, point_group g, double split_tol) {
  require_applicable(pair, g);
  const SpinDensity d = reduce_spin(entanglement_basis(pair, split_tol));
  const Matrix2c& sy = pauli()[1];
  return (d.rho_bar - sy * d.rho.transpose() * sy).norm();
}

std::pair<double, double> verify_theorem2(const KramersPair& pair, point_group g, double split_tol) {
  require_applicable(pair, g);
  const SpinDensity d = reduce_spin(entanglement_basis(pair, split_tol));
  return {entropy(d.rho), entropy(d.rho_bar)};
}

CardinalEntropies cardinal_entropies(const KramersPair& pair) {
  const KramersPair p = v_aligned_basis(pair);
  const VectorXc a = p.xi(), b = p.xi_bar();
  const double r = 1.0 / std::sqrt(2.0);
  CardinalEntropies c;
  c.plus = entropy(reduce_spin(VectorXc(r * (a + b))));
  c.minus = entropy(reduce_spin(VectorXc(r * (a - b))));
  c.plus_i = entropy(reduce_spin(VectorXc(r * (a + I * b))));
  c.minus_i = entropy(reduce_spin(VectorXc(r * (a - I * b))));
  return c;
}

} // namespace gtensor
