#include "gtensor/band_solver.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace gtensor {

BlochSolution solve(const MaterialModel& m, const Vector3d& k) {
  if (!k.allFinite()) throw validation_error("k", "non-finite wavevector");
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(bloch_hamiltonian(m, k));
  if (es.info() != Eigen::Success) throw error("internal: Hermitian eigensolver did not converge");
  return {k, es.eigenvalues(), es.eigenvectors()};
}

KramersPair select_pair(const BlochSolution& sol, const BandPair& bands, double split_tol) {
  const auto& e = sol.energies;
  const int dim = static_cast<int>(e.size());
  if (bands.n < 0 || bands.m != bands.n + 1 || bands.m >= dim)
    throw validation_error("band_pairs", "invalid pair indices");

  KramersPair p;
  p.k = sol.k;
  p.bands = bands;
  p.states.resize(sol.states.rows(), 2);
  p.states.col(0) = sol.states.col(bands.n);
  p.states.col(1) = sol.states.col(bands.m);
  p.pair_energy = 0.5 * (e[bands.n] + e[bands.m]);
  p.splitting = e[bands.m] - e[bands.n];
  double gap = std::numeric_limits<double>::infinity();
  if (bands.n > 0) gap = std::min(gap, e[bands.n] - e[bands.n - 1]);
  if (bands.m + 1 < dim) gap = std::min(gap, e[bands.m + 1] - e[bands.m]);
  p.gap_to_rest = gap;

  const double floor = std::max(split_tol, 0.0);
  if (gap <= std::max(std::abs(p.splitting), floor) || (split_tol >= 0 && std::abs(p.splitting) > split_tol)) {
    std::ostringstream msg;
    msg.precision(10);
    msg << "pairing ambiguity at k = (" << sol.k.x() << ", " << sol.k.y() << ", " << sol.k.z()
        << ") for bands (" << bands.n << "," << bands.m << "): splitting " << p.splitting
        << " Ha, gap to other bands " << gap << " Ha";
    throw pairing_ambiguity(msg.str());
  }
  return p;
}

KramersPair select_pair(const MaterialModel& m, const BlochSolution& sol, const std::string& label) {
  // without inversion symmetry the pair splits away from special lines
  const double tol = m.inversion_symmetric() ? m.pair_split_tol : -m.pair_split_tol;
  KramersPair p = select_pair(sol, m.pair(label), tol);
  if (!m.inversion_symmetric() && p.gap_to_rest <= m.pair_split_tol)
    throw pairing_ambiguity("pairing ambiguity: third band within pair_split_tol");
  return p;
}

KramersPair rotate_pair(const KramersPair& p, const Matrix2c& q) {
  KramersPair out = p;
  out.states = p.states * q;
  return out;
}

void align_pair(const KramersPair& prev, KramersPair& cur) {
  const Matrix2c overlap = prev.states.adjoint() * cur.states;
  Eigen::JacobiSVD<Matrix2c> svd(overlap, Eigen::ComputeFullU | Eigen::ComputeFullV);
  // overlap = W S V^dag; multiplying by V W^dag leaves W S W^dag >= 0
  cur.states = cur.states * (svd.matrixV() * svd.matrixU().adjoint());
}

std::vector<KramersPair> follow_ray(const MaterialModel& m, const Vector3d& direction,
                                    const std::vector<double>& radii, const std::string& label) {
  const Vector3d u = direction.normalized();
  std::vector<KramersPair> out;
  out.reserve(radii.size());
  for (double r : radii) {
    KramersPair p = select_pair(m, solve(m, r * u), label);
    if (!out.empty()) align_pair(out.back(), p);
    out.push_back(std::move(p));
  }
  return out;
}

} // namespace gtensor
