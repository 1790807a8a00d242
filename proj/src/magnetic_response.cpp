#include "gtensor/magnetic_response.hpp"

#include <cmath>
#include <sstream>

#include <boost/math/tools/roots.hpp>

namespace gtensor {

namespace {

// pi_j restricted to a set of rows: rows = V_rows^dag dH V + i (V_rows^dag d V) o (E_row - E_col)
std::array<MatrixXc, 3> momentum_rows(const std::array<MatrixXc, 3>& gradient, const std::array<MatrixXc, 3>& dipole,
                                      const BlochSolution& sol, int first, int count) {
  const MatrixXc& v = sol.states;
  const auto vr = v.middleCols(first, count);
  const int dim = static_cast<int>(v.cols());
  MatrixXc de(count, dim);
  for (int a = 0; a < count; ++a)
    for (int b = 0; b < dim; ++b) de(a, b) = sol.energies[first + a] - sol.energies[b];
  std::array<MatrixXc, 3> out;
  for (int j = 0; j < 3; ++j) {
    out[j] = vr.adjoint() * gradient[j] * v;
    out[j] += (I * (vr.adjoint() * dipole[j] * v).array() * de.array()).matrix();
  }
  return out;
}

// rows of the pair states (possibly re-mixed) against every band, plus 1/(Ebar - E_l)
struct PairRows {
  std::array<MatrixXc, 3> r;  // 2 x dim
  Eigen::VectorXd w;          // zero on the pair bands
};

PairRows pair_rows(const KramersPair& pair, const BlochSolution& sol, const MomentumTable& table, double floor) {
  const int n = pair.bands.n;
  const int dim = static_cast<int>(sol.energies.size());
  const int offset = table.pi[0].rows() == dim ? 0 : n;
  if (table.pi[0].rows() != dim && table.pi[0].rows() != 2)
    throw error("internal: momentum table has unexpected shape");
  // coefficients of the pair states on the two eigenvectors
  const Matrix2c c = sol.states.middleCols(n, 2).adjoint() * pair.states;

  PairRows out;
  for (int j = 0; j < 3; ++j) out.r[j] = c.adjoint() * table.pi[j].middleRows(n - offset, 2);
  out.w.resize(dim);
  for (int l = 0; l < dim; ++l) {
    if (l == n || l == n + 1) {
      out.w[l] = 0;
      continue;
    }
    const double de = pair.pair_energy - sol.energies[l];
    if (std::abs(de) < floor) {
      std::ostringstream msg;
      msg << "near-degenerate intermediate band " << l << " at k = (" << sol.k.x() << ", " << sol.k.y() << ", "
          << sol.k.z() << "): |Ebar - E_l| = " << std::abs(de) << " Ha < energy_floor " << floor;
      throw near_degenerate_intermediate(msg.str());
    }
    out.w[l] = 1.0 / de;
  }
  return out;
}

} // namespace

MomentumTable momentum_elements(const std::array<MatrixXc, 3>& gradient, const std::array<MatrixXc, 3>& dipole,
                                const BlochSolution& sol) {
  return {momentum_rows(gradient, dipole, sol, 0, static_cast<int>(sol.energies.size()))};
}

MomentumTable momentum_elements(const MaterialModel& m, const BlochSolution& sol) {
  return momentum_elements(hamiltonian_gradient(m, sol.k), dipole_matrices(m), sol);
}

MomentumTable pair_momentum_rows(const MaterialModel& m, const BlochSolution& sol, const BandPair& bands) {
  return {momentum_rows(hamiltonian_gradient(m, sol.k), dipole_matrices(m), sol, bands.n, 2)};
}

std::array<Matrix2c, 3> spin_matrices(const KramersPair& pair) {
  const int h = static_cast<int>(pair.states.rows()) / 2;
  const auto up = pair.states.topRows(h);
  const auto dn = pair.states.bottomRows(h);
  const Matrix2c ud = up.adjoint() * dn;
  const Matrix2c du = dn.adjoint() * up;
  std::array<Matrix2c, 3> s;
  s[0] = 0.5 * (ud + du);
  s[1] = 0.5 * (-I * ud + I * du);
  s[2] = 0.5 * (Matrix2c(up.adjoint() * up) - Matrix2c(dn.adjoint() * dn));
  return s;
}

Matrix3d g_from_operators(const std::array<Matrix2c, 3>& a, double factor) {
  const auto& sig = pauli();
  Matrix3d g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g(i, j) = factor * (a[i] * sig[j]).trace().real();
  return g;
}

Matrix3d spin_g(const KramersPair& pair) {
  return g_from_operators(spin_matrices(pair), 2.0);
}

std::array<std::array<Matrix2c, 3>, 3> antisymmetric_inverse_mass(const KramersPair& pair, const BlochSolution& sol,
                                                                  const MomentumTable& table, double energy_floor) {
  const PairRows pr = pair_rows(pair, sol, table, energy_floor);
  std::array<std::array<Matrix2c, 3>, 3> m;
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) m[j][k] = pr.r[j] * pr.w.asDiagonal() * pr.r[k].adjoint();
  std::array<std::array<Matrix2c, 3>, 3> as;
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) as[j][k] = 0.5 * (m[j][k] - m[k][j]);
  return as;
}

std::array<Matrix2c, 3> orbital_matrices(const KramersPair& pair, const BlochSolution& sol, const MomentumTable& table,
                                         double energy_floor, orbital_route route) {
  std::array<Matrix2c, 3> l;
  if (route == orbital_route::luttinger) {
    const auto as = antisymmetric_inverse_mass(pair, sol, table, energy_floor);
    for (int i = 0; i < 3; ++i) {
      l[i].setZero();
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          if (int e = levi_civita(i, j, k)) l[i] += double(e) * as[j][k];
      l[i] *= -0.5 * I;
    }
    return l;
  }

  // |d_j b> = sum_l |l> pi^j_lb / (Ebar - E_l);  L_i = (i/2) eps_ijk <d_j a|(H - Ebar)|d_k b>
  const PairRows pr = pair_rows(pair, sol, table, energy_floor);
  std::array<MatrixXc, 3> dv;
  for (int j = 0; j < 3; ++j) dv[j] = pr.w.asDiagonal() * pr.r[j].adjoint();
  Eigen::VectorXd shift = (sol.energies.array() - pair.pair_energy).matrix();
  for (int i = 0; i < 3; ++i) {
    l[i].setZero();
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        if (int e = levi_civita(i, j, k)) l[i] += double(e) * (dv[j].adjoint() * shift.asDiagonal() * dv[k]);
    l[i] *= 0.5 * I;
  }
  return l;
}

Matrix3d orbital_g(const KramersPair& pair, const BlochSolution& sol, const MomentumTable& table,
                   double energy_floor) {
  return g_from_operators(orbital_matrices(pair, sol, table, energy_floor), 1.0);
}

Svd3 svd3(const Matrix3d& g) {
  Eigen::JacobiSVD<Matrix3d> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Svd3 out;
  out.U = svd.matrixU();
  out.V = svd.matrixV();
  out.sigma = svd.singularValues();
  out.sign = (out.U.determinant() * out.V.determinant()) > 0 ? 1.0 : -1.0;
  return out;
}

GTensorSet g_total(const KramersPair& pair, const BlochSolution& sol, const MomentumTable& table,
                   double energy_floor) {
  GTensorSet g;
  g.ops.S = spin_matrices(pair);
  g.ops.L = orbital_matrices(pair, sol, table, energy_floor);
  g.g_S = g_from_operators(g.ops.S, 2.0);
  g.g_L = g_from_operators(g.ops.L, 1.0);
  g.g_tot = g.g_S + g.g_L;
  g.G = g.g_tot * g.g_tot.transpose();
  g.svd_S = svd3(g.g_S);
  g.svd_L = svd3(g.g_L);
  g.svd_tot = svd3(g.g_tot);
  g.det_gS = g.svd_S.det();
  g.det_gtot = g.svd_tot.det();
  return g;
}

GTensorSet g_total(const MaterialModel& m, const BlochSolution& sol, const KramersPair& pair, double energy_floor) {
  return g_total(pair, sol, pair_momentum_rows(m, sol, pair.bands), energy_floor);
}

Matrix2c pair_zeeman_hamiltonian(const PairOperators& ops, const Vector3d& B) {
  Matrix2c h = Matrix2c::Zero();
  for (int l = 0; l < 3; ++l) h += mu_b * (2.0 * ops.S[l] + ops.L[l]) * B[l];
  return h;
}

FieldResponse zeeman(const GTensorSet& g, const Vector3d& B) {
  FieldResponse r;
  r.B = B;
  r.splitting = mu_b * std::sqrt(std::max(0.0, B.dot(g.G * B)));
  Eigen::SelfAdjointEigenSolver<Matrix2c> es(pair_zeeman_hamiltonian(g.ops, B), Eigen::EigenvaluesOnly);
  r.splitting_direct = es.eigenvalues()[1] - es.eigenvalues()[0];
  if (!(r.splitting > 0)) throw zero_field("zero Zeeman splitting: ground-state moment undefined");
  const Vector3d bp = g.svd_tot.U.transpose() * B;
  r.moment_principal = (mu_b * mu_b / (2.0 * r.splitting)) * g.svd_tot.sigma.array().square().matrix().cwiseProduct(bp);
  r.moment = g.svd_tot.U * r.moment_principal;
  return r;
}

Matrix2c su2_from_rotation(const Matrix3d& r) {
  const Eigen::Quaterniond q(r);
  const double w = q.w(), x = q.x(), y = q.y(), z = q.z();
  Matrix2c u;
  u << cplx(w, -z), cplx(-y, -x), cplx(y, -x), cplx(w, z);
  return u;
}

Matrix3d rotation_from_su2(const Matrix2c& q) {
  const auto& sig = pauli();
  Matrix3d r;
  for (int k = 0; k < 3; ++k)
    for (int j = 0; j < 3; ++j) r(k, j) = 0.5 * (sig[k] * q * sig[j] * q.adjoint()).trace().real();
  return r;
}

Matrix3d procrustes_rotation(const Matrix3d& g, const Matrix3d& target) {
  Eigen::JacobiSVD<Matrix3d> svd(target.transpose() * g, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Matrix3d a = svd.matrixU(), b = svd.matrixV();
  Matrix3d d = Matrix3d::Identity();
  d(2, 2) = (b * a.transpose()).determinant() > 0 ? 1.0 : -1.0;
  return b * d * a.transpose();
}

KramersPair reference_basis(const KramersPair& pair, const Matrix3d& target) {
  return rotate_pair(pair, su2_from_rotation(procrustes_rotation(spin_g(pair), target)));
}

KramersPair gamma_reference_basis(const KramersPair& pair) {
  return reference_basis(pair, Vector3d(2.0 / 3, 2.0 / 3, -2.0 / 3).asDiagonal());
}

AtomResponse atom_response(const MaterialModel& m, const std::string& species, double dipole) {
  const MaterialModel mm = with_dipole(m, species, dipole);
  const MatrixXc h = atom_hamiltonian(mm, species);
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(h);
  const BlochSolution sol{Vector3d::Zero(), es.eigenvalues(), es.eigenvectors()};
  // s doublet below, p_1/2 doublet next (lambda_p > 0 puts p_3/2 above)
  const KramersPair raw = select_pair(sol, BandPair{2, 3}, mm.pair_split_tol);
  const KramersPair pair = reference_basis(raw, Matrix3d::Identity() * (-2.0 / 3.0));

  std::array<MatrixXc, 3> grad;
  for (auto& g : grad) g = MatrixXc::Zero(h.rows(), h.cols());
  const MomentumTable table = momentum_elements(grad, atom_dipole_matrices(mm, species), sol);
  const GTensorSet g = g_total(pair, sol, table);

  AtomResponse r;
  r.species = species;
  r.dipole = dipole;
  r.g_S = g.g_S;
  r.g_L = g.g_L;
  r.g_tot = g.g_tot;
  r.g_J = g.g_tot.trace() / 3.0;
  return r;
}

AtomResponse atomfit(const MaterialModel& m, const std::string& species, double target_g) {
  auto f = [&](double d) { return atom_response(m, species, d).g_J - target_g; };
  const double lo = 0.0, hi = 10.0;
  const double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return atom_response(m, species, lo);
  if (fhi == 0.0) return atom_response(m, species, hi);
  if (flo * fhi > 0) {
    std::ostringstream msg;
    msg << "atomfit: target g = " << target_g << " not bracketed by dipoles in [" << lo << ", " << hi
        << "] Bohr (g_J - target = " << flo << ", " << fhi << ")";
    throw no_bracket(msg.str());
  }
  std::uintmax_t iters = 200;
  const auto root = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi,
                                                      boost::math::tools::eps_tolerance<double>(50), iters);
  return atom_response(m, species, 0.5 * (root.first + root.second));
}

} // namespace gtensor
