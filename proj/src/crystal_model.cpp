#include "gtensor/crystal_model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gtensor {

using json = nlohmann::json;

int orbitals_per_atom(basis_set b) {
  return b == basis_set::sp3 ? 4 : 10;
}

std::string to_string(basis_set b) {
  return b == basis_set::sp3 ? "sp3" : "sp3d5s*";
}

const BandPair& MaterialModel::pair(const std::string& label) const {
  auto it = band_pairs.find(label);
  if (it == band_pairs.end())
    throw validation_error("band_pairs." + label, "band label not configured for " + name);
  return it->second;
}

void MaterialModel::finalize() {
  const double q = lattice_constant / 4.0;
  const int signs[4][3] = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
  const int n = norb();
  for (int j = 0; j < 4; ++j) {
    neighbours[j] = q * Vector3d(signs[j][0], signs[j][1], signs[j][2]);
    hop_blocks[j] = sk_block(neighbours[j], hopping).topLeftCorner(n, n);
  }
}

namespace {

// JSON navigation that reports the dotted key on every failure
const json& need(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object() || !j.contains(key))
    throw validation_error(path.empty() ? key : path + "." + key, "missing key");
  return j.at(key);
}

double need_number(const json& j, const std::string& key, const std::string& path) {
  const json& v = need(j, key, path);
  const std::string full = path.empty() ? key : path + "." + key;
  if (!v.is_number()) throw validation_error(full, "expected a number");
  double x = v.get<double>();
  if (!std::isfinite(x)) throw validation_error(full, "non-finite value");
  return x;
}

struct sk_key {
  const char* name;
  double SkParams::*field;
  bool sp3;
};

const sk_key sk_keys[] = {
  {"ss_sigma", &SkParams::ss_sigma, true},
  {"sp_sigma", &SkParams::sp_sigma, true},
  {"ps_sigma", &SkParams::ps_sigma, true},
  {"pp_sigma", &SkParams::pp_sigma, true},
  {"pp_pi", &SkParams::pp_pi, true},
  {"s*s*_sigma", &SkParams::s_star_s_star_sigma, false},
  {"ss*_sigma", &SkParams::s_s_star_sigma, false},
  {"s*s_sigma", &SkParams::s_star_s_sigma, false},
  {"s*p_sigma", &SkParams::s_star_p_sigma, false},
  {"ps*_sigma", &SkParams::ps_star_sigma, false},
  {"sd_sigma", &SkParams::sd_sigma, false},
  {"ds_sigma", &SkParams::ds_sigma, false},
  {"s*d_sigma", &SkParams::s_star_d_sigma, false},
  {"ds*_sigma", &SkParams::ds_star_sigma, false},
  {"pd_sigma", &SkParams::pd_sigma, false},
  {"pd_pi", &SkParams::pd_pi, false},
  {"dp_sigma", &SkParams::dp_sigma, false},
  {"dp_pi", &SkParams::dp_pi, false},
  {"dd_sigma", &SkParams::dd_sigma, false},
  {"dd_pi", &SkParams::dd_pi, false},
  {"dd_delta", &SkParams::dd_delta, false},
};

} // namespace

MaterialModel parse_material(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw parse_error(std::string("material file: ") + e.what());
  }
  if (!j.is_object()) throw parse_error("material file: top level must be an object");

  MaterialModel m;
  m.name = j.value("name", std::string("unnamed"));
  m.source = j.value("source", std::string());

  double a = need_number(j, "lattice_constant_angstrom", "");
  if (a <= 0) throw validation_error("lattice_constant_angstrom", "lattice_constant must be positive");
  m.lattice_constant = a / bohr_angstrom;

  const json& b = need(j, "basis", "");
  if (!b.is_string()) throw validation_error("basis", "expected a string");
  if (b == "sp3") m.basis = basis_set::sp3;
  else if (b == "sp3d5s*") m.basis = basis_set::sp3d5s_star;
  else throw validation_error("basis", "unknown basis '" + b.get<std::string>() + "'");
  const int n = m.norb();

  const json& sp = need(j, "species", "");
  if (!sp.is_array() || sp.size() != 2)
    throw validation_error("species", "expected two species labels (atom at 0 and at a/4(1,1,1))");
  m.atoms[0] = {sp[0].get<std::string>(), Vector3d::Zero()};
  m.atoms[1] = {sp[1].get<std::string>(), Vector3d::Constant(0.25)};

  const json& on = need(j, "onsite", "");
  const json& soc = need(j, "soc", "");
  const json& dip = need(j, "dipole", "");
  for (const auto& atom : m.atoms) {
    const std::string& s = atom.species;
    if (m.onsite.count(s)) continue;
    const json& os = need(on, s, "onsite");
    if (os.size() != static_cast<size_t>(n))
      throw validation_error("onsite." + s, "expected " + std::to_string(n) + " orbitals for basis " +
                             to_string(m.basis) + ", got " + std::to_string(os.size()));
    Eigen::VectorXd e(n);
    for (int o = 0; o < n; ++o) e[o] = need_number(os, orbital_names[o], "onsite." + s) / hartree_ev;
    m.onsite[s] = e;
    double lam = need_number(need(soc, s, "soc"), "lambda_p_ev", "soc." + s);
    if (lam < 0) throw validation_error("soc." + s + ".lambda_p_ev", "spin-orbit strength must be non-negative");
    m.soc[s] = lam / hartree_ev;
    double d = need_number(need(dip, s, "dipole"), "s_p_bohr", "dipole." + s);
    if (d < 0) throw validation_error("dipole." + s + ".s_p_bohr", "dipole must be non-negative");
    m.dipole[s] = d;
  }

  const std::string pair_key = m.atoms[0].species + "-" + m.atoms[1].species;
  const json& sk = need(need(j, "sk", ""), pair_key, "sk");
  size_t expected = 0;
  for (const auto& key : sk_keys) {
    if (m.basis == basis_set::sp3 && !key.sp3) continue;
    ++expected;
    m.hopping.*(key.field) = need_number(sk, key.name, "sk." + pair_key) / hartree_ev;
  }
  if (sk.size() != expected)
    throw validation_error("sk." + pair_key, "expected " + std::to_string(expected) + " integrals for basis " +
                           to_string(m.basis) + ", got " + std::to_string(sk.size()));

  if (j.contains("band_pairs")) {
    for (const auto& [label, v] : j.at("band_pairs").items()) {
      const std::string path = "band_pairs." + label;
      if (!v.is_array() || v.size() != 2) throw validation_error(path, "expected [n, m]");
      BandPair p{v[0].get<int>(), v[1].get<int>()};
      if (p.n < 0 || p.m != p.n + 1 || p.m >= m.dim())
        throw validation_error(path, "indices must be adjacent, ascending and below " + std::to_string(m.dim()));
      m.band_pairs[label] = p;
    }
  }
  if (j.contains("pair_split_tol_hartree")) {
    m.pair_split_tol = need_number(j, "pair_split_tol_hartree", "");
    if (m.pair_split_tol <= 0) throw validation_error("pair_split_tol_hartree", "must be positive");
  }

  m.finalize();
  verify_band_labels(m);
  return m;
}

void verify_band_labels(const MaterialModel& m) {
  if (m.band_pairs.empty()) return;
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(bloch_hamiltonian(m, Vector3d::Zero()), Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& e = es.eigenvalues();
  const double tol = m.pair_split_tol;
  for (const auto& [label, p] : m.band_pairs) {
    const bool paired = std::abs(e[p.m] - e[p.n]) <= tol;
    const bool below = p.n == 0 || e[p.n] - e[p.n - 1] > tol;
    const bool above = p.m + 1 == m.dim() || e[p.m + 1] - e[p.m] > tol;
    if (!(paired && below && above))
      throw validation_error("band_pairs." + label,
                             "bands (" + std::to_string(p.n) + "," + std::to_string(p.m) +
                             ") do not form an isolated 2-fold level at Gamma");
  }
}

MaterialModel load_material(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open material file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_material(ss.str());
}

MatrixXc onsite_soc_block(int norb, double lambda_p) {
  MatrixXc h = MatrixXc::Zero(2 * norb, 2 * norb);
  if (lambda_p == 0.0) return h;
  const auto& sig = pauli();
  // (L_k)_ab = -i eps_kab over (px,py,pz), S = sigma/2
  for (int k = 0; k < 3; ++k)
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        const int e = levi_civita(k, a, b);
        if (e == 0) continue;
        const cplx lab = -I * double(e);
        for (int s1 = 0; s1 < 2; ++s1)
          for (int s2 = 0; s2 < 2; ++s2)
            h(s1 * norb + px + a, s2 * norb + px + b) += lambda_p * 0.5 * sig[k](s1, s2) * lab;
      }
  return h;
}

MatrixXc bloch_hamiltonian(const MaterialModel& m, const Vector3d& k) {
  const int n = m.norb();
  const int dim = m.dim();
  MatrixXc h = MatrixXc::Zero(dim, dim);
  MatrixXc hab = MatrixXc::Zero(n, n);
  for (int j = 0; j < 4; ++j)
    hab += std::exp(I * k.dot(m.neighbours[j])) * m.hop_blocks[j].cast<cplx>();

  for (int spin = 0; spin < 2; ++spin) {
    const int o = spin * 2 * n;
    for (int atom = 0; atom < 2; ++atom)
      h.diagonal().segment(o + atom * n, n) = m.onsite.at(m.atoms[atom].species).cast<cplx>();
    h.block(o, o + n, n, n) = hab;
    h.block(o + n, o, n, n) = hab.adjoint();
  }
  for (int atom = 0; atom < 2; ++atom) {
    MatrixXc so = onsite_soc_block(n, m.soc.at(m.atoms[atom].species));
    for (int s1 = 0; s1 < 2; ++s1)
      for (int s2 = 0; s2 < 2; ++s2)
        h.block(m.index(s1, atom, 0), m.index(s2, atom, 0), n, n) += so.block(s1 * n, s2 * n, n, n);
  }
  return h;
}

std::array<MatrixXc, 3> hamiltonian_gradient(const MaterialModel& m, const Vector3d& k) {
  const int n = m.norb();
  std::array<MatrixXc, 3> g;
  std::array<cplx, 4> phase;
  for (int j = 0; j < 4; ++j) phase[j] = std::exp(I * k.dot(m.neighbours[j]));
  for (int c = 0; c < 3; ++c) {
    g[c] = MatrixXc::Zero(m.dim(), m.dim());
    MatrixXc hab = MatrixXc::Zero(n, n);
    for (int j = 0; j < 4; ++j)
      hab += (I * m.neighbours[j][c] * phase[j]) * m.hop_blocks[j].cast<cplx>();
    for (int spin = 0; spin < 2; ++spin) {
      const int o = spin * 2 * n;
      g[c].block(o, o + n, n, n) = hab;
      g[c].block(o + n, o, n, n) = hab.adjoint();
    }
  }
  return g;
}

MaterialModel atomic_limit(const MaterialModel& m) {
  MaterialModel out = m;
  out.hopping = SkParams{};
  out.finalize();
  return out;
}

MaterialModel with_soc_scaled(const MaterialModel& m, double factor) {
  MaterialModel out = m;
  for (auto& [s, lam] : out.soc) lam *= factor;
  return out;
}

MaterialModel with_dipole(const MaterialModel& m, const std::string& species, double value) {
  MaterialModel out = m;
  if (!out.dipole.count(species)) throw validation_error("dipole." + species, "unknown species");
  out.dipole[species] = value;
  return out;
}

namespace {

void add_dipoles(std::array<MatrixXc, 3>& d, int offset, double value) {
  for (int c = 0; c < 3; ++c)
    for (int spin = 0; spin < 2; ++spin) {
      const int base = spin * offset;
      d[c](base + s, base + px + c) = value;
      d[c](base + px + c, base + s) = value;
    }
}

} // namespace

std::array<MatrixXc, 3> dipole_matrices(const MaterialModel& m) {
  std::array<MatrixXc, 3> d;
  for (auto& x : d) x = MatrixXc::Zero(m.dim(), m.dim());
  for (int atom = 0; atom < 2; ++atom) {
    const double v = m.dipole.at(m.atoms[atom].species);
    for (int c = 0; c < 3; ++c)
      for (int spin = 0; spin < 2; ++spin) {
        d[c](m.index(spin, atom, s), m.index(spin, atom, px + c)) = v;
        d[c](m.index(spin, atom, px + c), m.index(spin, atom, s)) = v;
      }
  }
  return d;
}

MatrixXc atom_hamiltonian(const MaterialModel& m, const std::string& species) {
  const int n = m.norb();
  if (!m.onsite.count(species)) throw validation_error("onsite." + species, "unknown species");
  MatrixXc h = onsite_soc_block(n, m.soc.at(species));
  for (int spin = 0; spin < 2; ++spin)
    h.diagonal().segment(spin * n, n) += m.onsite.at(species).cast<cplx>();
  return h;
}

std::array<MatrixXc, 3> atom_dipole_matrices(const MaterialModel& m, const std::string& species) {
  const int n = m.norb();
  std::array<MatrixXc, 3> d;
  for (auto& x : d) x = MatrixXc::Zero(2 * n, 2 * n);
  add_dipoles(d, n, m.dipole.at(species));
  return d;
}

double zone_boundary_distance(const MaterialModel& m, const Vector3d& u) {
  const Vector3d a = u.cwiseAbs();
  const double b = 2.0 * M_PI / m.lattice_constant;
  // square {100} faces at b, hexagonal {111} faces at (3/2) b / sqrt(3) along the normal
  return std::min(b / a.maxCoeff(), 1.5 * b / a.sum());
}

} // namespace gtensor
