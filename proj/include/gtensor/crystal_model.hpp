#pragma once

#include <map>
#include <string>
#include <vector>

#include "gtensor/slater_koster.hpp"
#include "gtensor/types.hpp"

namespace gtensor {

enum class basis_set { sp3, sp3d5s_star };

int orbitals_per_atom(basis_set b);
std::string to_string(basis_set b);

// 0-based ascending band indices of a labelled pair
struct BandPair {
  int n = 0;
  int m = 1;
};

struct Atom {
  std::string species;
  Vector3d fractional;   // in units of the cubic lattice constant
};

struct MaterialModel {
  std::string name;
  std::string source;
  double lattice_constant = 0;  // Bohr
  basis_set basis = basis_set::sp3d5s_star;
  std::array<Atom, 2> atoms;
  std::map<std::string, Eigen::VectorXd> onsite;  // per species, Hartree, per orbital
  SkParams hopping;                               // bond from atom 0 to atom 1, Hartree
  std::map<std::string, double> soc;              // lambda_p per species, Hartree
  std::map<std::string, double> dipole;           // <s|d|p> per species, Bohr
  std::map<std::string, BandPair> band_pairs;
  double pair_split_tol = 1e-6;                   // Hartree

  // derived in finalize()
  std::array<Vector3d, 4> neighbours;             // atom 0 -> atom 1 bond vectors, Bohr
  std::array<Eigen::MatrixXd, 4> hop_blocks;

  int norb() const { return orbitals_per_atom(basis); }
  int dim() const { return 4 * norb(); }
  bool inversion_symmetric() const { return atoms[0].species == atoms[1].species; }
  int index(int spin, int atom, int orb) const { return spin * 2 * norb() + atom * norb() + orb; }
  const BandPair& pair(const std::string& label) const;

  // recomputes the bond data; call after editing parameters
  void finalize();
};

MaterialModel load_material(const std::string& path);
MaterialModel parse_material(const std::string& json_text);
// each labelled pair must be an isolated Kramers doublet at Gamma
void verify_band_labels(const MaterialModel& m);

MatrixXc bloch_hamiltonian(const MaterialModel& m, const Vector3d& k);
std::array<MatrixXc, 3> hamiltonian_gradient(const MaterialModel& m, const Vector3d& k);

// copy with every inter-atomic hopping zeroed
MaterialModel atomic_limit(const MaterialModel& m);
MaterialModel with_soc_scaled(const MaterialModel& m, double factor);
MaterialModel with_dipole(const MaterialModel& m, const std::string& species, double value);

// lambda_p L.S on the p shell of one atom, as a (2 norb)x(2 norb) spin-major block
MatrixXc onsite_soc_block(int norb, double lambda_p);

// intra-atomic position operator components over the full crystal basis
std::array<MatrixXc, 3> dipole_matrices(const MaterialModel& m);

// isolated single atom of the given species: Hamiltonian and dipoles of size 2 norb
MatrixXc atom_hamiltonian(const MaterialModel& m, const std::string& species);
std::array<MatrixXc, 3> atom_dipole_matrices(const MaterialModel& m, const std::string& species);

// distance from Gamma to the FCC zone boundary along unit direction u
double zone_boundary_distance(const MaterialModel& m, const Vector3d& u);

} // namespace gtensor
