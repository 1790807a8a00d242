#pragma once

#include <random>
#include <string>
#include <vector>

#include "gtensor/crystal_model.hpp"

namespace gtensor {

enum class point_group { Oh, Td };

point_group group_of(const MaterialModel& m);
std::string to_string(point_group g);

// proper and improper cubic operations as 3x3 matrices (48 for Oh, 24 for Td)
const std::vector<Matrix3d>& group_operations(point_group g);

// directions on which the spin-density relation of a Kramers pair holds:
// every direction for Oh, the <100> and <111> families for Td
bool direction_applicable(point_group g, const Vector3d& direction, double tol = 1e-9);

// quasi-uniform unit vectors from a subdivided icosahedron (10*4^level + 2 points)
std::vector<Vector3d> icosphere(int level);

// irreducible Oh wedge x >= y >= z >= 0, sampled on a triangular grid with the given divisions
std::vector<Vector3d> wedge_directions(int divisions);

// images of every direction under the group, duplicates removed
std::vector<Vector3d> replicate(const std::vector<Vector3d>& dirs, point_group g, double tol = 1e-9);

Vector3d random_direction(std::mt19937_64& rng);

// FCC special points (G, X, L, K, W, U) and line midpoints (Delta, Sigma, Lambda), Bohr^-1
Vector3d high_symmetry_point(const std::string& label, double lattice_constant);
// unit direction for Delta / Sigma / Lambda
Vector3d named_direction(const std::string& label);

} // namespace gtensor
