#include "gtensor/symmetry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>

namespace gtensor {

point_group group_of(const MaterialModel& m) {
  return m.inversion_symmetric() ? point_group::Oh : point_group::Td;
}

std::string to_string(point_group g) {
  return g == point_group::Oh ? "Oh" : "Td";
}

namespace {

std::vector<Matrix3d> build_group(bool zincblende) {
  std::vector<Matrix3d> ops;
  std::array<int, 3> perm = {0, 1, 2};
  do {
    for (int signs = 0; signs < 8; ++signs) {
      Matrix3d r = Matrix3d::Zero();
      int product = 1;
      for (int i = 0; i < 3; ++i) {
        const int sgn = (signs >> i) & 1 ? -1 : 1;
        r(i, perm[i]) = sgn;
        product *= sgn;
      }
      // Td keeps the tetrahedron (1,1,1),(1,-1,-1),...: even number of sign flips
      if (zincblende && product < 0) continue;
      ops.push_back(r);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return ops;
}

} // namespace

const std::vector<Matrix3d>& group_operations(point_group g) {
  static const std::vector<Matrix3d> oh = build_group(false);
  static const std::vector<Matrix3d> td = build_group(true);
  return g == point_group::Oh ? oh : td;
}

bool direction_applicable(point_group g, const Vector3d& direction, double tol) {
  if (g == point_group::Oh) return true;
  const Vector3d u = direction.normalized().cwiseAbs();
  const bool axis = u.maxCoeff() > 1.0 - tol;
  const bool body = (u - Vector3d::Constant(1.0 / std::sqrt(3.0))).cwiseAbs().maxCoeff() < tol;
  return axis || body;
}

std::vector<Vector3d> icosphere(int level) {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vector3d> v = {{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
                             {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
  for (auto& p : v) p.normalize();
  std::vector<std::array<int, 3>> faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                                           {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                                           {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                                           {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  for (int l = 0; l < level; ++l) {
    std::map<std::pair<int, int>, int> mid;
    auto midpoint = [&](int a, int b) {
      auto key = std::minmax(a, b);
      auto it = mid.find(key);
      if (it != mid.end()) return it->second;
      v.push_back((v[a] + v[b]).normalized());
      const int id = static_cast<int>(v.size()) - 1;
      mid[key] = id;
      return id;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(faces.size() * 4);
    for (const auto& f : faces) {
      const int a = midpoint(f[0], f[1]), b = midpoint(f[1], f[2]), c = midpoint(f[2], f[0]);
      next.push_back({f[0], a, c});
      next.push_back({f[1], b, a});
      next.push_back({f[2], c, b});
      next.push_back({a, b, c});
    }
    faces.swap(next);
  }
  return v;
}

std::vector<Vector3d> wedge_directions(int divisions) {
  const Vector3d x(1, 0, 0), s = Vector3d(1, 1, 0).normalized(), l = Vector3d(1, 1, 1).normalized();
  std::vector<Vector3d> out;
  const int n = std::max(1, divisions);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n - i; ++j) {
      const int k = n - i - j;
      out.push_back((double(i) * x + double(j) * s + double(k) * l).normalized());
    }
  return out;
}

std::vector<Vector3d> replicate(const std::vector<Vector3d>& dirs, point_group g, double tol) {
  std::vector<Vector3d> out;
  std::set<std::array<long long, 3>> seen;
  for (const auto& d : dirs)
    for (const auto& op : group_operations(g)) {
      const Vector3d img = op * d;
      const std::array<long long, 3> key = {std::llround(img.x() / tol), std::llround(img.y() / tol),
                                            std::llround(img.z() / tol)};
      if (seen.insert(key).second) out.push_back(img);
    }
  return out;
}

Vector3d random_direction(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vector3d v;
  do {
    v = Vector3d(n(rng), n(rng), n(rng));
  } while (v.norm() < 1e-12);
  return v.normalized();
}

Vector3d high_symmetry_point(const std::string& label, double lattice_constant) {
  static const std::map<std::string, Vector3d> table = {
    {"G", {0, 0, 0}},        {"Gamma", {0, 0, 0}},    {"X", {1, 0, 0}},           {"L", {0.5, 0.5, 0.5}},
    {"K", {0.75, 0.75, 0}},  {"W", {1, 0.5, 0}},      {"U", {1, 0.25, 0.25}},     {"Delta", {0.5, 0, 0}},
    {"Sigma", {0.375, 0.375, 0}}, {"Lambda", {0.25, 0.25, 0.25}},
  };
  auto it = table.find(label);
  if (it == table.end()) throw validation_error("path", "unknown symmetry point '" + label + "'");
  return (2.0 * M_PI / lattice_constant) * it->second;
}

Vector3d named_direction(const std::string& label) {
  if (label == "Delta") return {1, 0, 0};
  if (label == "Sigma") return Vector3d(1, 1, 0).normalized();
  if (label == "Lambda") return Vector3d(1, 1, 1).normalized();
  throw validation_error("direction", "unknown direction name '" + label + "'");
}

} // namespace gtensor
