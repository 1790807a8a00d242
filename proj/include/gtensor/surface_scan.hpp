#pragma once

#include <string>
#include <vector>

#include "gtensor/magnetic_response.hpp"
#include "gtensor/symmetry.hpp"

namespace gtensor {

enum class which_det { gS, gtot };
std::string to_string(which_det w);
which_det parse_which_det(const std::string& s);

struct ScanConfig {
  int n_coarse = 200;
  double bisect_tol = 1e-6;       // Bohr^-1
  double det_tol = 1e-6;          // |det| required at a reported root
  double energy_floor = default_energy_floor;
  double r_max_multiplier = 1.0;  // > 1 lets rays leave the first zone (extended mode)
  bool refine_touches = true;     // resolve same-sign dips of |det| between coarse samples
};

struct Crossing {
  double radius = 0;
  which_det which = which_det::gS;
  double bracket_width = 0;
  int slope_sign = 0;        // +1 when det goes from negative to positive with increasing radius
  double det_at_root = 0;
};

struct ScanFailure {
  double r_lo = 0, r_hi = 0;
  std::string reason;
};

struct RayResult {
  Vector3d direction;
  double r_max = 0;
  double zone_distance = 0;
  bool clipped = false;      // requested r_max exceeded the allowed range
  std::vector<Crossing> crossings;
  std::vector<ScanFailure> failures;
  double det_at_start = 0;
  double det_at_end = 0;
  int evaluations = 0;
};

// det(g_S) or det(g_tot) of the labelled pair at k; sign from det(U) det(V)
double pair_det(const MaterialModel& m, const std::string& band, const Vector3d& k, which_det which,
                double energy_floor = default_energy_floor);

// r_max <= 0 means "up to the zone boundary"
RayResult scan_ray(const MaterialModel& m, const std::string& band, const Vector3d& direction, double r_max,
                   which_det which, const ScanConfig& cfg = {});

struct SurfacePoint {
  Vector3d k;
  int dir_index = 0;
  int ordinal = 0;           // crossing number along its ray
  int op_index = 0;          // symmetry image index (0 = scanned ray)
  which_det which = which_det::gS;
  int slope_sign = 0;
  bool beyond_zone = false;
};

struct SurfaceCloud {
  std::string material;
  std::string band;
  which_det which = which_det::gS;
  std::vector<SurfacePoint> points;
  std::vector<RayResult> rays;
  bool symmetry_ops_applied = false;
  int failed_rays = 0;
};

enum class ray_sampling { icosphere, wedge, explicit_list };

struct RaySet {
  ray_sampling kind = ray_sampling::icosphere;
  int level = 4;                      // icosphere subdivision level or wedge divisions
  std::vector<Vector3d> directions;   // explicit_list only
};

enum class execution { serial, parallel };

std::vector<Vector3d> ray_directions(const RaySet& set);

// workers <= 0 uses the OpenMP default
SurfaceCloud build_surface(const MaterialModel& m, const std::string& band, which_det which, const RaySet& rays,
                           const ScanConfig& cfg = {}, execution exec = execution::parallel, int workers = 0);

enum class cloud_format { csv, ply };
cloud_format parse_cloud_format(const std::string& s);

// header lines are written as comments ("# ..." in CSV, "comment ..." in PLY)
void export_cloud(const SurfaceCloud& cloud, cloud_format format, const std::string& path,
                  const std::vector<std::string>& header = {});
std::vector<SurfacePoint> read_cloud_csv(const std::string& path);

} // namespace gtensor
