#include "gtensor/surface_scan.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gtensor {

std::string to_string(which_det w) {
  return w == which_det::gS ? "gs" : "gtot";
}

which_det parse_which_det(const std::string& s) {
  if (s == "gs" || s == "gS") return which_det::gS;
  if (s == "gtot") return which_det::gtot;
  throw validation_error("det", "expected gs or gtot, got '" + s + "'");
}

double pair_det(const MaterialModel& m, const std::string& band, const Vector3d& k, which_det which,
                double energy_floor) {
  const BlochSolution sol = solve(m, k);
  const KramersPair pair = select_pair(m, sol, band);
  if (which == which_det::gS) return svd3(spin_g(pair)).det();
  return g_total(m, sol, pair, energy_floor).det_gtot;
}

namespace {

int sign_of(double x) {
  return (x > 0) - (x < 0);
}

struct RayScanner {
  const MaterialModel& m;
  const std::string& band;
  Vector3d u;
  which_det which;
  const ScanConfig& cfg;
  RayResult& out;

  double det(double r) {
    ++out.evaluations;
    return pair_det(m, band, r * u, which, cfg.energy_floor);
  }

  // bisection on the sign of det; stops once the bracket is below bisect_tol
  // and det at the midpoint is below det_tol (or the bracket is exhausted)
  void bisect(double lo, double hi, double dlo) {
    auto f = [&](double r) { return det(r); };
    const double floor_width = 1e-14 * std::max(1.0, hi);
    auto done = [&](double a, double b) {
      if (b - a > cfg.bisect_tol) return false;
      if (b - a < floor_width) return true;
      return std::abs(f(0.5 * (a + b))) < cfg.det_tol;
    };
    try {
      auto br = boost::math::tools::bisect(f, lo, hi, done);
      Crossing c;
      c.radius = 0.5 * (br.first + br.second);
      c.which = which;
      c.bracket_width = br.second - br.first;
      c.slope_sign = dlo < 0 ? 1 : -1;
      c.det_at_root = f(c.radius);
      out.crossings.push_back(c);
    } catch (const physics_error& e) {
      out.failures.push_back({lo, hi, std::string("bisection: ") + e.what()});
    }
  }

  // a same-sign local minimum of |det| may hide a pair of crossings
  void refine_touch(double lo, double hi, int s) {
    auto g = [&](double r) { return s * det(r); };
    try {
      std::uintmax_t iters = 200;
      auto mn = boost::math::tools::brent_find_minima(g, lo, hi, 40, iters);
      if (mn.second >= 0) return;
      bisect(lo, mn.first, s);
      bisect(mn.first, hi, -s);
    } catch (const physics_error& e) {
      out.failures.push_back({lo, hi, std::string("touch refinement: ") + e.what()});
    }
  }
};

} // namespace

RayResult scan_ray(const MaterialModel& m, const std::string& band, const Vector3d& direction, double r_max,
                   which_det which, const ScanConfig& cfg) {
  if (!(direction.norm() > 0) || !direction.allFinite()) throw validation_error("direction", "zero or non-finite");
  if (cfg.n_coarse < 2) throw validation_error("n_coarse", "need at least 2 samples");
  RayResult out;
  out.direction = direction.normalized();
  out.zone_distance = zone_boundary_distance(m, out.direction);
  const double limit = out.zone_distance * std::max(1.0, cfg.r_max_multiplier);
  out.r_max = r_max > 0 ? std::min(r_max, limit) : limit;
  out.clipped = r_max > limit;

  RayScanner sc{m, band, out.direction, which, cfg, out};
  const int n = cfg.n_coarse;
  std::vector<double> r(n + 1);
  std::vector<std::optional<double>> d(n + 1);
  for (int i = 0; i <= n; ++i) {
    r[i] = out.r_max * i / n;
    try {
      d[i] = sc.det(r[i]);
    } catch (const physics_error& e) {
      out.failures.push_back({r[std::max(0, i - 1)], out.r_max * std::min(n, i + 1) / n, e.what()});
    }
  }
  if (d[0]) out.det_at_start = *d[0];
  if (d[n]) out.det_at_end = *d[n];

  for (int i = 0; i < n; ++i) {
    if (!d[i] || !d[i + 1]) continue;
    const int s0 = sign_of(*d[i]), s1 = sign_of(*d[i + 1]);
    if (s0 != 0 && s1 != 0 && s0 != s1) sc.bisect(r[i], r[i + 1], *d[i]);
  }
  if (cfg.refine_touches) {
    for (int i = 1; i < n; ++i) {
      if (!d[i - 1] || !d[i] || !d[i + 1]) continue;
      const int s = sign_of(*d[i]);
      if (s == 0 || sign_of(*d[i - 1]) != s || sign_of(*d[i + 1]) != s) continue;
      if (std::abs(*d[i]) <= std::abs(*d[i - 1]) && std::abs(*d[i]) <= std::abs(*d[i + 1]))
        sc.refine_touch(r[i - 1], r[i + 1], s);
    }
  }
  std::sort(out.crossings.begin(), out.crossings.end(),
            [](const Crossing& a, const Crossing& b) { return a.radius < b.radius; });
  return out;
}

std::vector<Vector3d> ray_directions(const RaySet& set) {
  switch (set.kind) {
    case ray_sampling::icosphere: return icosphere(set.level);
    case ray_sampling::wedge: return wedge_directions(set.level);
    case ray_sampling::explicit_list: break;
  }
  return set.directions;
}

namespace {

RayResult scan_one(const MaterialModel& m, const std::string& band, const Vector3d& dir, which_det which,
                   const ScanConfig& cfg) {
  try {
    return scan_ray(m, band, dir, 0.0, which, cfg);
  } catch (const std::exception& e) {
    RayResult r;
    r.direction = dir.normalized();
    r.failures.push_back({0, 0, e.what()});
    return r;
  }
}

} // namespace

SurfaceCloud build_surface(const MaterialModel& m, const std::string& band, which_det which, const RaySet& rays,
                           const ScanConfig& cfg, execution exec, int workers) {
  const std::vector<Vector3d> dirs = ray_directions(rays);
  const int n = static_cast<int>(dirs.size());
  SurfaceCloud cloud;
  cloud.material = m.name;
  cloud.band = band;
  cloud.which = which;
  cloud.rays.resize(n);

  if (exec == execution::serial) {
    for (int i = 0; i < n; ++i) cloud.rays[i] = scan_one(m, band, dirs[i], which, cfg);
  } else {
#ifdef _OPENMP
    const int threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
    for (int i = 0; i < n; ++i) cloud.rays[i] = scan_one(m, band, dirs[i], which, cfg);
  }

  // deterministic merge in direction order
  const point_group g = group_of(m);
  const bool replicate_ops = rays.kind == ray_sampling::wedge;
  const auto& ops = group_operations(g);
  for (int i = 0; i < n; ++i) {
    const RayResult& ray = cloud.rays[i];
    if (!ray.failures.empty()) ++cloud.failed_rays;
    for (size_t c = 0; c < ray.crossings.size(); ++c) {
      SurfacePoint p;
      p.k = ray.crossings[c].radius * ray.direction;
      p.dir_index = i;
      p.ordinal = static_cast<int>(c);
      p.which = which;
      p.slope_sign = ray.crossings[c].slope_sign;
      p.beyond_zone = ray.crossings[c].radius > ray.zone_distance;
      if (!replicate_ops) {
        cloud.points.push_back(p);
        continue;
      }
      std::vector<Vector3d> seen;
      for (size_t o = 0; o < ops.size(); ++o) {
        const Vector3d img = ops[o] * p.k;
        if (std::any_of(seen.begin(), seen.end(), [&](const Vector3d& s) { return (s - img).norm() < 1e-12; }))
          continue;
        seen.push_back(img);
        SurfacePoint q = p;
        q.k = img;
        q.op_index = static_cast<int>(o);
        cloud.points.push_back(q);
      }
    }
  }
  cloud.symmetry_ops_applied = replicate_ops;
  return cloud;
}

cloud_format parse_cloud_format(const std::string& s) {
  if (s == "csv") return cloud_format::csv;
  if (s == "ply") return cloud_format::ply;
  throw validation_error("format", "expected csv or ply, got '" + s + "'");
}

void export_cloud(const SurfaceCloud& cloud, cloud_format format, const std::string& path,
                  const std::vector<std::string>& header) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write '" + path + "'");
  out << std::setprecision(17);
  if (format == cloud_format::csv) {
    for (const auto& h : header) out << "# " << h << "\n";
    out << "kx,ky,kz,dir_index,crossing_ordinal,which_det,det_slope_sign\n";
    for (const auto& p : cloud.points)
      out << p.k.x() << "," << p.k.y() << "," << p.k.z() << "," << p.dir_index << "," << p.ordinal << ","
          << to_string(p.which) << "," << p.slope_sign << "\n";
  } else {
    out << "ply\nformat ascii 1.0\n";
    for (const auto& h : header) out << "comment " << h << "\n";
    out << "element vertex " << cloud.points.size() << "\n"
        << "property double x\nproperty double y\nproperty double z\n"
        << "property int which_det\nend_header\n";
    for (const auto& p : cloud.points)
      out << p.k.x() << " " << p.k.y() << " " << p.k.z() << " " << (p.which == which_det::gS ? 0 : 1) << "\n";
  }
  if (!out) throw io_error("write failed for '" + path + "'");
}

std::vector<SurfacePoint> read_cloud_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open '" + path + "'");
  std::vector<SurfacePoint> pts;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::stringstream ss(line);
    std::string f[7];
    for (auto& x : f) std::getline(ss, x, ',');
    SurfacePoint p;
    try {
      p.k = Vector3d(std::stod(f[0]), std::stod(f[1]), std::stod(f[2]));
      p.dir_index = std::stoi(f[3]);
      p.ordinal = std::stoi(f[4]);
      p.which = parse_which_det(f[5]);
      p.slope_sign = std::stoi(f[6]);
    } catch (const std::logic_error&) {
      throw parse_error("malformed cloud row: " + line);
    }
    pts.push_back(p);
  }
  return pts;
}

} // namespace gtensor
