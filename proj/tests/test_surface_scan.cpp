#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "gtensor/surface_scan.hpp"
#include "support.hpp"

using namespace gtensor;
using testing_support::material;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("gtensor_test_" + name)).string();
}

bool has_crossing_near(const RayResult& r, double radius, double tol) {
  return std::any_of(r.crossings.begin(), r.crossings.end(),
                     [&](const Crossing& c) { return std::abs(c.radius - radius) < tol; });
}

} // namespace

TEST_CASE("scan_ray against a dense sign scan") {
  const MaterialModel si = material("Si");
  std::mt19937_64 rng(100);
  const Vector3d u = random_direction(rng);
  const RayResult r = scan_ray(si, "first-conduction", u, 0.0, which_det::gS);
  CHECK(r.failures.empty());
  CHECK(r.r_max == doctest::Approx(zone_boundary_distance(si, u)));

  const int n = 4000;
  double prev = pair_det(si, "first-conduction", Vector3d::Zero(), which_det::gS);
  int dense_changes = 0;
  for (int i = 1; i <= n; ++i) {
    const double rad = r.r_max * i / n;
    const double d = pair_det(si, "first-conduction", rad * r.direction, which_det::gS);
    if ((d > 0) != (prev > 0)) {
      ++dense_changes;
      CHECK(has_crossing_near(r, rad, r.r_max / n + 1e-6));
    }
    prev = d;
  }
  CHECK(static_cast<int>(r.crossings.size()) >= dense_changes);
}

TEST_CASE("scan_ray crossings are genuine roots") {
  const MaterialModel si = material("Si");
  const RayResult r = scan_ray(si, "first-conduction", named_direction("Sigma"), 0.0, which_det::gS);
  REQUIRE(r.crossings.size() == 3);
  for (const Crossing& c : r.crossings) {
    CHECK(c.bracket_width <= 1e-6);
    CHECK(std::abs(c.det_at_root) < 1e-6);
    const double h = std::max(c.bracket_width, 1e-9);
    const double lo = pair_det(si, "first-conduction", (c.radius - h) * r.direction, which_det::gS);
    const double hi = pair_det(si, "first-conduction", (c.radius + h) * r.direction, which_det::gS);
    CHECK(lo * hi <= 0.0);
    CHECK(c.slope_sign == (hi > lo ? 1 : -1));
  }

  SUBCASE("doubling the coarse sampling keeps every crossing") {
    ScanConfig fine;
    fine.n_coarse = 400;
    const RayResult r2 = scan_ray(si, "first-conduction", named_direction("Sigma"), 0.0, which_det::gS, fine);
    for (const Crossing& c : r.crossings) CHECK(has_crossing_near(r2, c.radius, 1e-5));
  }
}

TEST_CASE("scan_ray without spin-orbit finds nothing") {
  const MaterialModel bare = with_soc_scaled(material("Ge"), 0.0);
  std::mt19937_64 rng(7);
  const RayResult r = scan_ray(bare, "first-conduction", random_direction(rng), 0.1, which_det::gS);
  CHECK(r.failures.empty());
  CHECK(r.crossings.empty());
  CHECK(r.det_at_start == doctest::Approx(8.0));
  CHECK(r.det_at_end == doctest::Approx(8.0));
}

TEST_CASE("scan_ray arguments") {
  const MaterialModel si = material("Si");
  CHECK_THROWS_AS(scan_ray(si, "split-off", Vector3d::Zero(), 0.0, which_det::gS), validation_error);
  ScanConfig bad;
  bad.n_coarse = 1;
  CHECK_THROWS_AS(scan_ray(si, "split-off", Vector3d(1, 0, 0), 0.0, which_det::gS, bad), validation_error);
  ScanConfig quick;
  quick.n_coarse = 4;
  const RayResult r = scan_ray(si, "split-off", Vector3d(1, 0, 0), 10.0, which_det::gS, quick);
  CHECK(r.clipped);
  CHECK(r.r_max == doctest::Approx(2 * M_PI / si.lattice_constant));
  CHECK(parse_which_det("gtot") == which_det::gtot);
  CHECK_THROWS_AS(parse_which_det("gl"), validation_error);
}

TEST_CASE("build_surface") {
  const MaterialModel si = material("Si");
  RaySet wedge{ray_sampling::wedge, 2, {}};
  ScanConfig cfg;
  cfg.n_coarse = 60;

  const SurfaceCloud a = build_surface(si, "split-off", which_det::gS, wedge, cfg, execution::serial);
  const SurfaceCloud b = build_surface(si, "split-off", which_det::gS, wedge, cfg, execution::parallel, 2);
  const SurfaceCloud c = build_surface(si, "split-off", which_det::gS, wedge, cfg, execution::parallel);
  REQUIRE_FALSE(a.points.empty());
  // every band is fourfold at X, so only the <100> ray fails, and only at its end
  for (const RayResult& r : a.rays) {
    const bool to_x = (r.direction - Vector3d(1, 0, 0)).norm() < 1e-12;
    CHECK(r.failures.empty() != to_x);
    for (const ScanFailure& f : r.failures) CHECK(f.r_hi == doctest::Approx(r.r_max));
  }
  CHECK(a.symmetry_ops_applied);

  SUBCASE("serial, parallel and repeated runs are identical") {
    for (const SurfaceCloud* other : {&b, &c}) {
      REQUIRE(other->points.size() == a.points.size());
      for (size_t i = 0; i < a.points.size(); ++i) {
        CHECK(other->points[i].k == a.points[i].k);
        CHECK(other->points[i].dir_index == a.points[i].dir_index);
        CHECK(other->points[i].ordinal == a.points[i].ordinal);
      }
    }
  }
  SUBCASE("replicated cloud is closed under the point group") {
    for (const Matrix3d& op : group_operations(point_group::Oh)) {
      for (const SurfacePoint& p : a.points) {
        const Vector3d img = op * p.k;
        const bool found = std::any_of(a.points.begin(), a.points.end(),
                                       [&](const SurfacePoint& q) { return (q.k - img).norm() < 1e-9; });
        CHECK(found);
      }
    }
  }
  SUBCASE("replicated points lie on the surface") {
    for (size_t i = 0; i < a.points.size(); i += 7)
      CHECK(std::abs(pair_det(si, "split-off", a.points[i].k, which_det::gS)) < 1e-5);
  }
  SUBCASE("CSV round trip is exact") {
    const std::string path = temp_path("cloud.csv");
    export_cloud(a, cloud_format::csv, path, {"version test", "seed 0"});
    const auto back = read_cloud_csv(path);
    REQUIRE(back.size() == a.points.size());
    for (size_t i = 0; i < back.size(); ++i) {
      CHECK(back[i].k == a.points[i].k);
      CHECK(back[i].dir_index == a.points[i].dir_index);
      CHECK(back[i].ordinal == a.points[i].ordinal);
      CHECK(back[i].which == a.points[i].which);
      CHECK(back[i].slope_sign == a.points[i].slope_sign);
    }
    std::filesystem::remove(path);
  }
  SUBCASE("PLY vertex count") {
    const std::string path = temp_path("cloud.ply");
    export_cloud(a, cloud_format::ply, path, {"version test"});
    std::ifstream in(path);
    std::string line;
    int declared = -1, vertices = 0;
    bool body = false;
    while (std::getline(in, line)) {
      if (body) {
        if (!line.empty()) ++vertices;
      } else if (line.rfind("element vertex ", 0) == 0) {
        declared = std::stoi(line.substr(15));
      } else if (line == "end_header") {
        body = true;
      }
    }
    CHECK(declared == static_cast<int>(a.points.size()));
    CHECK(vertices == declared);
    std::filesystem::remove(path);
  }
}

TEST_CASE("empty cloud export") {
  SurfaceCloud empty;
  const std::string path = temp_path("empty.csv");
  export_cloud(empty, cloud_format::csv, path, {"nothing"});
  CHECK(read_cloud_csv(path).empty());
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_cloud_csv(temp_path("does_not_exist.csv")), io_error);
  CHECK_THROWS_AS(export_cloud(empty, cloud_format::csv, "/nonexistent_dir/x.csv"), io_error);
}
