#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <sstream>

#include "gtensor/entanglement.hpp"
#include "gtensor/surface_scan.hpp"

using namespace gtensor;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 2;
constexpr int exit_physics = 3;
constexpr int exit_io = 4;

struct usage_error : error {
  using error::error;
};

struct RunConfig {
  std::string command;
  std::string material;
  std::string band;
  std::string direction = "random";
  std::uint64_t seed = 0;
  double rmax = 0;
  int samples = 0;
  std::string det = "gs";
  std::string out;
  int workers = 0;
  std::string format = "csv";
  std::string path = "L-G-X";
  std::string mode = "icosphere";
  int level = 2;
  double rmax_multiplier = 1.0;
  std::string tesla;
  std::string species;
  double target = 2.0 / 3.0;
};

std::uint64_t fnv1a(const std::string& s, std::uint64_t h = 1469598103934665603ULL) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string resolve_material(const std::string& spec) {
  if (spec.empty()) throw usage_error("--material is required");
  if (std::filesystem::exists(spec)) return spec;
#ifdef GTENSOR_DATA_DIR
  const std::string bundled = std::string(GTENSOR_DATA_DIR) + "/" + spec + ".json";
  if (spec.find('/') == std::string::npos && std::filesystem::exists(bundled)) return bundled;
#endif
  throw io_error("material file '" + spec + "' not found");
}

std::vector<std::pair<std::string, std::string>> config_echo(const RunConfig& c, const std::string& material_path) {
  std::ostringstream rmax, target, mult;
  rmax << std::setprecision(17) << c.rmax;
  target << std::setprecision(17) << c.target;
  mult << std::setprecision(17) << c.rmax_multiplier;
  std::vector<std::pair<std::string, std::string>> kv = {{"command", c.command},
                                                         {"material", std::filesystem::path(material_path).filename()}};
  if (c.command == "bands") {
    kv.insert(kv.end(), {{"path", c.path}, {"samples", std::to_string(c.samples)}});
  } else if (c.command == "atomfit") {
    kv.insert(kv.end(), {{"species", c.species}, {"target", target.str()}});
  } else {
    kv.insert(kv.end(), {{"band", c.band}, {"samples", std::to_string(c.samples)}, {"rmax", rmax.str()}});
    if (c.command == "surface") {
      kv.insert(kv.end(), {{"det", c.det}, {"mode", c.mode}, {"level", std::to_string(c.level)},
                           {"rmax_multiplier", mult.str()}, {"format", c.format}});
    } else {
      kv.insert(kv.end(), {{"direction", c.direction}});
      if (!c.tesla.empty()) kv.emplace_back("tesla", c.tesla);
    }
  }
  return kv;
}

// provenance block; worker count and output path are deliberately excluded so that
// identical physics configurations produce identical files
std::vector<std::string> provenance(const RunConfig& c, const std::string& material_path) {
  const auto kv = config_echo(c, material_path);
  std::string canonical;
  for (const auto& [k, v] : kv) canonical += k + "=" + v + "\n";
  const std::uint64_t h = fnv1a(read_file(material_path), fnv1a(canonical));
  std::ostringstream hash;
  hash << std::hex << std::setw(16) << std::setfill('0') << h;
  std::vector<std::string> lines = {std::string("gtensor ") + GTENSOR_VERSION, "config_hash " + hash.str(),
                                    "seed " + std::to_string(c.seed)};
  for (const auto& [k, v] : kv) lines.push_back("config." + k + " = " + v);
  return lines;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw io_error("cannot write '" + path + "'");
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  void finish() {
    stream().flush();
    if (!stream()) throw io_error("write failed");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void write_header(std::ostream& os, const std::vector<std::string>& lines) {
  for (const auto& l : lines) os << "# " << l << "\n";
}

Vector3d parse_vector(const std::string& s, const std::string& what) {
  std::stringstream ss(s);
  std::string part;
  std::vector<double> v;
  while (std::getline(ss, part, ',')) {
    try {
      size_t used = 0;
      v.push_back(std::stod(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::logic_error&) {
      throw usage_error(what + ": cannot parse '" + s + "'");
    }
  }
  if (v.size() != 3) throw usage_error(what + ": expected x,y,z, got '" + s + "'");
  return {v[0], v[1], v[2]};
}

Vector3d resolve_direction(const RunConfig& c) {
  if (c.direction == "random") {
    std::mt19937_64 rng(c.seed);
    return random_direction(rng);
  }
  if (c.direction == "Delta" || c.direction == "Sigma" || c.direction == "Lambda") return named_direction(c.direction);
  const Vector3d u = parse_vector(c.direction, "--direction");
  if (!(u.norm() > 0)) throw usage_error("--direction must be non-zero");
  return u.normalized();
}

std::vector<double> radii(const MaterialModel& m, const Vector3d& u, const RunConfig& c) {
  if (c.samples < 2) throw usage_error("--samples must be at least 2");
  const double boundary = zone_boundary_distance(m, u);
  const double r_max = c.rmax > 0 ? std::min(c.rmax, boundary) : boundary;
  std::vector<double> r(c.samples);
  for (int i = 0; i < c.samples; ++i) r[i] = r_max * i / (c.samples - 1);
  return r;
}

void print_vector(std::ostream& os, const Vector3d& v) {
  os << v.x() << "," << v.y() << "," << v.z();
}

int cmd_bands(const RunConfig& c) {
  const std::string path = resolve_material(c.material);
  const MaterialModel m = load_material(path);
  std::vector<std::string> labels;
  std::stringstream ss(c.path);
  std::string tok;
  while (std::getline(ss, tok, '-'))
    if (!tok.empty()) labels.push_back(tok);
  if (labels.size() < 2) throw usage_error("--path needs at least two points, e.g. L-G-X");
  std::vector<Vector3d> pts;
  for (const auto& l : labels) {
    try {
      pts.push_back(high_symmetry_point(l, m.lattice_constant));
    } catch (const validation_error& e) {
      throw usage_error(e.what());
    }
  }
  if (c.samples < 2) throw usage_error("--samples must be at least 2");

  Output out(c.out);
  std::ostream& os = out.stream();
  write_header(os, provenance(c, path));
  os << "# energies in Hartree; s is the cumulative path length in Bohr^-1\n";
  os << "s,kx,ky,kz,label";
  for (int b = 0; b < m.dim(); ++b) os << ",E" << b;
  os << "\n" << std::setprecision(15);
  double s = 0;
  for (size_t seg = 0; seg + 1 < pts.size(); ++seg) {
    const Vector3d a = pts[seg], b = pts[seg + 1];
    for (int i = (seg == 0 ? 0 : 1); i < c.samples; ++i) {
      const double t = double(i) / (c.samples - 1);
      const Vector3d k = a + t * (b - a);
      const double here = s + t * (b - a).norm();
      std::string label;
      if (i == 0) label = labels[seg];
      if (i == c.samples - 1) label = labels[seg + 1];
      const Eigen::VectorXd e = solve(m, k).energies;
      os << here << ",";
      print_vector(os, k);
      os << "," << label;
      for (int n = 0; n < e.size(); ++n) os << "," << e[n];
      os << "\n";
    }
    s += (b - a).norm();
  }
  out.finish();
  return exit_ok;
}

int cmd_gline(const RunConfig& c) {
  const std::string path = resolve_material(c.material);
  const MaterialModel m = load_material(path);
  m.pair(c.band);
  const Vector3d u = resolve_direction(c);
  const std::vector<double> r = radii(m, u, c);
  std::optional<Vector3d> field;
  if (!c.tesla.empty()) field = parse_vector(c.tesla, "--tesla") * tesla_au;

  Output out(c.out);
  std::ostream& os = out.stream();
  write_header(os, provenance(c, path));
  os << "# direction " << std::setprecision(17) << u.x() << "," << u.y() << "," << u.z() << "\n";
  os << "r,kx,ky,kz,pair_energy,gs_sigma1,gs_sigma2,gs_sigma3,det_gs,gtot_sigma1,gtot_sigma2,gtot_sigma3,det_gtot,"
        "entropy,entropy_bar";
  if (field) os << ",zeeman_splitting";
  os << "\n" << std::setprecision(15);
  for (double rad : r) {
    const Vector3d k = rad * u;
    const BlochSolution sol = solve(m, k);
    const KramersPair pair = select_pair(m, sol, c.band);
    const GTensorSet g = g_total(m, sol, pair);
    const SpinDensity d = reduce_spin(entanglement_basis(pair));
    os << rad << ",";
    print_vector(os, k);
    os << "," << pair.pair_energy << "," << g.svd_S.sigma[0] << "," << g.svd_S.sigma[1] << "," << g.svd_S.sigma[2]
       << "," << g.det_gS << "," << g.svd_tot.sigma[0] << "," << g.svd_tot.sigma[1] << "," << g.svd_tot.sigma[2]
       << "," << g.det_gtot << "," << entropy(d.rho) << "," << entropy(d.rho_bar);
    if (field) os << "," << zeeman(g, *field).splitting;
    os << "\n";
  }
  out.finish();
  return exit_ok;
}

int cmd_entropy(const RunConfig& c) {
  const std::string path = resolve_material(c.material);
  const MaterialModel m = load_material(path);
  m.pair(c.band);
  const Vector3d u = resolve_direction(c);
  std::vector<double> r = radii(m, u, c);
  const point_group grp = group_of(m);
  const bool lemma_ok = direction_applicable(grp, u);
  if (!lemma_ok)
    std::cerr << "warning: direction is not a listed " << to_string(grp)
              << " direction; the spin-density relation is not checked\n";

  // the det(g_S) = 0 points along the ray are added as flagged rows
  const RayResult scan = scan_ray(m, c.band, u, r.back(), which_det::gS);
  std::vector<std::pair<double, bool>> rows;
  for (double x : r) rows.emplace_back(x, false);
  for (const auto& cr : scan.crossings) rows.emplace_back(cr.radius, true);
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  Output out(c.out);
  std::ostream& os = out.stream();
  write_header(os, provenance(c, path));
  os << "# direction " << std::setprecision(17) << u.x() << "," << u.y() << "," << u.z() << "\n";
  os << "# point group " << to_string(grp) << "; lemma " << (lemma_ok ? "checked" : "not applicable") << "\n";
  for (const auto& cr : scan.crossings) os << "# k_c " << cr.radius << "\n";
  os << "r,kx,ky,kz,at_crossing,det_gs,entropy,entropy_bar,lemma_residual\n" << std::setprecision(15);
  for (const auto& [rad, crossing] : rows) {
    const Vector3d k = rad * u;
    const KramersPair pair = select_pair(m, solve(m, k), c.band);
    const SpinDensity d = reduce_spin(entanglement_basis(pair));
    os << rad << ",";
    print_vector(os, k);
    os << "," << (crossing ? 1 : 0) << "," << svd3(spin_g(pair)).det() << "," << entropy(d.rho) << ","
       << entropy(d.rho_bar) << ",";
    if (lemma_ok)
      os << check_lemma(pair, grp);
    else
      os << "nan";
    os << "\n";
  }
  out.finish();
  return exit_ok;
}

int cmd_surface(const RunConfig& c) {
  const std::string path = resolve_material(c.material);
  const MaterialModel m = load_material(path);
  m.pair(c.band);
  if (c.out.empty()) throw usage_error("--out is required for surface");
  which_det which;
  cloud_format fmt;
  try {
    which = parse_which_det(c.det);
    fmt = parse_cloud_format(c.format);
  } catch (const validation_error& e) {
    throw usage_error(e.what());
  }
  RaySet rays;
  if (c.mode == "icosphere")
    rays.kind = ray_sampling::icosphere;
  else if (c.mode == "wedge")
    rays.kind = ray_sampling::wedge;
  else
    throw usage_error("--mode must be icosphere or wedge");
  if (c.level < 0) throw usage_error("--level must be non-negative");
  rays.level = c.level;
  ScanConfig cfg;
  if (c.samples > 0) cfg.n_coarse = c.samples;
  cfg.r_max_multiplier = c.rmax_multiplier;

  const SurfaceCloud cloud =
      build_surface(m, c.band, which, rays, cfg, c.workers == 1 ? execution::serial : execution::parallel, c.workers);
  std::vector<std::string> header = provenance(c, path);
  header.push_back("rays " + std::to_string(cloud.rays.size()) + ", failed " + std::to_string(cloud.failed_rays) +
                   ", symmetry replication " + (cloud.symmetry_ops_applied ? "on" : "off"));
  export_cloud(cloud, fmt, c.out, header);

  std::map<size_t, int> histogram;
  for (const auto& ray : cloud.rays) ++histogram[ray.crossings.size()];
  std::cout << "rays " << cloud.rays.size() << " points " << cloud.points.size() << " failed " << cloud.failed_rays
            << "\n";
  for (const auto& [n, count] : histogram) std::cout << "crossings " << n << ": " << count << " rays\n";
  return exit_ok;
}

int cmd_atomfit(const RunConfig& c) {
  const std::string path = resolve_material(c.material);
  const MaterialModel m = load_material(path);
  std::vector<std::string> species;
  if (!c.species.empty()) {
    if (!m.onsite.count(c.species)) throw usage_error("--species '" + c.species + "' is not in " + m.name);
    species.push_back(c.species);
  } else {
    for (const auto& a : m.atoms)
      if (std::find(species.begin(), species.end(), a.species) == species.end()) species.push_back(a.species);
  }
  Output out(c.out);
  std::ostream& os = out.stream();
  write_header(os, provenance(c, path));
  os << "species,dipole_bohr,g_J,g_S,g_L\n" << std::setprecision(12);
  for (const auto& s : species) {
    const AtomResponse r = atomfit(m, s, c.target);
    os << s << "," << r.dipole << "," << r.g_J << "," << r.g_S.trace() / 3 << "," << r.g_L.trace() / 3 << "\n";
  }
  out.finish();
  return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tight-binding g-tensor engine for cubic semiconductors"};
  app.set_version_flag("--version", std::string(GTENSOR_VERSION));
  app.require_subcommand(1);
  RunConfig c;

  auto add_material = [&](CLI::App* s) {
    s->add_option("--material", c.material, "Material file, or a bundled name (Si, Ge, GaAs)")->required();
    s->add_option("--out", c.out, "Output path (stdout when omitted)");
  };
  auto add_ray = [&](CLI::App* s) {
    s->add_option("--band", c.band, "Band-pair label from the material file")->required();
    s->add_option("--direction", c.direction, "x,y,z | random | Delta | Sigma | Lambda");
    s->add_option("--seed", c.seed, "Seed for --direction random");
    s->add_option("--rmax", c.rmax, "Ray length in Bohr^-1 (0: zone boundary)");
    c.samples = 200;
    s->add_option("--samples", c.samples, "Points along the ray");
  };

  auto* bands = app.add_subcommand("bands", "Band energies along a path of symmetry points");
  add_material(bands);
  bands->add_option("--path", c.path, "Symmetry points joined by '-', e.g. L-G-X-K-G");
  bands->add_option("--samples", c.samples, "Points per segment");

  auto* gline = app.add_subcommand("gline", "Singular values and determinants of g along a ray");
  add_material(gline);
  add_ray(gline);
  gline->add_option("--tesla", c.tesla, "Field Bx,By,Bz in Tesla; adds the Zeeman splitting column");

  auto* ent = app.add_subcommand("entropy", "Pair-state entanglement entropies along a ray");
  add_material(ent);
  add_ray(ent);

  auto* surf = app.add_subcommand("surface", "Point cloud of det(g) = 0 from radial scans");
  add_material(surf);
  surf->add_option("--band", c.band, "Band-pair label")->required();
  surf->add_option("--det", c.det, "gs | gtot");
  surf->add_option("--samples", c.samples, "Coarse samples per ray (default 200)");
  surf->add_option("--mode", c.mode, "icosphere | wedge");
  surf->add_option("--level", c.level, "Icosphere level or wedge divisions");
  surf->add_option("--rmax-multiplier", c.rmax_multiplier, "> 1 continues rays past the zone boundary");
  surf->add_option("--workers", c.workers, "Scan threads (1: serial reference path)");
  surf->add_option("--format", c.format, "csv | ply");
  surf->add_option("--seed", c.seed, "Recorded in the provenance header");

  auto* fit = app.add_subcommand("atomfit", "Fit the s-p dipole to the atomic Lande factor");
  add_material(fit);
  fit->add_option("--species", c.species, "Species (default: all)");
  fit->add_option("--target", c.target, "Target g_J of the j=1/2 doublet");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*bands) {
      c.command = "bands";
      if (bands->count("--samples") == 0) c.samples = 50;
      return cmd_bands(c);
    }
    if (*gline) return c.command = "gline", cmd_gline(c);
    if (*ent) return c.command = "entropy", cmd_entropy(c);
    if (*surf) return c.command = "surface", cmd_surface(c);
    if (*fit) return c.command = "atomfit", cmd_atomfit(c);
  } catch (const usage_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return exit_usage;
  } catch (const io_error& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return exit_io;
  } catch (const validation_error& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return exit_physics;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_physics;
  }
  return exit_usage;
}
