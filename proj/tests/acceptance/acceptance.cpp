// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include <orbitsp/catalog.hpp>
#include <orbitsp/cones.hpp>
#include <orbitsp/coxeter.hpp>
#include <orbitsp/polar.hpp>
#include <orbitsp/polytope.hpp>

#include "cli.hpp"
#include "oracles.hpp"
#include "properties.hpp"

using namespace orbitsp;
using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Tolerance tolerance(double eps) {
  Tolerance tol;
  tol.eps_eq = eps;
  tol.eps_rank = 10.0 * eps;
  return tol;
}

struct Verdict {
  bool pass = true;
  std::ostringstream detail;
};

// Points of the closed chamber: interior, on walls and on rays.
std::vector<Vec> chamber_points(const ChamberData& ch, std::size_t n, Rng& rng) {
  std::vector<Vec> out;
  const std::size_t m = ch.fundamental_rays.size();
  for (std::size_t k = 0; k < n; ++k) {
    Vec p = Vec::Zero(ch.base_regular.size());
    for (std::size_t j = 0; j < m; ++j) {
      double c = 0.1 + rng.uniform();
      if (k % 4 == 1 && j == k % m) c = 0.0;           // on a wall
      if (k % 4 == 3 && j != k % m) c = 0.0;           // on a ray
      p += c * ch.fundamental_rays[j];
    }
    out.push_back(p);
  }
  return out;
}

void criterion_matrix(Verdict& v) {
  const auto t0 = Clock::now();
  std::size_t agree = 0;
  for (const CatalogEntry& e : finite_catalog()) {
    try {
      const SPReport r = theorem2_report(build_group(e), 42);
      const bool ok = r.consistent && r.verdict == e.coxeter && r.sp.holds == e.coxeter &&
                      r.peak_i.holds == e.coxeter && r.local_cone_iii.holds == e.coxeter;
      if (ok) ++agree;
      else v.detail << " " << e.name << ":mismatch";
    } catch (const InconsistentCriteria& ex) {
      v.detail << " " << e.name << ":inconsistent";
    }
  }
  const double secs = seconds_since(t0);
  v.pass = agree == finite_catalog().size() && secs < 30.0;
  v.detail << " " << agree << "/" << finite_catalog().size() << " groups agree with the expected verdict, "
           << secs << " s";
}

void criterion_sp_positive(Verdict& v) {
  const Tolerance tol = tolerance(1e-7);
  std::size_t pairs = 0, failures = 0;
  for (const CatalogEntry& e : finite_catalog()) {
    if (!e.coxeter) continue;
    const FiniteGroup g = build_group(e);
    const ChamberData ch = chamber(g, find_regular(g, 42));
    Rng rng(1000 + pairs);
    const std::vector<Vec> pts = chamber_points(ch, 50, rng);
    for (std::size_t k = 0; k < 25; ++k) {
      const Vec& u = pts[2 * k];
      const Vec& w = pts[2 * k + 1];
      const Polytope sum = minkowski_sum(hull(orbit(g, u).points, tol), hull(orbit(g, w).points, tol), tol);
      ++pairs;
      if (!polytope_equal(sum, hull(orbit(g, u + w).points, tol), tol)) ++failures;
    }
  }
  v.pass = failures == 0 && pairs == 150;
  v.detail << " " << pairs - failures << "/" << pairs << " chamber pairs give the orbit hull of u+v";
}

void criterion_sp_negative(Verdict& v) {
  const FiniteGroup c4 = build_group(*find_catalog_entry("C4"));
  Vec u(2), w(2);
  u << 1.0, 0.0;
  const double t = 20.0 * M_PI / 180.0;
  w << std::cos(t), std::sin(t);
  const Orbit ou = orbit(c4, u), ow = orbit(c4, w);
  std::size_t rejected = 0;
  for (const Vec& rep : ow.points) {
    const Polytope sum = minkowski_sum(hull(ou.points), hull(ow.points));
    if (!polytope_equal(sum, hull(orbit(c4, u + rep).points))) ++rejected;
  }
  const PairCheck pc = sp_check_pair(c4, u, w);
  // Brute force: hull of all pairwise sums, and the largest possible orbit.
  std::vector<Vec> sums;
  for (const Vec& a : ou.points)
    for (const Vec& b : ow.points) sums.push_back(a + b);
  const std::size_t oracle_vertices = oracle::hull2d(sums).size();
  v.pass = !pc.holds && rejected == 4 && pc.sum_vertices == 8 && oracle_vertices == 8 && c4.order() == 4;
  v.detail << " all " << rejected << " representatives rejected; sum has " << pc.sum_vertices
           << " vertices (brute force " << oracle_vertices << "), orbit hulls have at most " << c4.order();
}

void criterion_voronoi(Verdict& v) {
  const Tolerance tol = tolerance(1e-8);
  std::size_t samples = 0, violations = 0;
  for (const CatalogEntry& e : finite_catalog()) {
    const FiniteGroup g = build_group(e, tol);
    const VoronoiReport rep = voronoi_consistency(g, find_regular(g, 42), 1000, 42, tol);
    samples += rep.n_samples;
    violations += rep.violations.size();
  }
  v.pass = violations == 0 && samples == 8000;
  v.detail << " " << samples << " samples, " << violations << " nearest/cone disagreements";
}

void criterion_reconstruction(Verdict& v) {
  const Tolerance tol = tolerance(1e-8);
  std::size_t points = 0, equal = 0, on_walls = 0;
  for (const CatalogEntry& e : finite_catalog()) {
    if (!e.coxeter) continue;
    const FiniteGroup g = build_group(e, tol);
    const ChamberData ch = chamber(g, find_regular(g, 42));
    Rng rng(2000 + points);
    for (const Vec& p : chamber_points(ch, 20, rng)) {
      ++points;
      if (!is_regular(g, p)) ++on_walls;
      if (polytope_equal(hull_via_chamber(g, p, ch), hull(orbit(g, p).points, tol), tol)) ++equal;
    }
  }
  v.pass = equal == points && points == 120 && on_walls > 0;
  v.detail << " " << equal << "/" << points << " chamber points (" << on_walls << " on walls) reconstructed";
}

void criterion_properties(Verdict& v) {
  const Tolerance tol = tolerance(1e-8);
  std::size_t instances = 0, violations = 0;
  for (const CatalogEntry& e : finite_catalog()) {
    const FiniteGroup g = build_group(e, tol);
    for (const props::SuiteResult& r : props::all_suites(g, 500, 42, tol)) {
      instances += r.instances;
      violations += r.violations;
      if (r.instances != 500) v.pass = false;
      if (r.violations) v.detail << " " << e.name << "/" << r.name << ":" << r.violations;
    }
  }
  v.pass = v.pass && violations == 0;
  v.detail << " " << instances << " instances over 6 suites x 8 groups, " << violations << " violations";
}

json run_cli(cli::RunConfig config, int& code) {
  std::ostringstream out, err;
  code = cli::run(config, out, err);
  return code == 0 ? json::parse(out.str()) : json();
}

void criterion_polar_positive(Verdict& v) {
  cli::RunConfig config;
  config.command = cli::Command::PolarVerify;
  config.model_name = "sym3_traceless";
  config.samples = 10000;
  const auto t0 = Clock::now();
  int code = 0;
  const json r = run_cli(config, code);
  const double secs = seconds_since(t0);
  if (code != 0) {
    v.pass = false;
    v.detail << " exit code " << code;
    return;
  }
  const json& c = r["criteria"];
  const double b = c["condition_B"]["max_residual"];
  const double gap = c["slice_of_sum"]["max_gap"];
  v.pass = code == 0 && b < 1e-8 && c["condition_B"]["points"] == 200 && c["projection_is_weyl_hull"]["samples"] == 10000 &&
           c["projection_is_weyl_hull"]["violations"] == 0 && c["slice_of_sum"]["directions"] == 200 && gap < 1e-6 &&
           c["weyl_is_coxeter"]["holds"] == true && r["verdict"] == true && secs < 60.0;
  v.detail << " B residual " << b << ", projection violations " << c["projection_is_weyl_hull"]["violations"]
           << "/10000, support gap " << gap << ", Weyl group Coxeter " << c["weyl_is_coxeter"]["holds"] << ", " << secs
           << " s";
}

void criterion_polar_negative(Verdict& v) {
  cli::RunConfig config;
  config.command = cli::Command::PolarVerify;
  config.model_name = "hopf_circle";
  int code = 0;
  const json r = run_cli(config, code);
  if (code != 0) {
    v.pass = false;
    v.detail << " exit code " << code;
    return;
  }
  const json& c = r["criteria"];
  const double b = c["condition_B"]["max_residual"];
  const int sum_dim = c["sp_obstruction"]["sum_affine_dim"];
  const int orbit_dim = c["sp_obstruction"]["max_orbit_hull_dim"];
  v.pass = b > 1e-2 && sum_dim == 4 && orbit_dim == 2 && r["verdict"] == false;
  v.detail << " B residual " << b << ", sum affine dim " << sum_dim << " vs orbit hull dim " << orbit_dim;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion_determinism(Verdict& v, const std::string& tool, const std::string& scratch) {
  const std::vector<std::string> commands{"theorem2 --model B3 --seed 7", "theorem2 --input " ORBITSP_DATA_DIR "/groups/c4.json",
                                          "voronoi-check --model 'I2(5)' --samples 200", "polar-verify --model sym3_traceless --seed 3"};
  std::size_t identical = 0;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    std::string first, second;
    for (int rep = 0; rep < 2; ++rep) {
      const std::string out = scratch + "/determinism_" + std::to_string(i) + "_" + std::to_string(rep) + ".json";
      const std::string cmd = "\"" + tool + "\" " + commands[i] + " --out \"" + out + "\"";
      const int rc = std::system(cmd.c_str());
      (rep == 0 ? first : second) = rc == 0 ? slurp(out) : std::string();
    }
    if (!first.empty() && first == second) ++identical;
    else v.detail << " [" << commands[i] << " differs]";
  }
  v.pass = identical == commands.size();
  v.detail << " " << identical << "/" << commands.size() << " tool invocations byte-identical across runs";
}

}  // namespace

int main(int argc, char** argv) {
  const std::string tool = argc > 1 ? argv[1] : ORBITSP_TOOL_PATH;
  const std::string scratch = argc > 2 ? argv[2] : ".";

  struct Criterion {
    const char* label;
    std::function<void(Verdict&)> run;
  };
  const std::vector<Criterion> criteria{
      {"1 criteria matrix", criterion_matrix},
      {"2 semigroup on chamber pairs", criterion_sp_positive},
      {"3 C4 counterexample", criterion_sp_negative},
      {"4 Voronoi consistency", criterion_voronoi},
      {"5 hull from chamber halfspaces", criterion_reconstruction},
      {"6 support/cone property suites", criterion_properties},
      {"7 polar-verify sym3_traceless", criterion_polar_positive},
      {"8 polar-verify hopf_circle", criterion_polar_negative},
      {"9 determinism", [&](Verdict& v) { criterion_determinism(v, tool, scratch); }},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    Verdict v;
    try {
      c.run(v);
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << " threw: " << e.what();
    }
    if (!v.pass) ++failed;
    std::cout << (v.pass ? "[PASS] " : "[FAIL] ") << c.label << ":" << v.detail.str() << std::endl;
  }
  std::cout << (failed ? "FAILED " : "OK ") << criteria.size() - static_cast<std::size_t>(failed) << "/"
            << criteria.size() << " criteria" << std::endl;
  return failed ? 1 : 0;
}
