// Command-line driver: radial shooting, phase-plane runs, stationary-point
// catalogs, energies, and theorem-level scans, with CSV/JSON artifacts and a
// reproducible run manifest.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "ple/classify.hpp"
#include "ple/energy.hpp"
#include "ple/io.hpp"
#include "ple/phase.hpp"
#include "ple/radial.hpp"
#include "ple/regions.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace ple;

namespace {

struct Cli {
  double lambda = 0, Lambda = 0;
  int N = 0;
  double p = 0, q = 0;
  std::string op = "plus";
  std::string out = ".";
  double tol = 1e-10;
  double rmax = 1e6;
  int threads = int(std::thread::hardware_concurrency());

  // command specific
  double xi = 1.0, eta = 1.0;
  double R = 1.0, ku = 1.0, kv = 1.0;
  std::string seed_point = "N0";
  double direction = 45.0;  // degrees in the chart plane
  double offset = 0.0;      // 0: chart radius
  std::string t_span = "0:20";
  double sigma = 0.0;  // 0: the mixed-branch preset for the operator
  std::string theorem = "exclusion";
  int resample = 0;  // >0: resample the trajectory on a log-uniform mesh
  int grid = 10;
  std::string p_grid = "3:8:10";
  std::string pq_range = "1.1:6";
};

ProblemParams make_params(const Cli& c) {
  Operator op;
  if (c.op == "plus")
    op = Operator::MPlus;
  else if (c.op == "minus")
    op = Operator::MMinus;
  else
    throw std::invalid_argument("op must be plus or minus");
  return ProblemParams::make(c.lambda, c.Lambda, c.N, c.p, c.q, op);
}

void write_file(const fs::path& p, const std::string& body) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  f << body;
}

json params_json(const ProblemParams& pp) {
  return json{{"lambda", pp.lambda}, {"Lambda", pp.Lambda}, {"N", pp.N},
              {"p", pp.p},           {"q", pp.q},           {"op", to_string(pp.op)},
              {"alpha", pp.k.alpha}, {"beta", pp.k.beta},
              {"n_tilde_plus", pp.k.n_tilde_plus}, {"n_tilde_minus", pp.k.n_tilde_minus}};
}

json options_json(const Cli& c) {
  // every default that influences results is echoed here
  return json{{"tol", c.tol},     {"rmax", c.rmax},       {"threads", c.threads},
              {"xi", c.xi},       {"eta", c.eta},         {"R", c.R},
              {"ku", c.ku},       {"kv", c.kv},           {"seed_point", c.seed_point},
              {"direction", c.direction}, {"offset", c.offset}, {"t_span", c.t_span},
              {"sigma", c.sigma}, {"theorem", c.theorem}, {"grid", c.grid},
              {"p_grid", c.p_grid}, {"pq_range", c.pq_range}, {"resample", c.resample},
              {"eps_zero_rel", ShootOptions{}.eps_zero_rel},
              {"sim_tol", ShootOptions{}.sim_tol},
              {"slope_tol", ShootOptions{}.slope_tol},
              {"r0_scale", ShootOptions{}.r0_scale},
              {"blow_threshold", PhaseOptions{}.blow_threshold},
              {"conv_dist", PhaseOptions{}.conv_dist},
              {"eta_bracket_rel", ClassifyOptions{}.eta_bracket_rel},
              {"gap_ball", ClassifyOptions{}.gap_ball},
              {"gap_ground", ClassifyOptions{}.gap_ground}};
}

void write_manifest(const Cli& c, const ProblemParams& pp, const std::string& command,
                    const json& summary, const std::vector<std::string>& outputs,
                    double wall_s) {
  json m{{"tool", "ple"},
         {"version", kToolVersion},
         {"command", command},
         {"params", params_json(pp)},
         {"options", options_json(c)},
         {"wall_time_s", wall_s},
         {"summary", summary},
         {"outputs", outputs}};
  write_file(fs::path(c.out) / "manifest.json", m.dump(2) + "\n");
}

ShootOptions shoot_options(const Cli& c) {
  ShootOptions so;
  so.rtol = c.tol;
  so.atol = c.tol * 1e-2;
  so.r_max = c.rmax;
  so.record_dense = c.resample > 0;
  return so;
}

std::vector<RadialState> resampled(const ShootOutcome& o, int n) {
  // log-uniform mesh over the integrated window via the dense interpolant
  std::vector<RadialState> out;
  if (o.dense.empty() || n < 2) return out;
  const double r0 = o.dense.front().t0;
  const double r1 = o.end_state.r;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double r = r0 * std::pow(r1 / r0, double(i) / (n - 1));
    auto y = sample_dense(o.dense, r);
    out.push_back({r, y[0], y[1], y[2], y[3]});
  }
  return out;
}

json outcome_json(const ShootOutcome& o) {
  return json{{"verdict", to_string(o.tag)},
              {"event_radius", o.event_radius},
              {"n_u", o.n_u},
              {"n_v", o.n_v},
              {"slope_u", o.slope_u},
              {"slope_v", o.slope_v},
              {"other_gap_rel", o.other_gap_rel},
              {"steps", o.n_steps}};
}

std::vector<double> parse_grid3(const std::string& s) {
  // "lo:hi:n" -> n evenly spaced values
  double lo, hi;
  int n;
  if (std::sscanf(s.c_str(), "%lf:%lf:%d", &lo, &hi, &n) != 3 || n < 1)
    throw std::invalid_argument("grid must be lo:hi:n");
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  return g;
}

std::pair<double, double> parse_span(const std::string& s) {
  double a, b;
  if (std::sscanf(s.c_str(), "%lf:%lf", &a, &b) != 2)
    throw std::invalid_argument("span must be a:b");
  return {a, b};
}

int cmd_shoot(const Cli& c, const ProblemParams& pp, double t0) {
  auto o = shoot(c.xi, c.eta, pp, shoot_options(c));
  write_file(fs::path(c.out) / "trajectory.csv",
             trajectory_csv(c.resample > 0 ? resampled(o, c.resample) : o.trajectory, pp));
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
          .count() - t0;
  write_manifest(c, pp, "shoot", outcome_json(o), {"trajectory.csv"}, wall);
  std::cout << "shoot(" << format_double(c.xi) << ", " << format_double(c.eta)
            << ") -> " << to_string(o.tag) << " at r = " << format_double(o.event_radius)
            << "\n";
  return 0;
}

int cmd_exterior(const Cli& c, const ProblemParams& pp, double t0) {
  auto o = exterior_shoot(c.R, c.ku, c.kv, pp, shoot_options(c));
  write_file(fs::path(c.out) / "trajectory.csv",
             trajectory_csv(c.resample > 0 ? resampled(o, c.resample) : o.trajectory, pp));
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
          .count() - t0;
  write_manifest(c, pp, "exterior", outcome_json(o), {"trajectory.csv"}, wall);
  std::cout << "exterior Neumann -> " << to_string(o.tag) << " at r = "
            << format_double(o.event_radius) << "\n";
  return 0;
}

int cmd_phase(const Cli& c, const ProblemParams& pp, double t0) {
  StationaryName sn;
  if (c.seed_point == "N0") sn = StationaryName::N0;
  else if (c.seed_point == "A0") sn = StationaryName::A0;
  else if (c.seed_point == "P0") sn = StationaryName::P0;
  else if (c.seed_point == "Q0") sn = StationaryName::Q0;
  else if (c.seed_point == "M0") sn = StationaryName::M0;
  else throw std::invalid_argument("seed-point must be one of N0 A0 P0 Q0 M0");
  const double rho = c.offset > 0 ? c.offset : chart_radius(sn, pp);
  const double th = c.direction * M_PI / 180.0;
  auto seed = manifold_seed(sn, std::cos(th), std::sin(th), rho, pp);
  auto [a, b] = parse_span(c.t_span);
  PhaseOptions po;
  po.rtol = c.tol;
  po.atol = c.tol * 1e-2;
  auto run = integrate_phase(seed, a, b, pp, po);
  write_file(fs::path(c.out) / "phase.csv", phase_csv(run.t, run.y, seed.cone));
  json summary{{"stop", int(run.stop)},
               {"t_stop", run.t_stop},
               {"blow_component", run.blow_component},
               {"crossings", run.crossings.size()}};
  if (run.converged_to) summary["converged_to"] = to_string(*run.converged_to);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
          .count() - t0;
  write_manifest(c, pp, "phase", summary, {"phase.csv"}, wall);
  std::cout << "phase run from " << c.seed_point << ": " << run.t.size() << " points\n";
  return 0;
}

int cmd_points(const Cli& c, const ProblemParams& pp, double t0) {
  auto cat = stationary_catalog(pp);
  write_file(fs::path(c.out) / "points.json", catalog_json(cat));
  json summary{{"count", cat.size()}};
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
          .count() - t0;
  write_manifest(c, pp, "points", summary, {"points.json"}, wall);
  std::cout << "wrote " << cat.size() << " stationary points\n";
  return 0;
}

int cmd_energy(const Cli& c, const ProblemParams& pp, double t0) {
  const double sigma = c.sigma > 0 ? c.sigma : sigma_step2(pp);
  auto o = shoot(c.xi, c.eta, pp, shoot_options(c));
  std::vector<EnergyRecord> recs;
  recs.reserve(o.trajectory.size());
  for (const auto& s : o.trajectory) {
    if (!(s.u > 0 && s.v > 0 && s.up < 0 && s.vp < 0)) continue;
    recs.push_back(energy_record(s, sigma, pp));
  }
  write_file(fs::path(c.out) / "energy.csv", energy_csv(recs));
  write_file(fs::path(c.out) / "trajectory.csv", trajectory_csv(o.trajectory, pp));
  json summary = outcome_json(o);
  summary["sigma"] = sigma;
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
          .count() - t0;
  write_manifest(c, pp, "energy", summary, {"energy.csv", "trajectory.csv"}, wall);
  std::cout << "energy along " << to_string(o.tag) << " trajectory, sigma = "
            << format_double(sigma) << "\n";
  return 0;
}

int cmd_scan(const Cli& c, const ProblemParams& pp, double t0) {
  auto id = theorem_from_string(c.theorem);
  if (!id) throw std::invalid_argument("unknown theorem id: " + c.theorem);
  auto [lo, hi] = parse_span(c.pq_range);
  std::vector<std::pair<double, double>> samples;
  for (int i = 0; i < c.grid; ++i)
    for (int j = 0; j < c.grid; ++j) {
      const double pv = c.grid == 1 ? lo : lo + (hi - lo) * i / (c.grid - 1);
      const double qv = c.grid == 1 ? lo : lo + (hi - lo) * j / (c.grid - 1);
      if (pv * qv > 1.0) samples.emplace_back(pv, qv);
    }
  TheoremOptions topt;
  topt.classify.shoot = shoot_options(c);
  topt.threads = c.threads;
  topt.grid = 10;
  auto rep = theorem_scan(*id, samples, pp, topt);

  std::vector<PQVerdict> rows;
  rows.reserve(rep.samples.size());
  for (const auto& s : rep.samples) {
    PQVerdict v = s.verdict;
    v.p = s.p;
    v.q = s.q;
    if (v.verdict == '?') v.verdict = s.pass ? 'P' : (s.inconclusive ? '?' : 'F');
    rows.push_back(v);
  }
  write_file(fs::path(c.out) / "scan.csv", scan_csv(rows));
  int n_fail = 0;
  for (const auto& s : rep.samples) {
    if (!s.pass && !s.inconclusive) ++n_fail;
    std::cout << "(" << format_double(s.p) << ", " << format_double(s.q) << ") "
              << (s.pass ? "pass" : (s.inconclusive ? "inconclusive" : "FAIL")) << ": "
              << s.detail << "\n";
  }
  json summary{{"theorem", c.theorem},
               {"samples", rep.samples.size()},
               {"failures", n_fail},
               {"inconclusive", rep.n_inconclusive}};
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
          .count() - t0;
  write_manifest(c, pp, "scan", summary, {"scan.csv"}, wall);
  return n_fail == 0 ? 0 : 1;
}

int cmd_curve(const Cli& c, const ProblemParams& pp, double t0) {
  CurveOptions copt;
  copt.classify.shoot = shoot_options(c);
  copt.threads = c.threads;
  auto pts = trace_critical_curve(pp, parse_grid3(c.p_grid), copt);
  write_file(fs::path(c.out) / "curve.csv", curve_csv(pts));
  int n_fail = 0;
  for (const auto& cp : pts)
    if (!cp.ok) {
      ++n_fail;
      std::cout << "p = " << format_double(cp.p) << ": " << cp.note << "\n";
    }
  json summary{{"points", pts.size()}, {"failures", n_fail}};
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
          .count() - t0;
  write_manifest(c, pp, "curve", summary, {"curve.csv"}, wall);
  return n_fail == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radial Lane-Emden systems driven by extremal operators: "
               "shooting, phase-plane analysis, energies, and region scans"};
  app.set_config("--config", "", "flat key=value run configuration; flags override");

  Cli c;
  app.add_option("--lambda", c.lambda, "lower ellipticity bound")->required();
  app.add_option("--Lambda", c.Lambda, "upper ellipticity bound")->required();
  app.add_option("--N", c.N, "space dimension (>= 3)")->required();
  app.add_option("--p", c.p, "first exponent")->required();
  app.add_option("--q", c.q, "second exponent")->required();
  app.add_option("--op", c.op, "operator sign: plus | minus")
      ->check(CLI::IsMember({"plus", "minus"}));
  app.add_option("--out", c.out, "output directory");
  app.add_option("--tol", c.tol, "integrator relative tolerance");
  app.add_option("--rmax", c.rmax, "integration window in r");
  app.add_option("--threads", c.threads, "worker pool size for scan/curve");

  auto* sh = app.add_subcommand("shoot", "integrate the regular shooting problem");
  sh->add_option("--xi", c.xi, "u(0)");
  sh->add_option("--eta", c.eta, "v(0)");
  sh->add_option("--resample", c.resample, "rows on a log-uniform mesh (0: accepted steps)");

  auto* ex = app.add_subcommand("exterior", "exterior Neumann start");
  ex->add_option("--R", c.R, "start radius");
  ex->add_option("--ku", c.ku, "u(R)");
  ex->add_option("--kv", c.kv, "v(R)");
  ex->add_option("--resample", c.resample, "rows on a log-uniform mesh (0: accepted steps)");

  auto* ph = app.add_subcommand("phase", "integrate the cone dynamical system");
  ph->add_option("--seed-point", c.seed_point, "N0 | A0 | P0 | Q0 | M0");
  ph->add_option("--direction", c.direction, "chart direction, degrees");
  ph->add_option("--offset", c.offset, "chart offset (0: automatic radius)");
  ph->add_option("--t-span", c.t_span, "a:b");

  app.add_subcommand("points", "stationary-point catalog with eigen data");

  auto* en = app.add_subcommand("energy", "energy along a regular trajectory");
  en->add_option("--sigma", c.sigma, "mixed-branch exponent (0: preset)");
  en->add_option("--xi", c.xi, "u(0)");
  en->add_option("--eta", c.eta, "v(0)");

  auto* sc = app.add_subcommand("scan", "theorem-level region scan");
  sc->add_option("--theorem", c.theorem,
                 "regular | exterior | singular | exterior_dirichlet | concavity | exclusion");
  sc->add_option("--grid", c.grid, "per-axis sample count");
  sc->add_option("--pq-range", c.pq_range, "lo:hi for both exponents");

  auto* cv = app.add_subcommand("curve", "trace the existence boundary in q per p");
  cv->add_option("--p-grid", c.p_grid, "lo:hi:n");

  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const double t0 =
      std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
          .count();
  try {
    ProblemParams pp = make_params(c);
    fs::create_directories(c.out);
    {  // writable check up front
      std::ofstream probe(fs::path(c.out) / ".write_probe");
      if (!probe) throw std::runtime_error("output directory not writable: " + c.out);
    }
    fs::remove(fs::path(c.out) / ".write_probe");

    if (app.got_subcommand("shoot")) return cmd_shoot(c, pp, t0);
    if (app.got_subcommand("exterior")) return cmd_exterior(c, pp, t0);
    if (app.got_subcommand("phase")) return cmd_phase(c, pp, t0);
    if (app.got_subcommand("points")) return cmd_points(c, pp, t0);
    if (app.got_subcommand("energy")) return cmd_energy(c, pp, t0);
    if (app.got_subcommand("scan")) return cmd_scan(c, pp, t0);
    if (app.got_subcommand("curve")) return cmd_curve(c, pp, t0);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
