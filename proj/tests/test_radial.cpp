#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "ple/radial.hpp"

using namespace ple;

namespace {
const ProblemParams kCritical = ProblemParams::make(1, 1, 3, 5, 5);   // explicit ground state
const ProblemParams kSubcrit = ProblemParams::make(1, 1, 3, 2, 2);    // ball regime
const ProblemParams kSupcrit = ProblemParams::make(1, 1, 3, 7, 7);    // slow ground state
}  // namespace

TEST_CASE("oracle self-check: the closed form solves its equation") {
  for (double r : {0.1, 0.7, 1.0, 3.0, 25.0, 400.0})
    CHECK(std::fabs(oracle::aubin_residual(r)) < 1e-14);
}

TEST_CASE("radial right-hand side branch arithmetic") {
  // Laplacian collapse at lambda=Lambda
  RadialState s{1.0, 0.8, -0.3, 0.9, -0.2};
  auto d = rhs_radial(s, kSubcrit);
  CHECK(d[0] == -0.3);
  CHECK(d[1] == doctest::Approx(-2.0 * (-0.3) / 1.0 - 0.81).epsilon(1e-15));
  CHECK(d[3] == doctest::Approx(-2.0 * (-0.2) / 1.0 - 0.64).epsilon(1e-15));

  // mixed-branch value: N=3, lambda=1, Lambda=2, r=1, u'=-1, v=1, p=1
  auto pm = ProblemParams::make(1, 2, 3, 1, 2, Operator::MPlus);
  RadialState s2{1.0, 1.0, -1.0, 1.0, -0.5};
  auto d2 = rhs_radial(s2, pm);
  CHECK(d2[1] == doctest::Approx(0.5).epsilon(1e-15));  // M+(2-1) = 1/Lambda

  // argument exactly zero gives zero curvature on both operators
  for (auto op : {Operator::MPlus, Operator::MMinus}) {
    auto pz = ProblemParams::make(1, 2, 3, 1, 2, op);
    // choose v so that (N-1) m(u')/r = -v^p exactly: m(-1) per operator
    const double m1 = pucci_m(-1.0, pz);
    RadialState sz{1.0, 1.0, -1.0, -2.0 * m1, 0.0};  // v^p = v here (p=1)
    auto dz = rhs_radial(sz, pz);
    CHECK(dz[1] == 0.0);
  }

  CHECK_THROWS_AS(rhs_radial(RadialState{0.0, 1, 0, 1, 0}, kSubcrit), std::domain_error);
}

TEST_CASE("series start matches the closed form and a tiny-step integrator") {
  const double r0 = 1e-3;
  auto s = series_start(1, 1, r0, kCritical);
  CHECK(s.u == doctest::Approx(1.0 - r0 * r0 / 6.0).epsilon(1e-10));
  CHECK(s.up == doctest::Approx(-r0 / 3.0).epsilon(1e-7));
  CHECK(s.u == s.v);
  CHECK(s.up == s.vp);

  // asymmetric data: u'(r0) ~ -eta^p r0 / (iota N), v'(r0) ~ -xi^q r0 / (iota N)
  auto pa = ProblemParams::make(1, 1, 3, 2, 1, Operator::MPlus);
  auto sa = series_start(2, 1, r0, pa);
  CHECK(sa.up == doctest::Approx(-r0 / 3.0).epsilon(1e-6));
  CHECK(sa.vp == doctest::Approx(-2.0 * r0 / 3.0).epsilon(1e-6));

  // independent check: march the system from a much smaller series radius
  // with fixed-step RK4 up to r0 and compare all four components
  auto rhs = [&](double r, const std::array<double, 4>& y) {
    RadialState st{r, y[0], y[1], y[2], y[3]};
    auto d = rhs_radial(st, pa);
    return std::array<double, 4>{d[0], d[1], d[2], d[3]};
  };
  auto tiny = series_start(2, 1, r0 / 64.0, pa);
  auto yr = oracle::rk4_to(rhs, r0 / 64.0, {tiny.u, tiny.up, tiny.v, tiny.vp}, r0, 4000);
  CHECK(sa.u == doctest::Approx(yr[0]).epsilon(1e-12));
  CHECK(sa.up == doctest::Approx(yr[1]).epsilon(1e-9));
  CHECK(sa.v == doctest::Approx(yr[2]).epsilon(1e-12));
  CHECK(sa.vp == doctest::Approx(yr[3]).epsilon(1e-9));

  // Richardson validation of the default radius: r0 vs r0/2 relaunch
  const double rd = default_series_radius(2, 1, pa);
  auto sd = series_start(2, 1, rd, pa);
  auto sh = series_start(2, 1, rd / 2.0, pa);
  auto yy = oracle::rk4_to(rhs, rd / 2.0, {sh.u, sh.up, sh.v, sh.vp}, rd, 64);
  CHECK(sd.u == doctest::Approx(yy[0]).epsilon(1e-13));
  CHECK(sd.v == doctest::Approx(yy[2]).epsilon(1e-13));

  CHECK_THROWS_AS(series_start(0, 1, r0, kCritical), std::invalid_argument);
  CHECK_THROWS_AS(series_start(1, -1, r0, kCritical), std::invalid_argument);
}

TEST_CASE("critical shot reproduces the explicit ground state") {
  ShootOptions opt;
  ShootOutcome o = shoot(1, 1, kCritical, opt);
  CHECK(o.tag == ShootTag::GroundStateFast);
  double max_rel = 0;
  for (const auto& s : o.trajectory) {
    if (s.r > 100.0) break;
    max_rel = std::max(max_rel, std::fabs(s.u - oracle::aubin_u(s.r)) / oracle::aubin_u(s.r));
  }
  CHECK(max_rel < 1e-6);
  CHECK(o.n_u == 1);  // concavity changes exactly once on the critical curve
  CHECK(o.n_v == 1);
}

TEST_CASE("subcritical shot hits a simultaneous ball; radius matches the oracle") {
  ShootOutcome o = shoot(1, 1, kSubcrit);
  REQUIRE(o.tag == ShootTag::BallSolution);
  CHECK(o.event_radius == doctest::Approx(oracle::kLaneEmden2FirstZero).epsilon(1e-8));
  CHECK(o.n_u == 1);
  CHECK(o.n_v == 1);
  // u = v along the diagonal
  for (std::size_t i = 0; i < o.trajectory.size(); i += 50)
    CHECK(o.trajectory[i].u == doctest::Approx(o.trajectory[i].v).epsilon(1e-12));
}

TEST_CASE("supercritical shot is a slow ground state") {
  ShootOutcome o = shoot(1, 1, kSupcrit);
  CHECK(o.tag == ShootTag::GroundStateSlow);
  // alpha = beta = 1/3 at (7,7) in dim 3
  CHECK(o.slope_u == doctest::Approx(-1.0 / 3.0).epsilon(0.02));
  CHECK(o.slope_v == doctest::Approx(-1.0 / 3.0).epsilon(0.02));
}

TEST_CASE("monotonicity and initial concavity along shots") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> U(0.5, 2.0);
  for (int rep = 0; rep < 4; ++rep) {
    auto pp = rep % 2 ? kSubcrit : ProblemParams::make(1, 1.8, 3, 2.5, 2.0,
                                                       rep > 1 ? Operator::MMinus
                                                               : Operator::MPlus);
    ShootOutcome o = shoot(U(rng), U(rng), pp);
    REQUIRE(o.trajectory.size() > 10);
    for (const auto& s : o.trajectory) {
      if (s.u <= 0 || s.v <= 0) break;
      if (s.r == o.trajectory.front().r) continue;
      CHECK(s.up < 0);
      CHECK(s.vp < 0);
    }
    // strictly concave near the origin
    auto cs = concavity_signs(o.trajectory.front(), pp);
    CHECK(cs.h1 > 0);
    CHECK(cs.h2 > 0);
  }
}

TEST_CASE("scaling equivariance of shots") {
  auto pp = ProblemParams::make(1, 1, 3, 2, 3);
  const double a = pp.k.alpha, b = pp.k.beta;
  ShootOptions opt;
  opt.record_dense = true;
  ShootOutcome base = shoot(1.0, 1.0, pp, opt);
  for (double gamma : {0.5, 2.0}) {
    ShootOutcome scaled = shoot(std::pow(gamma, a), std::pow(gamma, b), pp, opt);
    // compare u_scaled(r) against gamma^a u(gamma r) at interior radii
    for (double r : {0.2, 0.5, 1.0, 1.5}) {
      const double lim = std::min(base.event_radius / gamma, scaled.event_radius) * 0.9;
      if (r > lim) continue;
      auto ys = sample_dense(scaled.dense, r);
      auto yb = sample_dense(base.dense, gamma * r);
      CHECK(ys[0] == doctest::Approx(std::pow(gamma, a) * yb[0]).epsilon(1e-7));
      CHECK(ys[2] == doctest::Approx(std::pow(gamma, b) * yb[2]).epsilon(1e-7));
    }
    // vanishing radii scale inversely
    if (base.tag == ShootTag::BallSolution || base.tag == ShootTag::UVanishesFirst ||
        base.tag == ShootTag::VVanishesFirst)
      CHECK(scaled.event_radius == doctest::Approx(base.event_radius / gamma).epsilon(1e-7));
  }
}

TEST_CASE("oracle consistency: halving tolerances moves events negligibly") {
  ShootOptions tight;
  tight.rtol = 5e-11;
  tight.atol = 5e-13;
  ShootOptions loose;
  loose.rtol = 1e-10;
  loose.atol = 1e-12;
  auto o1 = shoot(1.3, 0.9, kSubcrit, loose);
  auto o2 = shoot(1.3, 0.9, kSubcrit, tight);
  REQUIRE(o1.tag == o2.tag);
  CHECK(std::fabs(o1.event_radius - o2.event_radius) <= 10.0 * loose.rtol * o1.event_radius);
}

TEST_CASE("exterior Neumann start stays in the decreasing cone and symmetric data stays equal") {
  auto pp = ProblemParams::make(1, 1, 3, 2, 2);
  ShootOutcome o = exterior_shoot(1.0, 1.0, 1.0, pp);
  // below the critical curve positivity is lost in finite radius
  CHECK((o.tag == ShootTag::UVanishesFirst || o.tag == ShootTag::VVanishesFirst ||
         o.tag == ShootTag::BallSolution));
  for (std::size_t i = 0; i < o.trajectory.size(); i += 10) {
    CHECK(o.trajectory[i].u == doctest::Approx(o.trajectory[i].v).epsilon(1e-12));
    if (i > 0) CHECK(o.trajectory[i].up <= 0);
  }
  CHECK_THROWS_AS(exterior_shoot(-1, 1, 1, pp), std::invalid_argument);
  CHECK_THROWS_AS(exterior_shoot(1, 0, 1, pp), std::invalid_argument);
}

TEST_CASE("exterior Dirichlet start arms after leaving zero") {
  auto pp = ProblemParams::make(1, 1, 3, 2, 2);
  ShootOutcome o = exterior_dirichlet_shoot(1.0, 0.7, 0.7, pp);
  // rises, turns, and loses positivity at some finite radius beyond the start
  CHECK((o.tag == ShootTag::UVanishesFirst || o.tag == ShootTag::VVanishesFirst ||
         o.tag == ShootTag::BallSolution));
  CHECK(o.event_radius > 1.0);
}

TEST_CASE("step-underflow reporting carries a bracket") {
  // force an unreasonably small step budget to exercise the failure path
  ShootOptions opt;
  opt.max_steps = 40;
  ShootOutcome o = shoot(1, 1, kSubcrit, opt);
  CHECK(o.tag == ShootTag::Inconclusive);
}

TEST_CASE("trajectory csv shape") {
  ShootOptions opt;
  opt.r_max = 10.0;
  ShootOutcome o = shoot(1, 1, kCritical, opt);
  auto csv = trajectory_csv(o.trajectory, kCritical);
  CHECK(csv.rfind("r,u,up,v,vp,h1,h2\n", 0) == 0);
  const auto rows = std::count(csv.begin(), csv.end(), '\n');
  CHECK(rows == static_cast<long>(o.trajectory.size()) + 1);
}
