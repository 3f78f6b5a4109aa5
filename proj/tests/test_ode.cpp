#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ple/ode.hpp"

using namespace ple;

TEST_CASE("integrator accuracy on a smooth system") {
  // harmonic pair: exact solution known
  auto f = [](double, const Vec4& y) { return Vec4{y[1], -y[0], y[3], -4.0 * y[2]}; };
  OdeOptions opt;
  opt.rtol = 1e-12;
  opt.atol = 1e-14;
  auto res = integrate(f, 0.0, Vec4{1, 0, 0, 2}, 10.0, opt);
  REQUIRE(res.status == OdeStatus::ReachedEnd);
  CHECK(res.y_end[0] == doctest::Approx(std::cos(10.0)).epsilon(1e-10));
  CHECK(res.y_end[2] == doctest::Approx(std::sin(20.0)).epsilon(1e-10));
}

TEST_CASE("dense output interpolates to high order") {
  auto f = [](double, const Vec4& y) { return Vec4{y[1], -y[0], 0, 0}; };
  OdeOptions opt;
  opt.rtol = 1e-11;
  opt.atol = 1e-13;
  opt.record_dense = true;
  auto res = integrate(f, 0.0, Vec4{1, 0, 0, 0}, 6.0, opt);
  double worst = 0;
  for (double t = 0.05; t < 6.0; t += 0.173)
    worst = std::max(worst, std::fabs(sample_dense(res.dense, t)[0] - std::cos(t)));
  CHECK(worst < 1e-9);
}

TEST_CASE("event location by bisection") {
  auto f = [](double, const Vec4& y) { return Vec4{y[1], -y[0], 0, 0}; };
  std::vector<OdeEvent> ev;
  ev.push_back({[](double, const Vec4& y) { return y[0]; }, true, false, -1});
  OdeOptions opt;
  opt.rtol = 1e-12;
  opt.atol = 1e-14;
  auto res = integrate(f, 0.0, Vec4{1, 0, 0, 0}, 10.0, opt, ev);
  REQUIRE(res.status == OdeStatus::EventStop);
  CHECK(res.t_end == doctest::Approx(M_PI / 2.0).epsilon(1e-12));
}

TEST_CASE("direction filter ignores the wrong crossing") {
  auto f = [](double, const Vec4& y) { return Vec4{y[1], -y[0], 0, 0}; };
  std::vector<OdeEvent> ev;
  // rising-only on y0: the first crossing (falling at pi/2) must be skipped
  ev.push_back({[](double, const Vec4& y) { return y[0]; }, true, false, +1});
  OdeOptions opt;
  auto res = integrate(f, 0.0, Vec4{1, 0, 0, 0}, 10.0, opt, ev);
  REQUIRE(res.status == OdeStatus::EventStop);
  CHECK(res.t_end == doctest::Approx(3.0 * M_PI / 2.0).epsilon(1e-10));
}

TEST_CASE("kink locking keeps full accuracy across a corner") {
  // y' = -|y| + 1/2: corner when y crosses 0 from above (y0 = 1 decays to 1/2)
  // pick instead y' = sign-dependent rate with a crossing:
  // y0' = -2 y0 + 1 for y0 > 1/4, else -y0 + 0.75; both give y -> 1/2, 0.75
  auto f = [](double, const Vec4& y) {
    const double a = y[0] > 0.25 ? -2.0 * y[0] + 1.0 : -y[0] + 0.75;
    return Vec4{a, 0, 0, 0};
  };
  std::vector<OdeEvent> ev;
  ev.push_back({[](double, const Vec4& y) { return y[0] - 0.25; }, false, true, 0});
  OdeOptions opt;
  opt.rtol = 1e-12;
  opt.atol = 1e-14;
  // start below the corner, rises through it toward 0.75
  auto res = integrate(f, 0.0, Vec4{0.0, 0, 0, 0}, 4.0, opt, ev);
  REQUIRE(res.status == OdeStatus::ReachedEnd);
  // piecewise-exact solution: y = 0.75(1-e^{-t}) until y = 0.25 at t* = ln(1.5),
  // then y = 1/2 + (1/4 - 1/2) e^{-2(t-t*)}
  const double tstar = std::log(1.5);
  const double exact = 0.5 - 0.25 * std::exp(-2.0 * (4.0 - tstar));
  CHECK(res.y_end[0] == doctest::Approx(exact).epsilon(1e-11));
  REQUIRE(res.hits.size() >= 1);
  CHECK(res.hits.front().second == doctest::Approx(tstar).epsilon(1e-9));
}

TEST_CASE("backward integration") {
  auto f = [](double, const Vec4& y) { return Vec4{y[0], 0, 0, 0}; };
  OdeOptions opt;
  opt.rtol = 1e-12;
  opt.atol = 1e-14;
  auto res = integrate(f, 0.0, Vec4{1, 0, 0, 0}, -3.0, opt);
  REQUIRE(res.status == OdeStatus::ReachedEnd);
  CHECK(res.y_end[0] == doctest::Approx(std::exp(-3.0)).epsilon(1e-10));
}

TEST_CASE("max-steps is reported, not thrown") {
  auto f = [](double, const Vec4& y) { return Vec4{y[1], -y[0], 0, 0}; };
  OdeOptions opt;
  opt.max_steps = 3;
  auto res = integrate(f, 0.0, Vec4{1, 0, 0, 0}, 1000.0, opt);
  CHECK(res.status == OdeStatus::MaxSteps);
}
