#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ple/ode.hpp"
#include "ple/params.hpp"

namespace ple {

/// One point along a radial solution of the second-order system.
struct RadialState {
  double r = 0, u = 0, up = 0, v = 0, vp = 0;
};

/// The sign drivers of -u'' and -v'':
///   h1 = (N-1) m(u')/r + v^p,   h2 = (N-1) m(v')/r + u^q,
/// so sign(u'') = -sign(h1) wherever h1 != 0.
struct ConcavitySigns {
  double h1 = 0, h2 = 0;
};

ConcavitySigns concavity_signs(const RadialState& s, const ProblemParams& pp);

/// Right-hand side of the radial system at r > 0 (r = 0 rejected; use
/// series_start there). Valid in every quadrant of (u',v') signs: the
/// Lipschitz m/M pair resolves the branch.
Vec4 rhs_radial(const RadialState& s, const ProblemParams& pp);

/// Taylor launch of the regular initial value problem u(0)=xi, v(0)=eta,
/// u'(0)=v'(0)=0 at a small radius r0 (both components are concave near 0,
/// so the operator reduces to iota*Laplacian). Quartic truncation.
/// Nonpositive xi, eta or r0 rejected.
RadialState series_start(double xi, double eta, double r0, const ProblemParams& pp);

/// Default series radius: r0_scale * max(1, xi^((1-q)/2), eta^((1-p)/2)).
double default_series_radius(double xi, double eta, const ProblemParams& pp,
                             double r0_scale = 1e-4);

enum class ShootTag {
  UVanishesFirst,
  VVanishesFirst,
  BallSolution,
  GroundStateFast,
  GroundStateSlow,
  Inconclusive,
};

const char* to_string(ShootTag t);

struct ShootOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double r_max = 1e6;
  double r0_scale = 1e-4;   // series start prefactor
  double r0_override = 0;   // >0: exact start radius
  double eps_zero_rel = 1e-10;  // vanishing tolerance, relative to max(xi,eta)
  double sim_tol = 1e-6;        // ball simultaneity |r_u - r_v| <= sim_tol*R
  double slope_tol = 0.02;      // decay-fit window around -(Nt-2) / -alpha
  double value_cap_rel = 1e8;   // growth guard (exterior starts)
  std::size_t max_steps = 4'000'000;
  bool record = true;
  bool record_dense = false;
};

struct ShootOutcome {
  ShootTag tag = ShootTag::Inconclusive;
  double event_radius = 0;  // r_u, r_v, R, or the radius where integration ended
  double bracket_lo = 0, bracket_hi = 0;
  double other_value = 0;    // surviving component at the stop point
  double other_gap_rel = 0;  // extrapolated other-vanish gap, relative to radius
  int n_u = 0, n_v = 0;      // concavity changes counted from h1/h2 root events
  double slope_u = 0, slope_v = 0;  // log-log decay fit over the last decade
  bool grew = false;                // hit the growth cap (exterior sweeps)
  RadialState end_state{};
  std::vector<RadialState> trajectory;
  std::vector<DenseStep> dense;  // in r, when record_dense
  std::size_t n_steps = 0;
};

/// Integrate the regular shooting problem from series data and classify the
/// outcome. Events: u or v reaching eps_zero (with ball-simultaneity test),
/// r reaching r_max (then decay classification), step underflow (reported
/// with its bracket, never thrown).
ShootOutcome shoot(double xi, double eta, const ProblemParams& pp, const ShootOptions& opt = {});

/// Exterior problem with Neumann data u(R)=ku, v(R)=kv, u'(R)=v'(R)=0,
/// integrated outward. Cone-correct by construction (the m/M reductions
/// cover every sign pattern of u', v'); u',v' sign changes are kink events.
ShootOutcome exterior_shoot(double R, double ku, double kv, const ProblemParams& pp,
                            const ShootOptions& opt = {});

/// Exterior problem with Dirichlet data u(R)=v(R)=0 and inward slopes
/// u'(R)=su>0, v'(R)=sv>0. Positivity-loss events arm only after the
/// components rise above the vanishing tolerance.
ShootOutcome exterior_dirichlet_shoot(double R, double su, double sv, const ProblemParams& pp,
                                      const ShootOptions& opt = {});

/// Count sign changes of h1, h2 along a sampled trajectory.
std::pair<int, int> concavity_change_count(const std::vector<RadialState>& traj,
                                           const ProblemParams& pp);

/// Least-squares slope of log w against log r over samples with r in
/// [r_lo, r_hi]. Returns 0 with ok=false when fewer than 5 samples fall in
/// the window.
double loglog_slope_window(const std::vector<RadialState>& traj, double r_lo, double r_hi,
                           bool use_u, bool& ok);

/// The one-decade window [r_hi/10, r_hi].
double loglog_slope(const std::vector<RadialState>& traj, double r_hi, bool use_u, bool& ok);

/// CSV export, header `r,u,up,v,vp,h1,h2`, one row per accepted step.
std::string trajectory_csv(const std::vector<RadialState>& traj, const ProblemParams& pp);

}  // namespace ple
