#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "ple/ode.hpp"
#include "ple/params.hpp"
#include "ple/radial.hpp"

namespace ple {

/// Sign cone of (u',v'): K both negative, K0 both positive, K1 u'<0<v',
/// K2 v'<0<u'. The autonomous field switches reduction per cone.
enum class Cone { K, K0, K1, K2 };

const char* to_string(Cone c);

struct PhaseState {
  double t = 0;  // t = ln r
  double X = 0, Y = 0, Z = 0, W = 0;
  Cone cone = Cone::K;

  Vec4 vec() const { return {X, Y, Z, W}; }
};

/// X=-ru'/u, Y=-rv'/v, Z=-rv^p/u', W=-ru^q/v'; throws std::domain_error on
/// a pole (zero denominator) or r <= 0.
PhaseState to_phase(const RadialState& s, const ProblemParams& pp);

/// Inverse on the positive cone: u = r^{-a}(XZ)^{1/(pq-1)}(YW)^{p/(pq-1)},
/// v = r^{-b}(XZ)^{q/(pq-1)}(YW)^{1/(pq-1)}, with u' = -Xu/r, v' = -Yv/r.
/// Rejects nonpositive XZ or YW.
RadialState from_phase(const PhaseState& s, const ProblemParams& pp);

/// The quadratic vector field in the given cone.
Vec4 rhs_phase(const Vec4& s, Cone cone, const ProblemParams& pp);
inline Vec4 rhs_phase(const PhaseState& s, const ProblemParams& pp) {
  return rhs_phase(s.vec(), s.cone, pp);
}

/// Linearization in the cone K; rows (X,Z) take the branch of Z against
/// base(N-1), rows (Y,W) the branch of W.
std::array<Vec4, 4> phase_jacobian(const Vec4& s, const ProblemParams& pp);

enum class StationaryName { O, N0, M0, A0, I0, J0, K0pt, L0, P0, G0, Q0, H0 };

const char* to_string(StationaryName n);

struct StationaryPoint {
  StationaryName name{};
  Vec4 coords{};
  std::array<std::complex<double>, 4> eigenvalues{};
  int dim_stable = 0;
  int dim_unstable = 0;
  bool in_cone_closure = true;  // all coordinates >= 0
  // concavity quadrant the point sits in: (u side, v side), true = concave
  bool u_concave = false, v_concave = false;
};

/// All twelve cataloged stationary points of the cone-K field. Points whose
/// closed-form coordinates leave the closed cone are flagged, not dropped.
std::vector<StationaryPoint> stationary_catalog(const ProblemParams& pp);

StationaryPoint stationary_point(StationaryName n, const ProblemParams& pp);

/// Eigen data at a cataloged point: closed-form diagonal read-off whenever
/// one of the coupling entries vanishes (all points except M0), companion
/// quartic otherwise.
std::array<std::complex<double>, 4> stationary_eigenvalues(StationaryName n,
                                                           const ProblemParams& pp);

/// Basis of the 2-D unstable (Re>0) invariant subspace at M0; complex pairs
/// are returned as (Re v, Im v).
std::array<Vec4, 2> m0_unstable_plane(const ProblemParams& pp);

/// Seed on the invariant tangent plane of a stationary point.
///  N0: chart (x,y) on the exiting plane, Z,W filled from the tangent map.
///  A0/P0/Q0: chart (z,w) on the entering plane.
///  M0: chart on the unstable plane from m0_unstable_plane.
/// offset scales the unit direction (d1,d2); offset = 0 returns the point.
/// Directions pointing out of the admissible positive sector are rejected.
PhaseState manifold_seed(StationaryName n, double d1, double d2, double offset,
                         const ProblemParams& pp);

/// Local chart radius: 1e-3 * min(1, nearest other catalog point).
double chart_radius(StationaryName n, const ProblemParams& pp);

struct PhaseOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double blow_threshold = 1e6;
  double conv_dist = 1e-8;
  double conv_rhs = 1e-8;
  double conv_window = 10.0;  // time the convergence test must hold
  std::size_t max_steps = 4'000'000;
  bool record = true;
  bool record_dense = false;
};

enum class PhaseStop { SpanEnd, BlowUp, Converged, Underflow, MaxSteps };

struct PhaseRun {
  PhaseStop stop = PhaseStop::SpanEnd;
  int blow_component = -1;  // 0..3 = X,Y,Z,W
  double t_stop = 0;
  Vec4 y_stop{};
  double blow_bracket_lo = 0, blow_bracket_hi = 0;  // [t_stop, pole estimate]
  std::optional<StationaryName> converged_to{};
  std::vector<double> t;
  std::vector<Vec4> y;
  std::vector<DenseStep> dense;
  // crossings of the concavity planes and of the X,Y = Ntilde-2 walls
  struct Crossing {
    char kind;  // 'Z','W' planes; 'X','Y' walls
    double t;
  };
  std::vector<Crossing> crossings;
  std::size_t n_steps = 0;
};

/// Integrate the cone field over [t0, t1] (backward when t1 < t0) with
/// blow-up, convergence, plane-crossing and kink events.
PhaseRun integrate_phase(const PhaseState& seed, double t0, double t1, const ProblemParams& pp,
                         const PhaseOptions& opt = {});

enum class PartitionLabel { N1, N2, D, GN0, A1, A2, Sigma, GP, Inconclusive };

const char* to_string(PartitionLabel l);

struct PartitionScan {
  StationaryName chart{};
  std::vector<double> angles;          // chart directions in (0, pi/2)
  std::vector<PartitionLabel> labels;  // one per direction
};

/// Scan trajectories leaving N0 over n_dirs directions of its exiting chart
/// and label which component blows up first (N1: X, N2: Y, D: both,
/// GN0: stays in the a-priori box until t_max).
PartitionScan partition_scan_regular(const ProblemParams& pp, int n_dirs, double t_max = 300.0,
                                     const PhaseOptions& opt = {});

/// Same structure backward in time from the entering chart of a fast-decay
/// point (A0, P0 or Q0): A1/A2 by which of Z,W blows up first, Sigma both,
/// GP boxed.
PartitionScan partition_scan_fast(const ProblemParams& pp, StationaryName point, int n_dirs,
                                  double t_max = 300.0, const PhaseOptions& opt = {});

/// CSV export, header `t,X,Y,Z,W,cone`.
std::string phase_csv(const std::vector<double>& t, const std::vector<Vec4>& y, Cone cone);

/// Catalog export: JSON records {name, coords, eigenvalues (re,im), dims}.
std::string catalog_json(const std::vector<StationaryPoint>& pts);

}  // namespace ple
