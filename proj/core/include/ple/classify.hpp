#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ple/params.hpp"
#include "ple/radial.hpp"

namespace ple {

enum class FamilyVerdict { BallFamily, GroundStateFamily, Inconclusive };

const char* to_string(FamilyVerdict v);

struct ClassifyOptions {
  ShootOptions shoot{};
  double eta_bracket_rel = 1e-10;  // stop when (hi-lo) <= rel * eta
  int bracket_k_min = -20, bracket_k_max = 20;  // initial geometric grid 2^k
  // Extrapolated-gap thresholds for the boundary shot. On the ground-state
  // side the gap is 1/Y >= 1/(Ntilde-2) (order 0.1 and up at moderate
  // ellipticity ratios); on the ball side it is bracket-limited and stays
  // well below these even where the nearby curve amplifies it.
  double gap_ground = 8e-2;
  double gap_ball = 2e-2;
  int max_bisect = 200;
};

struct CriticalShot {
  double xi = 1.0;
  double eta_star = 0;
  double bracket_lo = 0, bracket_hi = 0;
  FamilyVerdict verdict = FamilyVerdict::Inconclusive;
  double slope_c = 0;  // eta_star / xi^{(q+1)/(p+1)}
  double ball_radius = 0;  // when BallFamily
  ShootOutcome witness{};
};

/// Bisect eta between a UVanishesFirst and a VVanishesFirst witness at fixed
/// xi; the boundary shot is classified as a simultaneous ball vanish
/// (BallFamily) or a surviving/peeling trajectory with recognized decay
/// (GroundStateFamily). Throws std::runtime_error when no bracket exists on
/// the default grid (never widened silently).
CriticalShot critical_eta(double xi, const ProblemParams& pp, const ClassifyOptions& opt = {});

struct PQVerdict {
  double p = 0, q = 0;
  char verdict = '?';  // 'C' or 'G'
  double eta_star = 0;
  double slope_c = 0;
  double R_or_decay = 0;  // ball radius for C, fitted decay slope for G
  int n_u = 0, n_v = 0;
  bool inconclusive = false;
};

/// Run critical_eta at xi = 1 and map BallFamily -> C, GroundStateFamily -> G.
PQVerdict classify_pq(double p, double q, const ProblemParams& base,
                      const ClassifyOptions& opt = {});

struct CurvePoint {
  double p = 0;
  double q_star = 0;
  double bracket_lo = 0, bracket_hi = 0;
  bool ok = false;
  std::string note;
};

struct CurveOptions {
  ClassifyOptions classify{};
  double q_lo = 0;  // 0: max(1.02/p, 0.2)
  double q_hi = 60.0;
  double q_tol = 1e-3;
  int threads = 1;
};

/// For each p in the grid, bisect q between a C verdict and a G verdict.
/// Grid points whose endpoints classify identically are reported as needing
/// a wider bracket (ok = false), never silently widened.
std::vector<CurvePoint> trace_critical_curve(const ProblemParams& base,
                                             const std::vector<double>& p_grid,
                                             const CurveOptions& opt = {});

enum class TheoremId { Regular, Exterior, Singular, ExteriorDirichlet, ConcavityLaplace,
                       Exclusion };

const char* to_string(TheoremId id);
std::optional<TheoremId> theorem_from_string(const std::string& s);

struct TheoremSample {
  double p = 0, q = 0;
  bool pass = false;
  bool inconclusive = false;
  std::string detail;
  PQVerdict verdict{};  // filled by the scans that classify
};

struct TheoremReport {
  TheoremId id{};
  std::vector<TheoremSample> samples;
  bool all_pass = false;
  int n_inconclusive = 0;
};

struct TheoremOptions {
  ClassifyOptions classify{};
  int grid = 10;        // per-axis size of (ku,kv) / slope sweeps
  double R = 1.0;       // exterior start radius
  int threads = 1;
};

/// Desk-scale check of one theorem on a caller-supplied (p,q) sample set:
///  Regular: R_d samples classify C, R_u samples classify G;
///  Exterior: Neumann sweep survives nowhere on a log grid (R_D closure
///    samples; |delta| <= 1e-12 is reported Inconclusive), fast-decay
///    entering-chart scan finds a Sigma boundary on R_u samples;
///  Singular: boundary trajectory of the M0 exiting chart reaches a
///    fast-decay point (R_d & R_D samples) / does not (R_u samples);
///  ExteriorDirichlet: slope sweep at lambda=Lambda loses positivity;
///  ConcavityLaplace: the critical shot changes concavity exactly once;
///  Exclusion: every sample yields exactly one of C, G.
TheoremReport theorem_scan(TheoremId id, const std::vector<std::pair<double, double>>& samples,
                           const ProblemParams& base, const TheoremOptions& opt = {});

/// CSV export, header `p,q,verdict,eta_star,slope_c,R_or_decay,n_u,n_v`.
std::string scan_csv(const std::vector<PQVerdict>& rows);

/// CSV export, header `p,q_star,bracket_lo,bracket_hi`.
std::string curve_csv(const std::vector<CurvePoint>& rows);

}  // namespace ple
