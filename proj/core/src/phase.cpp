#include "ple/phase.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <limits>

#include "ple/io.hpp"

namespace ple {

const char* to_string(Cone c) {
  switch (c) {
    case Cone::K: return "K";
    case Cone::K0: return "K0";
    case Cone::K1: return "K1";
    default: return "K2";
  }
}

const char* to_string(StationaryName n) {
  switch (n) {
    case StationaryName::O: return "O";
    case StationaryName::N0: return "N0";
    case StationaryName::M0: return "M0";
    case StationaryName::A0: return "A0";
    case StationaryName::I0: return "I0";
    case StationaryName::J0: return "J0";
    case StationaryName::K0pt: return "K0";
    case StationaryName::L0: return "L0";
    case StationaryName::P0: return "P0";
    case StationaryName::G0: return "G0";
    case StationaryName::Q0: return "Q0";
    default: return "H0";
  }
}

const char* to_string(PartitionLabel l) {
  switch (l) {
    case PartitionLabel::N1: return "N1";
    case PartitionLabel::N2: return "N2";
    case PartitionLabel::D: return "D";
    case PartitionLabel::GN0: return "G_N0";
    case PartitionLabel::A1: return "A1";
    case PartitionLabel::A2: return "A2";
    case PartitionLabel::Sigma: return "Sigma";
    case PartitionLabel::GP: return "G_P";
    default: return "inconclusive";
  }
}

PhaseState to_phase(const RadialState& s, const ProblemParams& pp) {
  if (!(s.r > 0.0)) throw std::domain_error("phase map needs r > 0");
  if (s.u == 0.0 || s.v == 0.0 || s.up == 0.0 || s.vp == 0.0)
    throw std::domain_error("phase map pole: zero component");
  PhaseState ps;
  ps.t = std::log(s.r);
  ps.X = -s.r * s.up / s.u;
  ps.Y = -s.r * s.vp / s.v;
  ps.Z = -s.r * sgnpow(s.v, pp.p) / s.up;
  ps.W = -s.r * sgnpow(s.u, pp.q) / s.vp;
  const bool un = s.up < 0, vn = s.vp < 0;
  ps.cone = un ? (vn ? Cone::K : Cone::K1) : (vn ? Cone::K2 : Cone::K0);
  return ps;
}

RadialState from_phase(const PhaseState& s, const ProblemParams& pp) {
  if (s.cone != Cone::K) throw std::domain_error("inverse map defined on the positive cone");
  const double xz = s.X * s.Z, yw = s.Y * s.W;
  if (!(xz > 0.0) || !(yw > 0.0))
    throw std::domain_error("inverse map needs positive XZ and YW");
  const double pq1 = pp.p * pp.q - 1.0;
  const double r = std::exp(s.t);
  RadialState out;
  out.r = r;
  out.u = std::pow(r, -pp.k.alpha) * std::pow(xz, 1.0 / pq1) * std::pow(yw, pp.p / pq1);
  out.v = std::pow(r, -pp.k.beta) * std::pow(xz, pp.q / pq1) * std::pow(yw, 1.0 / pq1);
  out.up = -s.X * out.u / r;
  out.vp = -s.Y * out.v / r;
  return out;
}

namespace {

// r u''/u' as a function of Z (and r v''/v' of W). For negative slope the
// Lipschitz reduction keeps its kink; for positive slope the component is
// forced concave and the branch is linear.
inline double slope_log_curvature(double Zlike, bool slope_negative, const ProblemParams& pp) {
  if (slope_negative) return -pucci_M(pp.base_ell() * (pp.N - 1) - Zlike, pp);
  if (pp.op == Operator::MPlus) return (Zlike - pp.Lambda * (pp.N - 1)) / pp.lambda;
  return (Zlike - pp.lambda * (pp.N - 1)) / pp.Lambda;
}

}  // namespace

Vec4 rhs_phase(const Vec4& s, Cone cone, const ProblemParams& pp) {
  const double X = s[0], Y = s[1], Z = s[2], W = s[3];
  const bool un = cone == Cone::K || cone == Cone::K1;  // u' < 0
  const bool vn = cone == Cone::K || cone == Cone::K2;  // v' < 0
  const double gu = slope_log_curvature(Z, un, pp);
  const double gv = slope_log_curvature(W, vn, pp);
  return {X * (1.0 + X + gu), Y * (1.0 + Y + gv), Z * (1.0 - pp.p * Y - gu),
          W * (1.0 - pp.q * X - gv)};
}

std::array<Vec4, 4> phase_jacobian(const Vec4& s, const ProblemParams& pp) {
  const double X = s[0], Y = s[1], Z = s[2], W = s[3];
  const double thr = pp.base_ell() * (pp.N - 1);
  const bool u_conc = Z > thr, v_conc = W > thr;
  const double iu = u_conc ? pp.base_ell() : pp.co_ell();
  const double iv = v_conc ? pp.base_ell() : pp.co_ell();
  const double Du = u_conc ? pp.N : pp.k.n_tilde;
  const double Dv = v_conc ? pp.N : pp.k.n_tilde;
  std::array<Vec4, 4> J{};
  J[0] = {2.0 * X - (Du - 2.0) + Z / iu, 0.0, X / iu, 0.0};
  J[1] = {0.0, 2.0 * Y - (Dv - 2.0) + W / iv, 0.0, Y / iv};
  J[2] = {0.0, -pp.p * Z, Du - pp.p * Y - 2.0 * Z / iu, 0.0};
  J[3] = {-pp.q * W, 0.0, 0.0, Dv - pp.q * X - 2.0 * W / iv};
  return J;
}

namespace {

Vec4 catalog_coords(StationaryName n, const ProblemParams& pp) {
  const double Nt = pp.k.n_tilde;
  const double bN = pp.base_ell() * pp.N;
  const double co = pp.co_ell();
  const double e = Nt - 2.0;
  switch (n) {
    case StationaryName::O: return {0, 0, 0, 0};
    case StationaryName::N0: return {0, 0, bN, bN};
    case StationaryName::M0:
      return {pp.k.alpha, pp.k.beta, co * (e - pp.k.alpha), co * (e - pp.k.beta)};
    case StationaryName::A0: return {e, e, 0, 0};
    case StationaryName::I0: return {e, 0, 0, 0};
    case StationaryName::J0: return {0, e, 0, 0};
    case StationaryName::K0pt: return {0, 0, bN, 0};
    case StationaryName::L0: return {0, 0, 0, bN};
    case StationaryName::P0: return {e, pp.q * e - 2.0, 0, co * (Nt - pp.q * e)};
    case StationaryName::G0: return {e, 0, 0, co * (Nt - pp.q * e)};
    case StationaryName::Q0: return {pp.p * e - 2.0, e, co * (Nt - pp.p * e), 0};
    default: return {0, e, co * (Nt - pp.p * e), 0};  // H0
  }
}

// Diagonal entries of the linearization at points with a vanishing coupling
// block, simplified so integer data stays exact.
std::array<double, 4> catalog_diag(StationaryName n, const ProblemParams& pp) {
  const double Nt = pp.k.n_tilde;
  const double N = pp.N;
  const double e = Nt - 2.0;
  const double p = pp.p, q = pp.q;
  switch (n) {
    case StationaryName::O: return {-e, -e, Nt, Nt};
    case StationaryName::N0: return {2.0, 2.0, -N, -N};
    case StationaryName::A0: return {e, e, Nt - p * e, Nt - q * e};
    case StationaryName::I0: return {e, -e, Nt, Nt - q * e};
    case StationaryName::J0: return {-e, e, Nt - p * e, Nt};
    case StationaryName::K0pt: return {2.0, -e, -N, Nt};
    case StationaryName::L0: return {-e, 2.0, Nt, -N};
    case StationaryName::P0: return {e, q * e - 2.0, Nt - p * (q * e - 2.0), q * e - Nt};
    case StationaryName::G0: return {e, 2.0 - q * e, Nt, q * e - Nt};
    case StationaryName::Q0: return {p * e - 2.0, e, p * e - Nt, Nt - q * (p * e - 2.0)};
    case StationaryName::H0: return {2.0 - p * e, e, p * e - Nt, Nt};
    default: return {0, 0, 0, 0};  // M0 handled by the quartic
  }
}

std::array<std::complex<double>, 4> m0_eigenvalues(const ProblemParams& pp) {
  const double Nt = pp.k.n_tilde;
  const double a = pp.k.alpha, b = pp.k.beta;
  // char poly: (a-s)(b-s)(a+2-Nt-s)(b+2-Nt-s) = pq ab (Nt-2-a)(Nt-2-b)
  const double f = a + 2.0 - Nt, h = b + 2.0 - Nt;
  const double P = pp.p * pp.q * a * b * (Nt - 2.0 - a) * (Nt - 2.0 - b);
  const double e1 = a + b + f + h;
  const double e2 = a * b + a * f + a * h + b * f + b * h + f * h;
  const double e3 = a * b * f + a * b * h + a * f * h + b * f * h;
  const double e4 = a * b * f * h;
  Eigen::Matrix4d C = Eigen::Matrix4d::Zero();
  C(1, 0) = C(2, 1) = C(3, 2) = 1.0;
  C(0, 3) = -(e4 - P);
  C(1, 3) = e3;
  C(2, 3) = -e2;
  C(3, 3) = e1;
  Eigen::EigenSolver<Eigen::Matrix4d> es(C);
  std::array<std::complex<double>, 4> out;
  for (int i = 0; i < 4; ++i) out[i] = es.eigenvalues()(i);
  std::sort(out.begin(), out.end(), [](auto l, auto r) {
    return l.real() != r.real() ? l.real() < r.real() : l.imag() < r.imag();
  });
  return out;
}

}  // namespace

std::array<std::complex<double>, 4> stationary_eigenvalues(StationaryName n,
                                                           const ProblemParams& pp) {
  if (n == StationaryName::M0) return m0_eigenvalues(pp);
  auto d = catalog_diag(n, pp);
  std::sort(d.begin(), d.end());
  return {std::complex<double>(d[0], 0), std::complex<double>(d[1], 0),
          std::complex<double>(d[2], 0), std::complex<double>(d[3], 0)};
}

StationaryPoint stationary_point(StationaryName n, const ProblemParams& pp) {
  StationaryPoint sp;
  sp.name = n;
  sp.coords = catalog_coords(n, pp);
  sp.eigenvalues = stationary_eigenvalues(n, pp);
  for (const auto& ev : sp.eigenvalues) {
    if (ev.real() < 0) ++sp.dim_stable;
    if (ev.real() > 0) ++sp.dim_unstable;
  }
  sp.in_cone_closure = true;
  for (double c : sp.coords)
    if (c < 0.0) sp.in_cone_closure = false;
  const double thr = pp.base_ell() * (pp.N - 1);
  sp.u_concave = sp.coords[2] > thr;
  sp.v_concave = sp.coords[3] > thr;
  return sp;
}

std::vector<StationaryPoint> stationary_catalog(const ProblemParams& pp) {
  using SN = StationaryName;
  std::vector<StationaryPoint> out;
  for (SN n : {SN::O, SN::N0, SN::M0, SN::A0, SN::I0, SN::J0, SN::K0pt, SN::L0, SN::P0, SN::G0,
               SN::Q0, SN::H0})
    out.push_back(stationary_point(n, pp));
  return out;
}

std::array<Vec4, 2> m0_unstable_plane(const ProblemParams& pp) {
  auto M0 = catalog_coords(StationaryName::M0, pp);
  auto J = phase_jacobian(M0, pp);
  Eigen::Matrix4d A;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) A(i, j) = J[i][j];
  Eigen::EigenSolver<Eigen::Matrix4d> es(A);
  std::array<Vec4, 2> basis{};
  int found = 0;
  for (int i = 0; i < 4 && found < 2; ++i) {
    if (es.eigenvalues()(i).real() <= 0) continue;
    auto v = es.eigenvectors().col(i);
    Vec4 re{}, im{};
    double nim = 0;
    for (int j = 0; j < 4; ++j) {
      re[j] = v(j).real();
      im[j] = v(j).imag();
      nim += im[j] * im[j];
    }
    basis[found++] = re;
    if (found < 2 && nim > 1e-20) basis[found++] = im;
    if (std::fabs(es.eigenvalues()(i).imag()) > 0) ++i;  // skip the conjugate
  }
  if (found < 2) throw std::runtime_error("unstable plane at M0 is not two dimensional here");
  return basis;
}

double chart_radius(StationaryName n, const ProblemParams& pp) {
  auto c = catalog_coords(n, pp);
  double dmin = 1.0;
  for (const auto& sp : stationary_catalog(pp)) {
    if (sp.name == n) continue;
    double d2 = 0;
    for (int i = 0; i < 4; ++i) d2 += (sp.coords[i] - c[i]) * (sp.coords[i] - c[i]);
    dmin = std::min(dmin, std::sqrt(d2));
  }
  return 1e-3 * dmin;
}

PhaseState manifold_seed(StationaryName n, double d1, double d2, double offset,
                         const ProblemParams& pp) {
  const double norm = std::hypot(d1, d2);
  if (offset != 0.0 && !(norm > 0.0)) throw std::invalid_argument("zero seed direction");
  const double s1 = offset == 0.0 ? 0.0 : offset * d1 / norm;
  const double s2 = offset == 0.0 ? 0.0 : offset * d2 / norm;
  const double Nt = pp.k.n_tilde;
  const double e = Nt - 2.0;
  const double co = pp.co_ell();
  PhaseState ps;
  ps.t = 0;
  ps.cone = Cone::K;
  switch (n) {
    case StationaryName::N0: {
      if (s1 < 0 || s2 < 0)
        throw std::invalid_argument("exiting chart at N0 needs nonnegative (x,y)");
      const double bN = pp.base_ell() * pp.N;
      ps.X = s1;
      ps.Y = s2;
      ps.Z = bN * (1.0 - pp.p * s2 / (pp.N + 2.0));
      ps.W = bN * (1.0 - pp.q * s1 / (pp.N + 2.0));
      return ps;
    }
    case StationaryName::A0: {
      if (s1 < 0 || s2 < 0)
        throw std::invalid_argument("entering chart at A0 needs nonnegative (z,w)");
      ps.X = e - e * s1 / (co * (pp.p * e - 2.0));
      ps.Y = e - e * s2 / (co * (pp.q * e - 2.0));
      ps.Z = s1;
      ps.W = s2;
      return ps;
    }
    case StationaryName::P0: {
      if (s1 < 0 || s2 < 0)
        throw std::invalid_argument("entering chart at P0 needs nonnegative (z,w)");
      auto c = catalog_coords(n, pp);
      const double kap = pp.q * e - 2.0;
      const double sig1 = (pp.p * pp.q - 1.0) * (pp.k.alpha - e);
      const double sig2 = pp.q * e - Nt;
      const double c1 = pp.p * pp.q * e - 2.0 * (pp.p + 1.0);
      const double c2 = kap - sig1;
      const double c3 = pp.q * co * sig2;
      const double c4 = sig2 - sig1;
      // sigma1 direction parameterized by its Z component
      const double x1 = -e / (co * c1);
      const double w1 = c4 != 0.0 ? -c3 * x1 / c4 : 0.0;
      const double y1 = c2 != 0.0 ? -kap * w1 / (co * c2) : 0.0;
      // sigma2 direction: (0, -kap/(co e), 0, 1)
      const double a = s1;
      const double b = s2 - a * w1;
      ps.X = c[0] + a * x1;
      ps.Y = c[1] + a * y1 + b * (-kap / (co * e));
      ps.Z = c[2] + a;
      ps.W = c[3] + a * w1 + b;
      return ps;
    }
    case StationaryName::Q0: {
      // mirror of P0 with p<->q, X<->Y, Z<->W
      ProblemParams sw = pp;
      std::swap(sw.p, sw.q);
      sw.k = derive_constants(sw.lambda, sw.Lambda, sw.N, sw.p, sw.q, sw.op);
      PhaseState m = manifold_seed(StationaryName::P0, d2, d1, offset, sw);
      ps.X = m.Y;
      ps.Y = m.X;
      ps.Z = m.W;
      ps.W = m.Z;
      return ps;
    }
    case StationaryName::M0: {
      auto c = catalog_coords(n, pp);
      auto B = m0_unstable_plane(pp);
      ps.X = c[0] + s1 * B[0][0] + s2 * B[1][0];
      ps.Y = c[1] + s1 * B[0][1] + s2 * B[1][1];
      ps.Z = c[2] + s1 * B[0][2] + s2 * B[1][2];
      ps.W = c[3] + s1 * B[0][3] + s2 * B[1][3];
      return ps;
    }
    default:
      throw std::invalid_argument("no chart formula for this stationary point");
  }
}

PhaseRun integrate_phase(const PhaseState& seed, double t0, double t1, const ProblemParams& pp,
                         const PhaseOptions& opt) {
  const Cone cone = seed.cone;
  auto f = [cone, pp](double, const Vec4& y) { return rhs_phase(y, cone, pp); };

  const double thr = pp.base_ell() * (pp.N - 1);
  const double wall = pp.k.n_tilde - 2.0;
  const double B = opt.blow_threshold;
  const bool backward = t1 < t0;

  std::vector<OdeEvent> ev;
  // 0..3: blow-up guards (|component| rising through the threshold)
  for (int i = 0; i < 4; ++i)
    ev.push_back({[i, B](double, const Vec4& y) { return std::fabs(y[i]) - B; }, true, false, +1});
  // 4,5: concavity-plane kinks (also logged as crossings)
  ev.push_back({[thr](double, const Vec4& y) { return y[2] - thr; }, false, true, 0});
  ev.push_back({[thr](double, const Vec4& y) { return y[3] - thr; }, false, true, 0});
  // 6,7: the X,Y walls (record only)
  ev.push_back({[wall](double, const Vec4& y) { return y[0] - wall; }, false, false, 0});
  ev.push_back({[wall](double, const Vec4& y) { return y[1] - wall; }, false, false, 0});

  OdeOptions oo;
  oo.rtol = opt.rtol;
  oo.atol = opt.atol;
  oo.max_steps = opt.max_steps;
  oo.record = opt.record;
  oo.record_dense = opt.record_dense;

  PhaseRun run;
  auto cat = cone == Cone::K ? stationary_catalog(pp) : std::vector<StationaryPoint>{};

  // Convergence bookkeeping on accepted points: entry needs the spec
  // thresholds (conv_dist, conv_rhs); the watch then only requires staying
  // inside a 100x leash for conv_window, since a seeded trajectory sweeps
  // through its omega-limit at some small but nonzero distance.
  double conv_since = std::numeric_limits<double>::quiet_NaN();
  int conv_idx = -1;
  auto observer = [&](double t, const Vec4& y) {
    if (cat.empty()) return true;
    for (std::size_t k = 0; k < cat.size(); ++k) {
      double d2 = 0;
      for (int i = 0; i < 4; ++i) d2 += (y[i] - cat[k].coords[i]) * (y[i] - cat[k].coords[i]);
      const double d = std::sqrt(d2);
      if (conv_idx == static_cast<int>(k)) {
        if (d > 100.0 * opt.conv_dist) {
          conv_idx = -1;
          conv_since = std::numeric_limits<double>::quiet_NaN();
        } else if (std::fabs(t - conv_since) >= opt.conv_window) {
          return false;  // converged
        }
        return true;
      }
      if (d < opt.conv_dist) {
        const Vec4 fy = rhs_phase(y, cone, pp);
        if (std::max({std::fabs(fy[0]), std::fabs(fy[1]), std::fabs(fy[2]),
                      std::fabs(fy[3])}) < opt.conv_rhs) {
          conv_idx = static_cast<int>(k);
          conv_since = t;
          return true;
        }
      }
    }
    return true;
  };
  oo.observer = observer;

  OdeResult res = integrate(f, t0, seed.vec(), t1, oo, ev);
  run.t = std::move(res.t);
  run.y = std::move(res.y);
  run.dense = std::move(res.dense);
  for (auto& [idx, th] : res.hits) {
    if (idx == 4) run.crossings.push_back({'Z', th});
    if (idx == 5) run.crossings.push_back({'W', th});
    if (idx == 6) run.crossings.push_back({'X', th});
    if (idx == 7) run.crossings.push_back({'Y', th});
  }
  run.n_steps = res.n_steps;
  run.t_stop = res.t_end;
  run.y_stop = res.y_end;
  const double dir = backward ? -1.0 : 1.0;

  switch (res.status) {
    case OdeStatus::EventStop: {
      run.stop = PhaseStop::BlowUp;
      run.blow_component = res.event_index;
      const Vec4 fy = rhs_phase(run.y_stop, cone, pp);
      const int i = res.event_index;
      run.blow_bracket_lo = run.t_stop;
      run.blow_bracket_hi =
          fy[i] != 0.0 ? run.t_stop + dir * std::fabs(run.y_stop[i] / fy[i]) : run.t_stop;
      break;
    }
    case OdeStatus::ObserverStop:
      run.stop = PhaseStop::Converged;
      run.converged_to = cat[conv_idx].name;
      break;
    case OdeStatus::StepUnderflow: run.stop = PhaseStop::Underflow; break;
    case OdeStatus::MaxSteps: run.stop = PhaseStop::MaxSteps; break;
    default: run.stop = PhaseStop::SpanEnd; break;
  }
  return run;
}

namespace {

PartitionLabel classify_run(const PhaseRun& run, bool fast_chart, double B, double box_x,
                            double box_zw) {
  const int blow = run.blow_component;
  if (run.stop == PhaseStop::BlowUp) {
    const Vec4& y = run.y_stop;
    if (!fast_chart) {
      const bool both = std::min(y[0], y[1]) >= 0.1 * B;
      if (both) return PartitionLabel::D;
      if (blow == 0) return PartitionLabel::N1;
      if (blow == 1) return PartitionLabel::N2;
      return PartitionLabel::Inconclusive;  // Z or W pole on a regular chart
    }
    const bool both = std::min(y[2], y[3]) >= 0.1 * B;
    if (both) return PartitionLabel::Sigma;
    if (blow == 2) return PartitionLabel::A1;
    if (blow == 3) return PartitionLabel::A2;
    return PartitionLabel::Inconclusive;
  }
  if (run.stop == PhaseStop::Converged) return fast_chart ? PartitionLabel::GP : PartitionLabel::GN0;
  if (run.stop == PhaseStop::SpanEnd) {
    const Vec4& y = run.y_stop;
    const bool boxed = y[0] > 0 && y[1] > 0 && y[2] > 0 && y[3] > 0 && y[0] < box_x &&
                       y[1] < box_x && y[2] < box_zw && y[3] < box_zw;
    if (boxed) return fast_chart ? PartitionLabel::GP : PartitionLabel::GN0;
  }
  return PartitionLabel::Inconclusive;
}

}  // namespace

PartitionScan partition_scan_regular(const ProblemParams& pp, int n_dirs, double t_max,
                                     const PhaseOptions& opt) {
  PartitionScan scan;
  scan.chart = StationaryName::N0;
  const double rho = chart_radius(StationaryName::N0, pp);
  const double box_x = pp.k.n_tilde - 2.0 + 1e-6;
  const double box_zw = pp.base_ell() * pp.N + 1e-6;
  for (int k = 0; k < n_dirs; ++k) {
    const double th = (k + 0.5) * (M_PI / 2.0) / n_dirs;
    PhaseState seed = manifold_seed(StationaryName::N0, std::cos(th), std::sin(th), rho, pp);
    PhaseRun run = integrate_phase(seed, 0.0, t_max, pp, opt);
    scan.angles.push_back(th);
    scan.labels.push_back(classify_run(run, false, opt.blow_threshold, box_x, box_zw));
  }
  return scan;
}

PartitionScan partition_scan_fast(const ProblemParams& pp, StationaryName point, int n_dirs,
                                  double t_max, const PhaseOptions& opt) {
  if (point != StationaryName::A0 && point != StationaryName::P0 && point != StationaryName::Q0)
    throw std::invalid_argument("fast-decay chart must be A0, P0 or Q0");
  PartitionScan scan;
  scan.chart = point;
  const double rho = chart_radius(point, pp);
  const double box_x = pp.k.n_tilde - 2.0 + 1e-6;
  const double box_zw = pp.base_ell() * pp.N + 1e-6;
  for (int k = 0; k < n_dirs; ++k) {
    const double th = (k + 0.5) * (M_PI / 2.0) / n_dirs;
    PhaseState seed = manifold_seed(point, std::cos(th), std::sin(th), rho, pp);
    PhaseRun run = integrate_phase(seed, 0.0, -t_max, pp, opt);
    scan.angles.push_back(th);
    scan.labels.push_back(classify_run(run, true, opt.blow_threshold, box_x, box_zw));
  }
  return scan;
}

std::string phase_csv(const std::vector<double>& t, const std::vector<Vec4>& y, Cone cone) {
  std::string out = "t,X,Y,Z,W,cone\n";
  for (std::size_t i = 0; i < t.size(); ++i)
    out += csv_row({format_double(t[i]), format_double(y[i][0]), format_double(y[i][1]),
                    format_double(y[i][2]), format_double(y[i][3]), to_string(cone)});
  return out;
}

std::string catalog_json(const std::vector<StationaryPoint>& pts) {
  std::string out = "[\n";
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const auto& sp = pts[k];
    out += "  {\"name\": \"";
    out += to_string(sp.name);
    out += "\", \"coords\": [";
    for (int i = 0; i < 4; ++i) {
      out += format_double(sp.coords[i]);
      if (i < 3) out += ", ";
    }
    out += "], \"eigenvalues\": [";
    for (int i = 0; i < 4; ++i) {
      out += "[" + format_double(sp.eigenvalues[i].real()) + ", " +
             format_double(sp.eigenvalues[i].imag()) + "]";
      if (i < 3) out += ", ";
    }
    out += "], \"dims\": {\"stable\": " + std::to_string(sp.dim_stable) +
           ", \"unstable\": " + std::to_string(sp.dim_unstable) + "}, \"in_cone\": ";
    out += sp.in_cone_closure ? "true" : "false";
    out += "}";
    if (k + 1 < pts.size()) out += ",";
    out += "\n";
  }
  out += "]\n";
  return out;
}

}  // namespace ple
