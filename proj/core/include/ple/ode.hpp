#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

namespace ple {

using Vec4 = std::array<double, 4>;

inline Vec4 operator+(const Vec4& a, const Vec4& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}
inline Vec4 operator-(const Vec4& a, const Vec4& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}
inline Vec4 operator*(double s, const Vec4& a) {
  return {s * a[0], s * a[1], s * a[2], s * a[3]};
}

/// Continuous extension of one accepted Dormand-Prince step (order 4).
struct DenseStep {
  double t0 = 0, h = 0;
  Vec4 r1{}, r2{}, r3{}, r4{}, r5{};

  Vec4 eval(double t) const {
    const double th = (t - t0) / h;
    const double th1 = 1.0 - th;
    Vec4 out;
    for (int i = 0; i < 4; ++i)
      out[i] = r1[i] + th * (r2[i] + th1 * (r3[i] + th * (r4[i] + th1 * r5[i])));
    return out;
  }
  double t1() const { return t0 + h; }
};

/// Evaluate a recorded dense trajectory at t (t inside the recorded span).
Vec4 sample_dense(const std::vector<DenseStep>& segs, double t);

struct OdeEvent {
  std::function<double(double, const Vec4&)> g;
  bool stop = true;    // terminate at the located root
  bool kink = false;   // derivative discontinuity: cut the step there and restart
  int direction = 0;   // 0 any crossing, +1 rising only, -1 falling only
};

struct OdeOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double h_init = 0.0;  // 0: choose automatically
  double h_max = 0.0;   // 0: no cap
  std::size_t max_steps = 4'000'000;
  bool record = true;        // keep accepted mesh points
  bool record_dense = false; // keep dense segments for later resampling
  // called on every accepted point; return false to stop the run there
  std::function<bool(double, const Vec4&)> observer;
};

enum class OdeStatus { ReachedEnd, EventStop, StepUnderflow, MaxSteps, ObserverStop };

struct OdeResult {
  OdeStatus status = OdeStatus::ReachedEnd;
  int event_index = -1;
  double t_end = 0;
  Vec4 y_end{};
  // When an event or underflow terminated the run, [bracket_lo, bracket_hi]
  // encloses the located point.
  double bracket_lo = 0, bracket_hi = 0;
  std::vector<double> t;
  std::vector<Vec4> y;
  std::vector<DenseStep> dense;
  std::vector<std::pair<int, double>> hits;  // non-stop event roots, in order
  std::size_t n_steps = 0, n_rejected = 0;
};

namespace detail {

inline double err_norm(const Vec4& e, const Vec4& y0, const Vec4& y1, double rtol, double atol) {
  double s = 0;
  for (int i = 0; i < 4; ++i) {
    const double sc = atol + rtol * std::max(std::fabs(y0[i]), std::fabs(y1[i]));
    const double q = e[i] / sc;
    s += q * q;
  }
  return std::sqrt(s / 4.0);
}

inline int sgn(double x) { return (x > 0) - (x < 0); }

}  // namespace detail

/// Adaptive Dormand-Prince 5(4) with dense output and event location.
///
/// Events marked kink are derivative discontinuities of f: an accepted step
/// spanning a kink root is redone with the step cut just past the root, and
/// the FSAL cache is dropped so the next step starts on the far branch.
/// Stop events are located by bisection on the dense interpolant. Supports
/// backward integration (t_end < t0).
template <class F>
OdeResult integrate(F&& f, double t0, Vec4 y0, double t_end, const OdeOptions& opt,
                    const std::vector<OdeEvent>& events = {}) {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                          a75 = -2187.0 / 6784, a76 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
  static constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                          d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                          d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

  OdeResult res;
  const double dir = (t_end >= t0) ? 1.0 : -1.0;
  double t = t0;
  Vec4 y = y0;
  Vec4 k1 = f(t, y);
  bool have_k1 = true;

  if (opt.record) {
    res.t.push_back(t);
    res.y.push_back(y);
  }

  // event signs at the current point
  std::vector<int> esign(events.size(), 0);
  for (std::size_t i = 0; i < events.size(); ++i) esign[i] = detail::sgn(events[i].g(t, y));

  auto span = std::fabs(t_end - t0);
  double h = opt.h_init;
  if (h == 0.0) {
    double ny = 0, nf = 0;
    for (int i = 0; i < 4; ++i) {
      ny = std::max(ny, std::fabs(y[i]));
      nf = std::max(nf, std::fabs(k1[i]));
    }
    h = 0.01 * (ny + opt.atol) / (nf + 1e-30);
    h = std::min(std::max(h, 1e-12 * (span + std::fabs(t0))), 0.1 * span + 1e-30);
  }
  h = std::fabs(h) * dir;

  const double hmin_floor = 1e-14;

  auto push_point = [&](double tt, const Vec4& yy) {
    if (opt.record) {
      res.t.push_back(tt);
      res.y.push_back(yy);
    }
  };

  // Locate a sign change of events[ei] inside (ta,tb) on a dense segment.
  auto refine_root = [&](const DenseStep& ds, std::size_t ei, double ta, double tb) {
    double ga = events[ei].g(ta, ds.eval(ta));
    for (int it = 0; it < 90; ++it) {
      const double tm = 0.5 * (ta + tb);
      if (tm == ta || tm == tb) break;
      const double gm = events[ei].g(tm, ds.eval(tm));
      if ((ga <= 0 && gm <= 0) || (ga > 0 && gm > 0)) {
        ta = tm;
        ga = gm;
      } else {
        tb = tm;
      }
      if (std::fabs(tb - ta) <= hmin_floor * std::max(1.0, std::fabs(tb))) break;
    }
    return 0.5 * (ta + tb);
  };

  while (dir * (t_end - t) > 0) {
    if (res.n_steps + res.n_rejected >= opt.max_steps) {
      res.status = OdeStatus::MaxSteps;
      break;
    }
    if (!have_k1) {
      k1 = f(t, y);
      have_k1 = true;
    }
    // clamp to the end and the cap
    if (opt.h_max > 0) h = dir * std::min(std::fabs(h), opt.h_max);
    if (dir * (t + h - t_end) > 0) h = t_end - t;

    const double hmin = hmin_floor * std::max(1.0, std::fabs(t));
    if (std::fabs(h) < hmin) {
      res.status = OdeStatus::StepUnderflow;
      res.bracket_lo = std::min(t, t + h);
      res.bracket_hi = std::max(t, t + h);
      break;
    }

    Vec4 k2, k3, k4, k5, k6, k7, y1, err;
    auto do_stage = [&](double hh) {
      k2 = f(t + c2 * hh, y + (hh * a21) * k1);
      k3 = f(t + c3 * hh, y + (hh * a31) * k1 + (hh * a32) * k2);
      k4 = f(t + c4 * hh, y + (hh * a41) * k1 + (hh * a42) * k2 + (hh * a43) * k3);
      k5 = f(t + c5 * hh,
             y + (hh * a51) * k1 + (hh * a52) * k2 + (hh * a53) * k3 + (hh * a54) * k4);
      k6 = f(t + hh, y + (hh * a61) * k1 + (hh * a62) * k2 + (hh * a63) * k3 + (hh * a64) * k4 +
                         (hh * a65) * k5);
      y1 = y + (hh * a71) * k1 + (hh * a73) * k3 + (hh * a74) * k4 + (hh * a75) * k5 +
           (hh * a76) * k6;
      k7 = f(t + hh, y1);
      err = (hh * e1) * k1 + (hh * e3) * k3 + (hh * e4) * k4 + (hh * e5) * k5 + (hh * e6) * k6 +
            (hh * e7) * k7;
    };

    do_stage(h);
    const double en = detail::err_norm(err, y, y1, opt.rtol, opt.atol);
    if (!(en <= 1.0) || !std::isfinite(en)) {
      ++res.n_rejected;
      const double fac = std::isfinite(en) ? std::max(0.2, 0.9 * std::pow(en, -0.2)) : 0.2;
      h *= fac;
      continue;
    }

    auto make_dense = [&](double hh) {
      DenseStep ds;
      ds.t0 = t;
      ds.h = hh;
      ds.r1 = y;
      ds.r2 = y1 - y;
      ds.r3 = hh * k1 - ds.r2;
      ds.r4 = ds.r2 - hh * k7 - ds.r3;
      ds.r5 = (hh * d1) * k1 + (hh * d3) * k3 + (hh * d4) * k4 + (hh * d5) * k5 + (hh * d6) * k6 +
              (hh * d7) * k7;
      return ds;
    };
    DenseStep ds = make_dense(h);
    double t1 = t + h;

    // kink locking: cut the accepted step just past the earliest kink root
    bool cut = false;
    {
      double t_cut = t1;
      int which = -1;
      for (std::size_t i = 0; i < events.size(); ++i) {
        if (!events[i].kink) continue;
        const int s1 = detail::sgn(events[i].g(t1, y1));
        if (esign[i] == 0) continue;
        if (s1 != 0 && s1 != esign[i]) {
          const double tr = refine_root(ds, i, t, t1);
          if (dir * (tr - t_cut) < 0) {
            t_cut = tr;
            which = static_cast<int>(i);
          }
        }
      }
      if (which >= 0) {
        // land a sliver past the root so the branch flips at the endpoint
        double hh = (t_cut - t) + dir * std::max(1e-9 * std::fabs(h), hmin_floor);
        if (std::fabs(hh) < std::fabs(h)) {
          if (std::fabs(hh) < hmin) hh = dir * hmin;  // step over with the sliver
          do_stage(hh);
          ds = make_dense(hh);
          t1 = t + hh;
          cut = true;
          have_k1 = false;  // restart on the far branch
        }
      }
    }
    // log every kink whose sign flipped over the accepted span (simultaneous
    // crossings are counted individually)
    for (std::size_t i = 0; i < events.size(); ++i) {
      if (!events[i].kink || esign[i] == 0) continue;
      const int s1 = detail::sgn(events[i].g(t1, cut ? ds.eval(t1) : y1));
      if (s1 != 0 && s1 != esign[i]) res.hits.emplace_back(static_cast<int>(i),
                                                           refine_root(ds, i, t, t1));
    }

    // stop / record events on the accepted span
    int stop_idx = -1;
    double stop_t = t1;
    for (std::size_t i = 0; i < events.size(); ++i) {
      if (events[i].kink) continue;
      const int s1 = detail::sgn(events[i].g(t1, y1));
      const int s0 = esign[i];
      bool fire = false;
      if (s0 != 0 && s1 != s0) {
        if (events[i].direction == 0 || (events[i].direction > 0 && s0 < 0) ||
            (events[i].direction < 0 && s0 > 0))
          fire = true;
      }
      if (!fire) continue;
      const double tr = refine_root(ds, i, t, t1);
      if (events[i].stop) {
        if (dir * (tr - stop_t) <= 0) {
          stop_t = tr;
          stop_idx = static_cast<int>(i);
        }
      } else {
        res.hits.emplace_back(static_cast<int>(i), tr);
      }
    }

    if (stop_idx >= 0) {
      const Vec4 ye = ds.eval(stop_t);
      res.status = OdeStatus::EventStop;
      res.event_index = stop_idx;
      res.t_end = stop_t;
      res.y_end = ye;
      res.bracket_lo = stop_t - hmin;
      res.bracket_hi = stop_t + hmin;
      if (opt.record_dense) res.dense.push_back(ds);
      push_point(stop_t, ye);
      ++res.n_steps;
      return res;
    }

    // accept
    t = t1;
    if (!cut) {
      k1 = k7;  // FSAL
      have_k1 = true;
    } else {
      y1 = ds.eval(t1);
    }
    y = y1;
    ++res.n_steps;
    push_point(t, y);
    if (opt.record_dense) res.dense.push_back(ds);
    for (std::size_t i = 0; i < events.size(); ++i) {
      const int s = detail::sgn(events[i].g(t, y));
      if (s != 0) esign[i] = s;
    }
    if (opt.observer && !opt.observer(t, y)) {
      res.status = OdeStatus::ObserverStop;
      break;
    }

    if (!cut) {
      const double fac = std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(en, 1e-16), -0.2)));
      h *= fac;
    }
    // after a cut, keep the previous h suggestion
  }

  if (res.status == OdeStatus::ReachedEnd) {
    res.t_end = t;
    res.y_end = y;
  } else if (res.status != OdeStatus::EventStop) {
    res.t_end = t;
    res.y_end = y;
  }
  return res;
}

}  // namespace ple
