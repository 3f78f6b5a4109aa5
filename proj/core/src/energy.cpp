#include "ple/energy.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ple/io.hpp"
#include "ple/regions.hpp"

namespace ple {

const char* to_string(Branch b) {
  switch (b) {
    case Branch::PP: return "PP";
    case Branch::PM: return "PM";
    case Branch::MP: return "MP";
    default: return "MM";
  }
}

namespace {

Branch branch_from(bool u_concave, bool v_concave) {
  if (u_concave) return v_concave ? Branch::PP : Branch::PM;
  return v_concave ? Branch::MP : Branch::MM;
}

struct BranchData {
  double iu, iv;  // ellipticity constants per component
  double Du, Dv;  // dimension-like numbers per component
  double S;       // prefactor exponent
};

BranchData branch_data(Branch b, double sigma, const ProblemParams& pp) {
  const double conc_i = pp.base_ell();
  const double conv_i = pp.co_ell();
  const double N = pp.N, Nt = pp.k.n_tilde;
  const bool uc = b == Branch::PP || b == Branch::PM;
  const bool vc = b == Branch::PP || b == Branch::MP;
  BranchData d;
  d.iu = uc ? conc_i : conv_i;
  d.iv = vc ? conc_i : conv_i;
  d.Du = uc ? N : Nt;
  d.Dv = vc ? N : Nt;
  d.S = b == Branch::PP ? N : (b == Branch::MM ? Nt : sigma);
  return d;
}

double energy_radial_branch(const RadialState& s, Branch b, double sigma,
                            const ProblemParams& pp) {
  const auto d = branch_data(b, sigma, pp);
  const double p1 = pp.p + 1.0, q1 = pp.q + 1.0;
  const double body = s.up * s.vp + std::pow(s.v, p1) / (d.iu * p1) +
                      std::pow(s.u, q1) / (d.iv * q1) + d.Du * s.v * s.up / (s.r * p1) +
                      d.Dv * s.u * s.vp / (s.r * q1);
  return std::pow(s.r, d.S) * body;
}

double energy_phase_branch(const PhaseState& s, Branch b, double sigma,
                           const ProblemParams& pp) {
  const auto d = branch_data(b, sigma, pp);
  const double p1 = pp.p + 1.0, q1 = pp.q + 1.0;
  const double a = pp.k.alpha, be = pp.k.beta;
  const double xz = s.X * s.Z, yw = s.Y * s.W;
  const double bracket = s.X * s.Y + xz / (d.iu * p1) + yw / (d.iv * q1) - d.Du * s.X / p1 -
                         d.Dv * s.Y / q1;
  return std::exp(s.t * (d.S - 2.0 - a - be)) * std::pow(xz, be / 2.0) *
         std::pow(yw, a / 2.0) * bracket;
}

double energy_derivative_branch(const RadialState& s, Branch b, double sigma,
                                const ProblemParams& pp) {
  const auto d = branch_data(b, sigma, pp);
  const double p1 = pp.p + 1.0, q1 = pp.q + 1.0;
  const double lead = s.up * s.vp * (d.S + 2.0 - d.Du - d.Dv + d.Du / p1 + d.Dv / q1);
  const double rem_u =
      (d.S - d.Du) * (std::pow(s.v, p1) / (d.iu * p1) + d.Du * s.v * s.up / (s.r * p1));
  const double rem_v =
      (d.S - d.Dv) * (std::pow(s.u, q1) / (d.iv * q1) + d.Dv * s.u * s.vp / (s.r * q1));
  return std::pow(s.r, d.S - 1.0) * (lead + rem_u + rem_v);
}

// relative distance of the state to each concavity plane
std::pair<double, double> plane_gaps(const RadialState& s, const ProblemParams& pp) {
  auto cs = concavity_signs(s, pp);
  const double nm1 = pp.N - 1;
  const double mu = std::fabs(nm1 * pucci_m(s.up, pp) / s.r);
  const double mv = std::fabs(nm1 * pucci_m(s.vp, pp) / s.r);
  const double gu = std::fabs(cs.h1) / std::max({mu, std::fabs(sgnpow(s.v, pp.p)), 1e-300});
  const double gv = std::fabs(cs.h2) / std::max({mv, std::fabs(sgnpow(s.u, pp.q)), 1e-300});
  return {gu, gv};
}

template <class EvalFn>
double on_plane_mean(bool u_on, bool v_on, bool u_conc, bool v_conc, EvalFn&& eval) {
  // states on a plane are evaluated on both adjoining branches; their signs
  // must agree and the mean is reported
  double acc = 0;
  int n = 0;
  for (int du = 0; du < (u_on ? 2 : 1); ++du)
    for (int dv = 0; dv < (v_on ? 2 : 1); ++dv) {
      const bool uc = u_on ? (du == 0) : u_conc;
      const bool vc = v_on ? (dv == 0) : v_conc;
      acc += eval(branch_from(uc, vc));
      ++n;
    }
  return acc / n;
}

}  // namespace

Branch branch_of(const RadialState& s, const ProblemParams& pp) {
  auto cs = concavity_signs(s, pp);
  return branch_from(cs.h1 > 0.0, cs.h2 > 0.0);  // u'' = M(-h1): concave iff h1 > 0
}

Branch branch_of(const PhaseState& s, const ProblemParams& pp) {
  const double thr = pp.base_ell() * (pp.N - 1);
  return branch_from(s.Z > thr, s.W > thr);
}

double sigma_step1(const ProblemParams& pp) {
  return pp.op == Operator::MPlus ? double(pp.N) : pp.k.n_tilde_minus;
}

double sigma_step2(const ProblemParams& pp) {
  return pp.op == Operator::MPlus ? pp.k.n_tilde_plus : double(pp.N);
}

double energy_radial(const RadialState& s, double sigma, const ProblemParams& pp) {
  auto cs = concavity_signs(s, pp);
  auto [gu, gv] = plane_gaps(s, pp);
  const bool u_on = gu <= 1e-12, v_on = gv <= 1e-12;
  return on_plane_mean(u_on, v_on, cs.h1 > 0.0, cs.h2 > 0.0, [&](Branch b) {
    return energy_radial_branch(s, b, sigma, pp);
  });
}

double energy_phase(const PhaseState& s, double sigma, const ProblemParams& pp) {
  const double thr = pp.base_ell() * (pp.N - 1);
  const bool u_on = std::fabs(s.Z - thr) <= 1e-12 * std::max(1.0, thr);
  const bool v_on = std::fabs(s.W - thr) <= 1e-12 * std::max(1.0, thr);
  return on_plane_mean(u_on, v_on, s.Z > thr, s.W > thr, [&](Branch b) {
    return energy_phase_branch(s, b, sigma, pp);
  });
}

double energy_derivative_radial(const RadialState& s, double sigma, const ProblemParams& pp) {
  auto cs = concavity_signs(s, pp);
  auto [gu, gv] = plane_gaps(s, pp);
  const bool u_on = gu <= 1e-12, v_on = gv <= 1e-12;
  return on_plane_mean(u_on, v_on, cs.h1 > 0.0, cs.h2 > 0.0, [&](Branch b) {
    return energy_derivative_branch(s, b, sigma, pp);
  });
}

std::pair<double, double> energy_remainders_phase(const PhaseState& s, double sigma,
                                                  const ProblemParams& pp) {
  const double p1 = pp.p + 1.0, q1 = pp.q + 1.0;
  const double a = pp.k.alpha, be = pp.k.beta;
  const double N = pp.N, Nt = pp.k.n_tilde;
  const double conc = pp.base_ell(), conv = pp.co_ell();
  const double amp = std::exp(-s.t * (2.0 + a + be)) * std::pow(s.X * s.Z, be / 2.0) *
                     std::pow(s.Y * s.W, a / 2.0);
  const double e1 = amp * ((sigma - N) / p1 * s.X * (s.Z / conc - N) +
                           (sigma - Nt) / q1 * s.Y * (s.W / conv - Nt));
  const double e2 = amp * ((sigma - Nt) / p1 * s.X * (s.Z / conv - Nt) +
                           (sigma - N) / q1 * s.Y * (s.W / conc - N));
  return {e1, e2};
}

EnergyRecord energy_record(const RadialState& s, double sigma, const ProblemParams& pp) {
  EnergyRecord rec;
  rec.t = std::log(s.r);
  rec.branch = branch_of(s, pp);
  rec.sigma = sigma;
  rec.value = energy_radial(s, sigma, pp);
  rec.derivative = energy_derivative_radial(s, sigma, pp);
  return rec;
}

double stationary_energy(StationaryName n, double t, const ProblemParams& pp) {
  const double Nt = pp.k.n_tilde;
  const double grow = std::exp(t * (Nt - 2.0 - pp.k.alpha - pp.k.beta));
  const double e = Nt - 2.0;
  switch (n) {
    case StationaryName::O:
    case StationaryName::N0:
    case StationaryName::A0:
    case StationaryName::K0pt:
    case StationaryName::L0:
      return 0.0;
    case StationaryName::M0:
      return -4.0 / (pp.p * pp.q - 1.0) * grow;
    case StationaryName::P0:
      return -e * grow * (Nt / (pp.p + 1.0) - (pp.q * e - 2.0) / (pp.q + 1.0));
    case StationaryName::Q0:
      return -e * grow * (Nt / (pp.q + 1.0) - (pp.p * e - 2.0) / (pp.p + 1.0));
    default:
      throw std::invalid_argument("no closed-form energy at this stationary point");
  }
}

double stationary_energy_limit(StationaryName n, const ProblemParams& pp) {
  const double expo = pp.k.n_tilde - 2.0 - pp.k.alpha - pp.k.beta;
  const double here = stationary_energy(n, 0.0, pp);
  if (here == 0.0) return 0.0;
  const Side side = classify_side(harmonic_sum(pp.p, pp.q), hyperbola_Htilde_rhs(pp));
  if (side == Side::On || expo == 0.0) return here;
  if (side == Side::Below) return 0.0;  // exponent negative: decays
  return here < 0 ? -std::numeric_limits<double>::infinity()
                  : std::numeric_limits<double>::infinity();
}

NeumannEnergyParams neumann_params(const ProblemParams& pp) {
  NeumannEnergyParams np;
  const double ratio = pp.lambda / pp.Lambda;
  np.delta = neumann_delta(pp);
  const double cap = pp.op == Operator::MPlus ? ratio * pp.k.n_tilde_plus : ratio * pp.N;
  np.A_frak = cap / (pp.p + 1.0) - np.delta / 2.0;
  np.B_frak = cap / (pp.q + 1.0) - np.delta / 2.0;
  np.in_RD_closure = np.delta >= 0.0;
  return np;
}

namespace {

double neumann_exponent(const ProblemParams& pp) {
  return pp.op == Operator::MPlus ? pp.k.n_tilde_plus : double(pp.N);
}

}  // namespace

double neumann_energy(const RadialState& s, const ProblemParams& pp,
                      const NeumannEnergyParams& np) {
  const double S = neumann_exponent(pp);
  const double p1 = pp.p + 1.0, q1 = pp.q + 1.0;
  const double body = s.up * s.vp + std::pow(s.v, p1) / (pp.Lambda * p1) +
                      std::pow(s.u, q1) / (pp.Lambda * q1) + np.A_frak * s.v * s.up / s.r +
                      np.B_frak * s.u * s.vp / s.r;
  return std::pow(s.r, S) * body;
}

double neumann_energy_derivative(const RadialState& s, const ProblemParams& pp,
                                 const NeumannEnergyParams& np) {
  const double S = neumann_exponent(pp);
  const double p1 = pp.p + 1.0, q1 = pp.q + 1.0;
  auto cs = concavity_signs(s, pp);
  const bool uc = cs.h1 > 0.0, vc = cs.h2 > 0.0;
  const double conc_i = pp.base_ell(), conv_i = pp.co_ell();
  const double Du = uc ? pp.N : pp.k.n_tilde, Dv = vc ? pp.N : pp.k.n_tilde;
  const double su = uc ? conc_i : conv_i, sv = vc ? conc_i : conv_i;
  const double A = np.A_frak, B = np.B_frak;
  double out = std::pow(s.r, S - 1.0) * s.up * s.vp * (S + 2.0 - Du - Dv + A + B);
  out += std::pow(s.r, S) * sgnpow(s.v, pp.p) * s.vp * (1.0 / pp.Lambda - 1.0 / su);
  out += std::pow(s.r, S) * sgnpow(s.u, pp.q) * s.up * (1.0 / pp.Lambda - 1.0 / sv);
  out += std::pow(s.r, S - 1.0) * std::pow(s.v, p1) * (S / (pp.Lambda * p1) - A / su);
  out += std::pow(s.r, S - 1.0) * std::pow(s.u, q1) * (S / (pp.Lambda * q1) - B / sv);
  out += A * (S - Du) * std::pow(s.r, S - 2.0) * s.v * s.up;
  out += B * (S - Dv) * std::pow(s.r, S - 2.0) * s.u * s.vp;
  return out;
}

std::string energy_csv(const std::vector<EnergyRecord>& recs) {
  std::string out = "t,branch,sigma,E,dE\n";
  for (const auto& r : recs)
    out += csv_row({format_double(r.t), to_string(r.branch), format_double(r.sigma),
                    format_double(r.value), format_double(r.derivative)});
  return out;
}

}  // namespace ple
