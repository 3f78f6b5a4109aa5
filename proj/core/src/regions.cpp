#include "ple/regions.hpp"

#include <cmath>

namespace ple {

Side classify_side(double lhs, double rhs, double tol) {
  if (std::fabs(lhs - rhs) <= tol * std::max(1.0, std::fabs(rhs))) return Side::On;
  // larger harmonic sum = smaller exponents = below the hyperbola
  return lhs > rhs ? Side::Below : Side::Above;
}

double harmonic_sum(double p, double q) { return 1.0 / (p + 1.0) + 1.0 / (q + 1.0); }

double hyperbola_H_rhs(const ProblemParams& pp) { return double(pp.N - 2) / double(pp.N); }

double hyperbola_Htilde_rhs(const ProblemParams& pp) {
  return (pp.k.n_tilde - 2.0) / pp.k.n_tilde;
}

double hyperbola_Hbar_upper_rhs(const ProblemParams& pp) {
  return pp.op == Operator::MPlus ? (pp.k.n_tilde_plus - 2.0) / pp.N
                                  : (pp.N - 2.0) / pp.k.n_tilde_minus;
}

double hyperbola_Hbar_lower_rhs(const ProblemParams& pp) {
  return pp.op == Operator::MPlus ? (pp.N - 2.0) / pp.k.n_tilde_plus
                                  : (pp.k.n_tilde_minus - 2.0) / pp.N;
}

// The defining displays, evaluated verbatim.
bool in_region_Rd(const ProblemParams& pp) {
  const double N = pp.N, Nt = pp.k.n_tilde;
  const double s1 = N / (pp.p + 1.0) + Nt / (pp.q + 1.0);
  const double s2 = Nt / (pp.p + 1.0) + N / (pp.q + 1.0);
  const double rhs = pp.op == Operator::MPlus ? N - 2.0 : Nt - 2.0;
  return s1 > rhs && s2 > rhs && pp.p * pp.q > 1.0;
}

bool in_region_Ru(const ProblemParams& pp) {
  const double N = pp.N, Nt = pp.k.n_tilde;
  const double s1 = N / (pp.p + 1.0) + Nt / (pp.q + 1.0);
  const double s2 = Nt / (pp.p + 1.0) + N / (pp.q + 1.0);
  const double rhs = pp.op == Operator::MPlus ? Nt - 2.0 : N - 2.0;
  return s1 < rhs && s2 < rhs;
}

bool in_region_Rs(const ProblemParams& pp) {
  const double edge = pp.k.n_tilde - 2.0;
  return (pp.k.alpha >= edge || pp.k.beta >= edge) && pp.p * pp.q > 1.0;
}

bool in_region_RD(const ProblemParams& pp) {
  const double ratio = pp.Lambda / pp.lambda;
  const double rhs = pp.op == Operator::MPlus
                         ? ratio * (2.0 * pp.N - pp.k.n_tilde_plus - 2.0) / pp.k.n_tilde_plus
                         : ratio * (2.0 * pp.k.n_tilde_minus - pp.N - 2.0) / pp.k.n_tilde_minus;
  return harmonic_sum(pp.p, pp.q) > rhs && pp.p * pp.q > 1.0;
}

double neumann_delta(const ProblemParams& pp) {
  const double hs = harmonic_sum(pp.p, pp.q);
  if (pp.op == Operator::MPlus) {
    const double Nt = pp.k.n_tilde_plus;
    return (pp.lambda / pp.Lambda) * Nt * hs - (2.0 * pp.N - Nt - 2.0);
  }
  const double Nt = pp.k.n_tilde_minus;
  return (pp.lambda / pp.Lambda) * pp.N * hs - (pp.N / Nt) * (2.0 * Nt - pp.N - 2.0);
}

RegionFlags region_flags(const ProblemParams& pp) {
  RegionFlags f;
  const double hs = harmonic_sum(pp.p, pp.q);
  f.H = classify_side(hs, hyperbola_H_rhs(pp));
  f.H_tilde = classify_side(hs, hyperbola_Htilde_rhs(pp));
  f.H_bar_upper = classify_side(hs, hyperbola_Hbar_upper_rhs(pp));
  f.H_bar_lower = classify_side(hs, hyperbola_Hbar_lower_rhs(pp));
  f.in_Rd = in_region_Rd(pp);
  f.in_Ru = in_region_Ru(pp);
  f.in_Rs = in_region_Rs(pp);
  f.in_RD = in_region_RD(pp);
  return f;
}

}  // namespace ple
