#include "ple/params.hpp"

#include <cmath>
#include <limits>

namespace ple {

DerivedConstants derive_constants(double lambda, double Lambda, int N, double p, double q,
                                  Operator op) {
  if (p * q <= 1.0) throw std::invalid_argument("superlinear regime pq>1 required");
  DerivedConstants k;
  k.alpha = 2.0 * (p + 1.0) / (p * q - 1.0);
  k.beta = 2.0 * (q + 1.0) / (p * q - 1.0);
  k.n_tilde_plus = (lambda / Lambda) * (N - 1) + 1.0;
  k.n_tilde_minus = (Lambda / lambda) * (N - 1) + 1.0;
  k.n_tilde = op == Operator::MPlus ? k.n_tilde_plus : k.n_tilde_minus;
  k.p_serrin = k.n_tilde > 2.0 ? k.n_tilde / (k.n_tilde - 2.0)
                               : std::numeric_limits<double>::infinity();
  k.p_laplace = double(N + 2) / double(N - 2);
  return k;
}

ProblemParams ProblemParams::make(double lambda, double Lambda, int N, double p, double q,
                                  Operator op) {
  if (!(lambda > 0.0) || !(Lambda >= lambda))
    throw std::invalid_argument("ellipticity requires 0 < lambda <= Lambda");
  if (N < 3) throw std::invalid_argument("dimension N >= 3 required");
  if (!(p > 0.0) || !(q > 0.0)) throw std::invalid_argument("exponents p, q must be positive");
  if (!(p * q > 1.0)) throw std::invalid_argument("superlinear regime pq>1 required");
  ProblemParams pp;
  pp.lambda = lambda;
  pp.Lambda = Lambda;
  pp.N = N;
  pp.p = p;
  pp.q = q;
  pp.op = op;
  pp.k = derive_constants(lambda, Lambda, N, p, q, op);
  return pp;
}

double pucci_scalar(PucciKind kind, double s, double lambda, double Lambda) {
  switch (kind) {
    case PucciKind::m_plus: return s <= 0.0 ? lambda * s : Lambda * s;
    case PucciKind::M_plus: return s <= 0.0 ? s / lambda : s / Lambda;
    case PucciKind::m_minus: return s <= 0.0 ? Lambda * s : lambda * s;
    case PucciKind::M_minus: return s <= 0.0 ? s / Lambda : s / lambda;
  }
  return 0.0;
}

double pucci_m(double s, const ProblemParams& pp) {
  return pucci_scalar(pp.op == Operator::MPlus ? PucciKind::m_plus : PucciKind::m_minus, s,
                      pp.lambda, pp.Lambda);
}

double pucci_M(double s, const ProblemParams& pp) {
  return pucci_scalar(pp.op == Operator::MPlus ? PucciKind::M_plus : PucciKind::M_minus, s,
                      pp.lambda, pp.Lambda);
}

RescaleMap::Sample RescaleMap::operator()(double u, double v, double r) const {
  return {r / gamma, std::pow(gamma, alpha) * u, std::pow(gamma, beta) * v};
}

RescaleMap make_rescale(double gamma, const DerivedConstants& k) {
  if (!(gamma > 0.0)) throw std::invalid_argument("rescale requires gamma > 0");
  return RescaleMap{gamma, k.alpha, k.beta};
}

double sgnpow(double x, double e) {
  if (x == 0.0) return 0.0;
  return x > 0.0 ? std::pow(x, e) : -std::pow(-x, e);
}

}  // namespace ple
