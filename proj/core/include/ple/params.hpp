#pragma once

#include <stdexcept>
#include <string>

namespace ple {

/// Which extremal operator drives the system.
enum class Operator { MPlus, MMinus };

inline const char* to_string(Operator op) {
  return op == Operator::MPlus ? "plus" : "minus";
}

/// Closed-form constants derived from one parameter tuple.
///
/// alpha = 2(p+1)/(pq-1) and beta = 2(q+1)/(pq-1) drive the scaling
/// u_g(r) = g^alpha u(gr), v_g(r) = g^beta v(gr). The dimension-like
/// numbers are n_tilde_plus = (lambda/Lambda)(N-1)+1 and
/// n_tilde_minus = (Lambda/lambda)(N-1)+1.
struct DerivedConstants {
  double alpha = 0;
  double beta = 0;
  double n_tilde_plus = 0;
  double n_tilde_minus = 0;
  double p_serrin = 0;   // n_tilde/(n_tilde-2) for the selected operator
  double p_laplace = 0;  // (N+2)/(N-2)
  double n_tilde = 0;    // the dimension-like number of the selected operator
};

/// One Pucci-Lane-Emden system: ellipticity bounds, dimension, exponents,
/// operator sign. Immutable value object; derived constants are computed
/// eagerly at construction.
struct ProblemParams {
  double lambda = 1.0;
  double Lambda = 1.0;
  int N = 3;
  double p = 0;
  double q = 0;
  Operator op = Operator::MPlus;
  DerivedConstants k;

  /// Validating factory. Throws std::invalid_argument when
  /// 0 < lambda <= Lambda, N >= 3, p,q > 0 or pq > 1 fails.
  static ProblemParams make(double lambda, double Lambda, int N, double p, double q,
                            Operator op = Operator::MPlus);

  /// Ellipticity constant that multiplies the Laplacian near the origin
  /// (both components are concave there): lambda for M+, Lambda for M-.
  double iota_origin() const { return op == Operator::MPlus ? lambda : Lambda; }

  /// Coefficient in front of (N-1) in the concavity thresholds
  /// Z = base(N-1), W = base(N-1): lambda for M+, Lambda for M-.
  double base_ell() const { return op == Operator::MPlus ? lambda : Lambda; }

  /// The other ellipticity constant (convex-branch reduction).
  double co_ell() const { return op == Operator::MPlus ? Lambda : lambda; }
};

DerivedConstants derive_constants(double lambda, double Lambda, int N, double p, double q,
                                  Operator op);

enum class PucciKind { m_plus, M_plus, m_minus, M_minus };

/// The Lipschitz scalar reductions of the extremal operators:
///   m+(s) = lambda s (s<=0) / Lambda s (s>0),  M+(s) = s/lambda (s<=0) / s/Lambda (s>0),
/// and m-, M- with the two constants exchanged. M is the inverse of m per sign.
double pucci_scalar(PucciKind kind, double s, double lambda, double Lambda);

inline double pucci_scalar(PucciKind kind, double s, const ProblemParams& pp) {
  return pucci_scalar(kind, s, pp.lambda, pp.Lambda);
}

/// m / M resolved by the operator selected in pp.
double pucci_m(double s, const ProblemParams& pp);
double pucci_M(double s, const ProblemParams& pp);

/// Scaling map: a sample (r, u(r), v(r)) of a solution becomes the sample
/// (r/gamma, gamma^alpha u, gamma^beta v) of the rescaled solution.
/// Composable: rescale(g1) after rescale(g2) equals rescale(g1*g2).
struct RescaleMap {
  double gamma = 1.0;
  double alpha = 0;
  double beta = 0;

  struct Sample {
    double r, u, v;
  };
  Sample operator()(double u, double v, double r) const;
};

/// gamma <= 0 is rejected.
RescaleMap make_rescale(double gamma, const DerivedConstants& k);

/// |x|^(e-1) x, the odd power that appears on the right-hand sides.
double sgnpow(double x, double e);

}  // namespace ple
