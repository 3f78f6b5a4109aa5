#pragma once

#include <string>
#include <vector>

#include "ple/params.hpp"
#include "ple/phase.hpp"
#include "ple/radial.hpp"

namespace ple {

/// Concavity quadrant of (u'',v''): P = concave (w'' < 0), M = convex.
/// PP corresponds to Z > base(N-1) and W > base(N-1).
enum class Branch { PP, PM, MP, MM };

const char* to_string(Branch b);

struct EnergyRecord {
  double t = 0;  // ln r
  Branch branch = Branch::PP;
  double sigma = 0;
  double value = 0;
  double derivative = 0;  // dE/dr at r = e^t
};

Branch branch_of(const RadialState& s, const ProblemParams& pp);
Branch branch_of(const PhaseState& s, const ProblemParams& pp);

/// sigma presets: the pure-branch exponents are fixed (N concave-concave,
/// Ntilde convex-convex); sigma only weighs the mixed branches.
double sigma_step1(const ProblemParams& pp);  // N for M+, Ntilde- for M-
double sigma_step2(const ProblemParams& pp);  // Ntilde+ for M+, N for M-

/// Four-term piecewise energy in radial variables. States within
/// 1e-12 of a concavity plane are evaluated on both branches (their signs
/// must agree) and the mean is returned.
double energy_radial(const RadialState& s, double sigma, const ProblemParams& pp);

/// The same functional written in the cone variables; agrees pointwise with
/// energy_radial on trajectories.
double energy_phase(const PhaseState& s, double sigma, const ProblemParams& pp);

/// Exact dE/dr along solutions (branch formulas including the mixed-branch
/// remainder terms).
double energy_derivative_radial(const RadialState& s, double sigma, const ProblemParams& pp);

/// Mixed-branch remainder pair evaluated in cone variables.
std::pair<double, double> energy_remainders_phase(const PhaseState& s, double sigma,
                                                  const ProblemParams& pp);

EnergyRecord energy_record(const RadialState& s, double sigma, const ProblemParams& pp);

/// Closed-form energies at the stationary points that admit one:
/// zero at O, N0, A0, K0, L0;
///   E(t,M0) = -4/(pq-1) e^{t(Nt-2-a-b)},
///   E(t,P0) = -(Nt-2) e^{t(Nt-2-a-b)} { Nt/(p+1) - (q(Nt-2)-2)/(q+1) },
/// and the p<->q mirror at Q0. Other names are rejected.
double stationary_energy(StationaryName n, double t, const ProblemParams& pp);

/// Limit of stationary_energy as t -> +infinity, classified by the position
/// of (p,q) relative to the Ntilde hyperbola: 0 below, the finite bracket on,
/// -infinity above (for M0; P0/Q0 vanish below).
double stationary_energy_limit(StationaryName n, const ProblemParams& pp);

/// Coefficients of the Neumann-monotone energy. delta measures the slack in
/// the R_D membership identity (positive inside R_D, negative outside, where
/// the monotonicity guarantee is off); A_frak + B_frak = 2N - Nt+ - 2 for M+
/// (N/Nt- scaled mirror for M-).
struct NeumannEnergyParams {
  double A_frak = 0;
  double B_frak = 0;
  double delta = 0;
  bool in_RD_closure = false;
};

NeumannEnergyParams neumann_params(const ProblemParams& pp);

/// E(r) = r^S (u'v' + v^{p+1}/(L(p+1)) + u^{q+1}/(L(q+1)) + A vu'/r + B uv'/r),
/// S = Nt+ for M+, N for M-.
double neumann_energy(const RadialState& s, const ProblemParams& pp,
                      const NeumannEnergyParams& np);

/// Exact derivative along solutions (branch pair (D,sigma) chosen per
/// component from the current concavity).
double neumann_energy_derivative(const RadialState& s, const ProblemParams& pp,
                                 const NeumannEnergyParams& np);

/// CSV export, header `t,branch,sigma,E,dE`.
std::string energy_csv(const std::vector<EnergyRecord>& recs);

}  // namespace ple
