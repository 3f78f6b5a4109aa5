#pragma once

#include "ple/params.hpp"

namespace ple {

/// Position relative to a hyperbola in the (p,q) plane. "Below" is the
/// side containing small exponents (alpha+beta larger than the threshold),
/// "Above" the side of large exponents.
enum class Side { Below, On, Above };

inline const char* to_string(Side s) {
  switch (s) {
    case Side::Below: return "below";
    case Side::On: return "on";
    default: return "above";
  }
}

/// Membership summary for one (p,q) pair. The hyperbola positions are
/// ternary with an absolute tolerance band |lhs-rhs| <= 1e-12*max(1,|rhs|);
/// the open regions are plain inequality evaluations of their defining
/// displays (no algebraic rearrangement).
struct RegionFlags {
  Side H = Side::Below;         // 1/(p+1)+1/(q+1) vs (N-2)/N
  Side H_tilde = Side::Below;   // vs (Ntilde-2)/Ntilde for the selected operator
  Side H_bar_upper = Side::Below;  // auxiliary hyperbola inside R_u
  Side H_bar_lower = Side::Below;  // auxiliary hyperbola inside R_d
  bool in_Rd = false;
  bool in_Ru = false;
  bool in_Rs = false;  // alpha or beta >= Ntilde-2 (supersolution nonexistence range)
  bool in_RD = false;  // Neumann-nonexistence subregion of R_d
};

inline constexpr double kHyperbolaTol = 1e-12;

/// Ternary comparison of lhs against rhs with the hyperbola tolerance band.
/// Returns Below when lhs > rhs (small-exponent side), Above when lhs < rhs.
Side classify_side(double lhs, double rhs, double tol = kHyperbolaTol);

/// 1/(p+1) + 1/(q+1).
double harmonic_sum(double p, double q);

/// Right-hand sides of the named hyperbolas.
double hyperbola_H_rhs(const ProblemParams& pp);        // (N-2)/N
double hyperbola_Htilde_rhs(const ProblemParams& pp);   // (Nt-2)/Nt, Nt of selected op
double hyperbola_Hbar_upper_rhs(const ProblemParams& pp);
double hyperbola_Hbar_lower_rhs(const ProblemParams& pp);

bool in_region_Rd(const ProblemParams& pp);
bool in_region_Ru(const ProblemParams& pp);
bool in_region_Rs(const ProblemParams& pp);
bool in_region_RD(const ProblemParams& pp);

RegionFlags region_flags(const ProblemParams& pp);

/// Slack in the R_D membership identity used by the Neumann energy; positive
/// exactly on the interior of R_D (see energy.hpp for the coefficient split).
double neumann_delta(const ProblemParams& pp);

}  // namespace ple
