// analysis.hpp
// No-signaling checks, CHSH nonlocality, isotropy classification, PR-box
// proximity, angle-region tests, and the CHSH closed forms with their
// monotone root finder.

#pragma once

#include <array>
#include <vector>

#include "nlbox/boxgen.hpp"
#include "nlbox/core.hpp"
#include "nlbox/rules.hpp"

namespace nlbox {

inline constexpr double kDefaultNoSignalingTol = 1e-9;

enum class Party { kAlice, kBob };

// One marginal constraint: the receiver's marginal for `output` at `setting`
// must not depend on the other party's input. residual = |difference|.
struct MarginalConstraint {
  Party receiver;
  int output;
  int setting;
  double residual;
};

struct NoSignalingReport {
  double max_violation_alice_to_bob = 0.0;  // Bob's marginals vs Alice's input
  double max_violation_bob_to_alice = 0.0;
  std::vector<MarginalConstraint> constraints;  // all 8
  double tolerance = kDefaultNoSignalingTol;
  bool passed = false;

  double max_violation() const {
    return max_violation_alice_to_bob > max_violation_bob_to_alice
               ? max_violation_alice_to_bob
               : max_violation_bob_to_alice;
  }
};

NoSignalingReport no_signaling_report(const BehaviorBox& box,
                                      double tol = kDefaultNoSignalingTol);

// Residual of the b=0, y=0 marginal constraint for the standard-input box:
// | |alpha|^2 - sum_a P(a,0|1,0) |. Zero iff that constraint holds; zero for
// every theta exactly when |alpha| = |beta| or the rule is Born.
double nosignal_residual_eq15(const TwoQubitState& state, double theta,
                              const ProbabilityRule& rule);

/// C_xy = P(0,0|x,y) + P(1,1|x,y) - P(0,1|x,y) - P(1,0|x,y).
double correlator(const BehaviorBox& box, int x, int y);

// CHSH value: max over the four placements of a single minus sign among the
// correlators. minus_x/minus_y record which setting received the minus; ties
// break toward the lexicographically smallest placement.
struct ChshReport {
  double value = 0.0;
  std::array<double, 4> correlators{};  // index 2x + y
  int minus_x = 0;
  int minus_y = 0;
};

ChshReport chsh_value(const BehaviorBox& box);

// CHSH value of the bell_closed_form box with the minus pinned to (1,1):
//   1 + g0(su,cu) - g1(su,cu) + g1(st,ct) - g0(st,ct) + g1(S,C) - g0(S,C)
// with st = sin(theta/2), su = sin(theta_tilde/2), S = sin((theta+theta_tilde)/2)
// and g0/g1 the two outcomes of the power rule. Agrees with
// chsh_value(bell_closed_form(...)) wherever the (1,1) placement is optimal
// (the whole PR angle region).
double nonisotropic_chsh_closed_form(double theta, double theta_tilde,
                                     const ProbabilityRule& rule);

/// Max deviation from C00 = C01 = C10 = -C11 and from unbiased (1/2) marginals.
double isotropy_residual(const BehaviorBox& box);
bool isotropy_check(const BehaviorBox& box, double tol = 1e-9);

/// Mean over the four settings of the total-variation distance to pr_box().
double pr_distance(const BehaviorBox& box);

// True iff the three strict inequalities defining the PR limit hold:
// |cos(theta/2)| > |sin(theta/2)|, |sin(tt/2)| > |cos(tt/2)|, and
// |cos((theta+tt)/2)| > |sin((theta+tt)/2)|.
bool pr_angle_region(double theta, double theta_tilde);

// CHSH value of chsh_observables_box in closed form:
//   4 (A^n - B^n) / (A^n + B^n),  A = sqrt(2+sqrt(2)), B = sqrt(2-sqrt(2)).
// Strictly increasing in n, 0 at n=0, 2*sqrt(2) at n=2, 4 in the limit.
double chsh_observables_closed_form(const ProbabilityRule& rule);

// Inverts chsh_observables_closed_form by bisection to |B(n) - target| <
// 1e-10. Throws std::out_of_range unless 0 < target < 4 (4 is attained only
// in the limit).
double solve_power_for_chsh(double target);

}  // namespace nlbox
