// rules.hpp
// The power-law outcome-probability rule
//     F0(a0, a1) = |a0|^n / (|a0|^n + |a1|^n),  n in [0, +inf],
// applied to the second (Bob's) measurement. n = 2 is the Born rule, n = 0 is
// white noise, n = +inf is the deterministic magnitude-comparison limit.

#pragma once

#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nlbox/core.hpp"

namespace nlbox {

// Thrown when both amplitudes of a pair vanish and no probability can be
// assigned. Cannot occur for normalized states but must be guarded.
struct DegenerateAmplitudes : std::invalid_argument {
  DegenerateAmplitudes()
      : std::invalid_argument("both amplitudes vanish; no outcome probability") {}
};

class ProbabilityRule {
 public:
  static ProbabilityRule born() { return ProbabilityRule{2.0}; }
  /// n >= 0; +inf selects the exact limit rule.
  static ProbabilityRule power(double n);
  static ProbabilityRule infinite();

  /// Exponent; +inf for the limit rule.
  double exponent() const { return n_; }
  bool is_infinite() const;
  bool is_born() const { return n_ == 2.0; }

 private:
  explicit ProbabilityRule(double n) : n_(n) {}
  double n_;
};

// Probability of the outcome whose expansion coefficient is a0. The companion
// outcome is eval_f0(rule, a1, a0) and the two sum to 1.
//
// n = +inf compares |a0|^2 and |a1|^2 exactly (ties give 1/2); finite n is
// evaluated through the bounded ratio (min/max)^n so exponents up to 1e4 never
// overflow. n = 0 gives 1/2 for every non-degenerate pair.
double eval_f0(const ProbabilityRule& rule, const Amplitude& a0,
               const Amplitude& a1);

using AmplitudePair = std::pair<Amplitude, Amplitude>;
using OutcomeFunction = std::function<double(const Amplitude&, const Amplitude&)>;

struct AxiomCheck {
  bool ok = false;
  double max_residual = 0.0;
};

// Results of checking the four rule axioms over a sample set:
// F0 + F1 = 1, F0(p,q) = F1(q,p), F0(p,q) = F0(|p|,|q|), F0(sp,sq) = F0(p,q).
struct AxiomReport {
  AxiomCheck normalization;
  AxiomCheck relabeling;
  AxiomCheck phase_invariance;
  AxiomCheck scale_invariance;

  bool all_ok() const {
    return normalization.ok && relabeling.ok && phase_invariance.ok &&
           scale_invariance.ok;
  }
};

AxiomReport check_axioms(const ProbabilityRule& rule,
                         const std::vector<AmplitudePair>& samples, double tol);

// Hook for testing arbitrary candidate assignments: f0 and f1 are the two
// outcome functions (for a rule honoring relabeling, f1(p,q) == f0(q,p)).
AxiomReport check_axioms(const OutcomeFunction& f0, const OutcomeFunction& f1,
                         const std::vector<AmplitudePair>& samples, double tol);

}  // namespace nlbox
