#include "nlbox/rules.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nlbox {

ProbabilityRule ProbabilityRule::power(double n) {
  if (std::isnan(n) || n < 0.0) {
    throw std::invalid_argument("rule exponent must be >= 0");
  }
  return ProbabilityRule{n};
}

ProbabilityRule ProbabilityRule::infinite() {
  return ProbabilityRule{std::numeric_limits<double>::infinity()};
}

bool ProbabilityRule::is_infinite() const { return std::isinf(n_); }

double eval_f0(const ProbabilityRule& rule, const Amplitude& a0,
               const Amplitude& a1) {
  const double q0 = std::norm(a0);
  const double q1 = std::norm(a1);
  if (q0 == 0.0 && q1 == 0.0) throw DegenerateAmplitudes{};

  if (rule.is_infinite()) {
    if (q0 == q1) return 0.5;  // exact tie, no epsilon
    return q0 > q1 ? 1.0 : 0.0;
  }

  const double n = rule.exponent();
  if (n == 0.0) return 0.5;  // white noise

  const double m0 = std::abs(a0);
  const double m1 = std::abs(a1);
  if (m0 >= m1) {
    const double r = std::pow(m1 / m0, n);  // <= 1, safe for large n
    return 1.0 / (1.0 + r);
  }
  const double r = std::pow(m0 / m1, n);
  return r / (1.0 + r);
}

namespace {

// Scale factors exercised by the state-normalization axiom; the complex one
// combines a rescale with a phase.
const Amplitude kScales[] = {Amplitude{0.25, 0.0}, Amplitude{3.0, 0.0},
                             Amplitude{0.36, 0.48}};

}  // namespace

AxiomReport check_axioms(const OutcomeFunction& f0, const OutcomeFunction& f1,
                         const std::vector<AmplitudePair>& samples,
                         double tol) {
  AxiomReport report;
  for (const auto& [p, q] : samples) {
    const double v0 = f0(p, q);

    const double norm_res = std::abs(v0 + f1(p, q) - 1.0);
    const double relab_res = std::abs(v0 - f1(q, p));
    const double phase_res =
        std::abs(v0 - f0(Amplitude{std::abs(p), 0.0}, Amplitude{std::abs(q), 0.0}));
    double scale_res = 0.0;
    for (const Amplitude& s : kScales) {
      scale_res = std::max(scale_res, std::abs(v0 - f0(s * p, s * q)));
    }

    report.normalization.max_residual =
        std::max(report.normalization.max_residual, norm_res);
    report.relabeling.max_residual =
        std::max(report.relabeling.max_residual, relab_res);
    report.phase_invariance.max_residual =
        std::max(report.phase_invariance.max_residual, phase_res);
    report.scale_invariance.max_residual =
        std::max(report.scale_invariance.max_residual, scale_res);
  }
  report.normalization.ok = report.normalization.max_residual <= tol;
  report.relabeling.ok = report.relabeling.max_residual <= tol;
  report.phase_invariance.ok = report.phase_invariance.max_residual <= tol;
  report.scale_invariance.ok = report.scale_invariance.max_residual <= tol;
  return report;
}

AxiomReport check_axioms(const ProbabilityRule& rule,
                         const std::vector<AmplitudePair>& samples,
                         double tol) {
  const OutcomeFunction f0 = [&rule](const Amplitude& p, const Amplitude& q) {
    return eval_f0(rule, p, q);
  };
  const OutcomeFunction f1 = [&rule](const Amplitude& p, const Amplitude& q) {
    return eval_f0(rule, q, p);
  };
  return check_axioms(f0, f1, samples, tol);
}

}  // namespace nlbox
