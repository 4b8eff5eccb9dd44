#include "nlbox/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nlbox {

namespace {

double bob_marginal(const BehaviorBox& box, int b, int x, int y) {
  return box.p(0, b, x, y) + box.p(1, b, x, y);
}

double alice_marginal(const BehaviorBox& box, int a, int x, int y) {
  return box.p(a, 0, x, y) + box.p(a, 1, x, y);
}

}  // namespace

NoSignalingReport no_signaling_report(const BehaviorBox& box, double tol) {
  NoSignalingReport report;
  report.tolerance = tol;
  report.constraints.reserve(8);

  for (int b = 0; b < 2; ++b) {
    for (int y = 0; y < 2; ++y) {
      const double r =
          std::abs(bob_marginal(box, b, 0, y) - bob_marginal(box, b, 1, y));
      report.constraints.push_back({Party::kBob, b, y, r});
      report.max_violation_alice_to_bob =
          std::max(report.max_violation_alice_to_bob, r);
    }
  }
  for (int a = 0; a < 2; ++a) {
    for (int x = 0; x < 2; ++x) {
      const double r =
          std::abs(alice_marginal(box, a, x, 0) - alice_marginal(box, a, x, 1));
      report.constraints.push_back({Party::kAlice, a, x, r});
      report.max_violation_bob_to_alice =
          std::max(report.max_violation_bob_to_alice, r);
    }
  }
  report.passed = report.max_violation() <= tol;
  return report;
}

double nosignal_residual_eq15(const TwoQubitState& state, double theta,
                              const ProbabilityRule& rule) {
  const BehaviorBox box =
      joint_distribution(state, MeasurementConfig{theta, 0.0}, rule);
  const double lhs = box.p(0, 0, 0, 0) + box.p(1, 0, 0, 0);  // = |alpha|^2
  const double rhs = box.p(0, 0, 1, 0) + box.p(1, 0, 1, 0);
  return std::abs(lhs - rhs);
}

double correlator(const BehaviorBox& box, int x, int y) {
  return box.p(0, 0, x, y) + box.p(1, 1, x, y) - box.p(0, 1, x, y) -
         box.p(1, 0, x, y);
}

ChshReport chsh_value(const BehaviorBox& box) {
  ChshReport report;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      report.correlators[2 * x + y] = correlator(box, x, y);
    }
  }
  const double total = report.correlators[0] + report.correlators[1] +
                       report.correlators[2] + report.correlators[3];
  report.value = -1.0;
  for (int k = 0; k < 4; ++k) {
    const double v = std::abs(total - 2.0 * report.correlators[k]);
    if (v > report.value) {
      report.value = v;
      report.minus_x = k >> 1;
      report.minus_y = k & 1;
    }
  }
  return report;
}

double nonisotropic_chsh_closed_form(double theta, double theta_tilde,
                                     const ProbabilityRule& rule) {
  const auto g0 = [&rule](double p, double q) {
    return eval_f0(rule, Amplitude{p, 0.0}, Amplitude{q, 0.0});
  };
  const double st = std::sin(theta / 2.0), ct = std::cos(theta / 2.0);
  const double su = std::sin(theta_tilde / 2.0),
               cu = std::cos(theta_tilde / 2.0);
  const double hs = (theta + theta_tilde) / 2.0;
  const double ss = std::sin(hs), cs = std::cos(hs);
  // g1(p,q) = g0(q,p)
  return 1.0 + g0(su, cu) - g0(cu, su) + g0(ct, st) - g0(st, ct) +
         g0(cs, ss) - g0(ss, cs);
}

double isotropy_residual(const BehaviorBox& box) {
  const double c00 = correlator(box, 0, 0);
  const double c01 = correlator(box, 0, 1);
  const double c10 = correlator(box, 1, 0);
  const double c11 = correlator(box, 1, 1);
  double r = std::max({std::abs(c00 - c01), std::abs(c00 - c10),
                       std::abs(c00 + c11)});
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      r = std::max(r, std::abs(alice_marginal(box, 0, x, y) - 0.5));
      r = std::max(r, std::abs(bob_marginal(box, 0, x, y) - 0.5));
    }
  }
  return r;
}

bool isotropy_check(const BehaviorBox& box, double tol) {
  return isotropy_residual(box) <= tol;
}

double pr_distance(const BehaviorBox& box) {
  const BehaviorBox pr = pr_box();
  double total = 0.0;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      double tv = 0.0;
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          tv += std::abs(box.p(a, b, x, y) - pr.p(a, b, x, y));
        }
      }
      total += 0.5 * tv;
    }
  }
  return total / 4.0;
}

bool pr_angle_region(double theta, double theta_tilde) {
  const double ht = theta / 2.0;
  const double hu = theta_tilde / 2.0;
  const double hs = (theta + theta_tilde) / 2.0;
  return std::abs(std::cos(ht)) > std::abs(std::sin(ht)) &&
         std::abs(std::sin(hu)) > std::abs(std::cos(hu)) &&
         std::abs(std::cos(hs)) > std::abs(std::sin(hs));
}

double chsh_observables_closed_form(const ProbabilityRule& rule) {
  if (rule.is_infinite()) return 4.0;
  const double n = rule.exponent();
  // Ratio form keeps the evaluation bounded: B/A = tan(pi/8) = sqrt(2) - 1.
  const double r = std::pow(std::sqrt(2.0) - 1.0, n);
  return 4.0 * (1.0 - r) / (1.0 + r);
}

double solve_power_for_chsh(double target) {
  if (!(target > 0.0 && target < 4.0)) {
    throw std::out_of_range("CHSH target must lie in (0, 4)");
  }
  const auto f = [](double n) {
    return chsh_observables_closed_form(ProbabilityRule::power(n));
  };

  double lo = 1e-6;
  double hi = 64.0;
  while (f(hi) <= target) hi *= 2.0;
  while (f(lo) >= target) lo /= 2.0;

  double mid = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    mid = 0.5 * (lo + hi);
    const double v = f(mid);
    if (std::abs(v - target) < 1e-10) return mid;
    (v < target ? lo : hi) = mid;
  }
  return mid;
}

}  // namespace nlbox
