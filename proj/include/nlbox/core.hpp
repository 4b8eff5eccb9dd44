// core.hpp
// Domain types and measurement conventions shared by every other module.
//
// Conventions used throughout the library:
//  - The shared two-qubit state is alpha|up>_A|down>_B + beta|down>_A|up>_B.
//  - A measurement axis at angle t (radians, z-x plane, measured from +z)
//    relates its eigenbasis {|t>, |t_perp>} to {|up>, |down>} through the
//    half-angle pattern returned by basis_change():
//        |up>   =  cos(t/2)|t> + sin(t/2)|t_perp>
//        |down> = -sin(t/2)|t> + cos(t/2)|t_perp>
//    Outcome bit 0 belongs to |t>, bit 1 to |t_perp>.
//  - Alice's input x=0 measures along +z (bit 0 for |up>); x=1 measures along
//    theta. Bob's input y=0 measures along -z (bit 0 for |down>); y=1 measures
//    along theta_tilde.

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <string>

#include "json.hpp"

namespace nlbox {

using Amplitude = std::complex<double>;

/// True iff both components are finite (no NaN/Inf).
bool is_finite(const Amplitude& a);

/// Reduces an arbitrary real angle to [0, 2*pi).
double canonical_angle(double radians);

/// 2x2 coefficient matrix of {|up>, |down>} in the {|t>, |t_perp>} basis.
/// Row = original basis vector, column = rotated basis vector:
///   [[ cos(t/2), sin(t/2)], [-sin(t/2), cos(t/2)]]
using BasisCoefficients = std::array<std::array<double, 2>, 2>;
BasisCoefficients basis_change(double theta);

// Entangled state alpha|up,down> + beta|down,up>. Construction normalizes;
// |alpha|^2 + |beta|^2 = 1 within 1e-12 afterwards.
class TwoQubitState {
 public:
  TwoQubitState(Amplitude alpha, Amplitude beta);

  static TwoQubitState bell();  // alpha = beta = 1/sqrt(2)
  /// State with real nonnegative amplitudes, |alpha|^2 = alpha_squared.
  static TwoQubitState from_alpha_squared(double alpha_squared);

  const Amplitude& alpha() const { return alpha_; }
  const Amplitude& beta() const { return beta_; }

 private:
  Amplitude alpha_;
  Amplitude beta_;
};

// Measurement angles for the two non-trivial inputs. Arbitrary reals are
// accepted and reduced to [0, 2*pi); probabilities are invariant under the
// reduction.
class MeasurementConfig {
 public:
  MeasurementConfig(double theta, double theta_tilde);

  double theta() const { return theta_; }
  double theta_tilde() const { return theta_tilde_; }

 private:
  double theta_;
  double theta_tilde_;
};

// Conditional probability table P(a,b|x,y) for binary inputs and outputs.
// Stored flat in (x,y,a,b) order. Construction validates: every entry in
// [0,1] and every per-setting sum equal to 1, both within 1e-9.
class BehaviorBox {
 public:
  static constexpr double kValidationTol = 1e-9;

  explicit BehaviorBox(const std::array<double, 16>& cells);

  /// P(a,b|x,y)
  double p(int a, int b, int x, int y) const {
    return cells_[index(a, b, x, y)];
  }
  double setting_sum(int x, int y) const;
  const std::array<double, 16>& cells() const { return cells_; }

  static std::size_t index(int a, int b, int x, int y) {
    return static_cast<std::size_t>(((x * 2 + y) * 2 + a) * 2 + b);
  }

  bool operator==(const BehaviorBox&) const = default;

  /// {"p": [x][y][a][b]} with full round-trip precision.
  nlohmann::json to_json() const;
  static BehaviorBox from_json(const nlohmann::json& j);

  /// Header "x,y,a,b,p", one row per cell, 17 significant digits.
  std::string to_csv() const;
  static BehaviorBox from_csv(const std::string& csv);

 private:
  std::array<double, 16> cells_;
};

}  // namespace nlbox
