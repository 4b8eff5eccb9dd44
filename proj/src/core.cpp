#include "nlbox/core.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace nlbox {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

bool is_finite(const Amplitude& a) {
  return std::isfinite(a.real()) && std::isfinite(a.imag());
}

double canonical_angle(double radians) {
  if (!std::isfinite(radians)) {
    throw std::invalid_argument("angle must be finite");
  }
  double r = std::fmod(radians, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

BasisCoefficients basis_change(double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  return {{{c, s}, {-s, c}}};
}

TwoQubitState::TwoQubitState(Amplitude alpha, Amplitude beta)
    : alpha_(alpha), beta_(beta) {
  if (!is_finite(alpha_) || !is_finite(beta_)) {
    throw std::invalid_argument("state amplitudes must be finite");
  }
  const double norm2 = std::norm(alpha_) + std::norm(beta_);
  if (!(norm2 > 0.0)) {
    throw std::invalid_argument("state amplitudes must not both vanish");
  }
  const double scale = 1.0 / std::sqrt(norm2);
  alpha_ *= scale;
  beta_ *= scale;
}

TwoQubitState TwoQubitState::bell() {
  const double r = 1.0 / std::sqrt(2.0);
  return TwoQubitState{Amplitude{r, 0.0}, Amplitude{r, 0.0}};
}

TwoQubitState TwoQubitState::from_alpha_squared(double alpha_squared) {
  if (!(alpha_squared >= 0.0 && alpha_squared <= 1.0)) {
    throw std::invalid_argument("alpha_squared must lie in [0, 1]");
  }
  return TwoQubitState{Amplitude{std::sqrt(alpha_squared), 0.0},
                       Amplitude{std::sqrt(1.0 - alpha_squared), 0.0}};
}

MeasurementConfig::MeasurementConfig(double theta, double theta_tilde)
    : theta_(canonical_angle(theta)), theta_tilde_(canonical_angle(theta_tilde)) {}

BehaviorBox::BehaviorBox(const std::array<double, 16>& cells) : cells_(cells) {
  for (double v : cells_) {
    if (!(v >= -kValidationTol && v <= 1.0 + kValidationTol)) {
      throw std::invalid_argument("behavior box entry outside [0, 1]");
    }
  }
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      if (std::abs(setting_sum(x, y) - 1.0) > kValidationTol) {
        throw std::invalid_argument("behavior box setting not normalized");
      }
    }
  }
}

double BehaviorBox::setting_sum(int x, int y) const {
  double s = 0.0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) s += p(a, b, x, y);
  }
  return s;
}

nlohmann::json BehaviorBox::to_json() const {
  nlohmann::json px = nlohmann::json::array();
  for (int x = 0; x < 2; ++x) {
    nlohmann::json py = nlohmann::json::array();
    for (int y = 0; y < 2; ++y) {
      nlohmann::json pa = nlohmann::json::array();
      for (int a = 0; a < 2; ++a) {
        nlohmann::json pb = nlohmann::json::array();
        for (int b = 0; b < 2; ++b) pb.push_back(p(a, b, x, y));
        pa.push_back(std::move(pb));
      }
      py.push_back(std::move(pa));
    }
    px.push_back(std::move(py));
  }
  return nlohmann::json{{"p", std::move(px)}};
}

BehaviorBox BehaviorBox::from_json(const nlohmann::json& j) {
  const auto& px = j.at("p");
  if (!px.is_array() || px.size() != 2) {
    throw std::invalid_argument("box json: \"p\" must be a 2x2x2x2 array");
  }
  std::array<double, 16> cells{};
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          cells[index(a, b, x, y)] =
              px.at(x).at(y).at(a).at(b).get<double>();
        }
      }
    }
  }
  return BehaviorBox{cells};
}

std::string BehaviorBox::to_csv() const {
  std::string out = "x,y,a,b,p\n";
  char row[64];
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          std::snprintf(row, sizeof row, "%d,%d,%d,%d,%.17g\n", x, y, a, b,
                        p(a, b, x, y));
          out += row;
        }
      }
    }
  }
  return out;
}

BehaviorBox BehaviorBox::from_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) || line != "x,y,a,b,p") {
    throw std::invalid_argument("box csv: missing \"x,y,a,b,p\" header");
  }
  std::array<double, 16> cells{};
  std::array<bool, 16> seen{};
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    int x = 0, y = 0, a = 0, b = 0;
    double v = 0.0;
    if (std::sscanf(line.c_str(), "%d,%d,%d,%d,%lf", &x, &y, &a, &b, &v) != 5 ||
        (x | y | a | b) < 0 || x > 1 || y > 1 || a > 1 || b > 1) {
      throw std::invalid_argument("box csv: malformed row: " + line);
    }
    cells[index(a, b, x, y)] = v;
    seen[index(a, b, x, y)] = true;
  }
  for (bool s : seen) {
    if (!s) throw std::invalid_argument("box csv: missing rows");
  }
  return BehaviorBox{cells};
}

}  // namespace nlbox
