#include "rydion/field_limits.hpp"

#include "rydion/errors.hpp"
#include "rydion/units.hpp"

#include <cmath>
#include <numbers>

namespace rydion {

double landau_threshold_field(int n) {
  if (n < 1) throw DomainError("landau_threshold_field: n must be >= 1");
  return constants().B_au * std::sqrt(384.0 / (5.0 * std::pow(n, 7)));
}

int landau_threshold_n(double B) {
  if (!(B > 0)) throw DomainError("landau_threshold_n: B must be positive");
  int n = std::max(1, static_cast<int>(std::floor(std::pow(384.0 / 5.0 * std::pow(constants().B_au / B, 2), 1.0 / 7))));
  while (n > 1 && B > landau_threshold_field(n - 1)) --n;
  while (!(B > landau_threshold_field(n))) ++n;
  return n;
}

double ionization_gradient(int n) {
  if (n < 1) throw DomainError("ionization_gradient: n must be >= 1");
  // (3/2) (e^5 beta / (pi^2 eps0^2))^(1/3) = 2 E_h / n^2
  const double depth = 2.0 * si::Eh / (static_cast<double>(n) * n);
  const double d = depth / 1.5;
  const double pi2 = std::numbers::pi * std::numbers::pi;
  return d * d * d * pi2 * si::eps0 * si::eps0 / std::pow(si::e, 5);
}

int ionization_n(double beta) {
  if (!(beta > 0)) throw DomainError("ionization_n: beta must be positive");
  int n = static_cast<int>(std::floor(std::pow(ionization_gradient(1) / beta, 1.0 / 6)));
  n = std::max(n, 1);
  while (ionization_gradient(n + 1) >= beta) ++n;
  while (n > 1 && ionization_gradient(n) < beta) --n;
  return n;
}

double quadrupole_dominance_gradient(double B) {
  if (B < 0) throw DomainError("quadrupole_dominance_gradient: B must be non-negative");
  return si::e * B * B / (8.0 * si::me);
}

}  // namespace rydion
